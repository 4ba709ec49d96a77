#include "vibrest/layering.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "vibrest/numeric.hpp"

namespace vibrest {

namespace {

using SupportMask = std::vector<std::uint64_t>;

SupportMask support_of(const PauliString& p) {
  SupportMask mask(p.num_words());
  for (std::size_t w = 0; w < mask.size(); ++w) mask[w] = p.support_word(w);
  return mask;
}

bool disjoint(const SupportMask& a, const SupportMask& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & b[w]) return false;
  return true;
}

void merge_into(SupportMask& layer, const SupportMask& term) {
  for (std::size_t w = 0; w < layer.size(); ++w) layer[w] |= term[w];
}

}  // namespace

std::size_t scan_layers(std::span<const PauliString> ordered_terms,
                        LayeringStrategy strategy) {
  if (ordered_terms.empty())
    throw std::invalid_argument("cannot layer an empty term list");

  if (strategy == LayeringStrategy::greedy_scan) {
    SupportMask current = support_of(ordered_terms.front());
    std::size_t layers = 1;
    for (std::size_t i = 1; i < ordered_terms.size(); ++i) {
      const SupportMask support = support_of(ordered_terms[i]);
      if (disjoint(current, support)) {
        merge_into(current, support);
      } else {
        ++layers;
        current = support;
      }
    }
    return layers;
  }

  std::vector<SupportMask> layers;
  for (const auto& term : ordered_terms) {
    const SupportMask support = support_of(term);
    bool placed = false;
    for (auto& layer : layers) {
      if (disjoint(layer, support)) {
        merge_into(layer, support);
        placed = true;
        break;
      }
    }
    if (!placed) layers.push_back(support);
  }
  return layers.size();
}

std::size_t greedy_layers(std::span<const PauliString> terms,
                          std::uint64_t seed, LayeringStrategy strategy) {
  if (terms.empty())
    throw std::invalid_argument("cannot layer an empty term list");
  std::vector<std::size_t> order(terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 gen(seed);
  deterministic_shuffle(order, gen);

  std::vector<PauliString> shuffled;
  shuffled.reserve(terms.size());
  for (std::size_t i : order) shuffled.push_back(terms[i]);
  return scan_layers(shuffled, strategy);
}

LayeringStats depth_ratio(const WeightedPauliHamiltonian& h, std::size_t runs,
                          std::uint64_t seed, LayeringStrategy strategy) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (h.terms.empty())
    throw std::invalid_argument("cannot layer an empty Hamiltonian");

  std::vector<PauliString> strings;
  strings.reserve(h.terms.size());
  for (const auto& term : h.terms) strings.push_back(term.pauli);

  LayeringStats stats;
  stats.n_terms = strings.size();
  stats.runs = runs;
  stats.seed = seed;
  stats.layer_counts.reserve(runs);
  stats.ratios.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const std::size_t layers = greedy_layers(strings, seed + r, strategy);
    stats.layer_counts.push_back(layers);
    stats.ratios.push_back(static_cast<double>(stats.n_terms) /
                           static_cast<double>(layers));
  }

  stats.mean_ratio = pairwise_sum(stats.ratios) / static_cast<double>(runs);
  stats.min_ratio = *std::min_element(stats.ratios.begin(), stats.ratios.end());
  stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
  double sq = 0.0;
  for (double r : stats.ratios) {
    const double d = r - stats.mean_ratio;
    sq += d * d;
  }
  stats.stddev_ratio = std::sqrt(sq / static_cast<double>(runs));
  return stats;
}

}  // namespace vibrest
