#include <algorithm>
#include <set>

#include "doctest.h"
#include "support/synthetic.hpp"
#include "vibrest/encoding.hpp"
#include "vibrest/layering.hpp"
#include "vibrest/vib_hamiltonian.hpp"

using namespace vibrest;
namespace oracle = vibrest::testing;

namespace {

std::vector<PauliString> from_texts(const std::vector<std::string>& texts) {
  std::vector<PauliString> out;
  for (const auto& t : texts) out.push_back(PauliString::from_text(t));
  return out;
}

// Independent restatement of the scan rule with std::set bookkeeping.
std::size_t scan_by_sets(const std::vector<PauliString>& order) {
  std::set<std::size_t> occupied;
  std::size_t layers = 0;
  for (const auto& term : order) {
    std::set<std::size_t> support;
    for (std::size_t q = 0; q < term.n_qubits(); ++q)
      if (term.letter(q) != 'I') support.insert(q);
    const bool overlap = std::any_of(support.begin(), support.end(),
                                     [&](std::size_t q) {
                                       return occupied.count(q) > 0;
                                     });
    if (layers == 0 || overlap) {
      ++layers;
      occupied = support;
    } else {
      occupied.insert(support.begin(), support.end());
    }
  }
  return layers;
}

}  // namespace

TEST_CASE("disjoint supports pack into one layer") {
  const auto terms = from_texts({"XIII", "IYII", "IIZI", "IIIX"});
  CHECK(greedy_layers(terms, 123) == 1);
  const auto stats_input = WeightedPauliHamiltonian{
      4,
      {{1.0, terms[0]}, {1.0, terms[1]}, {1.0, terms[2]}, {1.0, terms[3]}},
      ""};
  const auto stats = depth_ratio(stats_input, 10, 99);
  CHECK(stats.mean_ratio == 4.0);
}

TEST_CASE("total conflict forces one layer per term") {
  const auto terms = from_texts({"XI", "YI", "ZI", "XI", "YI"});
  CHECK(greedy_layers(terms, 7) == terms.size());
  const auto h = WeightedPauliHamiltonian{
      2,
      {{1.0, terms[0]}, {1.0, terms[1]}, {1.0, terms[2]}, {1.0, terms[3]},
       {1.0, terms[4]}},
      ""};
  CHECK(depth_ratio(h, 5, 3).mean_ratio == 1.0);
}

TEST_CASE("scan rule matches the set-based restatement on all 24 orderings") {
  const auto base = from_texts({"XII", "IXI", "XXI", "IIZ"});
  std::vector<std::size_t> perm{0, 1, 2, 3};
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<PauliString> order;
    for (std::size_t i : perm) order.push_back(base[i]);
    CHECK(scan_layers(order) == scan_by_sets(order));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("hand-checked ordering") {
  // X0 joins, X1 joins, X0X1 conflicts (new layer), Z2 joins that layer
  const auto order = from_texts({"XII", "IXI", "XXI", "IIZ"});
  CHECK(scan_layers(order) == 2);
}

TEST_CASE("identical seed gives identical stats") {
  std::mt19937_64 rng(61);
  const auto h = oracle::random_local_hamiltonian(rng, 12, 40, 3);
  const auto a = depth_ratio(h, 20, 4242);
  const auto b = depth_ratio(h, 20, 4242);
  CHECK(a.layer_counts == b.layer_counts);
  CHECK(a.ratios == b.ratios);
  CHECK(a.mean_ratio == b.mean_ratio);

  const auto c = depth_ratio(h, 20, 4243);
  CHECK(a.layer_counts != c.layer_counts);  // different seed, different orders
}

TEST_CASE("ratio bounds and count identity") {
  std::mt19937_64 rng(62);
  const auto h = oracle::random_local_hamiltonian(rng, 10, 30, 4);
  const auto stats = depth_ratio(h, 25, 17);
  for (std::size_t i = 0; i < stats.runs; ++i) {
    CHECK(stats.ratios[i] >= 1.0);
    CHECK(stats.ratios[i] <= static_cast<double>(stats.n_terms));
    CHECK(stats.ratios[i] ==
          static_cast<double>(stats.n_terms) /
              static_cast<double>(stats.layer_counts[i]));
  }
  CHECK(stats.min_ratio <= stats.mean_ratio);
  CHECK(stats.mean_ratio <= stats.max_ratio);
}

TEST_CASE("every emitted layer is pairwise disjoint") {
  // replay the scan and validate the layers it forms
  std::mt19937_64 rng(63);
  const auto h = oracle::random_local_hamiltonian(rng, 10, 50, 3);
  std::vector<std::size_t> order(h.terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 gen(31337);
  deterministic_shuffle(order, gen);

  std::vector<std::vector<const PauliString*>> layers(1);
  for (std::size_t i : order) {
    const auto& p = h.terms[i].pauli;
    const bool conflict = std::any_of(
        layers.back().begin(), layers.back().end(),
        [&](const PauliString* q) { return !p.support_disjoint(*q); });
    if (conflict && !layers.back().empty()) layers.emplace_back();
    layers.back().push_back(&p);
  }
  for (const auto& layer : layers) {
    for (std::size_t a = 0; a < layer.size(); ++a)
      for (std::size_t b = a + 1; b < layer.size(); ++b)
        CHECK(layer[a]->support_disjoint(*layer[b]));
  }

  std::vector<PauliString> ordered;
  for (std::size_t i : order) ordered.push_back(h.terms[i].pauli);
  CHECK(scan_layers(ordered) == layers.size());
}

TEST_CASE("best-fit packing never uses more layers than the scan") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_local_hamiltonian(rng, 12, 40, 4);
    std::vector<PauliString> terms;
    for (const auto& t : h.terms) terms.push_back(t.pauli);
    CHECK(scan_layers(terms, LayeringStrategy::best_fit) <=
          scan_layers(terms, LayeringStrategy::greedy_scan));
  }
}

TEST_CASE("vibrational unary Hamiltonian parallelizes") {
  std::mt19937_64 rng(65);
  auto [problem, pes] = oracle::synthetic_chain_pes(rng, 7, 4);
  const auto sq = build_second_quantized(problem, pes);
  const auto h = encode(sq, {EncodingKind::unary, 7, 4, 1e-8});
  REQUIRE(h.n_qubits == 28);
  const auto stats = depth_ratio(h, 10, 2024);
  CHECK(stats.mean_ratio > 1.0);
}

TEST_CASE("empty inputs are rejected") {
  CHECK_THROWS_AS(greedy_layers(std::vector<PauliString>{}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(depth_ratio(WeightedPauliHamiltonian{}, 5, 1),
                  std::invalid_argument);
  WeightedPauliHamiltonian one;
  one.n_qubits = 1;
  one.terms.push_back({1.0, PauliString::from_text("X")});
  CHECK_THROWS_AS(depth_ratio(one, 0, 1), std::invalid_argument);
  CHECK(depth_ratio(one, 3, 1).mean_ratio == 1.0);
}
