#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vibrest/pauli.hpp"

namespace vibrest {

/// Packing rule for assigning Pauli exponentials to depth layers.
/// greedy_scan is the single-pass rule: a term whose support overlaps the
/// current layer closes it and opens a new one. best_fit instead tries
/// every open layer before opening a new one; it is a strictly stronger
/// packer kept as a non-default comparison point.
enum class LayeringStrategy { greedy_scan, best_fit };

/// Outcome of repeated randomized layering runs.
struct LayeringStats {
  std::size_t n_terms = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> layer_counts;  // one per run
  std::vector<double> ratios;             // n_terms / layer_counts[i]
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double stddev_ratio = 0.0;
};

/// Applies the scan rule to terms in the given order and returns the
/// number of sequential layers. Within every emitted layer all supports
/// are pairwise disjoint.
std::size_t scan_layers(std::span<const PauliString> ordered_terms,
                        LayeringStrategy strategy = LayeringStrategy::greedy_scan);

/// Shuffles the terms uniformly with a seeded reproducible generator and
/// scans the shuffled sequence. Throws std::invalid_argument on an empty
/// term list.
std::size_t greedy_layers(std::span<const PauliString> terms,
                          std::uint64_t seed,
                          LayeringStrategy strategy = LayeringStrategy::greedy_scan);

/// Runs greedy_layers `runs` times with per-run seeds seed, seed+1, ...
/// and reports the ratio statistics. Deterministic given (seed, runs).
LayeringStats depth_ratio(const WeightedPauliHamiltonian& h, std::size_t runs,
                          std::uint64_t seed,
                          LayeringStrategy strategy = LayeringStrategy::greedy_scan);

}  // namespace vibrest
