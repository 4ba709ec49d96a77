#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace vibrest {

/// Sums a sequence with a fixed pairwise reduction tree (recursive
/// halving in index order). The result depends only on the values and
/// their order, never on thread scheduling, so parallel partial sums
/// reduced through this function are bitwise reproducible.
double pairwise_sum(std::span<const double> values);

/// Resolves a worker count: explicit value wins, then the
/// VIBREST_WORKERS environment variable, then hardware concurrency.
/// Always returns at least 1.
unsigned resolve_workers(unsigned requested = 0);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Iterations are
/// dealt in contiguous blocks; fn must only write to slots it owns.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

/// Deterministic bounded uniform draw in [0, bound) via rejection
/// sampling on the raw 64-bit stream. Unbiased, and reproducible across
/// platforms as long as the generator's output sequence is.
template <typename Gen>
std::uint64_t bounded_rand(Gen& gen, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

/// Fisher-Yates shuffle driven by bounded_rand. std::shuffle is
/// implementation-defined, so reproducible runs need this instead.
template <typename T, typename Gen>
void deterministic_shuffle(std::vector<T>& items, Gen& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::uint64_t j = bounded_rand(gen, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace vibrest
