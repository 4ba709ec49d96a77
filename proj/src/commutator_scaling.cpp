#include "vibrest/commutator_scaling.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vibrest/errors.hpp"
#include "vibrest/numeric.hpp"

namespace vibrest {

namespace {

// Subset of terms repacked into contiguous mask words for the hot loops.
struct PackedSet {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> z;
  std::vector<double> abs_coeff;

  PackedSet(const WeightedPauliHamiltonian& h,
            std::span<const std::size_t> subset) {
    n = subset.size();
    words = h.terms.empty() ? 0 : h.terms.front().pauli.num_words();
    x.resize(n * words);
    z.resize(n * words);
    abs_coeff.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& term = h.terms[subset[i]];
      if (term.pauli.n_qubits() != h.n_qubits)
        throw std::invalid_argument("Hamiltonian terms disagree on qubit count");
      for (std::size_t w = 0; w < words; ++w) {
        x[i * words + w] = term.pauli.x_word(w);
        z[i * words + w] = term.pauli.z_word(w);
      }
      abs_coeff[i] = std::abs(term.coeff);
    }
  }

  bool anticommute(std::size_t i, std::size_t j) const {
    std::uint64_t acc = 0;
    const std::uint64_t* xi = x.data() + i * words;
    const std::uint64_t* zi = z.data() + i * words;
    const std::uint64_t* xj = x.data() + j * words;
    const std::uint64_t* zj = z.data() + j * words;
    for (std::size_t w = 0; w < words; ++w)
      acc ^= (xi[w] & zj[w]) ^ (zi[w] & xj[w]);
    return std::popcount(acc) & 1;
  }
};

// Pairwise anticommutation as rows of bits; only built when the subset is
// small enough that n^2 bits are cheap.
struct AdjacencyMatrix {
  std::size_t n = 0;
  std::size_t row_words = 0;
  std::vector<std::uint64_t> rows;

  explicit AdjacencyMatrix(const PackedSet& set, unsigned workers)
      : n(set.n), row_words((set.n + 63) / 64), rows(set.n * row_words, 0) {
    // Each row is filled independently; threads never read another row.
    parallel_for(n, workers, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && set.anticommute(i, j))
          rows[i * row_words + j / 64] |= std::uint64_t{1} << (j % 64);
      }
    });
  }

  bool bit(std::size_t i, std::size_t j) const {
    return (rows[i * row_words + j / 64] >> (j % 64)) & 1;
  }

  const std::uint64_t* row(std::size_t i) const {
    return rows.data() + i * row_words;
  }
};

constexpr std::size_t kAdjacencyLimit = 16384;

struct BudgetTracker {
  std::uint64_t budget;
  std::atomic<std::uint64_t> spent{0};
  std::atomic<bool> exceeded{false};

  explicit BudgetTracker(std::uint64_t b) : budget(b) {}

  // Threads flush local counts in batches; overshoot is bounded by one
  // batch per thread.
  void add(std::uint64_t count) {
    const std::uint64_t total =
        spent.fetch_add(count, std::memory_order_relaxed) + count;
    if (total > budget) exceeded.store(true, std::memory_order_relaxed);
  }

  bool over() const { return exceeded.load(std::memory_order_relaxed); }
};

[[noreturn]] void throw_budget(const BudgetTracker& tracker) {
  throw ResourceLimitError(
      "commutator enumeration exceeded the check budget of " +
      std::to_string(tracker.budget) +
      " anticommutation checks; raise the splitting tolerance to shrink "
      "S_big, or raise the budget");
}

// alpha_1 over the packed subset: sum over ordered pairs of 2|c_i c_j|
// when the pair anticommutes. Partial sums are per leading index.
double alpha_p1(const PackedSet& set, const AdjacencyMatrix* adj,
                unsigned workers, BudgetTracker& tracker) {
  std::vector<double> partial(set.n, 0.0);
  parallel_for(set.n, workers, [&](std::size_t i) {
    if (tracker.over()) return;
    double row_sum = 0.0;
    std::uint64_t checks = 0;
    if (adj) {
      const std::uint64_t* row = adj->row(i);
      for (std::size_t w = 0; w < adj->row_words; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          const std::size_t j = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          row_sum += set.abs_coeff[j];
        }
      }
      checks = set.n;
    } else {
      for (std::size_t j = 0; j < set.n; ++j) {
        if (j != i && set.anticommute(i, j)) row_sum += set.abs_coeff[j];
      }
      checks = set.n;
    }
    partial[i] = 2.0 * set.abs_coeff[i] * row_sum;
    tracker.add(checks);
  });
  if (tracker.over()) throw_budget(tracker);
  return pairwise_sum(partial);
}

// alpha_2: the tuple (i0,i1,i2) survives iff (i0,i1) anticommute and i2
// anticommutes with exactly one of them. The condition is symmetric in
// (i0,i1), so each unordered anticommuting pair contributes
// 8|c_i0 c_i1| * sum_k |c_k| [ac(k,i0) xor ac(k,i1)].
double alpha_p2(const PackedSet& set, const AdjacencyMatrix* adj,
                unsigned workers, BudgetTracker& tracker) {
  std::vector<double> partial(set.n, 0.0);
  parallel_for(set.n, workers, [&](std::size_t i0) {
    if (tracker.over()) return;
    double block = 0.0;
    std::uint64_t checks = 0;
    for (std::size_t i1 = i0 + 1; i1 < set.n; ++i1) {
      ++checks;
      const bool pair_ac = adj ? adj->bit(i0, i1) : set.anticommute(i0, i1);
      if (!pair_ac) continue;
      double inner = 0.0;
      if (adj) {
        const std::uint64_t* r0 = adj->row(i0);
        const std::uint64_t* r1 = adj->row(i1);
        for (std::size_t w = 0; w < adj->row_words; ++w) {
          std::uint64_t bits = r0[w] ^ r1[w];
          while (bits) {
            const std::size_t k = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            inner += set.abs_coeff[k];
          }
        }
      } else {
        for (std::size_t k = 0; k < set.n; ++k) {
          if (set.anticommute(k, i0) != set.anticommute(k, i1))
            inner += set.abs_coeff[k];
        }
      }
      checks += 2 * set.n;
      block += 8.0 * set.abs_coeff[i0] * set.abs_coeff[i1] * inner;
      if (checks > (1u << 22)) {
        tracker.add(checks);
        checks = 0;
        if (tracker.over()) return;
      }
    }
    partial[i0] = block;
    tracker.add(checks);
  });
  if (tracker.over()) throw_budget(tracker);
  return pairwise_sum(partial);
}

// Generic order: depth-first enumeration of ordered tuples with prefix
// pruning. A candidate extending the prefix must anticommute with an odd
// number of prefix members, otherwise its whole subtree vanishes.
struct GenericEnumerator {
  const PackedSet& set;
  int p;
  BudgetTracker& tracker;

  double run_leading(std::size_t i0) {
    std::vector<std::size_t> prefix{i0};
    double sum = 0.0;
    std::uint64_t checks = 0;
    descend(prefix, std::ldexp(set.abs_coeff[i0], p), sum, checks);
    tracker.add(checks);
    return sum;
  }

  void descend(std::vector<std::size_t>& prefix, double weight, double& sum,
               std::uint64_t& checks) {
    const std::size_t depth = prefix.size();
    for (std::size_t cand = 0; cand < set.n; ++cand) {
      int parity = 0;
      for (std::size_t j = 0; j < depth; ++j)
        parity ^= set.anticommute(cand, prefix[j]) ? 1 : 0;
      checks += depth;
      if (!parity) continue;
      const double w = weight * set.abs_coeff[cand];
      if (depth == static_cast<std::size_t>(p)) {
        sum += w;
      } else {
        prefix.push_back(cand);
        descend(prefix, w, sum, checks);
        prefix.pop_back();
      }
      if (checks > (1u << 22)) {
        tracker.add(checks);
        checks = 0;
        if (tracker.over()) return;
      }
    }
  }
};

double alpha_generic(const PackedSet& set, int p, unsigned workers,
                     BudgetTracker& tracker) {
  std::vector<double> partial(set.n, 0.0);
  GenericEnumerator enumerator{set, p, tracker};
  parallel_for(set.n, workers, [&](std::size_t i0) {
    if (tracker.over()) return;
    partial[i0] = enumerator.run_leading(i0);
  });
  if (tracker.over()) throw_budget(tracker);
  return pairwise_sum(partial);
}

double alpha_over(const PackedSet& set, int p, unsigned workers,
                  BudgetTracker& tracker) {
  if (set.n == 0) return 0.0;
  std::optional<AdjacencyMatrix> adj;
  if (p <= 2 && set.n <= kAdjacencyLimit && set.n > 64) {
    adj.emplace(set, workers);
    tracker.add(static_cast<std::uint64_t>(set.n) * set.n);
  }
  const AdjacencyMatrix* adj_ptr = adj ? &*adj : nullptr;
  if (p == 1) return alpha_p1(set, adj_ptr, workers, tracker);
  if (p == 2) return alpha_p2(set, adj_ptr, workers, tracker);
  return alpha_generic(set, p, workers, tracker);
}

std::vector<std::size_t> all_indices(const WeightedPauliHamiltonian& h) {
  std::vector<std::size_t> idx(h.terms.size());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t value = 1;
  for (int i = 0; i < k; ++i) value = value * (n - i) / (i + 1);
  return value;
}

}  // namespace

const char* to_string(BoundMode mode) {
  switch (mode) {
    case BoundMode::exact: return "exact";
    case BoundMode::crude: return "crude";
    default: return "split";
  }
}

double term_norm_sum(const WeightedPauliHamiltonian& h,
                     std::span<const std::size_t> subset) {
  std::vector<double> values;
  values.reserve(subset.size());
  for (std::size_t i : subset) {
    if (i >= h.terms.size())
      throw std::invalid_argument("term index " + std::to_string(i) +
                                  " out of range");
    values.push_back(std::abs(h.terms[i].coeff));
  }
  return pairwise_sum(values);
}

double term_norm_sum(const WeightedPauliHamiltonian& h) {
  return term_norm_sum(h, all_indices(h));
}

double alpha_exact(const WeightedPauliHamiltonian& h, int p,
                   std::span<const std::size_t> subset,
                   const ScalingOptions& options) {
  if (p < 1) throw std::invalid_argument("product-formula order p must be >= 1");
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  PackedSet set(h, subset);
  BudgetTracker tracker(options.check_budget);
  return alpha_over(set, p, options.workers, tracker);
}

double alpha_exact(const WeightedPauliHamiltonian& h, int p,
                   const ScalingOptions& options) {
  return alpha_exact(h, p, all_indices(h), options);
}

ScalingResult alpha_bounds(const WeightedPauliHamiltonian& h, int p, double tol,
                           const ScalingOptions& options) {
  if (p < 1) throw std::invalid_argument("product-formula order p must be >= 1");
  if (std::isnan(tol) || tol < 0.0)
    throw std::invalid_argument("splitting tolerance must be >= 0");

  const auto start = std::chrono::steady_clock::now();
  BudgetTracker tracker(options.check_budget);

  std::vector<std::size_t> big, small;
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    (std::abs(h.terms[i].coeff) > tol ? big : small).push_back(i);
  }

  ScalingResult result;
  result.p = p;
  result.tol = tol;
  result.n_terms = h.terms.size();
  result.n_big = big.size();
  result.mode = tol == 0.0            ? BoundMode::exact
                : std::isinf(tol)     ? BoundMode::crude
                                      : BoundMode::split;

  PackedSet big_set(h, big);
  result.lower = alpha_over(big_set, p, options.workers, tracker);

  if (small.empty()) {
    result.upper = result.lower;
  } else {
    const double n_big_sum = term_norm_sum(h, big);
    const double n_small_sum = term_norm_sum(h, small);
    double cross = 0.0;
    for (int k = 1; k <= p + 1; ++k) {
      double term = static_cast<double>(binomial(p + 1, k)) *
                    std::pow(n_big_sum, p + 1 - k) * std::pow(n_small_sum, k);
      if (p == 2 && k == 1 && options.refined_p2 && !big.empty()) {
        PackedSet full_set(h, all_indices(h));
        const double a1_full = alpha_over(full_set, 1, options.workers, tracker);
        const double a1_big = alpha_over(big_set, 1, options.workers, tracker);
        term = n_small_sum * a1_big + n_big_sum * (a1_full - a1_big);
      }
      if (p == 2 && (k == 2 || k == 3) && options.second_level && !big.empty()) {
        PackedSet small_set(h, small);
        const double a1_small =
            alpha_over(small_set, 1, options.workers, tracker);
        if (k == 2) {
          PackedSet full_set(h, all_indices(h));
          const double a1_full =
              alpha_over(full_set, 1, options.workers, tracker);
          term = std::min(term, n_big_sum * a1_small +
                                    n_small_sum * (a1_full - a1_small));
        } else {
          term = std::min(term, n_small_sum * a1_small);
        }
      }
      cross += term;
    }
    result.upper = result.lower + cross;
  }

  result.tuples_evaluated = tracker.spent.load();
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

double crude_bound(const WeightedPauliHamiltonian& h, int p) {
  if (p < 1) throw std::invalid_argument("product-formula order p must be >= 1");
  return std::pow(term_norm_sum(h), p + 1);
}

}  // namespace vibrest
