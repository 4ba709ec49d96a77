#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vibrest/pauli.hpp"

namespace vibrest {

/// Tuning knobs for the commutator-scaling evaluators.
struct ScalingOptions {
  /// Abort with ResourceLimitError once this many anticommutation checks
  /// have been spent. The default allows roughly a minute of work on a
  /// desktop core.
  std::uint64_t check_budget = 10'000'000'000ULL;
  /// Worker threads; 0 resolves via VIBREST_WORKERS / hardware.
  unsigned workers = 0;
  /// Use the stricter p=2 cross term (costs one O(N^2) pass over the
  /// full set) instead of the plain binomial estimate.
  bool refined_p2 = true;
  /// One extra refinement level for p=2: also tighten the two- and
  /// three-small-index cross terms with alpha_1 data. Goes beyond the
  /// plain splitting scheme; off by default.
  bool second_level = false;
};

enum class BoundMode { exact, crude, split };

const char* to_string(BoundMode mode);

/// Lower/upper bracket of the order-p commutator scaling alpha_p.
struct ScalingResult {
  int p = 0;
  BoundMode mode = BoundMode::split;
  double lower = 0.0;
  double upper = 0.0;
  double tol = 0.0;             // threshold splitting S_big from S_small
  std::size_t n_terms = 0;
  std::size_t n_big = 0;
  /// Anticommutation parity evaluations spent; the unit counted against
  /// ScalingOptions::check_budget.
  std::uint64_t tuples_evaluated = 0;
  double wall_time_s = 0.0;
};

/// Sum of |c_i| over the given term indices, pairwise-summed in index
/// order so the value is reproducible.
double term_norm_sum(const WeightedPauliHamiltonian& h,
                     std::span<const std::size_t> subset);

/// Same over all terms.
double term_norm_sum(const WeightedPauliHamiltonian& h);

/// Exact commutator scaling: the sum over all ordered (p+1)-tuples drawn
/// from `subset` of the nested-commutator norm, each term contributing
/// 2^p * prod|c| when the anticommutation parity condition holds and zero
/// otherwise. Enumeration prunes every prefix that already forces zero,
/// runs parallel over the leading index, and reduces partial sums through
/// a fixed pairwise tree, so results are bitwise reproducible.
/// Throws ResourceLimitError when the check budget is exhausted and
/// std::invalid_argument for p < 1 or an empty subset.
double alpha_exact(const WeightedPauliHamiltonian& h, int p,
                   std::span<const std::size_t> subset,
                   const ScalingOptions& options = {});

/// Exact scaling over all terms.
double alpha_exact(const WeightedPauliHamiltonian& h, int p,
                   const ScalingOptions& options = {});

/// Threshold-splitting bracket of alpha_p. Terms with |c| > tol form
/// S_big; the bracket is
///   alpha_p(S_big) <= alpha_p(S) <= alpha_p(S_big) + cross terms,
/// with cross terms summed over the mixed binomial classes
///   sum_k C(p+1,k) N(S_big)^(p+1-k) N(S_small)^k,  k = 1..p+1.
/// For p = 2 the single-small-index class is replaced by the stricter
///   N(S_small)*alpha_1(S_big) + N(S_big)*(alpha_1(S) - alpha_1(S_big))
/// when options.refined_p2 is set. tol = 0 reproduces the exact value,
/// tol = +inf the crude bound. Throws std::invalid_argument for tol < 0.
ScalingResult alpha_bounds(const WeightedPauliHamiltonian& h, int p, double tol,
                           const ScalingOptions& options = {});

/// The structure-blind bound (sum|c_i|)^(p+1).
double crude_bound(const WeightedPauliHamiltonian& h, int p);

}  // namespace vibrest
