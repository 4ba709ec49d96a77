#include "vibrest/qpe_costing.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vibrest/errors.hpp"
#include "vibrest/numeric.hpp"

namespace vibrest {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("gate count exceeds 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("gate count exceeds 64 bits");
  return out;
}

// Ladder-circuit cost of one controlled Pauli exponential of weight w:
// 2(w-1) entangling gates for the parity ladder, one rotation, 2w
// basis-change Cliffords, plus one extra two-qubit gate for the QPE
// control on the rotation. A weight-0 term is a controlled global phase,
// i.e. a bare ancilla rotation.
GateCounts exponential_cost(std::size_t weight) {
  if (weight == 0) return {0, 1, 0};
  return {2 * (static_cast<std::uint64_t>(weight) - 1) + 1, 1,
          2 * static_cast<std::uint64_t>(weight)};
}

GateCounts add(GateCounts a, const GateCounts& b) {
  a.two_qubit = checked_add(a.two_qubit, b.two_qubit);
  a.rotations = checked_add(a.rotations, b.rotations);
  a.cliffords = checked_add(a.cliffords, b.cliffords);
  return a;
}

GateCounts scale(const GateCounts& a, std::uint64_t factor) {
  return {checked_mul(a.two_qubit, factor), checked_mul(a.rotations, factor),
          checked_mul(a.cliffords, factor)};
}

GateCounts subtract(GateCounts a, const GateCounts& b) {
  a.two_qubit -= b.two_qubit;
  a.rotations -= b.rotations;
  a.cliffords -= b.cliffords;
  return a;
}

// Exponential multiplicity per Trotter step: 1 pass for p=1, two merged
// passes for p=2, Suzuki recursion multiplicity 2*5^(p/2-1) beyond.
std::uint64_t stage_multiplier(int p) {
  if (p == 1) return 1;
  std::uint64_t mult = 2;
  for (int i = 2; i < p; i += 2) mult = checked_mul(mult, 5);
  return mult;
}

}  // namespace

char to_char(ErrorAccounting a) {
  return a == ErrorAccounting::success_probability ? 'A' : 'B';
}

ErrorAccounting error_accounting_from_char(char c) {
  if (c == 'A' || c == 'a') return ErrorAccounting::success_probability;
  if (c == 'B' || c == 'b') return ErrorAccounting::effective_hamiltonian;
  throw std::invalid_argument("unknown error-accounting approach (want A or B)");
}

void QpeConfig::validate() const {
  if (!(epsilon_nu > 0.0))
    throw std::invalid_argument("epsilon_nu must be positive");
  if (trotter_order < 1 || (trotter_order > 1 && trotter_order % 2 != 0))
    throw std::invalid_argument(
        "Trotter order must be 1 or an even integer (product formulas exist "
        "for those orders only)");
  if (!(prefactor > 0.0))
    throw std::invalid_argument("prefactor must be positive");
  if (!(paulis_per_layer >= 1.0))
    throw std::invalid_argument("paulis_per_layer must be >= 1");
}

double norm_beta(const WeightedPauliHamiltonian& h) {
  if (h.terms.empty())
    throw std::invalid_argument("norm of an empty Hamiltonian is undefined");
  return term_norm_sum(h);
}

int ancilla_count(double beta, double epsilon_nu) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(epsilon_nu > 0.0))
    throw std::invalid_argument("epsilon_nu must be positive");
  const double n = std::ceil(std::log2(8.0 * beta / epsilon_nu));
  return n < 0.0 ? 0 : static_cast<int>(n);
}

std::uint64_t trotter_steps(double alpha, double t, double epsilon_t, int p,
                            double prefactor) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(t > 0.0)) throw std::invalid_argument("evolution time must be positive");
  if (!(epsilon_t > 0.0))
    throw std::invalid_argument("epsilon_t must be positive");
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (!(prefactor > 0.0))
    throw std::invalid_argument("prefactor must be positive");
  if (alpha == 0.0) return 1;

  const double inv_p = 1.0 / static_cast<double>(p);
  const double value = prefactor * std::pow(alpha, inv_p) *
                       std::pow(t, 1.0 + inv_p) / std::pow(epsilon_t, inv_p);
  if (!(value < 9.2e18))
    throw std::overflow_error("Trotter step count exceeds 64 bits");
  const double r = std::ceil(value);
  return r < 1.0 ? 1 : static_cast<std::uint64_t>(r);
}

ResourceReport qpe_budget(const WeightedPauliHamiltonian& h,
                          const ScalingResult& scaling, const QpeConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(scaling.upper) || scaling.upper < 0.0)
    throw std::invalid_argument("scaling upper bound must be finite and >= 0");

  ResourceReport report;
  report.n_qubits = h.n_qubits;
  report.epsilon_nu = cfg.epsilon_nu;
  report.p = cfg.trotter_order;
  report.approach = to_char(cfg.approach);
  report.bound_mode = scaling.mode;
  report.alpha_upper = scaling.upper;
  report.n_terms = h.terms.size();
  report.paulis_per_layer = cfg.paulis_per_layer;

  const double beta = norm_beta(h);
  if (!(beta > 0.0))
    throw ValidationError("degenerate input: beta = 0 (all coefficients vanish)");
  report.beta_cm1 = beta;

  const int n = ancilla_count(beta, cfg.epsilon_nu);
  report.n_ancilla = n;

  const int p = cfg.trotter_order;
  // alpha~(H~) = alpha(H) / (2 beta)^(p+1)
  report.alpha_tilde = scaling.upper / std::pow(2.0 * beta, p + 1);

  std::ostringstream assume;
  assume << "alpha~(H~) = alpha(H)/(2*beta)^(p+1) with beta = sum|c_i|";
  report.assumptions.push_back(assume.str());

  if (cfg.approach == ErrorAccounting::success_probability) {
    if (n > 0) {
      report.epsilon_t = 1.0 / (8.0 * static_cast<double>(n));
      report.success_probability_slack =
          2.0 * static_cast<double>(n) * report.epsilon_t;
      for (int j = 0; j < n; ++j) {
        const double t = std::ldexp(1.0, j);  // 2^j
        report.r_per_power.push_back(trotter_steps(
            report.alpha_tilde, t, report.epsilon_t, p, cfg.prefactor));
      }
      std::uint64_t total = 0;
      for (std::uint64_t r : report.r_per_power) total = checked_add(total, r);
      report.total_steps = total;
    }
    report.assumptions.push_back(
        "approach A: eps_T = 1/(8n) per controlled power, each power t = 2^j "
        "costed individually and summed");
  } else {
    report.epsilon_t = cfg.epsilon_nu / (2.0 * beta);
    if (n > 0) {
      report.r_per_evolution = trotter_steps(report.alpha_tilde, 1.0,
                                             report.epsilon_t, p, cfg.prefactor);
      if (n >= 64) throw std::overflow_error("2^n - 1 exceeds 64 bits");
      const std::uint64_t repeats = (std::uint64_t{1} << n) - 1;  // 2^n - 1
      report.total_steps = checked_mul(repeats, report.r_per_evolution);
    }
    report.assumptions.push_back(
        "approach B: eps_T = eps_nu/(2*beta), base evolution t = 1 repeated "
        "2^n - 1 times");
  }
  if (n == 0)
    report.assumptions.push_back(
        "requested accuracy is coarser than the full spectrum width; no "
        "evolution powers are needed");

  // Gate totals from the per-term ladder model.
  GateCounts pass{};
  for (const auto& term : h.terms) pass = add(pass, exponential_cost(term.pauli.weight()));

  const std::uint64_t n_terms = h.terms.size();
  const std::uint64_t mult = stage_multiplier(p);
  if (p == 1) {
    report.exponentials_per_step = n_terms;
    report.gates_per_step = pass;
  } else if (p == 2) {
    // symmetric step: forward and reversed passes share the middle term
    report.exponentials_per_step = checked_mul(2, n_terms) - 1;
    report.gates_per_step =
        subtract(scale(pass, 2), exponential_cost(h.terms.back().pauli.weight()));
  } else {
    report.exponentials_per_step = checked_mul(mult, n_terms);
    report.gates_per_step = scale(pass, mult);
  }
  report.gates_total = scale(report.gates_per_step, report.total_steps);

  const double depth =
      std::ceil(static_cast<double>(report.gates_total.total()) /
                cfg.paulis_per_layer);
  report.depth_estimate = static_cast<std::uint64_t>(depth);

  report.assumptions.push_back(
      "gate model per weight-w exponential: 2(w-1)+1 two-qubit (ladder plus "
      "QPE control), 1 rotation, 2w basis-change Cliffords");
  if (p == 2)
    report.assumptions.push_back(
        "second-order step merges the middle exponential: 2*N_H - 1 "
        "exponentials per step");
  if (p > 2)
    report.assumptions.push_back(
        "higher even orders use the Suzuki multiplicity 2*5^(p/2-1) passes "
        "per step");
  if (cfg.paulis_per_layer > 1.0)
    report.assumptions.push_back(
        "depth estimate divides total gates by the greedy layering ratio");
  else
    report.assumptions.push_back(
        "no layering ratio supplied; depth estimate equals the gate count");

  return report;
}

}  // namespace vibrest
