#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vibrest/commutator_scaling.hpp"
#include "vibrest/pauli.hpp"

namespace vibrest {

/// How Trotter error is charged against the phase-estimation output.
/// Approach A budgets the success probability of the circuit (one error
/// allowance per controlled power); approach B treats the product formula
/// as exact evolution of a perturbed Hamiltonian.
enum class ErrorAccounting { success_probability, effective_hamiltonian };

char to_char(ErrorAccounting a);
ErrorAccounting error_accounting_from_char(char c);

struct QpeConfig {
  double epsilon_nu = 1.0;  // target spectroscopic accuracy, cm^-1
  int trotter_order = 2;    // p; 1 or any even order
  ErrorAccounting approach = ErrorAccounting::success_probability;
  double prefactor = 1.0;   // multiplies the step-count expression
  /// Paulis-per-layer ratio from the layering module; 1 disables the
  /// depth reduction.
  double paulis_per_layer = 1.0;

  void validate() const;
};

struct GateCounts {
  std::uint64_t two_qubit = 0;
  std::uint64_t rotations = 0;
  std::uint64_t cliffords = 0;

  std::uint64_t total() const { return two_qubit + rotations + cliffords; }
};

/// Full costing of one QPE run, with every formula choice echoed into
/// `assumptions`.
struct ResourceReport {
  std::size_t n_qubits = 0;
  int n_ancilla = 0;
  double beta_cm1 = 0.0;    // coefficient 1-norm used to scale the spectrum
  double epsilon_nu = 0.0;
  double epsilon_t = 0.0;
  int p = 0;
  char approach = 'A';
  BoundMode bound_mode = BoundMode::split;
  double alpha_upper = 0.0;  // commutator scaling in (cm^-1)^(p+1)
  double alpha_tilde = 0.0;  // rescaled to the shifted/scaled Hamiltonian

  std::vector<std::uint64_t> r_per_power;  // approach A, j = 0..n-1
  std::uint64_t r_per_evolution = 0;       // approach B
  std::uint64_t total_steps = 0;           // R

  std::uint64_t n_terms = 0;
  std::uint64_t exponentials_per_step = 0;
  GateCounts gates_per_step;
  GateCounts gates_total;
  double paulis_per_layer = 1.0;
  std::uint64_t depth_estimate = 0;
  double success_probability_slack = 0.0;  // 2*n*eps_T, approach A only

  std::vector<std::string> assumptions;
};

/// Coefficient 1-norm sum|c_i|; beta in the shift/scale
/// H~ = (H + beta I) / (2 beta) that places the spectrum in [0, 1].
/// Throws std::invalid_argument on an empty Hamiltonian.
double norm_beta(const WeightedPauliHamiltonian& h);

/// QPE register size ceil(log2(8 beta / epsilon_nu)), clamped at zero;
/// reads the eigenvalue to epsilon_nu with success probability >= 0.75.
int ancilla_count(double beta, double epsilon_nu);

/// Trotter steps for one evolution:
/// ceil(prefactor * alpha^(1/p) * t^(1+1/p) / epsilon_t^(1/p)), at least
/// 1. alpha = 0 (fully commuting Hamiltonian) needs exactly one step.
/// Throws std::invalid_argument for non-positive t or epsilon_t.
std::uint64_t trotter_steps(double alpha, double t, double epsilon_t, int p,
                            double prefactor = 1.0);

/// Assembles the resource report for a Hamiltonian whose commutator
/// scaling has been bracketed. Uses scaling.upper as the alpha estimate.
ResourceReport qpe_budget(const WeightedPauliHamiltonian& h,
                          const ScalingResult& scaling, const QpeConfig& cfg);

}  // namespace vibrest
