#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vibrest {

/// Sizing parameters of an L-mode vibrational problem with a uniform
/// number of modals per mode.
struct VibProblem {
  std::size_t n_modes = 0;           // L
  std::size_t coupling_order = 0;    // D, 1 <= D <= L
  std::size_t modals = 0;            // d, >= 2
  std::vector<double> omegas_cm1;    // harmonic frequency per mode, > 0

  /// Throws ValidationError when any invariant fails.
  void validate() const;
};

/// One polynomial term of the potential energy surface:
/// coeff * Q_{m1}^{p1} * ... acting on strictly increasing mode indices.
/// An empty term (no modes) is the constant offset.
struct PesTerm {
  std::vector<std::size_t> modes;
  std::vector<unsigned> powers;
  double coeff_cm1 = 0.0;
};

/// One transfer-operator factor a†_raise a_lower on a single mode.
struct SqFactor {
  std::size_t mode = 0;
  std::size_t raise = 0;
  std::size_t lower = 0;

  bool operator==(const SqFactor&) const = default;
  auto operator<=>(const SqFactor&) const = default;
};

/// Product of transfer operators on strictly increasing modes, with a
/// real coefficient. No factors means a constant (identity) term.
struct SqTerm {
  double coeff_cm1 = 0.0;
  std::vector<SqFactor> factors;
};

/// The second-quantized Hamiltonian: the pre-encoding intermediate form.
struct SecondQuantizedHamiltonian {
  std::size_t n_modes = 0;
  std::size_t modals = 0;
  std::vector<SqTerm> terms;
  std::string provenance;

  double max_abs_coeff() const;
};

/// ⟨m|Q^k|n⟩ for the dimensionless harmonic oscillator, Q = (a + a†)/√2.
/// Evaluated by raising the tridiagonal Q matrix to the k-th power in an
/// enlarged basis of size d + k, which is exact for the d x d block.
/// Zero when |m - n| > k or when m - n - k is odd.
/// Throws std::invalid_argument unless 0 <= m, n < d.
double ho_matrix_element(std::size_t m, std::size_t n, unsigned k,
                         std::size_t d);

/// Builds the second-quantized Hamiltonian in the harmonic-oscillator
/// modal basis: diagonal number-operator terms omega*(n + 1/2) per mode
/// plus one term per non-zero product of Q-power integrals of each PES
/// term. Terms sharing the same factor list are merged; merged terms with
/// |coeff| below assembly_cutoff (or exactly zero) are dropped. Output
/// order is canonical, independent of the PES term order.
SecondQuantizedHamiltonian build_second_quantized(
    const VibProblem& problem, const std::vector<PesTerm>& pes,
    double assembly_cutoff = 0.0);

/// Number of summands of the D-truncated L-mode expansion with d modals:
/// sum over m = 1..D of C(L, m) * d^(2m), counting zeros.
/// Throws std::invalid_argument unless 1 <= D <= L and d >= 1.
std::uint64_t count_terms(std::size_t n_modes, std::size_t modals,
                          std::size_t coupling_order);

/// Vibrational mode count of a linear polyyne chain: 6*n_triple_bonds + 1.
std::size_t polyyne_modes(std::size_t n_triple_bonds);

}  // namespace vibrest
