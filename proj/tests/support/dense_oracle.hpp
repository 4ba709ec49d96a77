#pragma once

// Test-only dense linear-algebra oracles. Everything here recomputes
// quantities from explicit matrices, independent of the bit-packed
// implementation paths it is used to check. Capped at 10 qubits.

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "vibrest/pauli.hpp"
#include "vibrest/vib_hamiltonian.hpp"

namespace vibrest::testing {

using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix single_pauli(char letter) {
  Matrix m(2, 2);
  const std::complex<double> i(0.0, 1.0);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

/// 2^n x 2^n matrix of a Pauli string, phase included. Qubit 0 indexes the
/// least significant bit of the basis state.
inline Matrix pauli_matrix(const PauliString& p) {
  if (p.n_qubits() > 10) throw std::invalid_argument("oracle capped at 10 qubits");
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t q = 0; q < p.n_qubits(); ++q)
    m = kron(single_pauli(p.letter(q)), m);
  return p.phase() * m;
}

inline Matrix hamiltonian_matrix(const WeightedPauliHamiltonian& h) {
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& term : h.terms) m += term.coeff * pauli_matrix(term.pauli);
  return m;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
  return a * b - b * a;
}

/// [A_p, [..., [A_1, A_0]]] by direct matrix recursion.
inline Matrix nested_commutator_matrix(std::span<const WeightedPauli> seq) {
  Matrix acc = seq[0].coeff * pauli_matrix(seq[0].pauli);
  for (std::size_t i = 1; i < seq.size(); ++i)
    acc = commutator(seq[i].coeff * pauli_matrix(seq[i].pauli), acc);
  return acc;
}

/// Bosonic transfer operator |k><h| on one d-level mode.
inline Matrix transfer_op(std::size_t d, std::size_t k, std::size_t h) {
  Matrix m = Matrix::Zero(d, d);
  m(k, h) = 1.0;
  return m;
}

/// Dense d^L x d^L matrix of a second-quantized Hamiltonian; mode 0 is
/// the least significant digit of the basis index.
inline Matrix sq_matrix(const SecondQuantizedHamiltonian& sq) {
  Eigen::Index dim = 1;
  for (std::size_t l = 0; l < sq.n_modes; ++l) dim *= sq.modals;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& term : sq.terms) {
    Matrix acc = Matrix::Identity(1, 1);
    std::size_t next_factor = 0;
    for (std::size_t l = 0; l < sq.n_modes; ++l) {
      Matrix factor = Matrix::Identity(sq.modals, sq.modals);
      if (next_factor < term.factors.size() &&
          term.factors[next_factor].mode == l) {
        factor = transfer_op(sq.modals, term.factors[next_factor].raise,
                             term.factors[next_factor].lower);
        ++next_factor;
      }
      acc = kron(factor, acc);
    }
    out += term.coeff_cm1 * acc;
  }
  return out;
}

/// Maximum absolute matrix entry; the oracle's notion of equality.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace vibrest::testing
