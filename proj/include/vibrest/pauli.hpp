#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vibrest {

/// Tensor product of single-qubit Paulis in bit-packed form.
///
/// The masks identify the letter on each qubit (X sets x, Z sets z, Y sets
/// both) and the stored value is i^phase times the Hermitian string the
/// masks spell. Qubit index 0 lives in the least significant bit of word 0.
/// Instances are immutable after construction, so any number of threads may
/// share them.
class PauliString {
 public:
  /// Identity on n qubits.
  explicit PauliString(std::size_t n_qubits = 0);

  /// Parses a string over {I,X,Y,Z}; character 0 names qubit 0.
  /// Throws std::invalid_argument on any other character.
  static PauliString from_text(std::string_view text);

  /// Inverse of from_text. Phase is not part of the text form; callers
  /// that track a non-Hermitian phase must render it separately.
  std::string to_text() const;

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t num_words() const { return x_.size(); }

  /// Number of qubits acted on non-trivially.
  std::size_t weight() const;

  bool is_identity() const;

  /// Exponent e in the stored phase i^e, reduced mod 4.
  int phase_exponent() const { return phase_; }

  /// True when the stored phase is +1 or -1 (the string is Hermitian).
  bool is_hermitian() const { return phase_ % 2 == 0; }

  /// +1, +i, -1 or -i as a complex number.
  std::complex<double> phase() const;

  /// Same masks with phase forced to i^0.
  PauliString without_phase() const;

  /// Letter on one qubit: 'I', 'X', 'Y' or 'Z'.
  char letter(std::size_t qubit) const;

  std::uint64_t x_word(std::size_t w) const { return x_[w]; }
  std::uint64_t z_word(std::size_t w) const { return z_[w]; }
  std::uint64_t support_word(std::size_t w) const { return x_[w] | z_[w]; }

  /// True when the two strings act on disjoint qubit sets.
  bool support_disjoint(const PauliString& other) const;

  friend bool anticommutes(const PauliString& a, const PauliString& b);
  friend PauliString product(const PauliString& a, const PauliString& b);

  bool operator==(const PauliString& other) const = default;

  /// Total order on (n_qubits, masks, phase); used to canonicalize term
  /// lists so that serialized Hamiltonians are reproducible.
  static bool mask_less(const PauliString& a, const PauliString& b);

  /// Builder used by the encoders: sets the letter on one qubit of an
  /// identity-initialized string. The letter must currently be 'I'.
  void place_letter(std::size_t qubit, char letter);

  void multiply_phase_exponent(int exponent);

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::uint8_t phase_ = 0;  // exponent of i, mod 4
};

/// True iff the strings anticommute (symplectic inner product is odd).
/// Throws std::invalid_argument on size mismatch.
bool anticommutes(const PauliString& a, const PauliString& b);

/// Exact product a*b with phase tracked through the Pauli algebra.
/// Throws std::invalid_argument on size mismatch.
PauliString product(const PauliString& a, const PauliString& b);

/// One Hamiltonian term: a real coefficient times a Pauli string.
struct WeightedPauli {
  double coeff = 0.0;
  PauliString pauli;
};

/// A qubit Hamiltonian as a flat list of weighted Pauli strings.
struct WeightedPauliHamiltonian {
  std::size_t n_qubits = 0;
  std::vector<WeightedPauli> terms;
  std::string meta;  // provenance, carried through file round-trips
};

/// A scaled Pauli string, e.g. the value of a nested commutator. The
/// operator denoted is scale * string (including the string's phase).
struct ScaledPauli {
  double scale = 0.0;
  PauliString string;

  /// Spectral norm |scale| (Pauli strings are unitary).
  double norm() const { return scale < 0 ? -scale : scale; }
};

/// Evaluates [P_p, [..., [P_1, P_0]]] for seq = {P_0, ..., P_p} without
/// forming matrices. Returns nullopt when the commutator vanishes, which
/// is decided by the anticommutation parity of each string with its
/// predecessors using at most p(p+1)/2 checks. A non-zero result is
/// 2^p * (c_p...c_0) * (P_p...P_1P_0) with the string product's phase
/// tracked exactly; its norm is always 2^p * |c_p...c_0|.
/// Throws std::invalid_argument when seq has fewer than two entries.
std::optional<ScaledPauli> nested_commutator(std::span<const WeightedPauli> seq);

}  // namespace vibrest
