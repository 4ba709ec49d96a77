#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "vibrest/pauli.hpp"
#include "vibrest/vib_hamiltonian.hpp"

namespace vibrest {

enum class EncodingKind { unary, binary };

std::string to_string(EncodingKind kind);
EncodingKind encoding_kind_from_string(const std::string& name);

/// How a second-quantized Hamiltonian is mapped to qubits.
struct EncodingSpec {
  EncodingKind kind = EncodingKind::unary;
  std::size_t n_modes = 0;  // L
  std::size_t modals = 0;   // d
  double cutoff_cm1 = 1e-8; // drop encoded terms with |coeff| <= cutoff

  void validate() const;

  /// Qubits per mode: d for unary, ceil(log2 d) for binary.
  std::size_t qubits_per_mode() const;
};

/// Total qubit count: L*d for unary, L*ceil(log2 d) for binary.
std::size_t qubit_count(const EncodingSpec& spec);

/// For binary encodings of non-power-of-two d the per-mode register must
/// still hold ceil(log2 d) whole qubits; L*log2(d) rounded to an integer
/// is sometimes quoted instead. Returns a note spelling out both numbers,
/// or nullopt when they agree.
std::optional<std::string> binary_rounding_note(std::size_t n_modes,
                                                std::size_t modals);

/// Maps transfer-operator products to weighted Pauli strings.
///
/// Unary: a†_k a_h on one mode becomes σ+_k σ-_h with σ± = (σx ∓ iσy)/2
/// (number projector (I - Z_k)/2 when k = h), on qubits l*d + modal.
/// Binary: |k⟩⟨h| expands bit-by-bit through |0⟩⟨0| = (I + Z)/2 and
/// friends over the mode's ceil(log2 d) qubits, bit 0 at l*b + 0.
/// Multi-mode terms take the tensor product across modes. Like strings
/// are merged, coefficients must come out real (imaginary residue below
/// 1e-12 is truncated, anything larger reports non-Hermitian input), and
/// surviving terms are sorted canonically so the result is independent of
/// the input term order.
WeightedPauliHamiltonian encode(const SecondQuantizedHamiltonian& sq,
                                const EncodingSpec& spec);

/// Distribution of Pauli weights across a Hamiltonian's terms.
struct LocalityStats {
  std::map<std::size_t, std::size_t> histogram;
  std::size_t max_weight = 0;
  double mean_weight = 0.0;
};

LocalityStats locality_stats(const WeightedPauliHamiltonian& h);

}  // namespace vibrest
