#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vibrest/commutator_scaling.hpp"
#include "vibrest/encoding.hpp"
#include "vibrest/layering.hpp"
#include "vibrest/pauli.hpp"
#include "vibrest/qpe_costing.hpp"
#include "vibrest/vib_hamiltonian.hpp"

namespace vibrest::io {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Contents of a PES file. When the file carries per-mode modal counts
/// the uniform bound max(d_l) is used and `notes` records the fact.
struct PesInput {
  VibProblem problem;
  std::vector<PesTerm> terms;
  std::vector<std::string> notes;
};

/// Reads a version-1 PES document:
/// { schema_version, n_modes, truncation_order, modals, omegas_cm1[],
///   terms[]: {modes[], powers[], coeff_cm1} }.
/// Throws ValidationError with a field-precise message on any violation.
PesInput read_pes_file(const std::filesystem::path& path);
PesInput read_pes_json(const nlohmann::json& doc, const std::string& origin);

/// Second-quantized Hamiltonian files:
/// { schema_version, n_modes, modals, provenance,
///   terms[]: {coeff_cm1, factors[]: {mode, raise, lower}} }.
SecondQuantizedHamiltonian read_sq_file(const std::filesystem::path& path);
nlohmann::json sq_to_json(const SecondQuantizedHamiltonian& sq);
void write_sq_file(const std::filesystem::path& path,
                   const SecondQuantizedHamiltonian& sq);

/// Qubit-Hamiltonian text format: '#' comment lines carrying provenance,
/// one `n_qubits N` header line, then one `<coeff> <paulis>` line per
/// term. Coefficients are printed in shortest round-trip form, so
/// write/read preserves every bit.
WeightedPauliHamiltonian read_pauli_file(const std::filesystem::path& path);
WeightedPauliHamiltonian read_pauli_stream(std::istream& in,
                                           const std::string& origin);
void write_pauli_file(const std::filesystem::path& path,
                      const WeightedPauliHamiltonian& h);
void write_pauli_stream(std::ostream& out, const WeightedPauliHamiltonian& h);

/// Report serialization. Timings are kept under a separate key so that
/// everything else is reproducible bit for bit.
nlohmann::json scaling_to_json(const ScalingResult& result);
nlohmann::json report_to_json(const ResourceReport& report);
nlohmann::json layering_to_json(const LayeringStats& stats);
nlohmann::json locality_to_json(const LocalityStats& stats);

}  // namespace vibrest::io
