#include "vibrest/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vibrest/errors.hpp"

namespace vibrest::io {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// Typed field access with json-pointer style locations in diagnostics.
const json& field(const json& obj, const std::string& key,
                  const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

template <typename T>
T number(const json& value, const std::string& where) {
  if (!value.is_number())
    throw ValidationError(where + ": expected a number");
  return value.get<T>();
}

std::size_t index_number(const json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw ValidationError(where + ": expected a non-negative integer");
  return value.get<std::size_t>();
}

void check_schema_version(const json& doc, const std::string& origin) {
  const auto& v = field(doc, "schema_version", origin);
  if (!v.is_number_integer() || v.get<int>() != 1)
    throw ValidationError(origin + ": unsupported schema_version (expected 1)");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

PesInput read_pes_json(const json& doc, const std::string& origin) {
  check_schema_version(doc, origin);
  PesInput input;
  input.problem.n_modes =
      index_number(field(doc, "n_modes", origin), origin + ".n_modes");
  input.problem.coupling_order = index_number(
      field(doc, "truncation_order", origin), origin + ".truncation_order");

  if (doc.contains("modals_per_mode")) {
    const auto& per_mode = doc.at("modals_per_mode");
    if (!per_mode.is_array() || per_mode.size() != input.problem.n_modes)
      throw ValidationError(origin +
                            ".modals_per_mode: expected an array of n_modes "
                            "entries");
    std::size_t d_max = 0;
    for (std::size_t i = 0; i < per_mode.size(); ++i)
      d_max = std::max(d_max, index_number(per_mode.at(i),
                                           origin + ".modals_per_mode[" +
                                               std::to_string(i) + "]"));
    input.problem.modals = d_max;
    input.notes.push_back(
        "per-mode modal counts supplied; using the uniform bound d = " +
        std::to_string(d_max) + " for sizing");
  } else {
    input.problem.modals =
        index_number(field(doc, "modals", origin), origin + ".modals");
  }

  const auto& omegas = field(doc, "omegas_cm1", origin);
  if (!omegas.is_array())
    throw ValidationError(origin + ".omegas_cm1: expected an array");
  for (std::size_t i = 0; i < omegas.size(); ++i)
    input.problem.omegas_cm1.push_back(number<double>(
        omegas.at(i), origin + ".omegas_cm1[" + std::to_string(i) + "]"));

  const auto& terms = field(doc, "terms", origin);
  if (!terms.is_array())
    throw ValidationError(origin + ".terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = origin + ".terms[" + std::to_string(i) + "]";
    const auto& t = terms.at(i);
    PesTerm term;
    const auto& modes = field(t, "modes", where);
    const auto& powers = field(t, "powers", where);
    if (!modes.is_array() || !powers.is_array())
      throw ValidationError(where + ": modes and powers must be arrays");
    for (std::size_t j = 0; j < modes.size(); ++j)
      term.modes.push_back(
          index_number(modes.at(j), where + ".modes[" + std::to_string(j) + "]"));
    for (std::size_t j = 0; j < powers.size(); ++j)
      term.powers.push_back(static_cast<unsigned>(index_number(
          powers.at(j), where + ".powers[" + std::to_string(j) + "]")));
    term.coeff_cm1 = number<double>(field(t, "coeff_cm1", where), where + ".coeff_cm1");
    input.terms.push_back(std::move(term));
  }

  input.problem.validate();
  return input;
}

PesInput read_pes_file(const std::filesystem::path& path) {
  return read_pes_json(load_json(path), path.string());
}

SecondQuantizedHamiltonian read_sq_file(const std::filesystem::path& path) {
  const json doc = load_json(path);
  const std::string origin = path.string();
  check_schema_version(doc, origin);

  SecondQuantizedHamiltonian sq;
  sq.n_modes = index_number(field(doc, "n_modes", origin), origin + ".n_modes");
  sq.modals = index_number(field(doc, "modals", origin), origin + ".modals");
  if (doc.contains("provenance") && doc.at("provenance").is_string())
    sq.provenance = doc.at("provenance").get<std::string>();

  const auto& terms = field(doc, "terms", origin);
  if (!terms.is_array())
    throw ValidationError(origin + ".terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = origin + ".terms[" + std::to_string(i) + "]";
    const auto& t = terms.at(i);
    SqTerm term;
    term.coeff_cm1 =
        number<double>(field(t, "coeff_cm1", where), where + ".coeff_cm1");
    const auto& factors = field(t, "factors", where);
    if (!factors.is_array())
      throw ValidationError(where + ".factors: expected an array");
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const std::string fw = where + ".factors[" + std::to_string(j) + "]";
      const auto& f = factors.at(j);
      SqFactor factor;
      factor.mode = index_number(field(f, "mode", fw), fw + ".mode");
      factor.raise = index_number(field(f, "raise", fw), fw + ".raise");
      factor.lower = index_number(field(f, "lower", fw), fw + ".lower");
      if (factor.mode >= sq.n_modes)
        throw ValidationError(fw + ".mode: index " + std::to_string(factor.mode) +
                              " out of range (n_modes=" +
                              std::to_string(sq.n_modes) + ")");
      if (factor.raise >= sq.modals || factor.lower >= sq.modals)
        throw ValidationError(fw + ": modal index out of range (modals=" +
                              std::to_string(sq.modals) + ")");
      term.factors.push_back(factor);
    }
    sq.terms.push_back(std::move(term));
  }
  return sq;
}

json sq_to_json(const SecondQuantizedHamiltonian& sq) {
  json terms = json::array();
  for (const auto& t : sq.terms) {
    json factors = json::array();
    for (const auto& f : t.factors)
      factors.push_back(
          {{"mode", f.mode}, {"raise", f.raise}, {"lower", f.lower}});
    terms.push_back({{"coeff_cm1", t.coeff_cm1}, {"factors", factors}});
  }
  return json{{"schema_version", 1},
              {"kind", "second_quantized"},
              {"n_modes", sq.n_modes},
              {"modals", sq.modals},
              {"provenance", sq.provenance},
              {"terms", terms}};
}

void write_sq_file(const std::filesystem::path& path,
                   const SecondQuantizedHamiltonian& sq) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << sq_to_json(sq).dump(2) << '\n';
}

WeightedPauliHamiltonian read_pauli_stream(std::istream& in,
                                           const std::string& origin) {
  WeightedPauliHamiltonian h;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> meta_lines;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (line.empty()) continue;
    if (line[0] == '#') {
      meta_lines.push_back(line.substr(line.find_first_not_of("# ")));
      continue;
    }
    std::istringstream ls(line);
    if (!have_header) {
      std::string key;
      ls >> key;
      if (key != "n_qubits")
        throw ValidationError(where + ": expected 'n_qubits <count>' header");
      if (!(ls >> h.n_qubits))
        throw ValidationError(where + ": malformed qubit count");
      have_header = true;
      continue;
    }
    std::string coeff_text, paulis;
    if (!(ls >> coeff_text >> paulis))
      throw ValidationError(where + ": expected '<coeff> <paulis>'");
    double coeff = 0.0;
    const auto res = std::from_chars(
        coeff_text.data(), coeff_text.data() + coeff_text.size(), coeff);
    if (res.ec != std::errc{} || res.ptr != coeff_text.data() + coeff_text.size())
      throw ValidationError(where + ": cannot parse coefficient '" +
                            coeff_text + "'");
    if (paulis.size() != h.n_qubits)
      throw ValidationError(where + ": Pauli string has " +
                            std::to_string(paulis.size()) + " characters, "
                            "expected " + std::to_string(h.n_qubits));
    PauliString p;
    try {
      p = PauliString::from_text(paulis);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ": " + e.what());
    }
    h.terms.push_back(WeightedPauli{coeff, std::move(p)});
  }
  if (!have_header)
    throw ValidationError(origin + ": missing 'n_qubits' header line");
  for (std::size_t i = 0; i < meta_lines.size(); ++i) {
    if (i) h.meta += "; ";
    h.meta += meta_lines[i];
  }
  return h;
}

WeightedPauliHamiltonian read_pauli_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_pauli_stream(in, path.string());
}

void write_pauli_stream(std::ostream& out, const WeightedPauliHamiltonian& h) {
  if (!h.meta.empty()) out << "# " << h.meta << '\n';
  out << "n_qubits " << h.n_qubits << '\n';
  for (const auto& term : h.terms)
    out << format_double(term.coeff) << ' ' << term.pauli.to_text() << '\n';
}

void write_pauli_file(const std::filesystem::path& path,
                      const WeightedPauliHamiltonian& h) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_pauli_stream(out, h);
}

json scaling_to_json(const ScalingResult& result) {
  return json{{"p", result.p},
              {"mode", to_string(result.mode)},
              {"tol", result.tol},
              {"lower", result.lower},
              {"upper", result.upper},
              {"n_terms", result.n_terms},
              {"n_big", result.n_big},
              {"tuples_evaluated", result.tuples_evaluated},
              {"timing", {{"wall_time_s", result.wall_time_s}}}};
}

json report_to_json(const ResourceReport& report) {
  json gates_per_step{{"two_qubit", report.gates_per_step.two_qubit},
                      {"rotations", report.gates_per_step.rotations},
                      {"cliffords", report.gates_per_step.cliffords},
                      {"total", report.gates_per_step.total()}};
  json gates_total{{"two_qubit", report.gates_total.two_qubit},
                   {"rotations", report.gates_total.rotations},
                   {"cliffords", report.gates_total.cliffords},
                   {"total", report.gates_total.total()}};
  return json{{"n_qubits", report.n_qubits},
              {"n_ancilla", report.n_ancilla},
              {"beta_cm1", report.beta_cm1},
              {"epsilon_nu", report.epsilon_nu},
              {"epsilon_t", report.epsilon_t},
              {"p", report.p},
              {"approach", std::string(1, report.approach)},
              {"bound_mode", to_string(report.bound_mode)},
              {"alpha_upper", report.alpha_upper},
              {"alpha_tilde", report.alpha_tilde},
              {"r_per_power", report.r_per_power},
              {"r_per_evolution", report.r_per_evolution},
              {"total_steps", report.total_steps},
              {"n_terms", report.n_terms},
              {"exponentials_per_step", report.exponentials_per_step},
              {"gates_per_step", gates_per_step},
              {"gates_total", gates_total},
              {"paulis_per_layer", report.paulis_per_layer},
              {"depth_estimate", report.depth_estimate},
              {"success_probability_slack", report.success_probability_slack},
              {"assumptions", report.assumptions}};
}

json layering_to_json(const LayeringStats& stats) {
  return json{{"n_terms", stats.n_terms},
              {"runs", stats.runs},
              {"seed", stats.seed},
              {"layer_counts", stats.layer_counts},
              {"ratios", stats.ratios},
              {"mean_ratio", stats.mean_ratio},
              {"min_ratio", stats.min_ratio},
              {"max_ratio", stats.max_ratio},
              {"stddev_ratio", stats.stddev_ratio}};
}

json locality_to_json(const LocalityStats& stats) {
  json histogram = json::object();
  for (const auto& [weight, count] : stats.histogram)
    histogram[std::to_string(weight)] = count;
  return json{{"histogram", histogram},
              {"max_weight", stats.max_weight},
              {"mean_weight", stats.mean_weight}};
}

}  // namespace vibrest::io
