#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vibrest/commutator_scaling.hpp"
#include "vibrest/encoding.hpp"
#include "vibrest/errors.hpp"
#include "vibrest/io.hpp"
#include "vibrest/layering.hpp"
#include "vibrest/qpe_costing.hpp"
#include "vibrest/vib_hamiltonian.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace vibrest;

namespace {

WeightedPauliHamiltonian hamiltonian_from_terms(
    std::size_t n_qubits,
    const std::vector<std::pair<double, std::string>>& terms,
    const std::string& meta) {
  WeightedPauliHamiltonian h;
  h.n_qubits = n_qubits;
  h.meta = meta;
  for (const auto& [coeff, text] : terms) {
    auto p = PauliString::from_text(text);
    if (p.n_qubits() != n_qubits)
      throw std::invalid_argument("term '" + text + "' does not act on " +
                                  std::to_string(n_qubits) + " qubits");
    h.terms.push_back(WeightedPauli{coeff, std::move(p)});
  }
  return h;
}

std::vector<std::pair<double, std::string>> hamiltonian_terms(
    const WeightedPauliHamiltonian& h) {
  std::vector<std::pair<double, std::string>> out;
  out.reserve(h.terms.size());
  for (const auto& t : h.terms) out.emplace_back(t.coeff, t.pauli.to_text());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vibrational-Hamiltonian quantum resource estimation";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError",
                                             PyExc_RuntimeError);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init(&PauliString::from_text), "text"_a,
           "Parse a string over {I,X,Y,Z}; character 0 names qubit 0.")
      .def_property_readonly("n_qubits", &PauliString::n_qubits)
      .def_property_readonly("weight", &PauliString::weight)
      .def_property_readonly("phase_exponent", &PauliString::phase_exponent)
      .def("to_text", &PauliString::to_text)
      .def("__str__", &PauliString::to_text)
      .def("__repr__",
           [](const PauliString& p) {
             return "PauliString('" + p.to_text() + "')";
           })
      .def("__eq__", [](const PauliString& a, const PauliString& b) {
        return a == b;
      });

  m.def("anticommutes", &anticommutes, "a"_a, "b"_a);
  m.def("product", &product, "a"_a, "b"_a);
  m.def(
      "nested_commutator",
      [](const std::vector<std::pair<double, std::string>>& seq)
          -> py::object {
        std::vector<WeightedPauli> terms;
        for (const auto& [coeff, text] : seq)
          terms.push_back(WeightedPauli{coeff, PauliString::from_text(text)});
        const auto result = nested_commutator(terms);
        if (!result) return py::none();
        return py::make_tuple(result->scale, result->string);
      },
      "seq"_a,
      "[P_p, [..., [P_1, P_0]]] for (coeff, pauli_text) pairs; None when "
      "it vanishes, else (scale, PauliString) with the product's phase on "
      "the string.");

  py::class_<WeightedPauliHamiltonian>(m, "PauliHamiltonian")
      .def(py::init(&hamiltonian_from_terms), "n_qubits"_a, "terms"_a,
           "meta"_a = "",
           "Build from (coeff, pauli_text) pairs.")
      .def_readonly("n_qubits", &WeightedPauliHamiltonian::n_qubits)
      .def_readonly("meta", &WeightedPauliHamiltonian::meta)
      .def_property_readonly("terms", &hamiltonian_terms)
      .def("__len__",
           [](const WeightedPauliHamiltonian& h) { return h.terms.size(); });

  py::class_<VibProblem>(m, "VibProblem")
      .def(py::init([](std::size_t n_modes, std::size_t coupling_order,
                       std::size_t modals, std::vector<double> omegas) {
             VibProblem p{n_modes, coupling_order, modals, std::move(omegas)};
             p.validate();
             return p;
           }),
           "n_modes"_a, "coupling_order"_a, "modals"_a, "omegas_cm1"_a)
      .def_readonly("n_modes", &VibProblem::n_modes)
      .def_readonly("coupling_order", &VibProblem::coupling_order)
      .def_readonly("modals", &VibProblem::modals)
      .def_readonly("omegas_cm1", &VibProblem::omegas_cm1);

  py::class_<PesTerm>(m, "PesTerm")
      .def(py::init([](std::vector<std::size_t> modes,
                       std::vector<unsigned> powers, double coeff) {
             return PesTerm{std::move(modes), std::move(powers), coeff};
           }),
           "modes"_a, "powers"_a, "coeff_cm1"_a)
      .def_readonly("modes", &PesTerm::modes)
      .def_readonly("powers", &PesTerm::powers)
      .def_readonly("coeff_cm1", &PesTerm::coeff_cm1);

  py::class_<SqFactor>(m, "SqFactor")
      .def(py::init([](std::size_t mode, std::size_t raise_, std::size_t lower) {
             return SqFactor{mode, raise_, lower};
           }),
           "mode"_a, "raise"_a, "lower"_a)
      .def_readonly("mode", &SqFactor::mode)
      .def_readonly("lower", &SqFactor::lower)
      .def_property_readonly("raise",
                             [](const SqFactor& f) { return f.raise; });

  py::class_<SqTerm>(m, "SqTerm")
      .def(py::init([](double coeff, std::vector<SqFactor> factors) {
             return SqTerm{coeff, std::move(factors)};
           }),
           "coeff_cm1"_a, "factors"_a)
      .def_readonly("coeff_cm1", &SqTerm::coeff_cm1)
      .def_readonly("factors", &SqTerm::factors);

  py::class_<SecondQuantizedHamiltonian>(m, "SecondQuantizedHamiltonian")
      .def(py::init([](std::size_t n_modes, std::size_t modals,
                       std::vector<SqTerm> terms, std::string provenance) {
             return SecondQuantizedHamiltonian{n_modes, modals,
                                               std::move(terms),
                                               std::move(provenance)};
           }),
           "n_modes"_a, "modals"_a, "terms"_a, "provenance"_a = "")
      .def_readonly("n_modes", &SecondQuantizedHamiltonian::n_modes)
      .def_readonly("modals", &SecondQuantizedHamiltonian::modals)
      .def_readonly("terms", &SecondQuantizedHamiltonian::terms)
      .def_readonly("provenance", &SecondQuantizedHamiltonian::provenance)
      .def("max_abs_coeff", &SecondQuantizedHamiltonian::max_abs_coeff)
      .def("__len__", [](const SecondQuantizedHamiltonian& sq) {
        return sq.terms.size();
      });

  m.def("ho_matrix_element", &ho_matrix_element, "m"_a, "n"_a, "k"_a, "d"_a);
  m.def("build_second_quantized", &build_second_quantized, "problem"_a,
        "pes"_a, "assembly_cutoff"_a = 0.0,
        py::call_guard<py::gil_scoped_release>());
  m.def("count_terms", &count_terms, "n_modes"_a, "modals"_a,
        "coupling_order"_a);
  m.def("polyyne_modes", &polyyne_modes, "n_triple_bonds"_a);

  m.def(
      "encode",
      [](const SecondQuantizedHamiltonian& sq, const std::string& kind,
         double cutoff) {
        EncodingSpec spec{encoding_kind_from_string(kind), sq.n_modes,
                          sq.modals, cutoff};
        return encode(sq, spec);
      },
      "sq"_a, "encoding"_a = "unary", "cutoff"_a = 1e-8,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "qubit_count",
      [](const std::string& kind, std::size_t n_modes, std::size_t modals) {
        return qubit_count(
            {encoding_kind_from_string(kind), n_modes, modals, 0.0});
      },
      "encoding"_a, "n_modes"_a, "modals"_a);
  m.def("binary_rounding_note", &binary_rounding_note, "n_modes"_a, "modals"_a);
  m.def(
      "locality_stats",
      [](const WeightedPauliHamiltonian& h) {
        const auto stats = locality_stats(h);
        py::dict histogram;
        for (const auto& [w, c] : stats.histogram)
          histogram[py::int_(w)] = c;
        return py::dict("histogram"_a = histogram,
                        "max_weight"_a = stats.max_weight,
                        "mean_weight"_a = stats.mean_weight);
      },
      "h"_a);

  py::class_<ScalingOptions>(m, "ScalingOptions")
      .def(py::init([](std::uint64_t budget, unsigned workers, bool refined_p2,
                       bool second_level) {
             return ScalingOptions{budget, workers, refined_p2, second_level};
           }),
           "check_budget"_a = 10'000'000'000ULL, "workers"_a = 0,
           "refined_p2"_a = true, "second_level"_a = false)
      .def_readwrite("check_budget", &ScalingOptions::check_budget)
      .def_readwrite("workers", &ScalingOptions::workers)
      .def_readwrite("refined_p2", &ScalingOptions::refined_p2)
      .def_readwrite("second_level", &ScalingOptions::second_level);

  py::class_<ScalingResult>(m, "ScalingResult")
      .def_readonly("p", &ScalingResult::p)
      .def_property_readonly(
          "mode", [](const ScalingResult& r) { return to_string(r.mode); })
      .def_readonly("lower", &ScalingResult::lower)
      .def_readonly("upper", &ScalingResult::upper)
      .def_readonly("tol", &ScalingResult::tol)
      .def_readonly("n_terms", &ScalingResult::n_terms)
      .def_readonly("n_big", &ScalingResult::n_big)
      .def_readonly("tuples_evaluated", &ScalingResult::tuples_evaluated)
      .def_readonly("wall_time_s", &ScalingResult::wall_time_s)
      .def("__repr__", [](const ScalingResult& r) {
        return "ScalingResult(mode=" + std::string(to_string(r.mode)) +
               ", lower=" + std::to_string(r.lower) +
               ", upper=" + std::to_string(r.upper) + ")";
      });

  m.def("term_norm_sum",
        py::overload_cast<const WeightedPauliHamiltonian&>(&term_norm_sum),
        "h"_a);
  m.def(
      "alpha_exact",
      [](const WeightedPauliHamiltonian& h, int p,
         const ScalingOptions& options) { return alpha_exact(h, p, options); },
      "h"_a, "p"_a, "options"_a = ScalingOptions{},
      py::call_guard<py::gil_scoped_release>());
  m.def("alpha_bounds", &alpha_bounds, "h"_a, "p"_a, "tol"_a,
        "options"_a = ScalingOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("crude_bound", &crude_bound, "h"_a, "p"_a);

  py::class_<GateCounts>(m, "GateCounts")
      .def_readonly("two_qubit", &GateCounts::two_qubit)
      .def_readonly("rotations", &GateCounts::rotations)
      .def_readonly("cliffords", &GateCounts::cliffords)
      .def_property_readonly("total", &GateCounts::total);

  py::class_<QpeConfig>(m, "QpeConfig")
      .def(py::init([](double epsilon_nu, int p, const std::string& approach,
                       double prefactor, double paulis_per_layer) {
             QpeConfig cfg{epsilon_nu, p,
                           error_accounting_from_char(approach.at(0)),
                           prefactor, paulis_per_layer};
             cfg.validate();
             return cfg;
           }),
           "epsilon_nu"_a = 1.0, "trotter_order"_a = 2, "approach"_a = "A",
           "prefactor"_a = 1.0, "paulis_per_layer"_a = 1.0)
      .def_readonly("epsilon_nu", &QpeConfig::epsilon_nu)
      .def_readonly("trotter_order", &QpeConfig::trotter_order)
      .def_readonly("prefactor", &QpeConfig::prefactor)
      .def_readonly("paulis_per_layer", &QpeConfig::paulis_per_layer);

  py::class_<ResourceReport>(m, "ResourceReport")
      .def_readonly("n_qubits", &ResourceReport::n_qubits)
      .def_readonly("n_ancilla", &ResourceReport::n_ancilla)
      .def_readonly("beta_cm1", &ResourceReport::beta_cm1)
      .def_readonly("epsilon_nu", &ResourceReport::epsilon_nu)
      .def_readonly("epsilon_t", &ResourceReport::epsilon_t)
      .def_readonly("p", &ResourceReport::p)
      .def_property_readonly(
          "approach",
          [](const ResourceReport& r) { return std::string(1, r.approach); })
      .def_readonly("alpha_upper", &ResourceReport::alpha_upper)
      .def_readonly("alpha_tilde", &ResourceReport::alpha_tilde)
      .def_readonly("r_per_power", &ResourceReport::r_per_power)
      .def_readonly("r_per_evolution", &ResourceReport::r_per_evolution)
      .def_readonly("total_steps", &ResourceReport::total_steps)
      .def_readonly("n_terms", &ResourceReport::n_terms)
      .def_readonly("exponentials_per_step",
                    &ResourceReport::exponentials_per_step)
      .def_readonly("gates_per_step", &ResourceReport::gates_per_step)
      .def_readonly("gates_total", &ResourceReport::gates_total)
      .def_readonly("paulis_per_layer", &ResourceReport::paulis_per_layer)
      .def_readonly("depth_estimate", &ResourceReport::depth_estimate)
      .def_readonly("success_probability_slack",
                    &ResourceReport::success_probability_slack)
      .def_readonly("assumptions", &ResourceReport::assumptions);

  m.def("norm_beta", &norm_beta, "h"_a);
  m.def("ancilla_count", &ancilla_count, "beta"_a, "epsilon_nu"_a);
  m.def("trotter_steps", &trotter_steps, "alpha"_a, "t"_a, "epsilon_t"_a,
        "p"_a, "prefactor"_a = 1.0);
  m.def("qpe_budget", &qpe_budget, "h"_a, "scaling"_a, "config"_a);

  py::class_<LayeringStats>(m, "LayeringStats")
      .def_readonly("n_terms", &LayeringStats::n_terms)
      .def_readonly("runs", &LayeringStats::runs)
      .def_readonly("seed", &LayeringStats::seed)
      .def_readonly("layer_counts", &LayeringStats::layer_counts)
      .def_readonly("ratios", &LayeringStats::ratios)
      .def_readonly("mean_ratio", &LayeringStats::mean_ratio)
      .def_readonly("min_ratio", &LayeringStats::min_ratio)
      .def_readonly("max_ratio", &LayeringStats::max_ratio)
      .def_readonly("stddev_ratio", &LayeringStats::stddev_ratio);

  m.def(
      "greedy_layers",
      [](const std::vector<std::string>& texts, std::uint64_t seed,
         const std::string& strategy) {
        std::vector<PauliString> terms;
        for (const auto& t : texts) terms.push_back(PauliString::from_text(t));
        const auto s = strategy == "best_fit" ? LayeringStrategy::best_fit
                                              : LayeringStrategy::greedy_scan;
        return greedy_layers(terms, seed, s);
      },
      "terms"_a, "seed"_a, "strategy"_a = "greedy_scan");
  m.def(
      "depth_ratio",
      [](const WeightedPauliHamiltonian& h, std::size_t runs,
         std::uint64_t seed, const std::string& strategy) {
        const auto s = strategy == "best_fit" ? LayeringStrategy::best_fit
                                              : LayeringStrategy::greedy_scan;
        return depth_ratio(h, runs, seed, s);
      },
      "h"_a, "runs"_a = 100, "seed"_a = 1, "strategy"_a = "greedy_scan",
      py::call_guard<py::gil_scoped_release>());

  m.def("read_pauli_file", &io::read_pauli_file, "path"_a);
  m.def("write_pauli_file", &io::write_pauli_file, "path"_a, "h"_a);
  m.def("read_sq_file", &io::read_sq_file, "path"_a);
  m.def("write_sq_file", &io::write_sq_file, "path"_a, "sq"_a);
  m.def(
      "read_pes_file",
      [](const std::filesystem::path& path) {
        const auto input = io::read_pes_file(path);
        return py::make_tuple(input.problem, input.terms, input.notes);
      },
      "path"_a, "Returns (problem, pes_terms, notes).");
}
