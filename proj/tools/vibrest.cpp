// vibrest: sizing, encoding, Trotter-bound, and QPE-budget workflow for
// vibrational qubit Hamiltonians. Subcommands: count, build, encode,
// estimate, layers.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "vibrest/commutator_scaling.hpp"
#include "vibrest/encoding.hpp"
#include "vibrest/errors.hpp"
#include "vibrest/io.hpp"
#include "vibrest/layering.hpp"
#include "vibrest/numeric.hpp"
#include "vibrest/qpe_costing.hpp"
#include "vibrest/vib_hamiltonian.hpp"

namespace {

using nlohmann::json;
using namespace vibrest;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitResourceLimit = 4;

struct OutputSink {
  std::string format = "table";
  std::string path;  // empty = stdout

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
};

void add_output_flags(CLI::App* cmd, OutputSink& sink) {
  cmd->add_option("--format", sink.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", sink.path, "Write output to a file");
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::size_t polyyne = 0;
  std::size_t modes = 0;
  std::size_t modals = 4;
  std::size_t coupling = 3;
  OutputSink sink;
};

int run_count(const CountArgs& args) {
  const std::size_t L = args.polyyne > 0 ? polyyne_modes(args.polyyne) : args.modes;
  const std::uint64_t n_terms = count_terms(L, args.modals, args.coupling);
  const std::size_t unary = qubit_count({EncodingKind::unary, L, args.modals});
  const std::size_t binary = qubit_count({EncodingKind::binary, L, args.modals});
  const auto note = binary_rounding_note(L, args.modals);

  if (args.sink.format == "json") {
    json doc{{"n_modes", L},
             {"modals", args.modals},
             {"coupling_order", args.coupling},
             {"n_terms", n_terms},
             {"qubits", {{"unary", unary}, {"binary", binary}}}};
    if (args.polyyne > 0) doc["polyyne_triple_bonds"] = args.polyyne;
    if (note) doc["note"] = *note;
    args.sink.emit(doc.dump(2));
  } else if (args.sink.format == "csv") {
    std::string out = csv_line(
        {"n_modes", "modals", "coupling_order", "n_terms", "qubits_unary",
         "qubits_binary"});
    out += csv_line({std::to_string(L), std::to_string(args.modals),
                     std::to_string(args.coupling), std::to_string(n_terms),
                     std::to_string(unary), std::to_string(binary)});
    args.sink.emit(out);
  } else {
    std::ostringstream os;
    os << "modes (L):            " << L << '\n'
       << "modals (d):           " << args.modals << '\n'
       << "coupling order (D):   " << args.coupling << '\n'
       << "Hamiltonian summands: " << n_terms << '\n'
       << "qubits, unary:        " << unary << '\n'
       << "qubits, binary:       " << binary << '\n';
    if (note) os << *note << '\n';
    args.sink.emit(os.str());
  }
  return 0;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string input;
  std::string output;
  double cutoff = 0.0;
};

int run_build(const BuildArgs& args) {
  const auto pes = io::read_pes_file(args.input);
  auto sq = build_second_quantized(pes.problem, pes.terms, args.cutoff);
  for (const auto& note : pes.notes) std::cerr << note << '\n';

  std::string out = args.output;
  if (out.empty())
    out = std::filesystem::path(args.input).stem().string() + ".sq.json";
  io::write_sq_file(out, sq);
  std::cout << "terms:      " << sq.terms.size() << '\n'
            << "max |c|:    " << io::format_double(sq.max_abs_coeff())
            << " cm^-1\n"
            << "written to: " << out << '\n';
  return 0;
}

// ---------------------------------------------------------------- encode

struct EncodeArgs {
  std::string input;
  std::string output;
  std::string encoding = "unary";
  double cutoff = 1e-8;
};

int run_encode(const EncodeArgs& args) {
  const auto sq = io::read_sq_file(args.input);
  EncodingSpec spec{encoding_kind_from_string(args.encoding), sq.n_modes,
                    sq.modals, args.cutoff};
  const auto h = encode(sq, spec);

  std::string out = args.output;
  if (out.empty())
    out = std::filesystem::path(args.input).stem().string() + ".pauli.txt";
  io::write_pauli_file(out, h);

  const auto stats = locality_stats(h);
  std::cout << "qubits:     " << h.n_qubits << '\n'
            << "terms:      " << h.terms.size() << " (cutoff "
            << io::format_double(args.cutoff) << ")\n"
            << "beta:       " << io::format_double(term_norm_sum(h))
            << " cm^-1\n"
            << "locality:   max " << stats.max_weight << ", mean "
            << stats.mean_weight << '\n';
  for (const auto& [weight, count] : stats.histogram)
    std::cout << "  weight " << weight << ": " << count << '\n';
  std::cout << "written to: " << out << '\n';
  if (spec.kind == EncodingKind::binary) {
    if (const auto note = binary_rounding_note(spec.n_modes, spec.modals))
      std::cout << *note << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string input;
  std::string label;
  int order = 2;
  double epsilon_nu = 1.0;
  std::vector<double> tols;
  std::string approach = "A";
  double prefactor = 1.0;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::uint64_t budget = 10'000'000'000ULL;
  bool second_level = false;
  OutputSink sink;
};

// Default schedule: thresholds placed so S_big holds roughly 512 and 2048
// of the largest coefficients; exact evaluation when the input is smaller.
std::vector<double> default_tol_schedule(const WeightedPauliHamiltonian& h) {
  std::vector<double> mags;
  mags.reserve(h.terms.size());
  for (const auto& t : h.terms) mags.push_back(std::abs(t.coeff));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  std::vector<double> tols;
  for (std::size_t target : {std::size_t{512}, std::size_t{2048}}) {
    tols.push_back(target >= mags.size() ? 0.0 : mags[target]);
  }
  std::sort(tols.begin(), tols.end(), std::greater<>());
  tols.erase(std::unique(tols.begin(), tols.end()), tols.end());
  return tols;
}

json estimate_config_json(const EstimateArgs& args,
                          const std::vector<double>& tols) {
  return json{{"input", args.input},
              {"label", args.label},
              {"p", args.order},
              {"epsilon_nu", args.epsilon_nu},
              {"approach", args.approach},
              {"prefactor", args.prefactor},
              {"tol_schedule", tols},
              {"layering_runs", args.runs},
              {"seed", args.seed},
              {"workers", args.workers},
              {"check_budget", args.budget},
              {"second_level", args.second_level}};
}

int run_estimate(const EstimateArgs& args) {
  const auto h = io::read_pauli_file(args.input);
  if (h.terms.empty()) throw ValidationError("Hamiltonian file has no terms");

  const std::string label =
      args.label.empty() ? std::filesystem::path(args.input).stem().string()
                         : args.label;

  ScalingOptions opts;
  opts.workers = args.workers;
  opts.check_budget = args.budget;
  opts.second_level = args.second_level;

  std::vector<double> tols = args.tols;
  if (tols.empty()) tols = default_tol_schedule(h);
  std::sort(tols.begin(), tols.end(), std::greater<>());

  const auto layering = depth_ratio(h, args.runs, args.seed);

  std::vector<ScalingResult> trajectory;
  for (double tol : tols)
    trajectory.push_back(alpha_bounds(h, args.order, tol, opts));
  const auto crude = alpha_bounds(
      h, args.order, std::numeric_limits<double>::infinity(), opts);

  // tightest valid upper bound wins; the crude endpoint always competes
  const ScalingResult* best = &crude;
  for (const auto& result : trajectory)
    if (result.upper < best->upper) best = &result;

  QpeConfig cfg;
  cfg.epsilon_nu = args.epsilon_nu;
  cfg.trotter_order = args.order;
  cfg.approach = error_accounting_from_char(args.approach.at(0));
  cfg.prefactor = args.prefactor;
  cfg.paulis_per_layer = layering.mean_ratio;

  const auto report = qpe_budget(h, *best, cfg);
  const auto report_crude = qpe_budget(h, crude, cfg);

  if (args.sink.format == "json") {
    json doc{{"config", estimate_config_json(args, tols)},
             {"n_qubits", h.n_qubits},
             {"n_terms", h.terms.size()},
             {"trajectory", json::array()},
             {"crude", io::scaling_to_json(crude)},
             {"best", io::scaling_to_json(*best)},
             {"report", io::report_to_json(report)},
             {"report_crude", io::report_to_json(report_crude)},
             {"layering", io::layering_to_json(layering)}};
    for (const auto& result : trajectory)
      doc["trajectory"].push_back(io::scaling_to_json(result));
    args.sink.emit(doc.dump(2));
  } else if (args.sink.format == "csv") {
    std::string out = csv_line({"label", "n_qubits", "n_terms", "p", "approach",
                                "bound_mode", "tol", "n_big", "alpha_lower",
                                "alpha_upper", "beta_cm1", "n_ancilla",
                                "total_steps", "gates_total", "depth_estimate"});
    const auto row = [&](const ScalingResult& scaling,
                         const ResourceReport& rep) {
      return csv_line({label, std::to_string(rep.n_qubits),
                       std::to_string(rep.n_terms), std::to_string(rep.p),
                       std::string(1, rep.approach), to_string(scaling.mode),
                       io::format_double(scaling.tol),
                       std::to_string(scaling.n_big),
                       io::format_double(scaling.lower),
                       io::format_double(scaling.upper),
                       io::format_double(rep.beta_cm1),
                       std::to_string(rep.n_ancilla),
                       std::to_string(rep.total_steps),
                       std::to_string(rep.gates_total.total()),
                       std::to_string(rep.depth_estimate)});
    };
    out += row(*best, report);
    out += row(crude, report_crude);
    args.sink.emit(out);
  } else {
    std::ostringstream os;
    os << "input:        " << args.input << " (" << h.terms.size()
       << " terms on " << h.n_qubits << " qubits)\n"
       << "beta:         " << io::format_double(report.beta_cm1) << " cm^-1\n"
       << "epsilon_nu:   " << args.epsilon_nu << " cm^-1, p = " << args.order
       << ", approach " << report.approach << ", prefactor "
       << args.prefactor << "\n\n"
       << "bound trajectory (descending tol):\n";
    const auto line = [&os](const ScalingResult& r) {
      os << "  tol " << io::format_double(r.tol) << ": |S_big| = " << r.n_big
         << ", alpha in [" << io::format_double(r.lower) << ", "
         << io::format_double(r.upper) << "], checks " << r.tuples_evaluated
         << ", " << r.wall_time_s << " s\n";
    };
    line(crude);
    for (const auto& result : trajectory) line(result);
    os << "\nselected bound: " << to_string(best->mode) << " at tol "
       << io::format_double(best->tol) << '\n'
       << "ancilla qubits (n):     " << report.n_ancilla << '\n'
       << "Trotter steps (R):      " << report.total_steps
       << "   [crude bound: " << report_crude.total_steps << "]\n"
       << "exponentials per step:  " << report.exponentials_per_step << '\n'
       << "gates total:            " << report.gates_total.total() << " ("
       << report.gates_total.two_qubit << " two-qubit, "
       << report.gates_total.rotations << " rotations, "
       << report.gates_total.cliffords << " Cliffords)"
       << "   [crude: " << report_crude.gates_total.total() << "]\n"
       << "paulis per layer:       " << layering.mean_ratio << '\n'
       << "depth estimate:         " << report.depth_estimate << '\n'
       << "assumptions:\n";
    for (const auto& a : report.assumptions) os << "  - " << a << '\n';
    args.sink.emit(os.str());
  }
  return 0;
}

// ---------------------------------------------------------------- layers

struct LayersArgs {
  std::string input;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  OutputSink sink;
};

int run_layers(const LayersArgs& args) {
  const auto h = io::read_pauli_file(args.input);
  const auto stats = depth_ratio(h, args.runs, args.seed);

  if (args.sink.format == "json") {
    args.sink.emit(io::layering_to_json(stats).dump(2));
  } else if (args.sink.format == "csv") {
    std::string out = csv_line(
        {"n_terms", "runs", "seed", "mean_ratio", "min_ratio", "max_ratio",
         "stddev_ratio"});
    out += csv_line({std::to_string(stats.n_terms), std::to_string(stats.runs),
                     std::to_string(stats.seed),
                     io::format_double(stats.mean_ratio),
                     io::format_double(stats.min_ratio),
                     io::format_double(stats.max_ratio),
                     io::format_double(stats.stddev_ratio)});
    args.sink.emit(out);
  } else {
    std::ostringstream os;
    os << "terms:       " << stats.n_terms << '\n'
       << "runs:        " << stats.runs << " (seed " << stats.seed << ")\n"
       << "mean ratio:  " << stats.mean_ratio << '\n'
       << "min ratio:   " << stats.min_ratio << '\n'
       << "max ratio:   " << stats.max_ratio << '\n'
       << "std dev:     " << stats.stddev_ratio << '\n';
    args.sink.emit(os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vibrational-Hamiltonian quantum resource estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vibrest 0.1.0");

  CountArgs count_args;
  auto* count = app.add_subcommand(
      "count", "Closed-form Hamiltonian size and qubit footprint");
  auto* poly = count->add_option("--polyyne", count_args.polyyne,
                                 "Number of polyyne triple bonds");
  count->add_option("--modes,-L", count_args.modes, "Number of modes L")
      ->excludes(poly);
  count->add_option("--modals,-d", count_args.modals, "Modals per mode d")
      ->capture_default_str();
  count->add_option("--coupling-order,-D", count_args.coupling,
                    "Hamiltonian coupling truncation order D")
      ->capture_default_str();
  add_output_flags(count, count_args.sink);
  count->callback([&] {
    if (count_args.polyyne == 0 && count_args.modes == 0)
      throw CLI::ValidationError("count", "give --polyyne or --modes");
  });

  BuildArgs build_args;
  auto* build = app.add_subcommand(
      "build", "Assemble the second-quantized Hamiltonian from a PES file");
  build->add_option("input", build_args.input, "PES JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("-o,--output", build_args.output,
                    "Output path (default: <stem>.sq.json)");
  build->add_option("--cutoff", build_args.cutoff,
                    "Assembly cutoff in cm^-1 (default 0: keep all nonzero)")
      ->capture_default_str();

  EncodeArgs encode_args;
  auto* enc = app.add_subcommand(
      "encode", "Map a second-quantized Hamiltonian to weighted Pauli strings");
  enc->add_option("input", encode_args.input, "Second-quantized JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  enc->add_option("--encoding", encode_args.encoding, "unary or binary")
      ->check(CLI::IsMember({"unary", "binary"}))
      ->capture_default_str();
  enc->add_option("--cutoff", encode_args.cutoff,
                  "Drop encoded terms with |coeff| <= cutoff (cm^-1)")
      ->capture_default_str();
  enc->add_option("-o,--output", encode_args.output,
                  "Output path (default: <stem>.pauli.txt)");

  EstimateArgs est_args;
  auto* est = app.add_subcommand(
      "estimate", "Commutator-scaling bounds and the QPE resource budget");
  est->add_option("input", est_args.input, "Pauli Hamiltonian file")
      ->required()
      ->check(CLI::ExistingFile);
  est->add_option("--order,-p", est_args.order, "Product formula order p")
      ->capture_default_str();
  est->add_option("--epsilon-nu", est_args.epsilon_nu,
                  "Target spectroscopic accuracy in cm^-1")
      ->capture_default_str();
  est->add_option("--tol", est_args.tols,
                  "Splitting threshold; repeat for a schedule (default: "
                  "adaptive; 0 = exact, inf = crude)");
  est->add_option("--approach", est_args.approach,
                  "Error accounting: A (success probability) or B "
                  "(effective Hamiltonian)")
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  est->add_option("--prefactor", est_args.prefactor,
                  "Constant multiplying the step-count expression")
      ->capture_default_str();
  est->add_option("--runs", est_args.runs, "Layering runs")
      ->capture_default_str();
  est->add_option("--seed", est_args.seed, "Layering RNG seed")
      ->capture_default_str();
  est->add_option("--workers", est_args.workers,
                  "Worker threads (0 = VIBREST_WORKERS or all cores)")
      ->capture_default_str();
  est->add_option("--budget", est_args.budget,
                  "Anticommutation-check budget before aborting")
      ->capture_default_str();
  est->add_flag("--second-level", est_args.second_level,
                "Extra p=2 refinement of the small-small cross terms");
  est->add_option("--label", est_args.label, "Row label for CSV output");
  add_output_flags(est, est_args.sink);

  LayersArgs layers_args;
  auto* lay = app.add_subcommand(
      "layers", "Greedy disjoint-support layering statistics");
  lay->add_option("input", layers_args.input, "Pauli Hamiltonian file")
      ->required()
      ->check(CLI::ExistingFile);
  lay->add_option("--runs", layers_args.runs, "Number of randomized runs")
      ->capture_default_str();
  lay->add_option("--seed", layers_args.seed, "RNG seed")
      ->capture_default_str();
  add_output_flags(lay, layers_args.sink);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (count->parsed()) return run_count(count_args);
    if (build->parsed()) return run_build(build_args);
    if (enc->parsed()) return run_encode(encode_args);
    if (est->parsed()) return run_estimate(est_args);
    if (lay->parsed()) return run_layers(layers_args);
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
