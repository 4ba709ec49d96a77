#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "support/synthetic.hpp"
#include "vibrest/errors.hpp"
#include "vibrest/io.hpp"
#include "vibrest/vib_hamiltonian.hpp"

using namespace vibrest;
namespace oracle = vibrest::testing;
namespace fs = std::filesystem;

namespace {

// Source tree location, configured by CMake.
#ifndef VIBREST_SOURCE_DIR
#define VIBREST_SOURCE_DIR "."
#endif

const fs::path kSourceDir = VIBREST_SOURCE_DIR;

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name)
      : path(fs::temp_directory_path() / name) {}
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("double formatting round-trips every bit") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-200, 200);
  for (int trial = 0; trial < 2000; ++trial) {
    const double value = std::ldexp(mantissa(rng), expo(rng));
    const std::string text = io::format_double(value);
    CHECK(std::stod(text) == value);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(250.0) == "250");
}

TEST_CASE("PES file reading") {
  const auto input = io::read_pes_file(kSourceDir / "data/sample_cubic_pes.json");
  CHECK(input.problem.n_modes == 2);
  CHECK(input.problem.modals == 3);
  CHECK(input.problem.omegas_cm1[1] == 1600.0);
  CHECK(input.terms.size() == 4);
  CHECK(input.terms[2].powers == std::vector<unsigned>{2, 1});
}

TEST_CASE("PES diagnostics carry field locations") {
  TempFile f("vibrest_bad_pes.json");
  std::ofstream(f.path) << R"({
    "schema_version": 1, "n_modes": 2, "truncation_order": 2, "modals": 3,
    "omegas_cm1": [1000.0, 1500.0],
    "terms": [{"modes": [0, "x"], "powers": [1, 1], "coeff_cm1": 1.0}]
  })";
  try {
    io::read_pes_file(f.path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("terms[0].modes[1]") != std::string::npos);
  }
}

TEST_CASE("per-mode modal counts fall back to the uniform bound") {
  TempFile f("vibrest_per_mode.json");
  std::ofstream(f.path) << R"({
    "schema_version": 1, "n_modes": 2, "truncation_order": 1,
    "modals_per_mode": [3, 5],
    "omegas_cm1": [1000.0, 1500.0],
    "terms": []
  })";
  const auto input = io::read_pes_file(f.path);
  CHECK(input.problem.modals == 5);
  REQUIRE(input.notes.size() == 1);
  CHECK(input.notes[0].find("d = 5") != std::string::npos);
}

TEST_CASE("second-quantized file round-trip") {
  VibProblem problem{2, 2, 3, {1100.0, 1600.0}};
  const auto sq =
      build_second_quantized(problem, {{{0}, {3}, 12.0}, {{0, 1}, {1, 1}, 3.0}});

  TempFile f("vibrest_sq_roundtrip.json");
  io::write_sq_file(f.path, sq);
  const auto back = io::read_sq_file(f.path);
  CHECK(back.n_modes == sq.n_modes);
  CHECK(back.modals == sq.modals);
  REQUIRE(back.terms.size() == sq.terms.size());
  for (std::size_t i = 0; i < sq.terms.size(); ++i) {
    CHECK(back.terms[i].coeff_cm1 == sq.terms[i].coeff_cm1);  // bitwise
    CHECK(back.terms[i].factors == sq.terms[i].factors);
  }
}

TEST_CASE("build matches the checked-in golden within oracle tolerance") {
  const auto input = io::read_pes_file(kSourceDir / "data/sample_cubic_pes.json");
  const auto built = build_second_quantized(input.problem, input.terms);
  const auto golden =
      io::read_sq_file(kSourceDir / "data/golden/sample_cubic_sq.json");

  REQUIRE(built.terms.size() == golden.terms.size());
  for (std::size_t i = 0; i < built.terms.size(); ++i) {
    CHECK(built.terms[i].factors == golden.terms[i].factors);
    CHECK(built.terms[i].coeff_cm1 ==
          doctest::Approx(golden.terms[i].coeff_cm1).epsilon(1e-9));
  }
}

TEST_CASE("pauli file round-trip is bit exact") {
  std::mt19937_64 rng(72);
  auto h = oracle::random_local_hamiltonian(rng, 20, 60, 4, 1e-9, 1e4);
  h.meta = "encoding=unary L=5 d=4 cutoff=1e-08";

  TempFile f("vibrest_pauli_roundtrip.txt");
  io::write_pauli_file(f.path, h);
  const auto back = io::read_pauli_file(f.path);

  CHECK(back.n_qubits == h.n_qubits);
  CHECK(back.meta == h.meta);
  REQUIRE(back.terms.size() == h.terms.size());
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    CHECK(back.terms[i].coeff == h.terms[i].coeff);  // bitwise
    CHECK(back.terms[i].pauli == h.terms[i].pauli);
  }

  // writing the parsed Hamiltonian again reproduces the file byte for byte
  std::ostringstream first, second;
  io::write_pauli_stream(first, h);
  io::write_pauli_stream(second, back);
  CHECK(first.str() == second.str());
}

TEST_CASE("pauli file diagnostics name the line") {
  TempFile f("vibrest_bad_pauli.txt");
  std::ofstream(f.path) << "n_qubits 3\n1.0 XYZ\n2.0 XQZ\n";
  try {
    io::read_pauli_file(f.path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }

  TempFile g("vibrest_bad_pauli2.txt");
  std::ofstream(g.path) << "n_qubits 3\n1.0 XY\n";
  CHECK_THROWS_AS(io::read_pauli_file(g.path), ValidationError);

  TempFile missing("vibrest_no_header.txt");
  std::ofstream(missing.path) << "# only a comment\n";
  CHECK_THROWS_AS(io::read_pauli_file(missing.path), ValidationError);
}

TEST_CASE("schema version is enforced") {
  TempFile f("vibrest_bad_version.json");
  std::ofstream(f.path) << R"({"schema_version": 2, "n_modes": 1, "modals": 2,
                              "terms": []})";
  CHECK_THROWS_AS(io::read_sq_file(f.path), ValidationError);
}

TEST_CASE("report serialization separates timing from results") {
  ScalingResult result;
  result.p = 2;
  result.mode = BoundMode::split;
  result.tol = 0.25;
  result.lower = 1.0;
  result.upper = 2.0;
  result.wall_time_s = 0.123;
  const auto doc = io::scaling_to_json(result);
  CHECK(doc.at("mode") == "split");
  CHECK(doc.at("timing").contains("wall_time_s"));
  CHECK_FALSE(doc.contains("wall_time_s"));
}
