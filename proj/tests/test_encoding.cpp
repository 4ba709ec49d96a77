#include <cmath>
#include <random>

#include "doctest.h"
#include "support/dense_oracle.hpp"
#include "support/synthetic.hpp"
#include "vibrest/encoding.hpp"
#include "vibrest/errors.hpp"
#include "vibrest/vib_hamiltonian.hpp"

using namespace vibrest;
namespace oracle = vibrest::testing;

namespace {

// Qubit-register basis index of the modal occupation (n_0, ..., n_{L-1}).
std::size_t unary_index(const std::vector<std::size_t>& occ, std::size_t d) {
  std::size_t idx = 0;
  for (std::size_t l = 0; l < occ.size(); ++l)
    idx |= std::size_t{1} << (l * d + occ[l]);
  return idx;
}

std::size_t binary_index(const std::vector<std::size_t>& occ, std::size_t bits) {
  std::size_t idx = 0;
  for (std::size_t l = 0; l < occ.size(); ++l) idx |= occ[l] << (l * bits);
  return idx;
}

std::vector<std::vector<std::size_t>> all_occupations(std::size_t L,
                                                      std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> occ(L, 0);
  while (true) {
    out.push_back(occ);
    std::size_t l = 0;
    while (l < L && ++occ[l] == d) occ[l++] = 0;
    if (l == L) break;
  }
  return out;
}

// Bosonic basis index matching sq_matrix's kron order (mode 0 least
// significant digit).
std::size_t bosonic_index(const std::vector<std::size_t>& occ, std::size_t d) {
  std::size_t idx = 0, stride = 1;
  for (std::size_t l = 0; l < occ.size(); ++l) {
    idx += occ[l] * stride;
    stride *= d;
  }
  return idx;
}

void check_matrix_equivalence(const SecondQuantizedHamiltonian& sq,
                              EncodingKind kind, double tolerance = 1e-12) {
  EncodingSpec spec{kind, sq.n_modes, sq.modals, 0.0};
  const auto encoded = encode(sq, spec);
  const auto dense_encoded = oracle::hamiltonian_matrix(encoded);
  const auto dense_bosonic = oracle::sq_matrix(sq);
  const auto occupations = all_occupations(sq.n_modes, sq.modals);
  const std::size_t bits = spec.qubits_per_mode();

  for (const auto& row : occupations) {
    for (const auto& col : occupations) {
      const std::size_t qi = kind == EncodingKind::unary
                                 ? unary_index(row, sq.modals)
                                 : binary_index(row, bits);
      const std::size_t qj = kind == EncodingKind::unary
                                 ? unary_index(col, sq.modals)
                                 : binary_index(col, bits);
      const auto expected = dense_bosonic(
          static_cast<Eigen::Index>(bosonic_index(row, sq.modals)),
          static_cast<Eigen::Index>(bosonic_index(col, sq.modals)));
      const auto actual = dense_encoded(static_cast<Eigen::Index>(qi),
                                        static_cast<Eigen::Index>(qj));
      CHECK(std::abs(actual - expected) < tolerance);
    }
  }
}

}  // namespace

TEST_CASE("qubit counts") {
  CHECK(qubit_count({EncodingKind::unary, 7, 4, 0}) == 28);
  CHECK(qubit_count({EncodingKind::binary, 7, 4, 0}) == 14);
  CHECK(qubit_count({EncodingKind::unary, 481, 10, 0}) == 4810);
  CHECK(qubit_count({EncodingKind::binary, 481, 10, 0}) == 1924);
}

TEST_CASE("binary rounding note for non-power-of-two modals") {
  const auto note = binary_rounding_note(481, 10);
  REQUIRE(note.has_value());
  CHECK(note->find("1924") != std::string::npos);
  CHECK(note->find("1598") != std::string::npos);
  CHECK_FALSE(binary_rounding_note(7, 4).has_value());
}

TEST_CASE("unary ladder pair becomes (c/2)(XX + YY)") {
  SecondQuantizedHamiltonian sq;
  sq.n_modes = 1;
  sq.modals = 2;
  const double c = 4.0;
  sq.terms.push_back(SqTerm{c, {SqFactor{0, 0, 1}}});
  sq.terms.push_back(SqTerm{c, {SqFactor{0, 1, 0}}});

  const auto h = encode(sq, {EncodingKind::unary, 1, 2, 0.0});
  REQUIRE(h.terms.size() == 2);
  for (const auto& term : h.terms) {
    const auto text = term.pauli.to_text();
    CHECK((text == "XX" || text == "YY"));
    CHECK(term.coeff == doctest::Approx(c / 2));
  }
}

TEST_CASE("binary number projector |0><0| = (I + Z)/2") {
  SecondQuantizedHamiltonian sq;
  sq.n_modes = 1;
  sq.modals = 2;
  const double c = 6.0;
  sq.terms.push_back(SqTerm{c, {SqFactor{0, 0, 0}}});

  const auto h = encode(sq, {EncodingKind::binary, 1, 2, 0.0});
  REQUIRE(h.terms.size() == 2);
  for (const auto& term : h.terms) {
    const auto text = term.pauli.to_text();
    CHECK((text == "I" || text == "Z"));
    CHECK(term.coeff == doctest::Approx(c / 2));
  }
}

TEST_CASE("two-mode operator matches the dense Kronecker oracle, both encodings") {
  VibProblem problem{2, 2, 2, {1000.0, 1300.0}};
  const auto sq = build_second_quantized(problem, {PesTerm{{0, 1}, {1, 1}, 8.0}});
  check_matrix_equivalence(sq, EncodingKind::unary);
  check_matrix_equivalence(sq, EncodingKind::binary);
}

TEST_CASE("random Hermitian operators: matrix equivalence on the encoded subspace") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t L = 1 + trial % 2;
    const std::size_t d = 2 + trial % 3;  // up to d=4
    const auto sq = oracle::random_hermitian_sq(rng, L, d, 4);
    check_matrix_equivalence(sq, EncodingKind::unary);
    check_matrix_equivalence(sq, EncodingKind::binary);
  }
}

TEST_CASE("binary encoding leaves out-of-range states untouched") {
  // d = 3 on 2 bits: row/column |3> of every encoded operator is zero
  std::mt19937_64 rng(22);
  const auto sq = oracle::random_hermitian_sq(rng, 1, 3, 5);
  const auto h = encode(sq, {EncodingKind::binary, 1, 3, 0.0});
  const auto dense = oracle::hamiltonian_matrix(h);
  for (int j = 0; j < 4; ++j) {
    if (j == 3) continue;
    CHECK(std::abs(dense(3, j)) < 1e-12);
    CHECK(std::abs(dense(j, 3)) < 1e-12);
  }
}

TEST_CASE("all output coefficients are real and non-Hermitian input is rejected") {
  SecondQuantizedHamiltonian sq;
  sq.n_modes = 1;
  sq.modals = 2;
  sq.terms.push_back(SqTerm{2.0, {SqFactor{0, 0, 1}}});  // missing partner
  CHECK_THROWS_AS(encode(sq, {EncodingKind::unary, 1, 2, 0.0}), ValidationError);
  CHECK_THROWS_AS(encode(sq, {EncodingKind::binary, 1, 2, 0.0}), ValidationError);
}

TEST_CASE("merging is independent of the input term order") {
  std::mt19937_64 rng(23);
  auto sq = oracle::random_hermitian_sq(rng, 2, 3, 6);
  const auto a = encode(sq, {EncodingKind::unary, 2, 3, 1e-8});

  std::mt19937_64 shuffle_rng(99);
  deterministic_shuffle(sq.terms, shuffle_rng);
  const auto b = encode(sq, {EncodingKind::unary, 2, 3, 1e-8});

  REQUIRE(a.terms.size() == b.terms.size());
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    CHECK(a.terms[i].pauli == b.terms[i].pauli);
    CHECK(a.terms[i].coeff == b.terms[i].coeff);  // bitwise
  }
}

TEST_CASE("raising the cutoff never increases term count or norm") {
  std::mt19937_64 rng(24);
  const auto sq = oracle::random_hermitian_sq(rng, 2, 3, 8);
  double prev_beta = std::numeric_limits<double>::infinity();
  std::size_t prev_count = SIZE_MAX;
  for (double cutoff : {0.0, 1e-8, 1e-2, 0.5, 2.0}) {
    const auto h = encode(sq, {EncodingKind::unary, 2, 3, cutoff});
    double beta = 0.0;
    for (const auto& t : h.terms) beta += std::abs(t.coeff);
    CHECK(h.terms.size() <= prev_count);
    CHECK(beta <= prev_beta + 1e-12);
    prev_count = h.terms.size();
    prev_beta = beta;
  }
}

TEST_CASE("locality statistics") {
  SUBCASE("single X term") {
    WeightedPauliHamiltonian h;
    h.n_qubits = 1;
    h.terms.push_back({2.0, PauliString::from_text("X")});
    const auto stats = locality_stats(h);
    CHECK(stats.histogram.at(1) == 1);
    CHECK(stats.max_weight == 1);
    CHECK(stats.mean_weight == 1.0);
  }

  SUBCASE("unary D = 3 build stays 2D-local") {
    VibProblem problem{3, 3, 2, {1000.0, 1300.0, 1700.0}};
    const std::vector<PesTerm> pes{{{0, 1, 2}, {1, 1, 1}, 5.0},
                                   {{0, 1}, {1, 1}, 3.0},
                                   {{0}, {3}, 9.0}};
    const auto sq = build_second_quantized(problem, pes);
    const auto h = encode(sq, {EncodingKind::unary, 3, 2, 0.0});
    CHECK(locality_stats(h).max_weight <= 6);
  }

  SUBCASE("binary d = 4 one-mode transfer operator stays within 2*log2(d)") {
    SecondQuantizedHamiltonian sq;
    sq.n_modes = 1;
    sq.modals = 4;
    sq.terms.push_back(SqTerm{1.0, {SqFactor{0, 0, 3}}});
    sq.terms.push_back(SqTerm{1.0, {SqFactor{0, 3, 0}}});
    const auto h = encode(sq, {EncodingKind::binary, 1, 4, 0.0});
    CHECK(locality_stats(h).max_weight <= 4);
  }
}

TEST_CASE("encode validates indices") {
  SecondQuantizedHamiltonian sq;
  sq.n_modes = 1;
  sq.modals = 2;
  sq.terms.push_back(SqTerm{1.0, {SqFactor{0, 5, 5}}});
  try {
    encode(sq, {EncodingKind::unary, 1, 2, 0.0});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("term 0") != std::string::npos);
  }
}
