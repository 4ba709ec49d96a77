#include "vibrest/vib_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vibrest/errors.hpp"

namespace vibrest {

void VibProblem::validate() const {
  if (n_modes == 0) throw ValidationError("n_modes must be positive");
  if (coupling_order < 1 || coupling_order > n_modes)
    throw ValidationError("coupling order D must satisfy 1 <= D <= L (got D=" +
                          std::to_string(coupling_order) +
                          ", L=" + std::to_string(n_modes) + ")");
  if (modals < 2) throw ValidationError("modals per mode must be at least 2");
  if (omegas_cm1.size() != n_modes)
    throw ValidationError("expected " + std::to_string(n_modes) +
                          " frequencies, got " +
                          std::to_string(omegas_cm1.size()));
  for (std::size_t l = 0; l < omegas_cm1.size(); ++l) {
    if (!(omegas_cm1[l] > 0.0))
      throw ValidationError("omega for mode " + std::to_string(l) +
                            " must be positive");
  }
}

double SecondQuantizedHamiltonian::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, std::abs(t.coeff_cm1));
  return m;
}

double ho_matrix_element(std::size_t m, std::size_t n, unsigned k,
                         std::size_t d) {
  if (m >= d || n >= d)
    throw std::invalid_argument("modal index out of range for basis size " +
                                std::to_string(d));
  if (k == 0) return m == n ? 1.0 : 0.0;

  // Parity selection rule; also guarantees exact zeros in the output.
  const auto diff = m > n ? m - n : n - m;
  if (diff > k || (k - diff) % 2 != 0) return 0.0;

  const std::size_t s = d + k;
  std::vector<double> q(s * s, 0.0);
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const double v = std::sqrt(static_cast<double>(i + 1) / 2.0);
    q[i * s + (i + 1)] = v;
    q[(i + 1) * s + i] = v;
  }

  std::vector<double> acc = q, tmp(s * s, 0.0);
  for (unsigned step = 1; step < k; ++step) {
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        double sum = 0.0;
        for (std::size_t t = 0; t < s; ++t) sum += acc[i * s + t] * q[t * s + j];
        tmp[i * s + j] = sum;
      }
    }
    std::swap(acc, tmp);
  }
  return acc[m * s + n];
}

namespace {

// Key identifying a summand of the expansion: the involved modes with
// their raised/lowered modal indices.
using SqKey = std::vector<SqFactor>;

void validate_pes_term(const PesTerm& term, std::size_t index,
                       const VibProblem& problem) {
  const std::string where = "pes term " + std::to_string(index);
  if (term.modes.size() != term.powers.size())
    throw ValidationError(where + ": modes and powers differ in length");
  if (term.modes.size() > problem.coupling_order)
    throw ValidationError(where + ": couples " +
                          std::to_string(term.modes.size()) +
                          " modes, exceeding D=" +
                          std::to_string(problem.coupling_order));
  for (std::size_t i = 0; i < term.modes.size(); ++i) {
    if (term.modes[i] >= problem.n_modes)
      throw ValidationError(where + ": mode index " +
                            std::to_string(term.modes[i]) +
                            " out of range (L=" +
                            std::to_string(problem.n_modes) + ")");
    if (i > 0 && term.modes[i] <= term.modes[i - 1])
      throw ValidationError(where + ": mode indices must be strictly increasing");
    if (term.powers[i] == 0)
      throw ValidationError(where + ": powers must be positive");
  }
  if (!std::isfinite(term.coeff_cm1))
    throw ValidationError(where + ": coefficient is not finite");
}

}  // namespace

SecondQuantizedHamiltonian build_second_quantized(
    const VibProblem& problem, const std::vector<PesTerm>& pes,
    double assembly_cutoff) {
  problem.validate();
  for (std::size_t i = 0; i < pes.size(); ++i)
    validate_pes_term(pes[i], i, problem);

  const std::size_t d = problem.modals;

  // Accumulation keyed by factor list. Processing order is canonicalized
  // (harmonic part first, then PES terms in sorted order) so the floating
  // point sums do not depend on the caller's term order.
  std::map<SqKey, double> acc;

  for (std::size_t l = 0; l < problem.n_modes; ++l) {
    for (std::size_t n = 0; n < d; ++n) {
      acc[{SqFactor{l, n, n}}] +=
          problem.omegas_cm1[l] * (static_cast<double>(n) + 0.5);
    }
  }

  std::vector<const PesTerm*> ordered;
  ordered.reserve(pes.size());
  for (const auto& t : pes) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const PesTerm* a, const PesTerm* b) {
              if (a->modes != b->modes) return a->modes < b->modes;
              if (a->powers != b->powers) return a->powers < b->powers;
              return a->coeff_cm1 < b->coeff_cm1;
            });

  for (const PesTerm* term : ordered) {
    const std::size_t m = term->modes.size();
    if (m == 0) {
      acc[{}] += term->coeff_cm1;
      continue;
    }
    // Cartesian product of modal pairs across the involved modes.
    std::vector<std::size_t> pair(m, 0);  // flattened (k, h) per mode
    const std::size_t pairs_per_mode = d * d;
    while (true) {
      double value = term->coeff_cm1;
      SqKey key(m);
      for (std::size_t i = 0; i < m && value != 0.0; ++i) {
        const std::size_t k = pair[i] / d;
        const std::size_t h = pair[i] % d;
        key[i] = SqFactor{term->modes[i], k, h};
        value *= ho_matrix_element(k, h, term->powers[i], d);
      }
      if (value != 0.0) acc[key] += value;

      std::size_t idx = 0;
      while (idx < m && ++pair[idx] == pairs_per_mode) pair[idx++] = 0;
      if (idx == m) break;
    }
  }

  SecondQuantizedHamiltonian out;
  out.n_modes = problem.n_modes;
  out.modals = d;
  out.provenance = "built from PES, harmonic-oscillator modal basis";
  for (const auto& [key, coeff] : acc) {
    if (coeff == 0.0 || std::abs(coeff) < assembly_cutoff) continue;
    out.terms.push_back(SqTerm{coeff, key});
  }
  return out;
}

std::uint64_t count_terms(std::size_t n_modes, std::size_t modals,
                          std::size_t coupling_order) {
  if (coupling_order < 1 || coupling_order > n_modes)
    throw std::invalid_argument("coupling order D must satisfy 1 <= D <= L");
  if (modals < 1) throw std::invalid_argument("modals must be at least 1");

  std::uint64_t total = 0;
  for (std::size_t m = 1; m <= coupling_order; ++m) {
    std::uint64_t binom = 1;
    for (std::size_t i = 0; i < m; ++i)
      binom = binom * (n_modes - i) / (i + 1);
    std::uint64_t d2m = 1;
    for (std::size_t i = 0; i < 2 * m; ++i) d2m *= modals;
    total += binom * d2m;
  }
  return total;
}

std::size_t polyyne_modes(std::size_t n_triple_bonds) {
  if (n_triple_bonds == 0)
    throw std::invalid_argument("polyyne needs at least one triple bond");
  return 6 * n_triple_bonds + 1;
}

}  // namespace vibrest
