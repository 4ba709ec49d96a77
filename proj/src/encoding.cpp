#include "vibrest/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "vibrest/errors.hpp"

namespace vibrest {

namespace {

using Complex = std::complex<double>;

constexpr double kImagResidueTol = 1e-12;

// One factor's expansion: weighted phase-free Pauli strings on the full
// qubit register, supports confined to the factor's mode.
struct LocalTerm {
  Complex coeff;
  PauliString string;
};

std::size_t bits_for(std::size_t d) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < d) ++bits;
  return bits;
}

std::vector<LocalTerm> expand_unary(const SqFactor& f, const EncodingSpec& spec,
                                    std::size_t n_qubits) {
  const std::size_t qk = f.mode * spec.modals + f.raise;
  const std::size_t qh = f.mode * spec.modals + f.lower;
  std::vector<LocalTerm> out;
  if (f.raise == f.lower) {
    // occupied modal <-> |1>, so a†_k a_k = (I - Z_k)/2
    PauliString z(n_qubits);
    z.place_letter(qk, 'Z');
    out.push_back({Complex(0.5, 0.0), PauliString(n_qubits)});
    out.push_back({Complex(-0.5, 0.0), std::move(z)});
    return out;
  }
  // σ+_k σ-_h = (X_k - iY_k)(X_h + iY_h)/4
  const char letters[2] = {'X', 'Y'};
  const Complex weight_k[2] = {Complex(0.5, 0.0), Complex(0.0, -0.5)};
  const Complex weight_h[2] = {Complex(0.5, 0.0), Complex(0.0, 0.5)};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      PauliString s(n_qubits);
      s.place_letter(qk, letters[a]);
      s.place_letter(qh, letters[b]);
      out.push_back({weight_k[a] * weight_h[b], std::move(s)});
    }
  }
  return out;
}

std::vector<LocalTerm> expand_binary(const SqFactor& f, const EncodingSpec& spec,
                                     std::size_t n_qubits) {
  const std::size_t bits = spec.qubits_per_mode();
  std::vector<LocalTerm> out{{Complex(1.0, 0.0), PauliString(n_qubits)}};
  for (std::size_t b = 0; b < bits; ++b) {
    const std::size_t qubit = f.mode * bits + b;
    const bool kb = (f.raise >> b) & 1;
    const bool hb = (f.lower >> b) & 1;
    // |k_b><h_b| on this qubit as (coeff, letter) pairs
    struct Piece { Complex c; char letter; };
    Piece pieces[2];
    if (!kb && !hb) {        // |0><0| = (I + Z)/2
      pieces[0] = {Complex(0.5, 0.0), 'I'};
      pieces[1] = {Complex(0.5, 0.0), 'Z'};
    } else if (kb && hb) {   // |1><1| = (I - Z)/2
      pieces[0] = {Complex(0.5, 0.0), 'I'};
      pieces[1] = {Complex(-0.5, 0.0), 'Z'};
    } else if (kb && !hb) {  // |1><0| = (X - iY)/2
      pieces[0] = {Complex(0.5, 0.0), 'X'};
      pieces[1] = {Complex(0.0, -0.5), 'Y'};
    } else {                 // |0><1| = (X + iY)/2
      pieces[0] = {Complex(0.5, 0.0), 'X'};
      pieces[1] = {Complex(0.0, 0.5), 'Y'};
    }
    std::vector<LocalTerm> next;
    next.reserve(out.size() * 2);
    for (const auto& base : out) {
      for (const auto& piece : pieces) {
        LocalTerm t{base.coeff * piece.c, base.string};
        if (piece.letter != 'I') t.string.place_letter(qubit, piece.letter);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

struct MaskKey {
  std::vector<std::uint64_t> words;  // x words then z words
  bool operator==(const MaskKey&) const = default;
};

struct MaskKeyHash {
  std::size_t operator()(const MaskKey& k) const noexcept {
    std::size_t seed = k.words.size();
    for (std::uint64_t w : k.words)
      seed ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ULL +
              (seed << 6) + (seed >> 2);
    return seed;
  }
};

MaskKey key_of(const PauliString& s) {
  MaskKey k;
  k.words.reserve(2 * s.num_words());
  for (std::size_t w = 0; w < s.num_words(); ++w) k.words.push_back(s.x_word(w));
  for (std::size_t w = 0; w < s.num_words(); ++w) k.words.push_back(s.z_word(w));
  return k;
}

}  // namespace

std::string to_string(EncodingKind kind) {
  return kind == EncodingKind::unary ? "unary" : "binary";
}

EncodingKind encoding_kind_from_string(const std::string& name) {
  if (name == "unary") return EncodingKind::unary;
  if (name == "binary") return EncodingKind::binary;
  throw std::invalid_argument("unknown encoding '" + name +
                              "' (expected unary or binary)");
}

void EncodingSpec::validate() const {
  if (n_modes == 0) throw ValidationError("encoding spec needs n_modes >= 1");
  if (modals < 2) throw ValidationError("encoding spec needs modals >= 2");
  if (!(cutoff_cm1 >= 0.0)) throw ValidationError("cutoff must be >= 0");
}

std::size_t EncodingSpec::qubits_per_mode() const {
  return kind == EncodingKind::unary ? modals : bits_for(modals);
}

std::size_t qubit_count(const EncodingSpec& spec) {
  return spec.n_modes * spec.qubits_per_mode();
}

std::optional<std::string> binary_rounding_note(std::size_t n_modes,
                                                std::size_t modals) {
  const std::size_t bits = bits_for(modals);
  if ((std::size_t{1} << bits) == modals) return std::nullopt;
  const double fractional = static_cast<double>(n_modes) *
                            std::log2(static_cast<double>(modals));
  std::ostringstream os;
  os << "note: d=" << modals << " is not a power of two; each mode register "
     << "holds ceil(log2(d))=" << bits << " whole qubits, giving "
     << n_modes * bits << " total. Quoting L*log2(d) instead would round to "
     << static_cast<std::uint64_t>(std::llround(fractional)) << ".";
  return os.str();
}

WeightedPauliHamiltonian encode(const SecondQuantizedHamiltonian& sq,
                                const EncodingSpec& spec) {
  spec.validate();
  if (sq.n_modes != spec.n_modes)
    throw ValidationError("encoding spec has L=" + std::to_string(spec.n_modes) +
                          " but Hamiltonian has L=" + std::to_string(sq.n_modes));
  if (sq.modals > spec.modals)
    throw ValidationError("encoding spec has d=" + std::to_string(spec.modals) +
                          " but Hamiltonian uses d=" + std::to_string(sq.modals));

  const std::size_t n_qubits = qubit_count(spec);

  for (std::size_t i = 0; i < sq.terms.size(); ++i) {
    const auto& term = sq.terms[i];
    for (std::size_t j = 0; j < term.factors.size(); ++j) {
      const auto& f = term.factors[j];
      const std::string where =
          "term " + std::to_string(i) + ", factor " + std::to_string(j);
      if (f.mode >= spec.n_modes)
        throw ValidationError(where + ": mode " + std::to_string(f.mode) +
                              " out of range (L=" +
                              std::to_string(spec.n_modes) + ")");
      if (f.raise >= spec.modals || f.lower >= spec.modals)
        throw ValidationError(where + ": modal index out of range (d=" +
                              std::to_string(spec.modals) + ")");
      if (j > 0 && f.mode <= term.factors[j - 1].mode)
        throw ValidationError(where + ": factor modes must be strictly increasing");
    }
    if (!std::isfinite(term.coeff_cm1))
      throw ValidationError("term " + std::to_string(i) +
                            ": coefficient is not finite");
  }

  // Canonical processing order makes the merged coefficients independent
  // of the input term order, bit for bit.
  std::vector<const SqTerm*> ordered;
  ordered.reserve(sq.terms.size());
  for (const auto& t : sq.terms) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(), [](const SqTerm* a, const SqTerm* b) {
    if (a->factors != b->factors) {
      return std::lexicographical_compare(a->factors.begin(), a->factors.end(),
                                          b->factors.begin(), b->factors.end());
    }
    return a->coeff_cm1 < b->coeff_cm1;
  });

  std::unordered_map<MaskKey, Complex, MaskKeyHash> acc;
  std::unordered_map<MaskKey, PauliString, MaskKeyHash> strings;

  for (const SqTerm* term : ordered) {
    std::vector<LocalTerm> expansion{
        {Complex(term->coeff_cm1, 0.0), PauliString(n_qubits)}};
    for (const auto& factor : term->factors) {
      const auto pieces = spec.kind == EncodingKind::unary
                              ? expand_unary(factor, spec, n_qubits)
                              : expand_binary(factor, spec, n_qubits);
      std::vector<LocalTerm> next;
      next.reserve(expansion.size() * pieces.size());
      for (const auto& base : expansion) {
        for (const auto& piece : pieces) {
          // Factors live on distinct modes, so supports are disjoint and
          // the mask product needs no phase bookkeeping.
          next.push_back({base.coeff * piece.coeff,
                          product(base.string, piece.string)});
        }
      }
      expansion = std::move(next);
    }
    for (auto& t : expansion) {
      MaskKey key = key_of(t.string);
      acc[key] += t.coeff;
      strings.emplace(std::move(key), std::move(t.string));
    }
  }

  WeightedPauliHamiltonian out;
  out.n_qubits = n_qubits;
  {
    std::ostringstream meta;
    meta << "encoding=" << to_string(spec.kind) << " L=" << spec.n_modes
         << " d=" << spec.modals << " cutoff=" << spec.cutoff_cm1;
    out.meta = meta.str();
  }

  out.terms.reserve(acc.size());
  for (auto& [key, coeff] : acc) {
    if (std::abs(coeff.imag()) >= kImagResidueTol)
      throw ValidationError(
          "encoded coefficient has imaginary part " +
          std::to_string(coeff.imag()) +
          "; input is not Hermitian (missing conjugate partner?)");
    const double real = coeff.real();
    if (std::abs(real) <= spec.cutoff_cm1) continue;
    out.terms.push_back(WeightedPauli{real, strings.at(key)});
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const WeightedPauli& a, const WeightedPauli& b) {
              return PauliString::mask_less(a.pauli, b.pauli);
            });
  return out;
}

LocalityStats locality_stats(const WeightedPauliHamiltonian& h) {
  LocalityStats stats;
  if (h.terms.empty()) return stats;
  double total = 0.0;
  for (const auto& term : h.terms) {
    const std::size_t w = term.pauli.weight();
    ++stats.histogram[w];
    stats.max_weight = std::max(stats.max_weight, w);
    total += static_cast<double>(w);
  }
  stats.mean_weight = total / static_cast<double>(h.terms.size());
  return stats;
}

}  // namespace vibrest
