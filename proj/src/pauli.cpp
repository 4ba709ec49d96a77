#include "vibrest/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vibrest {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n_qubits) {
  return (n_qubits + kWordBits - 1) / kWordBits;
}

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli strings act on different qubit counts (" +
                                std::to_string(a.n_qubits()) + " vs " +
                                std::to_string(b.n_qubits()) + ")");
  }
}

// popcount(a & b) mod 2 over packed words
bool masked_parity(std::span<const std::uint64_t> a,
                   std::span<const std::uint64_t> b) {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
  return std::popcount(acc) & 1;
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits)
    : n_qubits_(n_qubits), x_(words_for(n_qubits), 0), z_(words_for(n_qubits), 0) {}

PauliString PauliString::from_text(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    const char c = text[q];
    if (c == 'I') continue;
    p.place_letter(q, c);
  }
  return p;
}

std::string PauliString::to_text() const {
  std::string out(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) out[q] = letter(q);
  return out;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i)
    w += static_cast<std::size_t>(std::popcount(x_[i] | z_[i]));
  return w;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i)
    if ((x_[i] | z_[i]) != 0) return false;
  return true;
}

std::complex<double> PauliString::phase() const {
  switch (phase_ & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString PauliString::without_phase() const {
  PauliString copy = *this;
  copy.phase_ = 0;
  return copy;
}

char PauliString::letter(std::size_t qubit) const {
  if (qubit >= n_qubits_) throw std::invalid_argument("qubit index out of range");
  const std::size_t w = qubit / kWordBits;
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  const bool x = x_[w] & bit;
  const bool z = z_[w] & bit;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

bool PauliString::support_disjoint(const PauliString& other) const {
  require_same_size(*this, other);
  for (std::size_t w = 0; w < x_.size(); ++w)
    if ((x_[w] | z_[w]) & (other.x_[w] | other.z_[w])) return false;
  return true;
}

bool PauliString::mask_less(const PauliString& a, const PauliString& b) {
  if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ < b.n_qubits_;
  for (std::size_t w = 0; w < a.x_.size(); ++w) {
    if (a.x_[w] != b.x_[w]) return a.x_[w] < b.x_[w];
    if (a.z_[w] != b.z_[w]) return a.z_[w] < b.z_[w];
  }
  return a.phase_ < b.phase_;
}

void PauliString::place_letter(std::size_t qubit, char letter) {
  if (qubit >= n_qubits_) throw std::invalid_argument("qubit index out of range");
  const std::size_t w = qubit / kWordBits;
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  if ((x_[w] | z_[w]) & bit)
    throw std::invalid_argument("qubit already carries a non-identity letter");
  switch (letter) {
    case 'X': x_[w] |= bit; break;
    case 'Y': x_[w] |= bit; z_[w] |= bit; break;
    case 'Z': z_[w] |= bit; break;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") +
                                  letter + "'");
  }
}

void PauliString::multiply_phase_exponent(int exponent) {
  phase_ = static_cast<std::uint8_t>(((phase_ + exponent) % 4 + 4) % 4);
}

bool anticommutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  return masked_parity(a.x_, b.z_) ^ masked_parity(a.z_, b.x_);
}

PauliString product(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  PauliString r(a.n_qubits_);

  // With each string stored as i^e * X(x)Z(z) scaled so the masks spell a
  // Hermitian word (an extra i per Y), the product phase picks up one
  // factor of -1 per Z-past-X swap plus the Y-count bookkeeping of the
  // three words involved.
  int y_a = 0, y_b = 0, y_r = 0;
  std::uint64_t swap_acc = 0;
  for (std::size_t w = 0; w < r.x_.size(); ++w) {
    r.x_[w] = a.x_[w] ^ b.x_[w];
    r.z_[w] = a.z_[w] ^ b.z_[w];
    y_a += std::popcount(a.x_[w] & a.z_[w]);
    y_b += std::popcount(b.x_[w] & b.z_[w]);
    y_r += std::popcount(r.x_[w] & r.z_[w]);
    swap_acc ^= a.z_[w] & b.x_[w];
  }
  const int swaps = std::popcount(swap_acc) & 1;
  const int exponent = a.phase_ + b.phase_ + y_a + y_b - y_r + 2 * swaps;
  r.phase_ = static_cast<std::uint8_t>(((exponent % 4) + 4) % 4);
  return r;
}

std::optional<ScaledPauli> nested_commutator(std::span<const WeightedPauli> seq) {
  if (seq.size() < 2)
    throw std::invalid_argument("nested commutator needs at least two operators");

  // Proposition-style parity test: the commutator survives iff every
  // string anticommutes with an odd number of its predecessors.
  for (std::size_t i = 1; i < seq.size(); ++i) {
    int count = 0;
    for (std::size_t j = 0; j < i; ++j)
      count += anticommutes(seq[i].pauli, seq[j].pauli) ? 1 : 0;
    if (count % 2 == 0) return std::nullopt;
  }

  const std::size_t p = seq.size() - 1;
  double scale = std::ldexp(seq[0].coeff, static_cast<int>(p));  // 2^p * c_0
  PauliString str = seq[0].pauli;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    scale *= seq[i].coeff;
    str = product(seq[i].pauli, str);  // P_p * ... * P_1 * P_0
  }
  return ScaledPauli{scale, std::move(str)};
}

}  // namespace vibrest
