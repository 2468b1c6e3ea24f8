#include "qpsim/pauli.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qpsim {

namespace {

const std::complex<double> kIPowers[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

int popcount(uint32_t v) { return std::popcount(v); }

}  // namespace

PauliString::PauliString(int num_qubits, std::complex<double> coeff)
    : coeff_(coeff), x_(0), z_(0), num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("PauliString: qubit count out of range");
}

PauliString PauliString::from_letters(const std::string& letters,
                                      std::complex<double> coeff) {
  PauliString p(static_cast<int>(letters.size()), coeff);
  for (size_t q = 0; q < letters.size(); ++q)
    p.set_letter(static_cast<int>(q), letters[q]);
  return p;
}

char PauliString::letter(int qubit) const {
  bool xb = (x_ >> qubit) & 1u;
  bool zb = (z_ >> qubit) & 1u;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliString::set_letter(int qubit, char letter) {
  if (qubit < 0 || qubit >= num_qubits_)
    throw std::invalid_argument("PauliString: qubit index out of range");
  uint32_t bit = 1u << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': x_ |= bit; break;
    case 'Y': x_ |= bit; z_ |= bit; break;
    case 'Z': z_ |= bit; break;
    default:
      throw std::invalid_argument("PauliString: unknown letter");
  }
}

int PauliString::weight() const { return popcount(x_ | z_); }

PauliString PauliString::adjoint() const {
  PauliString p(*this);
  p.coeff_ = std::conj(p.coeff_);
  return p;
}

std::string PauliString::letters() const {
  std::string s(num_qubits_, 'I');
  for (int q = 0; q < num_qubits_; ++q) s[q] = letter(q);
  return s;
}

std::string PauliString::str() const {
  std::ostringstream os;
  os << "(" << coeff_.real() << (coeff_.imag() < 0 ? "" : "+") << coeff_.imag()
     << "i) " << letters();
  return os.str();
}

uint64_t PauliString::lex_key() const {
  // Two bits per letter (I=0, X=1, Y=2, Z=3), qubit 0 in the top bits so that
  // integer comparison matches string comparison of letters().
  uint64_t key = 0;
  for (int q = 0; q < num_qubits_; ++q) {
    uint64_t code = ((x_ >> q) & 1u) ? (((z_ >> q) & 1u) ? 2 : 1)
                                     : (((z_ >> q) & 1u) ? 3 : 0);
    key |= code << (62 - 2 * q);
  }
  return key;
}

PauliString operator*(const PauliString& lhs, const PauliString& rhs) {
  if (lhs.num_qubits_ != rhs.num_qubits_)
    throw std::invalid_argument("PauliString product: length mismatch");
  PauliString out(lhs.num_qubits_);
  out.x_ = lhs.x_ ^ rhs.x_;
  out.z_ = lhs.z_ ^ rhs.z_;
  // With L(x,z) = i^|x&z| X^x Z^z, the product picks up i^(w1+w2-w3) from
  // restoring canonical form and (-1)^|z1&x2| from commuting Z^z1 past X^x2.
  int e = popcount(lhs.x_ & lhs.z_) + popcount(rhs.x_ & rhs.z_) -
          popcount(out.x_ & out.z_);
  e += 2 * popcount(lhs.z_ & rhs.x_);
  out.coeff_ = lhs.coeff_ * rhs.coeff_ * kIPowers[((e % 4) + 4) % 4];
  return out;
}

PauliSum::PauliSum(const PauliString& term) : num_qubits_(term.num_qubits()) {
  add(term);
}

PauliSum PauliSum::from_terms(int num_qubits, std::vector<PauliString> terms) {
  PauliSum out(num_qubits);
  for (const auto& t : terms)
    if (t.num_qubits() != num_qubits)
      throw std::invalid_argument("PauliSum: qubit count mismatch");
  out.terms_ = std::move(terms);
  out.merge_and_sort();
  return out;
}

void PauliSum::add(const PauliString& term) {
  if (num_qubits_ == 0) num_qubits_ = term.num_qubits();
  if (term.num_qubits() != num_qubits_)
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  terms_.push_back(term);
  merge_and_sort();
}

void PauliSum::add(const PauliSum& other) {
  if (num_qubits_ == 0) num_qubits_ = other.num_qubits_;
  if (other.num_qubits_ != 0 && other.num_qubits_ != num_qubits_)
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  merge_and_sort();
}

void PauliSum::merge_and_sort() {
  std::unordered_map<uint64_t, std::complex<double>> acc;
  acc.reserve(terms_.size());
  for (const auto& t : terms_) {
    uint64_t key = (static_cast<uint64_t>(t.x_mask()) << 32) | t.z_mask();
    acc[key] += t.coefficient();
  }
  std::vector<PauliString> merged;
  merged.reserve(acc.size());
  for (const auto& [key, c] : acc) {
    if (std::abs(c) < kMergeTol) continue;
    PauliString p(num_qubits_, c);
    uint32_t x = static_cast<uint32_t>(key >> 32);
    uint32_t z = static_cast<uint32_t>(key & 0xffffffffu);
    for (int q = 0; q < num_qubits_; ++q) {
      bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
      p.set_letter(q, xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
    }
    merged.push_back(p);
  }
  std::sort(merged.begin(), merged.end(),
            [](const PauliString& a, const PauliString& b) {
              return a.lex_key() < b.lex_key();
            });
  terms_ = std::move(merged);
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(num_qubits_);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.set_coefficient(std::conj(t.coefficient()));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : terms_)
    if (std::abs(t.coefficient().imag()) > tol) return false;
  return true;
}

int PauliSum::max_weight() const {
  int w = 0;
  for (const auto& t : terms_) w = std::max(w, t.weight());
  return w;
}

PauliSum operator*(const PauliSum& lhs, const PauliSum& rhs) {
  PauliSum out(lhs.num_qubits_ ? lhs.num_qubits_ : rhs.num_qubits_);
  out.terms_.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& a : lhs.terms_)
    for (const auto& b : rhs.terms_) out.terms_.push_back(a * b);
  out.merge_and_sort();
  return out;
}

PauliSum operator*(std::complex<double> c, const PauliSum& s) {
  PauliSum out(s.num_qubits_);
  out.terms_ = s.terms_;
  for (auto& t : out.terms_) t.set_coefficient(c * t.coefficient());
  out.merge_and_sort();
  return out;
}

PauliSum operator+(const PauliSum& lhs, const PauliSum& rhs) {
  PauliSum out = lhs;
  out.add(rhs);
  return out;
}

PauliSum operator-(const PauliSum& lhs, const PauliSum& rhs) {
  PauliSum out = lhs;
  out.add(std::complex<double>(-1.0, 0.0) * rhs);
  return out;
}

std::string PauliSum::str() const {
  std::ostringstream os;
  for (const auto& t : terms_) os << t.str() << "\n";
  return os.str();
}

}  // namespace qpsim
