#include "qpsim/statevector.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qpsim/errors.h"

namespace qpsim {

namespace {

const std::complex<double> kIPowers[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

// Phase of L(x,z)|n> -> |n ^ x>: i^|x&z| * (-1)^|z&n|.
inline std::complex<double> transfer_phase(uint32_t x, uint32_t z, uint32_t n) {
  int e = std::popcount(x & z) + 2 * std::popcount(z & n);
  return kIPowers[e & 3];
}

void check_match(const StateVector& s, const PauliString& p) {
  if (s.num_qubits() != p.num_qubits())
    throw std::invalid_argument("pauli/state qubit count mismatch");
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > PauliString::kMaxQubits)
    throw std::invalid_argument("StateVector: qubit count out of range");
  amps_.assign(size_t(1) << num_qubits, 0.0);
}

StateVector StateVector::basis_state(int num_qubits,
                                     const std::vector<int>& occupied) {
  StateVector s(num_qubits);
  uint32_t n = 0;
  for (int q : occupied) {
    if (q < 0 || q >= num_qubits)
      throw std::invalid_argument("basis_state: qubit index out of range");
    if ((n >> q) & 1u)
      throw std::invalid_argument("basis_state: repeated qubit index");
    n |= 1u << q;
  }
  s.amps_[n] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  double nrm = norm();
  if (nrm == 0.0) throw std::runtime_error("cannot normalize zero vector");
  for (auto& a : amps_) a /= nrm;
}

double StateVector::number_expectation() const {
  double acc = 0.0;
  for (size_t n = 0; n < amps_.size(); ++n)
    acc += std::popcount(static_cast<uint32_t>(n)) * std::norm(amps_[n]);
  return acc;
}

StateVector apply_pauli_string(const StateVector& s, const PauliString& p) {
  check_match(s, p);
  StateVector out(s.num_qubits());
  const uint32_t x = p.x_mask(), z = p.z_mask();
  const std::complex<double> c = p.coefficient();
  for (uint32_t n = 0; n < s.dim(); ++n) {
    const std::complex<double>& a = s[n];
    if (a == 0.0) continue;
    out[n ^ x] += c * transfer_phase(x, z, n) * a;
  }
  return out;
}

StateVector apply_pauli_sum(const StateVector& s, const PauliSum& h) {
  if (s.num_qubits() != h.num_qubits())
    throw std::invalid_argument("pauli/state qubit count mismatch");
  StateVector out(s.num_qubits());
  for (const auto& t : h.terms()) {
    const uint32_t x = t.x_mask(), z = t.z_mask();
    const std::complex<double> c = t.coefficient();
    for (uint32_t n = 0; n < s.dim(); ++n)
      out[n ^ x] += c * transfer_phase(x, z, n) * s[n];
  }
  return out;
}

void apply_pauli_rotation(StateVector& s, const PauliString& p, double theta) {
  check_match(s, p);
  if (std::abs(p.coefficient() - std::complex<double>(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument(
        "apply_pauli_rotation: coefficient must be exactly one");
  const uint32_t x = p.x_mask(), z = p.z_mask();
  const std::complex<double> cos_t(std::cos(theta), 0.0);
  const std::complex<double> isin_t(0.0, std::sin(theta));
  if (x == 0) {
    // Diagonal string: amplitude n picks up exp(+/- i theta).
    for (uint32_t n = 0; n < s.dim(); ++n)
      s[n] *= cos_t + isin_t * transfer_phase(0, z, n);
    return;
  }
  for (uint32_t n = 0; n < s.dim(); ++n) {
    const uint32_t m = n ^ x;
    if (m < n) continue;  // each flip pair handled once
    const std::complex<double> an = s[n], am = s[m];
    s[n] = cos_t * an + isin_t * transfer_phase(x, z, m) * am;
    s[m] = cos_t * am + isin_t * transfer_phase(x, z, n) * an;
  }
}

std::complex<double> expectation(const StateVector& s, const PauliString& p) {
  check_match(s, p);
  const uint32_t x = p.x_mask(), z = p.z_mask();
  std::complex<double> acc = 0.0;
  for (uint32_t n = 0; n < s.dim(); ++n) {
    const std::complex<double>& a = s[n];
    if (a == 0.0) continue;
    acc += std::conj(s[n ^ x]) * transfer_phase(x, z, n) * a;
  }
  return p.coefficient() * acc;
}

std::complex<double> expectation(const StateVector& s, const PauliSum& h) {
  if (s.num_qubits() != h.num_qubits())
    throw std::invalid_argument("pauli/state qubit count mismatch");
  std::complex<double> acc = 0.0;
  for (const auto& t : h.terms()) acc += expectation(s, t);
  return acc;
}

std::complex<double> transition_amplitude(const StateVector& bra,
                                          const PauliSum& op,
                                          const StateVector& ket) {
  if (bra.num_qubits() != ket.num_qubits() ||
      bra.num_qubits() != op.num_qubits())
    throw std::invalid_argument("transition_amplitude: qubit count mismatch");
  std::complex<double> acc = 0.0;
  for (const auto& t : op.terms()) {
    const uint32_t x = t.x_mask(), z = t.z_mask();
    std::complex<double> term_acc = 0.0;
    for (uint32_t n = 0; n < ket.dim(); ++n) {
      const std::complex<double>& a = ket[n];
      if (a == 0.0) continue;
      term_acc += std::conj(bra[n ^ x]) * transfer_phase(x, z, n) * a;
    }
    acc += t.coefficient() * term_acc;
  }
  return acc;
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("inner: qubit count mismatch");
  std::complex<double> acc = 0.0;
  for (size_t n = 0; n < a.dim(); ++n) acc += std::conj(a[n]) * b[n];
  return acc;
}

void write_statevector(const StateVector& s, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open for writing: " + path);
  for (size_t n = 0; n < s.dim(); ++n) {
    if (s[n] == 0.0) continue;
    std::fprintf(f, "%zu %.17e %.17e\n", n, s[n].real(), s[n].imag());
  }
  std::fclose(f);
}

StateVector read_statevector(const std::string& path, int num_qubits) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<std::pair<size_t, std::complex<double>>> entries;
  size_t idx, max_idx = 0;
  double re, im;
  while (in >> idx >> re >> im) {
    entries.emplace_back(idx, std::complex<double>(re, im));
    max_idx = std::max(max_idx, idx);
  }
  int nq = num_qubits;
  if (nq == 0) {
    nq = 1;
    while ((size_t(1) << nq) <= max_idx) ++nq;
  } else if (max_idx >= (size_t(1) << nq)) {
    throw IoError("amplitude index " + std::to_string(max_idx) +
                  " does not fit a " + std::to_string(nq) +
                  " qubit register: " + path);
  }
  StateVector s(nq);
  for (const auto& [n, a] : entries) s[n] = a;
  return s;
}

}  // namespace qpsim
