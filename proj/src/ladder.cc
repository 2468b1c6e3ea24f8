#include "qpsim/ladder.h"

#include <cmath>
#include <stdexcept>

namespace qpsim {

namespace {

PauliSum factor_image(const LadderFactor& f, int num_qubits, bool with_parity) {
  if (f.orbital < 0 || f.orbital >= num_qubits)
    throw std::invalid_argument("ladder factor index out of range");
  PauliString px(num_qubits, 0.5);
  PauliString py(num_qubits,
                 f.dagger ? std::complex<double>(0.0, -0.5)
                          : std::complex<double>(0.0, 0.5));
  px.set_letter(f.orbital, 'X');
  py.set_letter(f.orbital, 'Y');
  if (with_parity) {
    for (int q = 0; q < f.orbital; ++q) {
      px.set_letter(q, 'Z');
      py.set_letter(q, 'Z');
    }
  }
  return PauliSum::from_terms(num_qubits, {px, py});
}

PauliSum encode_impl(const LadderTerm& term, int num_qubits, bool with_parity) {
  PauliString ident(num_qubits, term.coeff);
  PauliSum acc(ident);
  for (const auto& f : term.factors)
    acc = acc * factor_image(f, num_qubits, with_parity);
  return acc;
}

LadderTerm two_body_term(int p, int q, int s, int t, std::complex<double> c,
                         Statistics stats) {
  return LadderTerm{c,
                    {{p, true}, {q, true}, {t, false}, {s, false}},
                    stats};
}

}  // namespace

PauliSum jordan_wigner(const LadderTerm& term, int num_qubits) {
  if (term.stats != Statistics::kFermionic)
    throw std::invalid_argument("jordan_wigner expects fermionic statistics");
  return encode_impl(term, num_qubits, true);
}

PauliSum qubit_particle_encode(const LadderTerm& term, int num_qubits) {
  if (term.stats != Statistics::kQubitParticle)
    throw std::invalid_argument(
        "qubit_particle_encode expects qubit-particle statistics");
  return encode_impl(term, num_qubits, false);
}

PauliSum encode_ladder(const LadderTerm& term, int num_qubits) {
  return encode_impl(term, num_qubits,
                     term.stats == Statistics::kFermionic);
}

void GeneratorTensor::set_element(int p, int q, int s, int t,
                                  std::complex<double> value) {
  if (p >= q || s >= t)
    throw std::invalid_argument("set_element expects p<q and s<t");
  auto put = [&](int i, int j, int k, int l, std::complex<double> v) {
    a[((size_t(i) * r + j) * r + k) * r + l] = v;
  };
  put(p, q, s, t, value);
  put(q, p, s, t, -value);
  put(p, q, t, s, -value);
  put(q, p, t, s, value);
  std::complex<double> hc = -std::conj(value);
  put(s, t, p, q, hc);
  put(t, s, p, q, -hc);
  put(s, t, q, p, -hc);
  put(t, s, q, p, hc);
}

double GeneratorTensor::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

void GeneratorTensor::validate(double tol) const {
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          std::complex<double> v = at(p, q, s, t);
          if (std::abs(v + at(q, p, s, t)) > tol ||
              std::abs(v + at(p, q, t, s)) > tol)
            throw std::invalid_argument(
                "generator tensor violates index antisymmetry");
          if (std::abs(v + std::conj(at(s, t, p, q))) > tol)
            throw std::invalid_argument(
                "generator tensor violates anti-Hermiticity");
        }
}

PauliSum build_generator(const GeneratorTensor& a, Statistics stats) {
  a.validate();
  const int r = a.r;
  std::vector<PauliString> acc;
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = s + 1; t < r; ++t) {
          std::complex<double> c = a.at(p, q, s, t);
          if (std::abs(c) < PauliSum::kMergeTol) continue;
          PauliSum img = encode_ladder(two_body_term(p, q, s, t, c, stats), r);
          acc.insert(acc.end(), img.terms().begin(), img.terms().end());
        }
  if (acc.empty()) return PauliSum(r);
  return PauliSum::from_terms(r, std::move(acc));
}

PauliSum hamiltonian_pauli(const IntegralSet& spin_orbital) {
  if (spin_orbital.basis != OrbitalBasis::SpinOrbital)
    throw std::invalid_argument(
        "hamiltonian_pauli expects spin-orbital integrals");
  const int r = spin_orbital.n_orb;
  const double sym_tol = 1e-10;
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      if (std::abs(spin_orbital.h(p, q) - spin_orbital.h(q, p)) > sym_tol)
        throw std::invalid_argument("hamiltonian_pauli: asymmetric h");
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          double v = spin_orbital.g4(p, q, s, t);
          if (std::abs(v - spin_orbital.g4(q, p, t, s)) > sym_tol ||
              std::abs(v - spin_orbital.g4(s, t, p, q)) > sym_tol)
            throw std::invalid_argument("hamiltonian_pauli: asymmetric g");
        }

  std::vector<PauliString> acc;
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      double v = spin_orbital.h(p, q);
      if (std::abs(v) < PauliSum::kMergeTol) continue;
      LadderTerm hop{v, {{p, true}, {q, false}}, Statistics::kFermionic};
      PauliSum img = jordan_wigner(hop, r);
      acc.insert(acc.end(), img.terms().begin(), img.terms().end());
    }
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          double v = 0.5 * spin_orbital.g4(p, q, s, t);
          if (std::abs(v) < PauliSum::kMergeTol) continue;
          PauliSum img = jordan_wigner(
              two_body_term(p, q, s, t, v, Statistics::kFermionic), r);
          acc.insert(acc.end(), img.terms().begin(), img.terms().end());
        }
  PauliSum h = PauliSum::from_terms(r, std::move(acc));
  if (!h.is_hermitian(1e-10))
    throw std::runtime_error("hamiltonian_pauli produced non-Hermitian sum");
  return h;
}

}  // namespace qpsim
