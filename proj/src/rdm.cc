#include "qpsim/rdm.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qpsim/errors.h"
#include "qpsim/ladder.h"

namespace qpsim {

namespace {

void check_sector(const StateVector& s, int n_electrons) {
  if (std::abs(s.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("state is not normalized");
  double n_meas = s.number_expectation();
  if (std::abs(n_meas - n_electrons) > 1e-8) {
    std::ostringstream os;
    os << "state is not in the " << n_electrons
       << "-particle sector (measured N = " << n_meas << ")";
    throw NumericalError(os.str());
  }
}

// Writes v into (p,q,s,t) and the three images fixed by antisymmetry.
void fill_antisym(TwoRDM& d, int p, int q, int s, int t,
                  std::complex<double> v) {
  d.at(p, q, s, t) = v;
  d.at(q, p, s, t) = -v;
  d.at(p, q, t, s) = -v;
  d.at(q, p, t, s) = v;
}

std::vector<std::pair<int, int>> folded_pairs(int r) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(r * (r - 1) / 2);
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q) pairs.emplace_back(p, q);
  return pairs;
}

}  // namespace

double TwoRDM::trace() const {
  double acc = 0.0;
  for (int p = 0; p < r_; ++p)
    for (int q = 0; q < r_; ++q) acc += at(p, q, p, q).real();
  return acc;
}

TwoRDM measure_2rdm(const StateVector& s, int n_electrons) {
  check_sector(s, n_electrons);
  const int r = s.num_qubits();
  TwoRDM d(r);
  auto pairs = folded_pairs(r);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t j = i; j < pairs.size(); ++j) {
      auto [p, q] = pairs[i];
      auto [u, v] = pairs[j];
      LadderTerm term{1.0,
                      {{p, true}, {q, true}, {v, false}, {u, false}},
                      Statistics::kFermionic};
      std::complex<double> val = expectation(s, jordan_wigner(term, r));
      fill_antisym(d, p, q, u, v, val);
      fill_antisym(d, u, v, p, q, std::conj(val));
    }
  }
  return d;
}

OneRDM contract_to_1rdm(const TwoRDM& d, int n_electrons) {
  if (n_electrons < 2)
    throw std::invalid_argument("contract_to_1rdm needs N >= 2");
  const int r = d.r();
  OneRDM one = OneRDM::Zero(r, r);
  for (int p = 0; p < r; ++p)
    for (int s = 0; s < r; ++s) {
      std::complex<double> acc = 0.0;
      for (int q = 0; q < r; ++q) acc += d.at(p, q, s, q);
      one(p, s) = acc / double(n_electrons - 1);
    }
  return one;
}

double energy_from_rdm(const ReducedHamiltonian& k, const TwoRDM& d,
                       double e_nuc) {
  if (k.r != d.r())
    throw std::invalid_argument("energy_from_rdm: dimension mismatch");
  const int r = k.r;
  const double n = k.n_electrons;
  std::complex<double> acc = 0.0;
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t)
          acc += k.at(p, q, s, t) * d.at(s, t, p, q);
  return acc.real() / (n * (n - 1.0)) + e_nuc;
}

double energy_from_integrals(const IntegralSet& spin_orbital, const TwoRDM& d,
                             int n_electrons) {
  if (spin_orbital.basis != OrbitalBasis::SpinOrbital)
    throw std::invalid_argument(
        "energy_from_integrals expects spin-orbital integrals");
  const int r = spin_orbital.n_orb;
  OneRDM one = contract_to_1rdm(d, n_electrons);
  std::complex<double> acc = 0.0;
  for (int p = 0; p < r; ++p)
    for (int s = 0; s < r; ++s) acc += spin_orbital.h(p, s) * one(p, s);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t)
          acc += 0.5 * spin_orbital.g4(p, q, s, t) * d.at(p, q, s, t);
  return acc.real() + spin_orbital.e_nuc;
}

TwoRDM q_matrix_from_rdm(const TwoRDM& d, int n_electrons) {
  const int r = d.r();
  OneRDM one = contract_to_1rdm(d, n_electrons);
  TwoRDM q(r);
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int p = 0; p < r; ++p)
    for (int qq = 0; qq < r; ++qq)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          std::complex<double> v = delta(p, s) * delta(qq, t) -
                                   delta(p, t) * delta(qq, s) + d.at(t, s, qq, p);
          v -= delta(qq, t) * one(s, p);
          v += delta(p, t) * one(s, qq);
          v += delta(qq, s) * one(t, p);
          v -= delta(p, s) * one(t, qq);
          q.at(p, qq, s, t) = v;
        }
  return q;
}

Eigen::MatrixXcd g_matrix_from_rdm(const TwoRDM& d, int n_electrons) {
  const int r = d.r();
  OneRDM one = contract_to_1rdm(d, n_electrons);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(r * r, r * r);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          std::complex<double> v = -d.at(p, t, s, q);
          if (q == t) v += one(p, s);
          g(p * r + q, s * r + t) = v;
        }
  return g;
}

NRepReport n_rep_check(const TwoRDM& d, int n_electrons) {
  const int r = d.r();
  const double n = n_electrons;
  NRepReport rep;
  rep.trace_error = std::abs(d.trace() - n * (n - 1.0));

  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          std::complex<double> v = d.at(p, q, s, t);
          rep.herm_error = std::max(
              rep.herm_error, std::abs(v - std::conj(d.at(s, t, p, q))));
          rep.antisym_error =
              std::max({rep.antisym_error, std::abs(v + d.at(q, p, s, t)),
                        std::abs(v + d.at(p, q, t, s))});
        }

  auto pairs = folded_pairs(r);
  const int np = static_cast<int>(pairs.size());
  Eigen::MatrixXcd dm(np, np), qm(np, np);
  TwoRDM qr = q_matrix_from_rdm(d, n_electrons);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      auto [p, q] = pairs[i];
      auto [s, t] = pairs[j];
      dm(i, j) = d.at(p, q, s, t);
      qm(i, j) = qr.at(p, q, s, t);
    }
  auto min_eig = [](const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    return es.eigenvalues().minCoeff();
  };
  rep.min_eig_d = min_eig(dm);
  rep.min_eig_q = min_eig(qm);
  rep.min_eig_g = min_eig(g_matrix_from_rdm(d, n_electrons));

  rep.pass_trace = rep.trace_error <= kTraceTol;
  rep.pass_herm = rep.herm_error <= kSymTol;
  rep.pass_antisym = rep.antisym_error <= kSymTol;
  rep.pass_d = rep.min_eig_d >= -kEigTol;
  rep.pass_q = rep.min_eig_q >= -kEigTol;
  rep.pass_g = rep.min_eig_g >= -kEigTol;
  return rep;
}

void write_rdm(const TwoRDM& d, int n_electrons, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open for writing: " + path);
  const int r = d.r();
  std::fprintf(f, "%d %d %.17e\n", r, n_electrons, d.trace());
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = s + 1; t < r; ++t) {
          if (s * r + t < p * r + q) continue;  // keep (p,q) <= (s,t)
          std::complex<double> v = d.at(p, q, s, t);
          if (std::abs(v) < 1e-14) continue;
          std::fprintf(f, "%d %d %d %d %.17e %.17e\n", p, q, s, t, v.real(),
                       v.imag());
        }
  std::fclose(f);
}

RdmFile read_rdm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open RDM file: " + path);
  int r, n;
  double trace;
  if (!(in >> r >> n >> trace))
    throw IoError("malformed RDM header in " + path);
  if (r < 2 || r > PauliString::kMaxQubits)
    throw IoError("RDM dimension out of range in " + path);
  RdmFile out{TwoRDM(r), n};
  int p, q, s, t;
  double re, im;
  while (in >> p >> q >> s >> t >> re >> im) {
    if (p < 0 || q < 0 || s < 0 || t < 0 || p >= r || q >= r || s >= r ||
        t >= r)
      throw IoError("RDM index out of range in " + path);
    std::complex<double> v(re, im);
    fill_antisym(out.d, p, q, s, t, v);
    fill_antisym(out.d, s, t, p, q, std::conj(v));
  }
  return out;
}

}  // namespace qpsim
