#include <cmath>
#include <stdexcept>

#include "qpsim/errors.h"
#include "qpsim/integrals.h"

namespace qpsim {

namespace {

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.eigenvalues().minCoeff() < 1e-10)
    throw NumericalError("overlap matrix is numerically singular");
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

Eigen::MatrixXd fock_matrix(const IntegralSet& ao, const Eigen::MatrixXd& d) {
  const int n = ao.n_orb;
  Eigen::MatrixXd f = ao.h;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s)
          acc += d(l, s) * (ao.g4(u, v, l, s) - 0.5 * ao.g4(u, l, v, s));
      f(u, v) += acc;
    }
  return f;
}

}  // namespace

ScfResult rhf_scf(const IntegralSet& ao, int n_electrons, int max_iter,
                  double conv_tol, double damping) {
  if (ao.basis != OrbitalBasis::AO)
    throw std::invalid_argument("rhf_scf expects AO integrals");
  if (n_electrons <= 0 || n_electrons % 2 != 0)
    throw std::invalid_argument("rhf_scf: closed shell needs even electrons");
  const int n = ao.n_orb;
  const int n_occ = n_electrons / 2;
  if (n_occ > n)
    throw std::invalid_argument("rhf_scf: more electron pairs than orbitals");

  const Eigen::MatrixXd x = inverse_sqrt(ao.overlap);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd c;
  Eigen::VectorXd eps;
  double e_elec = 0.0;
  bool converged = false;
  int iter = 0;
  for (iter = 1; iter <= max_iter; ++iter) {
    Eigen::MatrixXd f = fock_matrix(ao, d);
    double err = (f * d * ao.overlap - ao.overlap * d * f).norm();
    e_elec = 0.5 * (d.cwiseProduct(ao.h + f)).sum();
    if (iter > 1 && err < conv_tol) {
      converged = true;
      break;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * f * x);
    c = x * es.eigenvectors();
    eps = es.eigenvalues();
    Eigen::MatrixXd d_new =
        2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();
    d = damping * d + (1.0 - damping) * d_new;
  }
  if (!converged)
    throw NumericalError("SCF failed to converge within iteration limit");

  ScfResult res;
  res.coeffs = c;
  res.orbital_energies = eps;
  res.e_hf = e_elec + ao.e_nuc;
  res.iterations = iter;
  return res;
}

IntegralSet mo_transform(const IntegralSet& ao, const Eigen::MatrixXd& c) {
  const int n = ao.n_orb;
  const int m = static_cast<int>(c.cols());
  if (c.rows() != n)
    throw std::invalid_argument("mo_transform: coefficient shape mismatch");
  IntegralSet out;
  out.n_orb = m;
  out.e_nuc = ao.e_nuc;
  out.basis = OrbitalBasis::MO;
  out.h = c.transpose() * ao.h * c;

  // Four quarter transforms, chemists' (pq|st) kept throughout.
  std::vector<double> t1(size_t(m) * n * n * n, 0.0);
  for (int p = 0; p < m; ++p)
    for (int v = 0; v < n; ++v)
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int u = 0; u < n; ++u) acc += c(u, p) * ao.g4(u, v, l, s);
          t1[((size_t(p) * n + v) * n + l) * n + s] = acc;
        }
  std::vector<double> t2(size_t(m) * m * n * n, 0.0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int v = 0; v < n; ++v)
            acc += c(v, q) * t1[((size_t(p) * n + v) * n + l) * n + s];
          t2[((size_t(p) * m + q) * n + l) * n + s] = acc;
        }
  std::vector<double> t3(size_t(m) * m * m * n, 0.0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l)
            acc += c(l, r) * t2[((size_t(p) * m + q) * n + l) * n + s];
          t3[((size_t(p) * m + q) * m + r) * n + s] = acc;
        }
  out.g.assign(size_t(m) * m * m * m, 0.0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int t = 0; t < m; ++t) {
          double acc = 0.0;
          for (int s = 0; s < n; ++s)
            acc += c(s, t) * t3[((size_t(p) * m + q) * m + r) * n + s];
          out.g4(p, q, r, t) = acc;
        }
  return out;
}

IntegralSet spin_orbital_expand(const IntegralSet& mo) {
  if (mo.basis != OrbitalBasis::MO)
    throw std::invalid_argument("spin_orbital_expand expects MO integrals");
  const int n = mo.n_orb;
  const int r = 2 * n;
  IntegralSet out;
  out.n_orb = r;
  out.e_nuc = mo.e_nuc;
  out.basis = OrbitalBasis::SpinOrbital;
  out.h = Eigen::MatrixXd::Zero(r, r);
  out.g.assign(size_t(r) * r * r * r, 0.0);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      if ((p & 1) == (q & 1)) out.h(p, q) = mo.h(p >> 1, q >> 1);
  // Physicists' <pq|st>: electron 1 carries (p,s), electron 2 carries (q,t),
  // so <pq|st> = (PS|QT) with matching spins on each electron.
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          if ((p & 1) != (s & 1) || (q & 1) != (t & 1)) continue;
          out.g4(p, q, s, t) = mo.g4(p >> 1, s >> 1, q >> 1, t >> 1);
        }
  return out;
}

ReducedHamiltonian reduced_hamiltonian(const IntegralSet& spin_orbital,
                                       int n_electrons) {
  if (spin_orbital.basis != OrbitalBasis::SpinOrbital)
    throw std::invalid_argument(
        "reduced_hamiltonian expects spin-orbital integrals");
  if (n_electrons < 2)
    throw std::invalid_argument("reduced_hamiltonian needs N >= 2");
  const int r = spin_orbital.n_orb;
  const double n = n_electrons;
  ReducedHamiltonian k;
  k.r = r;
  k.n_electrons = n_electrons;
  k.k.assign(size_t(r) * r * r * r, 0.0);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
          double v = 0.5 * n * (n - 1.0) * spin_orbital.g4(p, q, s, t);
          if (q == t) v += 0.5 * n * spin_orbital.h(p, s);
          if (p == s) v += 0.5 * n * spin_orbital.h(q, t);
          k.at(p, q, s, t) = v;
        }
  return k;
}

}  // namespace qpsim
