#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qpsim/errors.h"
#include "qpsim/integrals.h"

namespace qpsim {

namespace {

constexpr double kPi = std::numbers::pi;

double element_charge(const std::string& element) {
  static const std::map<std::string, double> table = {
      {"H", 1.0}, {"He", 2.0}, {"Li", 3.0}, {"Be", 4.0}};
  auto it = table.find(element);
  if (it == table.end())
    throw std::invalid_argument("unsupported element: " + element);
  return it->second;
}

// Primitive normalization for an s-Gaussian exp(-a r^2).
double prim_norm(double a) { return std::pow(2.0 * a / kPi, 0.75); }

struct BasisFunction {
  Eigen::Vector3d center;
  std::vector<double> exps;
  std::vector<double> coefs;  // includes primitive norms
};

// Unnormalized primitive overlap (pi/p)^{3/2} exp(-mu R^2).
double prim_overlap(double a, const Eigen::Vector3d& ra, double b,
                    const Eigen::Vector3d& rb) {
  double p = a + b;
  double mu = a * b / p;
  double r2 = (ra - rb).squaredNorm();
  return std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
}

double prim_kinetic(double a, const Eigen::Vector3d& ra, double b,
                    const Eigen::Vector3d& rb) {
  double p = a + b;
  double mu = a * b / p;
  double r2 = (ra - rb).squaredNorm();
  return mu * (3.0 - 2.0 * mu * r2) * std::pow(kPi / p, 1.5) *
         std::exp(-mu * r2);
}

double prim_nuclear(double a, const Eigen::Vector3d& ra, double b,
                    const Eigen::Vector3d& rb, const Eigen::Vector3d& rc,
                    double zc) {
  double p = a + b;
  double mu = a * b / p;
  Eigen::Vector3d rp = (a * ra + b * rb) / p;
  double r2 = (ra - rb).squaredNorm();
  return -2.0 * kPi / p * zc * std::exp(-mu * r2) *
         boys_f0(p * (rp - rc).squaredNorm());
}

double prim_eri(double a, const Eigen::Vector3d& ra, double b,
                const Eigen::Vector3d& rb, double c, const Eigen::Vector3d& rc,
                double d, const Eigen::Vector3d& rd) {
  double p = a + b, q = c + d;
  Eigen::Vector3d rp = (a * ra + b * rb) / p;
  Eigen::Vector3d rq = (c * rc + d * rd) / q;
  double mu_ab = a * b / p, mu_cd = c * d / q;
  double pre = 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q));
  return pre *
         std::exp(-mu_ab * (ra - rb).squaredNorm() -
                  mu_cd * (rc - rd).squaredNorm()) *
         boys_f0(p * q / (p + q) * (rp - rq).squaredNorm());
}

template <typename F>
double contract2(const BasisFunction& u, const BasisFunction& v, F prim) {
  double acc = 0.0;
  for (size_t i = 0; i < u.exps.size(); ++i)
    for (size_t j = 0; j < v.exps.size(); ++j)
      acc += u.coefs[i] * v.coefs[j] *
             prim(u.exps[i], u.center, v.exps[j], v.center);
  return acc;
}

std::vector<BasisFunction> build_functions(const Geometry& geom,
                                           const BasisSet& basis) {
  std::vector<BasisFunction> fns;
  for (const auto& atom : geom.atoms) {
    auto it = basis.shells_by_element.find(atom.element);
    if (it == basis.shells_by_element.end())
      throw std::invalid_argument("no basis entry for element: " +
                                  atom.element);
    for (const auto& shell : it->second) {
      BasisFunction f;
      f.center = atom.r_bohr;
      f.exps = shell.exponents;
      f.coefs.resize(shell.coefficients.size());
      for (size_t i = 0; i < shell.exponents.size(); ++i)
        f.coefs[i] = shell.coefficients[i] * prim_norm(shell.exponents[i]);
      fns.push_back(std::move(f));
    }
  }
  return fns;
}

}  // namespace

double boys_f0(double t) {
  if (t < 1e-13) return 1.0 - t / 3.0 + t * t / 10.0;
  double st = std::sqrt(t);
  return 0.5 * std::sqrt(kPi / t) * std::erf(st);
}

Geometry Geometry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file: " + path);
  Geometry geom;
  std::string line;
  double to_bohr = 0.0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (to_bohr == 0.0) {
      std::string unit = first;
      for (auto& ch : unit) ch = std::tolower(static_cast<unsigned char>(ch));
      if (unit == "angstrom")
        to_bohr = kBohrPerAngstrom;
      else if (unit == "bohr")
        to_bohr = 1.0;
      else
        throw IoError(
            "geometry file must start with 'angstrom' or 'bohr': " + path);
      continue;
    }
    Atom atom;
    atom.element = first;
    atom.charge = element_charge(first);
    double x, y, z;
    if (!(ls >> x >> y >> z))
      throw IoError("malformed geometry line: " + line);
    atom.r_bohr = Eigen::Vector3d(x, y, z) * to_bohr;
    geom.atoms.push_back(atom);
  }
  if (geom.atoms.empty())
    throw IoError("geometry file has no atoms: " + path);
  return geom;
}

double Geometry::nuclear_repulsion() const {
  double acc = 0.0;
  for (size_t a = 0; a < atoms.size(); ++a)
    for (size_t b = a + 1; b < atoms.size(); ++b) {
      double r = (atoms[a].r_bohr - atoms[b].r_bohr).norm();
      if (r < 1e-10) throw std::invalid_argument("coincident nuclei");
      acc += atoms[a].charge * atoms[b].charge / r;
    }
  return acc;
}

int Geometry::total_electrons() const {
  double z = 0.0;
  for (const auto& a : atoms) z += a.charge;
  return static_cast<int>(std::lround(z));
}

BasisSet BasisSet::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open basis file: " + path);
  BasisSet basis;
  std::string line;
  std::string element;
  ContractedShell shell;
  auto flush = [&]() {
    if (shell.exponents.empty()) return;
    basis.shells_by_element[element].push_back(shell);
    shell = ContractedShell();
    element.clear();
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string el;
    double expn, coef;
    if (!(ls >> el)) {
      flush();  // blank line terminates a shell
      continue;
    }
    if (el[0] == '#') continue;
    if (!(ls >> expn >> coef))
      throw IoError("malformed basis line: " + line);
    if (!element.empty() && el != element)
      throw IoError("element changed mid-shell in basis file");
    element = el;
    shell.exponents.push_back(expn);
    shell.coefficients.push_back(coef);
  }
  flush();
  if (basis.shells_by_element.empty())
    throw IoError("basis file has no shells: " + path);
  // Renormalize each contraction to <phi|phi> = 1.
  for (auto& [el, shells] : basis.shells_by_element) {
    for (auto& sh : shells) {
      double self = 0.0;
      for (size_t i = 0; i < sh.exponents.size(); ++i)
        for (size_t j = 0; j < sh.exponents.size(); ++j)
          self += sh.coefficients[i] * sh.coefficients[j] *
                  prim_norm(sh.exponents[i]) * prim_norm(sh.exponents[j]) *
                  std::pow(kPi / (sh.exponents[i] + sh.exponents[j]), 1.5);
      double scale = 1.0 / std::sqrt(self);
      for (auto& c : sh.coefficients) c *= scale;
    }
  }
  return basis;
}

IntegralSet compute_ao_integrals(const Geometry& geom, const BasisSet& basis) {
  auto fns = build_functions(geom, basis);
  const int n = static_cast<int>(fns.size());
  IntegralSet out;
  out.n_orb = n;
  out.basis = OrbitalBasis::AO;
  out.e_nuc = geom.nuclear_repulsion();
  out.overlap = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd kin = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd nuc = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = u; v < n; ++v) {
      double s = contract2(fns[u], fns[v], prim_overlap);
      double t = contract2(fns[u], fns[v], prim_kinetic);
      double w = 0.0;
      for (const auto& atom : geom.atoms)
        w += contract2(fns[u], fns[v],
                       [&](double a, const Eigen::Vector3d& ra, double b,
                           const Eigen::Vector3d& rb) {
                         return prim_nuclear(a, ra, b, rb, atom.r_bohr,
                                             atom.charge);
                       });
      out.overlap(u, v) = out.overlap(v, u) = s;
      kin(u, v) = kin(v, u) = t;
      nuc(u, v) = nuc(v, u) = w;
    }
  }
  out.h = kin + nuc;

  out.g.assign(size_t(n) * n * n * n, 0.0);
  auto pair_index = [](int p, int q) { return p * (p + 1) / 2 + q; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int s = 0; s < n; ++s)
        for (int t = 0; t <= s; ++t) {
          if (pair_index(p, q) < pair_index(s, t)) continue;
          double value = 0.0;
          const auto &fp = fns[p], &fq = fns[q], &fs = fns[s], &ft = fns[t];
          for (size_t i = 0; i < fp.exps.size(); ++i)
            for (size_t j = 0; j < fq.exps.size(); ++j)
              for (size_t k = 0; k < fs.exps.size(); ++k)
                for (size_t l = 0; l < ft.exps.size(); ++l)
                  value += fp.coefs[i] * fq.coefs[j] * fs.coefs[k] *
                           ft.coefs[l] *
                           prim_eri(fp.exps[i], fp.center, fq.exps[j],
                                    fq.center, fs.exps[k], fs.center,
                                    ft.exps[l], ft.center);
          // (pq|st) = (qp|st) = (pq|ts) = (qp|ts) = (st|pq) = ...
          for (auto [a, b] : {std::pair{p, q}, {q, p}})
            for (auto [c, d] : {std::pair{s, t}, {t, s}}) {
              out.g4(a, b, c, d) = value;
              out.g4(c, d, a, b) = value;
            }
        }
  return out;
}

}  // namespace qpsim
