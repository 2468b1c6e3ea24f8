#ifndef QPSIM_INTEGRALS_H
#define QPSIM_INTEGRALS_H

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace qpsim {

constexpr double kBohrPerAngstrom = 1.8897259886;

struct Atom {
  std::string element;
  double charge;             // nuclear charge
  Eigen::Vector3d r_bohr;    // position in Bohr
};

struct Geometry {
  std::vector<Atom> atoms;

  /// Plain-text format: first non-blank line "angstrom" or "bohr", then one
  /// "element x y z" line per atom.
  static Geometry from_file(const std::string& path);

  double nuclear_repulsion() const;
  int total_electrons() const;  // neutral molecule
};

/// One contracted s-type shell: phi = sum_i c_i N(a_i) exp(-a_i |r-A|^2).
struct ContractedShell {
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

struct BasisSet {
  std::map<std::string, std::vector<ContractedShell>> shells_by_element;

  /// Plain-text format: "element exponent coefficient" lines; a blank line
  /// starts a new shell. Contractions are renormalized on load.
  static BasisSet from_file(const std::string& path);
};

enum class OrbitalBasis { AO, MO, SpinOrbital };

/// One- and two-electron integrals over a common orbital set.
///
/// g convention: chemists' (pq|st) for AO and MO bases; physicists' <pq|st>
/// (electron 1 carries p,s; electron 2 carries q,t) for SpinOrbital. The
/// conversion happens exactly once, inside spin_orbital_expand.
struct IntegralSet {
  int n_orb = 0;
  double e_nuc = 0.0;
  OrbitalBasis basis = OrbitalBasis::AO;
  Eigen::MatrixXd h;       // core Hamiltonian
  std::vector<double> g;   // flat n_orb^4 tensor

  Eigen::MatrixXd overlap;  // filled for AO only

  double g4(int p, int q, int s, int t) const {
    return g[((size_t(p) * n_orb + q) * n_orb + s) * n_orb + t];
  }
  double& g4(int p, int q, int s, int t) {
    return g[((size_t(p) * n_orb + q) * n_orb + s) * n_orb + t];
  }
};

/// Boys function F0(t) = int_0^1 exp(-t u^2) du, relative error below 1e-12.
double boys_f0(double t);

/// Closed-form s-Gaussian integrals (overlap, kinetic, nuclear attraction,
/// electron repulsion) for the given geometry and basis.
IntegralSet compute_ao_integrals(const Geometry& geom, const BasisSet& basis);

struct ScfResult {
  Eigen::MatrixXd coeffs;           // AO x MO, columns ordered by energy
  Eigen::VectorXd orbital_energies;
  double e_hf = 0.0;                // total restricted Hartree-Fock energy
  int iterations = 0;
};

/// Closed-shell restricted Hartree-Fock. Convergence is measured by the
/// Frobenius norm of FDS - SDF; plain Roothaan iterations with fixed density
/// damping, no DIIS.
ScfResult rhf_scf(const IntegralSet& ao, int n_electrons, int max_iter = 200,
                  double conv_tol = 1e-10, double damping = 0.0);

/// Four-index transform into the column space of C (chemists' notation kept).
IntegralSet mo_transform(const IntegralSet& ao, const Eigen::MatrixXd& c);

/// Expands spatial MO integrals to 2*n_orb spin orbitals with the interleaved
/// ordering p = 2*spatial + spin (0 = alpha, 1 = beta). Output g holds plain
/// physicists' <pq|st>, zero unless spin(p)=spin(s) and spin(q)=spin(t).
IntegralSet spin_orbital_expand(const IntegralSet& mo);

/// Two-particle reduced Hamiltonian K^{pq}_{st} in the unit-trace convention:
/// K = (N/2)(h(1) + h(2)) + (N(N-1)/2) u(12) over spin orbitals, so that the
/// electronic energy is Tr(K D) / (N(N-1)) for a measured 2-RDM of trace
/// N(N-1).
struct ReducedHamiltonian {
  int r = 0;
  int n_electrons = 0;
  std::vector<double> k;  // flat r^4 tensor

  double at(int p, int q, int s, int t) const {
    return k[((size_t(p) * r + q) * r + s) * r + t];
  }
  double& at(int p, int q, int s, int t) {
    return k[((size_t(p) * r + q) * r + s) * r + t];
  }
};

ReducedHamiltonian reduced_hamiltonian(const IntegralSet& spin_orbital,
                                       int n_electrons);

/// FCIDUMP: namelist header, then "value p q s t" lines with 1-based spatial
/// indices in chemists' notation, 8-fold symmetry-unique two-electron entries,
/// one-electron entries as "value p q 0 0", core energy as "value 0 0 0 0".
void fcidump_write(const IntegralSet& mo, int n_electrons,
                   const std::string& path);

struct FcidumpData {
  IntegralSet ints;  // MO basis
  int n_electrons = 0;
  int ms2 = 0;
};

FcidumpData fcidump_read(const std::string& path);

}  // namespace qpsim

#endif
