#ifndef QPSIM_RDM_H
#define QPSIM_RDM_H

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qpsim/integrals.h"
#include "qpsim/statevector.h"

namespace qpsim {

/// Fermionic two-particle reduced density matrix
///   D^{pq}_{st} = <psi| adag_p adag_q a_t a_s |psi>,
/// stored unscaled, so the full trace sum_{pq} D^{pq}_{pq} is N(N-1).
class TwoRDM {
 public:
  explicit TwoRDM(int r)
      : r_(r), d_(size_t(r) * r * r * r, std::complex<double>(0.0)) {}

  int r() const { return r_; }

  std::complex<double> at(int p, int q, int s, int t) const {
    return d_[((size_t(p) * r_ + q) * r_ + s) * r_ + t];
  }
  std::complex<double>& at(int p, int q, int s, int t) {
    return d_[((size_t(p) * r_ + q) * r_ + s) * r_ + t];
  }

  double trace() const;

 private:
  int r_;
  std::vector<std::complex<double>> d_;
};

using OneRDM = Eigen::MatrixXcd;  // d(p,s) = <adag_p a_s>

/// Measures every folded-unique element of the 2-RDM as the expectation of
/// the parity-string image of adag_p adag_q a_t a_s, then fills the rest by
/// antisymmetry and Hermiticity. The state must be normalized and lie in the
/// N-particle sector.
TwoRDM measure_2rdm(const StateVector& s, int n_electrons);

/// d(p,s) = 1/(N-1) sum_q D^{pq}_{sq}.
OneRDM contract_to_1rdm(const TwoRDM& d, int n_electrons);

/// Electronic energy from the two-particle reduced Hamiltonian,
/// Tr(K D) / (N(N-1)), plus the nuclear repulsion shift.
double energy_from_rdm(const ReducedHamiltonian& k, const TwoRDM& d,
                       double e_nuc);

/// Same energy evaluated directly from spin-orbital integrals,
/// sum h d1 + 1/2 sum <pq|st> D. Used as an independent cross-check.
double energy_from_integrals(const IntegralSet& spin_orbital, const TwoRDM& d,
                             int n_electrons);

/// Ensemble N-representability diagnostics for a measured 2-RDM: trace and
/// symmetry residuals plus the smallest eigenvalues of the particle-particle
/// (D), hole-hole (Q) and particle-hole (G) matrices. Q and G come from the
/// exact anticommutation rearrangement of D and its contraction, not from a
/// separate measurement.
struct NRepReport {
  double trace_error = 0.0;
  double herm_error = 0.0;
  double antisym_error = 0.0;
  double min_eig_d = 0.0;
  double min_eig_q = 0.0;
  double min_eig_g = 0.0;
  bool pass_trace = false;
  bool pass_herm = false;
  bool pass_antisym = false;
  bool pass_d = false;
  bool pass_q = false;
  bool pass_g = false;

  bool pass() const {
    return pass_trace && pass_herm && pass_antisym && pass_d && pass_q &&
           pass_g;
  }
};

constexpr double kTraceTol = 1e-8;
constexpr double kSymTol = 1e-10;
constexpr double kEigTol = 1e-8;

NRepReport n_rep_check(const TwoRDM& d, int n_electrons);

/// Hole-hole and particle-hole matrices from the rearrangement identities.
/// Exposed for oracle tests against directly measured expectations.
TwoRDM q_matrix_from_rdm(const TwoRDM& d, int n_electrons);
Eigen::MatrixXcd g_matrix_from_rdm(const TwoRDM& d, int n_electrons);

/// Text dump: header "r N trace", then "p q s t real imag" lines for
/// folded-unique elements (p<q, s<t, (p,q) <= (s,t)) above 1e-14.
void write_rdm(const TwoRDM& d, int n_electrons, const std::string& path);

struct RdmFile {
  TwoRDM d;
  int n_electrons;
};

RdmFile read_rdm(const std::string& path);

}  // namespace qpsim

#endif
