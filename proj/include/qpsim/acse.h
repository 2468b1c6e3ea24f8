#ifndef QPSIM_ACSE_H
#define QPSIM_ACSE_H

#include <functional>
#include <string>
#include <vector>

#include "qpsim/integrals.h"
#include "qpsim/ladder.h"
#include "qpsim/rdm.h"
#include "qpsim/statevector.h"

namespace qpsim {

struct SolverConfig {
  Statistics encoding = Statistics::kFermionic;
  double epsilon0 = 0.1;
  bool line_search = true;
  int max_iterations = 60;
  double energy_tol = 1e-9;
  double residual_tol = 1e-6;

  void validate() const;
};

/// Two-body residual A^{pq}_{st} = <s|[adag_p adag_q a_t a_s, H]|s>,
/// anti-Hermitian by construction, diagonal folded entries fixed to zero.
struct ResidualTensor {
  GeneratorTensor a;
  double norm = 0.0;  // Frobenius norm of the full tensor
};

/// The probe operators carry the statistics of the ansatz that will
/// exponentiate the result, so the returned tensor is the energy gradient
/// along the corresponding generator directions: fermionic probes use
/// parity-string images, qubit-particle probes the bare ones.
ResidualTensor acse_residual(const StateVector& s, const PauliSum& h,
                             int n_electrons,
                             Statistics stats = Statistics::kFermionic);

struct StepResult {
  StateVector state;
  double epsilon_used = 0.0;
  long long cnots_added = 0;
  bool line_search_fallback = false;
};

/// Applies exp(eps A) as a product of two-body unitaries, one per folded
/// index-pair block. Within a block the Pauli terms mutually commute, so each
/// block factor is exact and particle conserving; blocks are ordered by index
/// pair and terms inside a block lexicographically. eps comes from a 3-point
/// quadratic line search over {0, eps0, 2 eps0} (with fallback to eps0 on a
/// non-convex fit, flagged) or is fixed at eps0 when the search is disabled.
/// Residual entries below 1e-8 * max|A| are dropped before circuit
/// construction. The CNOT count covers the applied circuit once.
StepResult acse_step(const StateVector& s, const ResidualTensor& a,
                     const PauliSum& h, const SolverConfig& cfg);

struct IterationRecord {
  int iteration = 0;
  double epsilon = 0.0;
  double residual_norm = 0.0;
  double energy = 0.0;  // total energy including nuclear repulsion
  long long cumulative_cnots = 0;
  double wall_time_s = 0.0;
  bool line_search_fallback = false;
};

struct AnsatzTrace {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  std::string stop_reason;
};

struct SolveResult {
  AnsatzTrace trace;
  StateVector state;
  TwoRDM rdm;
  double energy = 0.0;
};

using IterationObserver =
    std::function<void(const IterationRecord&, const StateVector&)>;

/// Full solver loop: reference determinant on the N lowest spin orbitals,
/// residual -> step until the residual norm falls below residual_tol, the
/// energy change falls below energy_tol, or max_iterations is hit (flagged as
/// non-converged). The applied generator mixes the previous search direction
/// into the fresh residual (conjugate-direction weight) because plain
/// residual steps stall in an ill-conditioned terminal valley; recorded
/// residual norms are always those of the unmixed tensor. The observer, when
/// given, sees every recorded iterate.
SolveResult acse_solve(const IntegralSet& spin_orbital, int n_electrons,
                       const SolverConfig& cfg,
                       const IterationObserver& observer = {});

struct FciResult {
  double energy = 0.0;    // total energy including nuclear repulsion
  StateVector state;      // eigenvector embedded in the full 2^r space
};

/// Dense diagonalization in the fixed (N, ms2 = 2 Sz) determinant sector.
/// Determinant |j1 < ... < jN> carries amplitude sign +1 at basis index
/// sum_k 2^{jk}, matching the parity-string convention.
FciResult fci_ground_state(const IntegralSet& spin_orbital, int n_electrons,
                           int ms2);

}  // namespace qpsim

#endif
