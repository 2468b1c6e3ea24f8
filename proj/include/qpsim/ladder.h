#ifndef QPSIM_LADDER_H
#define QPSIM_LADDER_H

#include <complex>
#include <vector>

#include "qpsim/integrals.h"
#include "qpsim/pauli.h"

namespace qpsim {

/// Exchange statistics of the encoded mode operators. Fermionic operators
/// anticommute across sites and map through the parity-string transformation;
/// qubit-particle operators keep the on-site algebra but commute across sites
/// and map to bare raising/lowering operators.
enum class Statistics { kFermionic, kQubitParticle };

struct LadderFactor {
  int orbital;
  bool dagger;
};

/// coeff * product of creation/annihilation factors, leftmost factor first
/// (so the rightmost factor acts first on a ket).
struct LadderTerm {
  std::complex<double> coeff{1.0, 0.0};
  std::vector<LadderFactor> factors;
  Statistics stats = Statistics::kFermionic;
};

/// Parity-string image on num_qubits qubits:
///   adag_p -> 1/2 (X_p - i Y_p) Z_{p-1} ... Z_0
///   a_p    -> 1/2 (X_p + i Y_p) Z_{p-1} ... Z_0
PauliSum jordan_wigner(const LadderTerm& term, int num_qubits);

/// Bare raising/lowering image (no parity strings):
///   sdag_p -> 1/2 (X_p - i Y_p),  s_p -> 1/2 (X_p + i Y_p)
PauliSum qubit_particle_encode(const LadderTerm& term, int num_qubits);

/// Dispatches on term.stats.
PauliSum encode_ladder(const LadderTerm& term, int num_qubits);

/// Coefficients A^{pq}_{st} of the two-body generator
///   A = sum_{p<q, s<t} A^{pq}_{st} cdag_p cdag_q c_t c_s,
/// stored as a full rank-4 tensor extended by antisymmetry in (p,q) and in
/// (s,t) and by anti-Hermiticity A^{pq}_{st} = -conj(A^{st}_{pq}). Free
/// parameters are the folded entries with p<q, s<t, (p,q) != (s,t).
struct GeneratorTensor {
  int r = 0;
  std::vector<std::complex<double>> a;

  explicit GeneratorTensor(int num_orbitals)
      : r(num_orbitals), a(size_t(num_orbitals) * num_orbitals *
                               num_orbitals * num_orbitals,
                           0.0) {}

  std::complex<double> at(int p, int q, int s, int t) const {
    return a[((size_t(p) * r + q) * r + s) * r + t];
  }

  /// Writes one folded element (p<q, s<t) and all its symmetry images.
  void set_element(int p, int q, int s, int t, std::complex<double> value);

  double frobenius_norm() const;

  /// Throws std::invalid_argument when the stored tensor violates
  /// antisymmetry or anti-Hermiticity beyond tol.
  void validate(double tol = 1e-10) const;
};

/// Pauli image of the generator under the requested statistics. The result is
/// anti-Hermitian whenever the tensor invariants hold.
PauliSum build_generator(const GeneratorTensor& a, Statistics stats);

/// Parity-string image of
///   H = sum_pq h_pq adag_p a_q
///     + 1/2 sum_pqst <pq|st> adag_p adag_q a_t a_s
/// over spin orbitals. Requires a SpinOrbital IntegralSet; validates integral
/// symmetries and Hermiticity of the result.
PauliSum hamiltonian_pauli(const IntegralSet& spin_orbital);

}  // namespace qpsim

#endif
