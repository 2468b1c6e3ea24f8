#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qpsim/acse.h"
#include "qpsim/errors.h"

namespace qpsim {

namespace {

// Sign picked up moving an operator for orbital p past the occupied orbitals
// below p.
inline int parity_below(uint32_t mask, int p) {
  return (std::popcount(mask & ((1u << p) - 1u)) & 1) ? -1 : 1;
}

inline bool annihilate(uint32_t& mask, int p, int& sign) {
  if (!((mask >> p) & 1u)) return false;
  sign *= parity_below(mask, p);
  mask ^= 1u << p;
  return true;
}

inline bool create(uint32_t& mask, int p, int& sign) {
  if ((mask >> p) & 1u) return false;
  sign *= parity_below(mask, p);
  mask ^= 1u << p;
  return true;
}

}  // namespace

FciResult fci_ground_state(const IntegralSet& spin_orbital, int n_electrons,
                           int ms2) {
  if (spin_orbital.basis != OrbitalBasis::SpinOrbital)
    throw std::invalid_argument("fci_ground_state expects spin-orbital integrals");
  const int r = spin_orbital.n_orb;
  if (r < 2 || r % 2 != 0 || r > PauliString::kMaxQubits)
    throw std::invalid_argument("fci_ground_state: bad spin-orbital count");
  if (n_electrons < 1 || n_electrons > r)
    throw std::invalid_argument("fci_ground_state: electron count out of range");
  if ((n_electrons + ms2) % 2 != 0 || std::abs(ms2) > n_electrons)
    throw std::invalid_argument("fci_ground_state: incompatible ms2");
  const int n_alpha = (n_electrons + ms2) / 2;
  if (n_alpha < 0 || n_alpha > r / 2 || n_electrons - n_alpha > r / 2)
    throw std::invalid_argument("fci_ground_state: sector is empty");

  // Alpha spin orbitals sit on even qubits (p = 2k), beta on odd.
  std::vector<uint32_t> masks;
  std::unordered_map<uint32_t, int> index_of;
  const uint32_t alpha_bits = 0x55555555u & ((1u << r) - 1u);
  for (uint32_t m = 0; m < (1u << r); ++m) {
    if (std::popcount(m) != n_electrons) continue;
    if (std::popcount(m & alpha_bits) != n_alpha) continue;
    index_of.emplace(m, int(masks.size()));
    masks.push_back(m);
  }
  const int dim = int(masks.size());
  if (dim == 0)
    throw std::invalid_argument("fci_ground_state: sector is empty");

  Eigen::MatrixXd hmat = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const uint32_t ket = masks[j];
    for (int q = 0; q < r; ++q) {
      for (int p = 0; p < r; ++p) {
        if (spin_orbital.h(p, q) == 0.0) continue;
        uint32_t m = ket;
        int sign = 1;
        if (!annihilate(m, q, sign)) continue;
        if (!create(m, p, sign)) continue;
        hmat(index_of.at(m), j) += sign * spin_orbital.h(p, q);
      }
    }
    for (int s = 0; s < r; ++s) {
      for (int t = 0; t < r; ++t) {
        uint32_t m1 = ket;
        int sign1 = 1;
        if (!annihilate(m1, s, sign1)) continue;
        if (!annihilate(m1, t, sign1)) continue;
        for (int q = 0; q < r; ++q) {
          uint32_t m2 = m1;
          int sign2 = sign1;
          if (!create(m2, q, sign2)) continue;
          for (int p = 0; p < r; ++p) {
            const double v = spin_orbital.g4(p, q, s, t);
            if (v == 0.0) continue;
            uint32_t m3 = m2;
            int sign3 = sign2;
            if (!create(m3, p, sign3)) continue;
            hmat(index_of.at(m3), j) += 0.5 * sign3 * v;
          }
        }
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hmat);
  if (solver.info() != Eigen::Success)
    throw NumericalError("fci_ground_state: diagonalization failed");
  const Eigen::VectorXd ground = solver.eigenvectors().col(0);

  FciResult out{solver.eigenvalues()(0) + spin_orbital.e_nuc, StateVector(r)};
  int peak = 0;
  for (int j = 1; j < dim; ++j)
    if (std::abs(ground(j)) > std::abs(ground(peak))) peak = j;
  const double phase = ground(peak) >= 0.0 ? 1.0 : -1.0;
  for (int j = 0; j < dim; ++j) out.state[masks[j]] = phase * ground(j);
  return out;
}

}  // namespace qpsim
