#ifndef QPSIM_STATEVECTOR_H
#define QPSIM_STATEVECTOR_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qpsim/pauli.h"

namespace qpsim {

/// Dense statevector on r qubits, little-endian: qubit p is bit p of the
/// basis index, so |n> has qubit p occupied when (n >> p) & 1.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  /// |n> with the given qubits set to 1. Indices must be unique and in range.
  static StateVector basis_state(int num_qubits,
                                 const std::vector<int>& occupied);

  int num_qubits() const { return num_qubits_; }
  size_t dim() const { return amps_.size(); }

  std::complex<double>& operator[](size_t n) { return amps_[n]; }
  const std::complex<double>& operator[](size_t n) const { return amps_[n]; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  double norm() const;
  void normalize();

  /// Expectation value of the total occupation-number operator.
  double number_expectation() const;

 private:
  std::vector<std::complex<double>> amps_;
  int num_qubits_;
};

/// Returns P|s>.
StateVector apply_pauli_string(const StateVector& s, const PauliString& p);

/// Returns H|s> for a Pauli sum H.
StateVector apply_pauli_sum(const StateVector& s, const PauliSum& h);

/// In-place exp(i theta P)|s> = cos(theta)|s> + i sin(theta) P|s>.
/// P must carry a unit coefficient (then P^2 = I and the map is unitary).
void apply_pauli_rotation(StateVector& s, const PauliString& p, double theta);

/// <s|H|s>.
std::complex<double> expectation(const StateVector& s, const PauliSum& h);
std::complex<double> expectation(const StateVector& s, const PauliString& p);

/// <bra|Op|ket> without forming Op|ket>.
std::complex<double> transition_amplitude(const StateVector& bra,
                                          const PauliSum& op,
                                          const StateVector& ket);

/// <a|b>.
std::complex<double> inner(const StateVector& a, const StateVector& b);

/// Amplitude dump: one line "index real imag" per non-zero amplitude. The
/// format carries no register width, so readers that need a specific width
/// (a sparse state may leave the top qubits empty) must pass num_qubits;
/// num_qubits = 0 infers the smallest register holding the largest index.
void write_statevector(const StateVector& s, const std::string& path);
StateVector read_statevector(const std::string& path, int num_qubits = 0);

}  // namespace qpsim

#endif
