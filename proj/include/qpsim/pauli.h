#ifndef QPSIM_PAULI_H
#define QPSIM_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qpsim {

/// A scaled Pauli string c * L(r-1) x ... x L(1) x L(0) on `num_qubits` qubits,
/// with L(p) in {I, X, Y, Z} and Y meaning the standard Pauli Y = i X Z.
///
/// Letters are stored as two bit masks: bit p of x_mask is set when L(p) has an
/// X component (X or Y), bit p of z_mask when it has a Z component (Z or Y).
/// The coefficient always multiplies the plain letter product, so phase
/// bookkeeping for the Y = i X Z identity lives inside multiply/apply only.
class PauliString {
 public:
  static constexpr int kMaxQubits = 24;

  explicit PauliString(int num_qubits, std::complex<double> coeff = 1.0);

  /// Builds from a letter string ordered qubit 0 first, e.g. "XIZY".
  static PauliString from_letters(const std::string& letters,
                                  std::complex<double> coeff = 1.0);

  int num_qubits() const { return num_qubits_; }
  std::complex<double> coefficient() const { return coeff_; }
  void set_coefficient(std::complex<double> c) { coeff_ = c; }

  char letter(int qubit) const;
  void set_letter(int qubit, char letter);

  uint32_t x_mask() const { return x_; }
  uint32_t z_mask() const { return z_; }

  /// Number of non-identity letters.
  int weight() const;

  bool is_identity() const { return x_ == 0 && z_ == 0; }

  PauliString adjoint() const;

  /// Letter string ordered qubit 0 first, plus the coefficient on demand.
  std::string letters() const;
  std::string str() const;

  /// Key that orders strings lexicographically by letters (I < X < Y < Z),
  /// qubit 0 most significant. Used for canonical term ordering.
  uint64_t lex_key() const;

  /// Matrix product lhs * rhs (rhs acts first on kets). Phases from commuting
  /// Z past X and from Y = i X Z fold into the coefficient and always lie in
  /// {+1, -1, +i, -i} for unit input coefficients.
  friend PauliString operator*(const PauliString& lhs, const PauliString& rhs);

  friend bool same_letters(const PauliString& a, const PauliString& b) {
    return a.x_ == b.x_ && a.z_ == b.z_ && a.num_qubits_ == b.num_qubits_;
  }

 private:
  std::complex<double> coeff_;
  uint32_t x_;
  uint32_t z_;
  int num_qubits_;
};

/// A sum of Pauli strings kept merged (equal letters combined, coefficients
/// below kMergeTol dropped) and sorted by PauliString::lex_key.
class PauliSum {
 public:
  static constexpr double kMergeTol = 1e-14;

  PauliSum() : num_qubits_(0) {}
  explicit PauliSum(int num_qubits) : num_qubits_(num_qubits) {}
  explicit PauliSum(const PauliString& term);

  /// Merges a batch of terms in one pass. Cheaper than repeated add().
  static PauliSum from_terms(int num_qubits, std::vector<PauliString> terms);

  int num_qubits() const { return num_qubits_; }
  size_t num_terms() const { return terms_.size(); }
  const std::vector<PauliString>& terms() const { return terms_; }

  void add(const PauliString& term);
  void add(const PauliSum& other);

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  int max_weight() const;

  friend PauliSum operator*(const PauliSum& lhs, const PauliSum& rhs);
  friend PauliSum operator*(std::complex<double> c, const PauliSum& s);
  friend PauliSum operator+(const PauliSum& lhs, const PauliSum& rhs);
  friend PauliSum operator-(const PauliSum& lhs, const PauliSum& rhs);

  std::string str() const;

 private:
  void merge_and_sort();

  std::vector<PauliString> terms_;
  int num_qubits_;
};

}  // namespace qpsim

#endif
