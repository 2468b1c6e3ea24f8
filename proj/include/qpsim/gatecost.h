#ifndef QPSIM_GATECOST_H
#define QPSIM_GATECOST_H

#include "qpsim/pauli.h"

namespace qpsim {

/// CNOT count of the standard ladder compilation of exp(i theta P): basis
/// changes are single-qubit gates (uncounted), the parity ladder costs
/// 2 * (weight - 1) CNOTs. Identity and weight-1 strings cost nothing.
inline long long cnot_cost(const PauliString& p) {
  int w = p.weight();
  return w >= 2 ? 2LL * (w - 1) : 0LL;
}

/// Total ladder cost of exponentiating every term of a generator once.
/// No cancellation between adjacent terms is assumed.
inline long long generator_cost(const PauliSum& g) {
  long long acc = 0;
  for (const auto& t : g.terms()) acc += cnot_cost(t);
  return acc;
}

}  // namespace qpsim

#endif
