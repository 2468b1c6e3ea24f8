#include "qpsim/acse.h"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qpsim/errors.h"
#include "qpsim/gatecost.h"

namespace qpsim {

namespace {

void check_sector(const StateVector& s, int n_electrons) {
  double n_meas = s.number_expectation();
  if (std::abs(n_meas - n_electrons) > 1e-8) {
    std::ostringstream os;
    os << "state is not in the " << n_electrons
       << "-particle sector (measured N = " << n_meas << ")";
    throw NumericalError(os.str());
  }
}

LadderTerm two_body(int p, int q, int s, int t, std::complex<double> c,
                    Statistics stats) {
  return LadderTerm{c, {{p, true}, {q, true}, {t, false}, {s, false}}, stats};
}

std::vector<std::pair<int, int>> folded_pairs(int r) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(r * (r - 1) / 2);
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q) pairs.emplace_back(p, q);
  return pairs;
}

// One exactly-exponentiated two-body factor: the mutually commuting Pauli
// terms of A_IJ G_IJ - conj(A_IJ) G_JI, each with a purely imaginary
// coefficient i*lambda, applied as rotations exp(i eps lambda P).
struct StepBlock {
  std::vector<PauliString> rotations;  // unit coefficient
  std::vector<double> lambdas;
};

std::vector<StepBlock> build_blocks(const ResidualTensor& a, Statistics stats) {
  const int r = a.a.r;
  double max_abs = 0.0;
  for (const auto& v : a.a.a) max_abs = std::max(max_abs, std::abs(v));
  const double cutoff = 1e-8 * max_abs;

  std::vector<StepBlock> blocks;
  auto pairs = folded_pairs(r);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      auto [p, q] = pairs[i];
      auto [u, v] = pairs[j];
      std::complex<double> c = a.a.at(p, q, u, v);
      if (std::abs(c) <= cutoff) continue;
      PauliSum sum = encode_ladder(two_body(p, q, u, v, c, stats), r);
      sum.add(encode_ladder(two_body(u, v, p, q, -std::conj(c), stats), r));
      StepBlock block;
      for (const auto& t : sum.terms()) {
        std::complex<double> coeff = t.coefficient();
        if (std::abs(coeff.real()) > 1e-10 * std::abs(coeff))
          throw NumericalError(
              "generator block has a non-imaginary Pauli coefficient");
        PauliString rot = t;
        rot.set_coefficient(1.0);
        block.rotations.push_back(rot);
        block.lambdas.push_back(coeff.imag());
      }
      if (!block.rotations.empty()) blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

StateVector apply_blocks(const StateVector& s,
                         const std::vector<StepBlock>& blocks, double eps) {
  StateVector out = s;
  for (const auto& b : blocks)
    for (size_t k = 0; k < b.rotations.size(); ++k)
      apply_pauli_rotation(out, b.rotations[k], eps * b.lambdas[k]);
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iterations < 1)
    throw std::invalid_argument("max_iterations must be at least 1");
  if (epsilon0 <= 0.0)
    throw std::invalid_argument("epsilon0 must be positive");
  if (energy_tol < 0.0 || residual_tol < 0.0)
    throw std::invalid_argument("tolerances must be non-negative");
}

ResidualTensor acse_residual(const StateVector& s, const PauliSum& h,
                             int n_electrons, Statistics stats) {
  if (!h.is_hermitian(1e-10))
    throw std::invalid_argument("acse_residual expects a Hermitian H");
  check_sector(s, n_electrons);
  const int r = s.num_qubits();
  const StateVector hs = apply_pauli_sum(s, h);

  ResidualTensor out{GeneratorTensor(r), 0.0};
  auto pairs = folded_pairs(r);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      auto [p, q] = pairs[i];
      auto [u, v] = pairs[j];
      PauliSum g = encode_ladder(two_body(p, q, u, v, 1.0, stats), r);
      // <[G, H]> = <s|G|Hs> - <Hs|G|s>
      std::complex<double> m =
          transition_amplitude(s, g, hs) - transition_amplitude(hs, g, s);
      if (std::abs(m) > 0.0) out.a.set_element(p, q, u, v, m);
    }
  }
  out.norm = out.a.frobenius_norm();
  return out;
}

StepResult acse_step(const StateVector& s, const ResidualTensor& a,
                     const PauliSum& h, const SolverConfig& cfg) {
  cfg.validate();
  auto blocks = build_blocks(a, cfg.encoding);
  if (blocks.empty()) return {s, 0.0, 0, false};

  double eps = cfg.epsilon0;
  bool fallback = false;
  if (cfg.line_search) {
    const double e0 = expectation(s, h).real();
    const double e1 = expectation(apply_blocks(s, blocks, cfg.epsilon0), h).real();
    const double e2 =
        expectation(apply_blocks(s, blocks, 2.0 * cfg.epsilon0), h).real();
    // Quadratic through (0,e0), (eps0,e1), (2 eps0,e2).
    const double curv = (e2 - 2.0 * e1 + e0) / (2.0 * cfg.epsilon0 * cfg.epsilon0);
    const double slope = (4.0 * e1 - 3.0 * e0 - e2) / (2.0 * cfg.epsilon0);
    if (curv > 1e-30) {
      eps = -slope / (2.0 * curv);
      // Guard against overshoot outside the quadratic regime: halve until the
      // step does not raise the energy.
      for (int k = 0; k < 60; ++k) {
        if (expectation(apply_blocks(s, blocks, eps), h).real() <=
            e0 + 1e-12)
          break;
        eps *= 0.5;
      }
    } else {
      eps = cfg.epsilon0;
      fallback = true;
    }
  }

  StepResult res{apply_blocks(s, blocks, eps), eps, 0, fallback};
  for (const auto& b : blocks)
    for (const auto& rot : b.rotations) res.cnots_added += cnot_cost(rot);
  return res;
}

namespace {

double tensor_dot(const GeneratorTensor& a, const GeneratorTensor& b) {
  double acc = 0.0;
  for (size_t k = 0; k < a.a.size(); ++k)
    acc += (std::conj(a.a[k]) * b.a[k]).real();
  return acc;
}

}  // namespace

SolveResult acse_solve(const IntegralSet& spin_orbital, int n_electrons,
                       const SolverConfig& cfg,
                       const IterationObserver& observer) {
  cfg.validate();
  if (spin_orbital.basis != OrbitalBasis::SpinOrbital)
    throw std::invalid_argument("acse_solve expects spin-orbital integrals");
  const int r = spin_orbital.n_orb;
  if (n_electrons < 2 || n_electrons > r)
    throw std::invalid_argument("acse_solve: electron count out of range");

  const PauliSum h = hamiltonian_pauli(spin_orbital);
  std::vector<int> occ(n_electrons);
  std::iota(occ.begin(), occ.end(), 0);
  StateVector state = StateVector::basis_state(r, occ);

  AnsatzTrace trace;
  long long cumulative_cnots = 0;
  double prev_energy = expectation(state, h).real() + spin_orbital.e_nuc;
  double energy = prev_energy;

  // Plain residual steps zig-zag in a narrow terminal valley and stall short
  // of the FCI floor, so the applied generator mixes in the previous search
  // direction (Polak-Ribiere weight, reset on non-descent fits). The recorded
  // residual norm always refers to the unmixed commutator tensor.
  GeneratorTensor prev_residual(r);
  GeneratorTensor direction(r);
  bool have_prev = false;

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    auto t0 = std::chrono::steady_clock::now();
    ResidualTensor res = acse_residual(state, h, n_electrons, cfg.encoding);
    if (res.norm < cfg.residual_tol) {
      trace.converged = true;
      trace.stop_reason = "residual_norm below tolerance";
      break;
    }
    double beta = 0.0;
    if (have_prev) {
      double denom = tensor_dot(prev_residual, prev_residual);
      GeneratorTensor diff = res.a;
      for (size_t k = 0; k < diff.a.size(); ++k) diff.a[k] -= prev_residual.a[k];
      if (denom > 0.0) beta = std::max(0.0, tensor_dot(res.a, diff) / denom);
    }
    ResidualTensor mixed{res.a, res.norm};
    if (beta > 0.0)
      for (size_t k = 0; k < mixed.a.a.size(); ++k)
        mixed.a.a[k] += beta * direction.a[k];

    StepResult step = acse_step(state, mixed, h, cfg);
    if (step.line_search_fallback && beta > 0.0) {
      // Mixed direction lost descent: restart from the plain residual.
      mixed.a = res.a;
      step = acse_step(state, mixed, h, cfg);
    }
    prev_residual = res.a;
    direction = mixed.a;
    have_prev = true;
    state = std::move(step.state);
    energy = expectation(state, h).real() + spin_orbital.e_nuc;
    cumulative_cnots += step.cnots_added;
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

    IterationRecord rec{iter,  step.epsilon_used,  res.norm,
                        energy, cumulative_cnots, dt.count(),
                        step.line_search_fallback};
    trace.iterations.push_back(rec);
    if (observer) observer(rec, state);

    if (std::abs(energy - prev_energy) < cfg.energy_tol) {
      trace.converged = true;
      trace.stop_reason = "energy change below tolerance";
      break;
    }
    prev_energy = energy;
  }
  if (!trace.converged) trace.stop_reason = "max_iterations reached";

  TwoRDM rdm = measure_2rdm(state, n_electrons);
  return SolveResult{std::move(trace), std::move(state), std::move(rdm),
                     energy};
}

}  // namespace qpsim
