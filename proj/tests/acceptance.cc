// Acceptance gates for the simulator. Each numbered criterion prints exactly
// one PASS/FAIL line with its measured quantities and pinned tolerances; the
// exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpsim/acse.h"
#include "qpsim/gatecost.h"
#include "qpsim/integrals.h"
#include "qpsim/ladder.h"
#include "qpsim/rdm.h"
#include "qpsim/statevector.h"

using namespace qpsim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_data, g_fixture, g_cli;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

IntegralSet spin_orbital_from_geometry(const std::string& geom_name) {
  Geometry geom = Geometry::from_file(g_data + "/" + geom_name);
  BasisSet basis = BasisSet::from_file(g_data + "/sto-3g.dat");
  IntegralSet ao = compute_ao_integrals(geom, basis);
  ScfResult scf = rhf_scf(ao, geom.total_electrons());
  return spin_orbital_expand(mo_transform(ao, scf.coeffs));
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

/// Worst-case per-iterate diagnostics accumulated by the solve observers.
struct IterateWorst {
  double trace_dev = 0.0;
  double herm = 0.0;
  double antisym = 0.0;
  double min_d = 1e300;
  double min_q = 1e300;
  double min_g = 1e300;
  double number_dev = 0.0;
  int iterates = 0;
};

struct H4Experiment {
  IntegralSet so;
  IterateWorst worst_ferm;
  IterateWorst worst_qub;
  double e_fci = 0.0;
  double wall_s = 0.0;
  SolveResult ferm;
  SolveResult qub;

  H4Experiment()
      : so(spin_orbital_from_geometry("h4_chain.geom")),
        ferm(run(Statistics::kFermionic, worst_ferm)),
        qub(run(Statistics::kQubitParticle, worst_qub)) {}

  SolveResult run(Statistics st, IterateWorst& worst) {
    // Fixed 60-iteration budget with stopping tolerances disabled, so both
    // encodings produce aligned per-iteration traces.
    SolverConfig cfg;
    cfg.encoding = st;
    cfg.max_iterations = 60;
    cfg.energy_tol = 0.0;
    cfg.residual_tol = 0.0;
    auto t0 = Clock::now();
    SolveResult res = acse_solve(
        so, 4, cfg, [&](const IterationRecord&, const StateVector& s) {
          TwoRDM d = measure_2rdm(s, 4);
          NRepReport rep = n_rep_check(d, 4);
          worst.trace_dev = std::max(worst.trace_dev,
                                     std::abs(d.trace() - 12.0));
          worst.herm = std::max(worst.herm, rep.herm_error);
          worst.antisym = std::max(worst.antisym, rep.antisym_error);
          worst.min_d = std::min(worst.min_d, rep.min_eig_d);
          worst.min_q = std::min(worst.min_q, rep.min_eig_q);
          worst.min_g = std::min(worst.min_g, rep.min_eig_g);
          worst.number_dev = std::max(
              worst.number_dev, std::abs(s.number_expectation() - 4.0));
          ++worst.iterates;
        });
    wall_s += seconds_since(t0);
    return res;
  }
};

Outcome criterion1_ground_truth() {
  std::ifstream in(g_fixture + "/reference_energies.json");
  if (!in) return {false, "missing reference_energies.json"};
  nlohmann::json ref = nlohmann::json::parse(in);
  const double e_ref = ref["h4"]["e_fci"];
  auto t0 = Clock::now();
  IntegralSet so = spin_orbital_from_geometry("h4_chain.geom");
  FciResult fci = fci_ground_state(so, 4, 0);
  const double dt = seconds_since(t0);
  const double err = std::abs(fci.energy - e_ref);
  return {err <= 1e-8 && dt < 1.0,
          fmt("E_fci=%.12f external_ref=%.12f |diff|=%.2e (<=1e-8) t=%.2fs "
              "(<1s)",
              fci.energy, e_ref, err, dt)};
}

Outcome criterion2_convergence(const H4Experiment& ex) {
  const double err_f = std::abs(ex.ferm.energy - ex.e_fci);
  const double err_q = std::abs(ex.qub.energy - ex.e_fci);
  const double gap = std::abs(ex.ferm.energy - ex.qub.energy);
  const size_t it_f = ex.ferm.trace.iterations.size();
  const size_t it_q = ex.qub.trace.iterations.size();
  const bool pass = err_f < 1e-6 && err_q < 1e-6 && it_f <= 60 && it_q <= 60 &&
                    gap < 1e-6 && ex.wall_s < 30.0;
  return {pass,
          fmt("|E_ferm-E_fci|=%.2e |E_qubit-E_fci|=%.2e (<1e-6) "
              "agreement=%.2e (<1e-6) iterations=%zu/%zu (<=60) t=%.1fs (<30s)",
              err_f, err_q, gap, it_f, it_q, ex.wall_s)};
}

Outcome criterion3_cnot_ordering(const H4Experiment& ex) {
  const auto& f = ex.ferm.trace.iterations;
  const auto& q = ex.qub.trace.iterations;
  const size_t n = std::min(f.size(), q.size());
  bool strict = n > 0 && f.size() == q.size();
  for (size_t k = 0; k < n; ++k)
    if (q[k].cumulative_cnots >= f[k].cumulative_cnots) strict = false;

  bool sweep_ok = true;
  std::ostringstream sweep;
  for (int d = 3; d <= 7; ++d) {
    GeneratorTensor a(8);
    a.set_element(0, 1, 2, d, {0.0, 1.0});
    const long long cf =
        generator_cost(build_generator(a, Statistics::kFermionic));
    const long long cq =
        generator_cost(build_generator(a, Statistics::kQubitParticle));
    if (cf - cq != 16LL * (d - 3) || cq != 48) sweep_ok = false;
    sweep << (d > 3 ? "," : "") << cf - cq;
  }
  const long long last_f = n ? f[n - 1].cumulative_cnots : 0;
  const long long last_q = n ? q[n - 1].cumulative_cnots : 0;
  return {strict && sweep_ok,
          fmt("qubit<fermionic at all %zu iterations=%s "
              "(final %lld<%lld) span sweep gaps={%s} expected {0,16,32,48,64}",
              n, strict ? "yes" : "NO", last_q, last_f,
              sweep.str().c_str())};
}

Outcome criterion4_preparation_independence(const H4Experiment& ex) {
  PauliSum h = hamiltonian_pauli(ex.so);
  ReducedHamiltonian k = reduced_hamiltonian(ex.so, 4);
  std::mt19937 gen(20260825u);
  std::uniform_int_distribution<int> orb(0, 7);
  std::uniform_real_distribution<double> amp(-0.25, 0.25);
  std::uniform_real_distribution<double> stepsize(0.05, 0.25);
  const fs::path dump = fs::temp_directory_path() / "qpsim_acc_state.dat";

  double worst_rdm = 0.0, worst_energy = 0.0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    StateVector state = StateVector::basis_state(8, {0, 1, 2, 3});
    const int segments = 1 + trial % 2;
    for (int seg = 0; seg < segments; ++seg) {
      GeneratorTensor a(8);
      for (int e = 0; e < 4; ++e) {
        int p = orb(gen), q = orb(gen), s = orb(gen), t = orb(gen);
        if (p == q || s == t) continue;
        if (p > q) std::swap(p, q);
        if (s > t) std::swap(s, t);
        if (p == s && q == t) continue;
        a.set_element(p, q, s, t, {amp(gen), amp(gen)});
      }
      if (a.frobenius_norm() == 0.0) a.set_element(0, 1, 4, 5, {0.0, 0.1});
      SolverConfig cfg;
      cfg.encoding = Statistics::kQubitParticle;
      cfg.line_search = false;
      cfg.epsilon0 = stepsize(gen);
      state = acse_step(state, ResidualTensor{a, a.frobenius_norm()}, h, cfg)
                  .state;
    }

    // Reproduce the exact statevector through the amplitude dump, then
    // measure both copies with the fermionically encoded operators.
    write_statevector(state, dump.string());
    StateVector replay = read_statevector(dump.string(), 8);
    TwoRDM d1 = measure_2rdm(state, 4);
    TwoRDM d2 = measure_2rdm(replay, 4);
    double diff = 0.0;
    for (int p = 0; p < 8; ++p)
      for (int q = 0; q < 8; ++q)
        for (int s = 0; s < 8; ++s)
          for (int t = 0; t < 8; ++t)
            diff = std::max(diff, std::abs(d1.at(p, q, s, t) -
                                           d2.at(p, q, s, t)));
    worst_rdm = std::max(worst_rdm, diff);
    const double e_functional = energy_from_rdm(k, d1, ex.so.e_nuc);
    const double e_direct = expectation(state, h).real() + ex.so.e_nuc;
    worst_energy = std::max(worst_energy, std::abs(e_functional - e_direct));
  }
  fs::remove(dump);
  return {worst_rdm <= 1e-10 && worst_energy <= 1e-10,
          fmt("%d randomized preparations: max 2-RDM mismatch=%.2e (<=1e-10) "
              "max |E_functional-E_direct|=%.2e (<=1e-10)",
              trials, worst_rdm, worst_energy)};
}

Outcome criterion5_n_representability(const H4Experiment& ex) {
  auto ok = [](const IterateWorst& w) {
    return w.trace_dev <= 1e-8 && w.herm <= 1e-10 && w.antisym <= 1e-10 &&
           w.min_d >= -1e-8 && w.min_q >= -1e-8 && w.min_g >= -1e-8 &&
           w.number_dev <= 1e-10;
  };
  const IterateWorst& f = ex.worst_ferm;
  const IterateWorst& q = ex.worst_qub;
  return {ok(f) && ok(q) && f.iterates > 0 && q.iterates > 0,
          fmt("worst over %d+%d iterates: |trace-12|=%.1e (<=1e-8) "
              "herm=%.1e antisym=%.1e (<=1e-10) min_eig D/Q/G="
              "%.1e/%.1e/%.1e (>=-1e-8) |<N>-4|=%.1e (<=1e-10)",
              f.iterates, q.iterates,
              std::max(f.trace_dev, q.trace_dev), std::max(f.herm, q.herm),
              std::max(f.antisym, q.antisym), std::min(f.min_d, q.min_d),
              std::min(f.min_q, q.min_q), std::min(f.min_g, q.min_g),
              std::max(f.number_dev, q.number_dev))};
}

Outcome criterion6_operator_algebra() {
  auto encode1 = [](int p, bool dag, int r, Statistics st) {
    LadderTerm t;
    t.factors = {{p, dag}};
    t.stats = st;
    return encode_ladder(t, r);
  };
  auto is_unit_phase = [](std::complex<double> c) {
    return (std::abs(c - std::complex<double>(1, 0)) < 1e-15) ||
           (std::abs(c + std::complex<double>(1, 0)) < 1e-15) ||
           (std::abs(c - std::complex<double>(0, 1)) < 1e-15) ||
           (std::abs(c + std::complex<double>(0, 1)) < 1e-15);
  };

  long relations = 0;
  for (int r = 1; r <= 4; ++r) {
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) {
        // Parity-string images: full canonical anticommutation algebra.
        PauliSum cp = encode1(p, true, r, Statistics::kFermionic);
        PauliSum cq = encode1(q, true, r, Statistics::kFermionic);
        PauliSum ap = encode1(p, false, r, Statistics::kFermionic);
        PauliSum aq = encode1(q, false, r, Statistics::kFermionic);
        if ((cp * cq + cq * cp).num_terms() != 0) return {false, "cc"};
        if ((ap * aq + aq * ap).num_terms() != 0) return {false, "aa"};
        PauliSum mixed = cp * aq + aq * cp;
        if (p == q) {
          if (mixed.num_terms() != 1 || !mixed.terms()[0].is_identity() ||
              std::abs(mixed.terms()[0].coefficient() - 1.0) > 1e-15)
            return {false, "ca diagonal"};
        } else if (mixed.num_terms() != 0) {
          return {false, "ca offdiagonal"};
        }
        relations += 3;

        // Bare images: hard-core on site, commuting across sites.
        PauliSum sp = encode1(p, true, r, Statistics::kQubitParticle);
        PauliSum sq = encode1(q, false, r, Statistics::kQubitParticle);
        if (p == q) {
          PauliSum onsite = sp * sq + sq * sp;
          if (onsite.num_terms() != 1 || !onsite.terms()[0].is_identity() ||
              std::abs(onsite.terms()[0].coefficient() - 1.0) > 1e-15)
            return {false, "hard core"};
          if ((sp * sp).num_terms() != 0) return {false, "double raise"};
        } else {
          if ((sp * sq - sq * sp).num_terms() != 0)
            return {false, "cross site"};
        }
        relations += 2;

        // Number operator images coincide between encodings.
        LadderTerm n;
        n.factors = {{p, true}, {p, false}};
        n.stats = Statistics::kFermionic;
        PauliSum nf = encode_ladder(n, r);
        n.stats = Statistics::kQubitParticle;
        PauliSum nq = encode_ladder(n, r);
        if (nf.num_terms() != nq.num_terms()) return {false, "number image"};
        for (size_t k = 0; k < nf.num_terms(); ++k)
          if (!same_letters(nf.terms()[k], nq.terms()[k]) ||
              std::abs(nf.terms()[k].coefficient() -
                       nq.terms()[k].coefficient()) > 1e-15)
            return {false, "number image"};
        ++relations;
      }
  }

  // Pauli product phases stay in {1, -1, i, -i} for unit input coefficients.
  for (int ca = 0; ca < 16; ++ca)
    for (int cb = 0; cb < 16; ++cb) {
      PauliString a = PauliString::from_letters(
          {"IXYZ"[ca & 3], "IXYZ"[(ca >> 2) & 3]});
      PauliString b = PauliString::from_letters(
          {"IXYZ"[cb & 3], "IXYZ"[(cb >> 2) & 3]});
      if (!is_unit_phase((a * b).coefficient())) return {false, "phase"};
    }
  return {true, fmt("exhaustive ladder algebra to r=4 exact (%ld relations), "
                    "all 256 two-letter product phases in {1,-1,i,-i}",
                    relations)};
}

Outcome criterion7_small_system() {
  auto t0 = Clock::now();
  IntegralSet so = spin_orbital_from_geometry("h2.geom");
  PauliSum h = hamiltonian_pauli(so);
  FciResult fci = fci_ground_state(so, 2, 0);
  const double embed_gap = std::abs(
      expectation(fci.state, h).real() + so.e_nuc - fci.energy);

  double err[2];
  size_t iters[2];
  int idx = 0;
  for (Statistics st : {Statistics::kFermionic, Statistics::kQubitParticle}) {
    SolverConfig cfg;
    cfg.encoding = st;
    SolveResult r = acse_solve(so, 2, cfg);
    err[idx] = std::abs(r.energy - fci.energy);
    iters[idx] = r.trace.iterations.size();
    ++idx;
  }
  const double dt = seconds_since(t0);
  const bool pass = err[0] <= 1e-8 && err[1] <= 1e-8 && iters[0] <= 10 &&
                    iters[1] <= 10 && embed_gap <= 1e-10 && dt < 1.0;
  return {pass,
          fmt("H2 |E-E_fci|=%.1e/%.1e (<=1e-8) iterations=%zu/%zu (<=10) "
              "embedded eigenvector gap=%.1e (<=1e-10) t=%.2fs (<1s)",
              err[0], err[1], iters[0], iters[1], embed_gap, dt)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion8_determinism() {
  const fs::path base = fs::temp_directory_path() / "qpsim_acceptance_runs";
  fs::remove_all(base);
  const fs::path out_a = base / "a", out_b = base / "b";
  for (const fs::path& out : {out_a, out_b}) {
    std::string cmd = g_cli + " acse --geometry " + g_data +
                      "/h4_chain.geom --basis " + g_data +
                      "/sto-3g.dat --out " + out.string() + " > /dev/null";
    if (std::system(cmd.c_str()) != 0)
      return {false, "solver run failed: " + cmd};
  }
  bool same = true;
  std::string compared;
  for (const char* name :
       {"acse_fermionic.csv", "acse_qubit.csv", "acse_summary.json"}) {
    const std::string a = slurp(out_a / name), b = slurp(out_b / name);
    if (a.empty() || a != b) same = false;
    compared += std::string(compared.empty() ? "" : ",") + name;
  }
  fs::remove_all(base);
  return {same, fmt("two identical solver invocations, byte-compared {%s}: %s",
                    compared.c_str(), same ? "identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: acceptance DATA_DIR FIXTURE_DIR CLI_PATH\n");
    return 64;
  }
  g_data = argv[1];
  g_fixture = argv[2];
  g_cli = argv[3];

  int failures = 0;
  auto report = [&](int num, const char* name, Outcome (*fn)()) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %-4s %-28s %s\n", num, o.pass ? "PASS" : "FAIL",
                name, o.detail.c_str());
    if (!o.pass) ++failures;
  };

  report(1, "h4 ground truth", criterion1_ground_truth);

  // The shared 60-iteration experiment backs criteria 2, 3, 4 and 5.
  std::unique_ptr<H4Experiment> ex;
  try {
    ex = std::make_unique<H4Experiment>();
    ex->e_fci = fci_ground_state(ex->so, 4, 0).energy;
  } catch (const std::exception& e) {
    for (int num = 2; num <= 5; ++num)
      std::printf("criterion %d FAIL %-28s exception: %s\n", num,
                  "h4 experiment", e.what());
    failures += 4;
  }
  if (ex) {
    auto report_ex = [&](int num, const char* name,
                         Outcome (*fn)(const H4Experiment&)) {
      Outcome o;
      try {
        o = fn(*ex);
      } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
      }
      std::printf("criterion %d %-4s %-28s %s\n", num,
                  o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
      if (!o.pass) ++failures;
    };
    report_ex(2, "convergence equivalence", criterion2_convergence);
    report_ex(3, "cnot ordering", criterion3_cnot_ordering);
    report_ex(4, "preparation independence", criterion4_preparation_independence);
    report_ex(5, "n-representability", criterion5_n_representability);
  }

  report(6, "operator algebra", criterion6_operator_algebra);
  report(7, "small system oracle", criterion7_small_system);
  report(8, "determinism", criterion8_determinism);

  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures;
}
