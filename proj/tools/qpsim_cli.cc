#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpsim/acse.h"
#include "qpsim/errors.h"
#include "qpsim/integrals.h"
#include "qpsim/rdm.h"
#include "qpsim/statevector.h"

using nlohmann::json;
using namespace qpsim;

namespace {

struct InputSource {
  std::string geometry;
  std::string basis;
  std::string fcidump;
};

void add_input_flags(CLI::App* cmd, InputSource& src) {
  cmd->add_option("--geometry", src.geometry, "geometry file (unit line, then element x y z)");
  cmd->add_option("--basis", src.basis, "basis set file");
  cmd->add_option("--fcidump", src.fcidump, "FCIDUMP file with MO integrals");
}

// Expands "--config FILE" into "--key=value" tokens spliced in right after the
// subcommand name. Every option uses take-last policy, so flags typed on the
// command line override values from the file.
std::vector<std::string> config_expanded_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config requires a file path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  if (args.empty() || args[0].empty() || args[0][0] == '-')
    throw std::invalid_argument("--config requires a leading subcommand");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  auto trim = [](const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line is not key=value: " + line);
    extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

// Loads MO-basis integrals plus electron count from either source.
struct LoadedProblem {
  IntegralSet mo;
  int n_electrons = 0;
  double e_hf = 0.0;
  bool have_hf = false;
};

LoadedProblem load_problem(const InputSource& src) {
  const bool from_files = !src.geometry.empty() || !src.basis.empty();
  const bool from_dump = !src.fcidump.empty();
  if (from_files == from_dump)
    throw std::invalid_argument(
        "exactly one input source required: --geometry/--basis or --fcidump");
  LoadedProblem out;
  if (from_dump) {
    FcidumpData data = fcidump_read(src.fcidump);
    out.mo = std::move(data.ints);
    out.n_electrons = data.n_electrons;
    return out;
  }
  if (src.geometry.empty() || src.basis.empty())
    throw std::invalid_argument("--geometry and --basis must be given together");
  Geometry geom = Geometry::from_file(src.geometry);
  BasisSet basis = BasisSet::from_file(src.basis);
  IntegralSet ao = compute_ao_integrals(geom, basis);
  out.n_electrons = geom.total_electrons();
  ScfResult scf = rhf_scf(ao, out.n_electrons);
  out.mo = mo_transform(ao, scf.coeffs);
  out.e_hf = scf.e_hf;
  out.have_hf = true;
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

json nrep_to_json(const NRepReport& rep) {
  return json{{"trace_error", rep.trace_error},
              {"hermiticity_error", rep.herm_error},
              {"antisymmetry_error", rep.antisym_error},
              {"min_eig_d", rep.min_eig_d},
              {"min_eig_q", rep.min_eig_q},
              {"min_eig_g", rep.min_eig_g},
              {"pass", rep.pass()}};
}

int run_integrals(const InputSource& src, const std::string& out_path) {
  if (!src.fcidump.empty())
    throw std::invalid_argument("integrals requires --geometry/--basis input");
  LoadedProblem prob = load_problem(src);
  fcidump_write(prob.mo, prob.n_electrons, out_path);
  std::printf("e_nuc %s\n", fmt(prob.mo.e_nuc).c_str());
  std::printf("e_hf  %s\n", fmt(prob.e_hf).c_str());
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int run_fci(const InputSource& src, int ms2, const std::string& dump_state) {
  LoadedProblem prob = load_problem(src);
  IntegralSet so = spin_orbital_expand(prob.mo);
  FciResult fci = fci_ground_state(so, prob.n_electrons, ms2);
  std::printf("e_fci %.17g\n", fci.energy);
  if (!dump_state.empty()) write_statevector(fci.state, dump_state);
  return 0;
}

int run_check_rdm(const std::string& rdm_path, int n_override, bool as_json) {
  RdmFile file = read_rdm(rdm_path);
  const int n = n_override > 0 ? n_override : file.n_electrons;
  NRepReport rep = n_rep_check(file.d, n);
  if (as_json) {
    std::printf("%s\n", nrep_to_json(rep).dump(2).c_str());
  } else {
    std::printf("trace_error        %s (%s)\n", fmt(rep.trace_error).c_str(),
                rep.pass_trace ? "pass" : "FAIL");
    std::printf("hermiticity_error  %s (%s)\n", fmt(rep.herm_error).c_str(),
                rep.pass_herm ? "pass" : "FAIL");
    std::printf("antisymmetry_error %s (%s)\n", fmt(rep.antisym_error).c_str(),
                rep.pass_antisym ? "pass" : "FAIL");
    std::printf("min_eig_d          %s (%s)\n", fmt(rep.min_eig_d).c_str(),
                rep.pass_d ? "pass" : "FAIL");
    std::printf("min_eig_q          %s (%s)\n", fmt(rep.min_eig_q).c_str(),
                rep.pass_q ? "pass" : "FAIL");
    std::printf("min_eig_g          %s (%s)\n", fmt(rep.min_eig_g).c_str(),
                rep.pass_g ? "pass" : "FAIL");
    std::printf("overall            %s\n", rep.pass() ? "pass" : "FAIL");
  }
  return 0;
}

struct AcseOptions {
  InputSource src;
  std::string encoding = "both";
  std::string out_dir = ".";
  std::string formats = "csv,json";
  std::string line_search = "on";
  SolverConfig solver;
};

const char* encoding_name(Statistics s) {
  return s == Statistics::kFermionic ? "fermionic" : "qubit";
}

int run_acse(const AcseOptions& opt) {
  std::vector<Statistics> modes;
  if (opt.encoding == "fermionic") {
    modes = {Statistics::kFermionic};
  } else if (opt.encoding == "qubit") {
    modes = {Statistics::kQubitParticle};
  } else if (opt.encoding == "both") {
    modes = {Statistics::kFermionic, Statistics::kQubitParticle};
  } else {
    throw std::invalid_argument("--encoding must be fermionic, qubit or both");
  }
  if (opt.line_search != "on" && opt.line_search != "off")
    throw std::invalid_argument("--line-search must be on or off");

  const bool want_csv = opt.formats.find("csv") != std::string::npos;
  const bool want_json = opt.formats.find("json") != std::string::npos;

  LoadedProblem prob = load_problem(opt.src);
  IntegralSet so = spin_orbital_expand(prob.mo);
  FciResult fci = fci_ground_state(so, prob.n_electrons, 0);

  std::filesystem::create_directories(opt.out_dir);
  json summary;
  summary["fci_energy"] = fci.energy;
  summary["n_electrons"] = prob.n_electrons;
  summary["n_spin_orbitals"] = so.n_orb;

  for (Statistics mode : modes) {
    SolverConfig cfg = opt.solver;
    cfg.encoding = mode;
    cfg.line_search = opt.line_search == "on";
    cfg.validate();

    const std::string base = opt.out_dir + "/acse_" + encoding_name(mode);
    std::ofstream csv;
    if (want_csv) {
      csv.open(base + ".csv");
      if (!csv) throw IoError("cannot open for writing: " + base + ".csv");
      csv << "iteration,energy_hartree,abs_error_vs_fci,log10_error,"
             "residual_norm,cumulative_cnots,epsilon\n";
    }
    auto observer = [&](const IterationRecord& rec, const StateVector&) {
      if (!csv.is_open()) return;
      double err = std::abs(rec.energy - fci.energy);
      double log_err = std::log10(std::max(err, 1e-16));
      csv << rec.iteration << ',' << fmt(rec.energy) << ',' << fmt(err) << ','
          << fmt(log_err) << ',' << fmt(rec.residual_norm) << ','
          << rec.cumulative_cnots << ',' << fmt(rec.epsilon) << '\n';
    };
    SolveResult res = acse_solve(so, prob.n_electrons, cfg, observer);
    if (csv.is_open()) csv.close();

    write_rdm(res.rdm, prob.n_electrons, base + ".rdm");
    NRepReport rep = n_rep_check(res.rdm, prob.n_electrons);

    long long total_cnots = res.trace.iterations.empty()
                                ? 0
                                : res.trace.iterations.back().cumulative_cnots;
    std::printf(
        "%-9s e_final %.12f  |e-e_fci| %.3e  iterations %zu  cnots %lld  "
        "converged %s\n",
        encoding_name(mode), res.energy, std::abs(res.energy - fci.energy),
        res.trace.iterations.size(), total_cnots,
        res.trace.converged ? "true" : "false");

    summary["modes"][encoding_name(mode)] = {
        {"final_energy", res.energy},
        {"abs_error_vs_fci", std::abs(res.energy - fci.energy)},
        {"iterations", res.trace.iterations.size()},
        {"converged", res.trace.converged},
        {"stop_reason", res.trace.stop_reason},
        {"total_cnots", total_cnots},
        {"n_representability", nrep_to_json(rep)},
    };
  }

  if (want_json) {
    std::ofstream js(opt.out_dir + "/acse_summary.json");
    if (!js) throw IoError("cannot open for writing: acse_summary.json");
    js << summary.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact statevector simulator for molecular ground states with "
               "fermionically encoded or bare qubit-particle ansatze"};
  app.require_subcommand(1);

  std::string config_doc;  // consumed before parsing, listed here for --help
  InputSource int_src;
  std::string int_out = "FCIDUMP";
  CLI::App* cmd_int = app.add_subcommand("integrals",
                                         "SCF + MO transform, write FCIDUMP");
  cmd_int->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_input_flags(cmd_int, int_src);
  cmd_int->add_option("--out", int_out, "output FCIDUMP path");
  cmd_int->add_option("--config", config_doc, "flat key=value file; flags override");

  InputSource fci_src;
  int fci_ms2 = 0;
  std::string fci_dump;
  CLI::App* cmd_fci = app.add_subcommand("fci", "exact ground state energy");
  cmd_fci->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_input_flags(cmd_fci, fci_src);
  cmd_fci->add_option("--ms2", fci_ms2, "2*Sz of the determinant sector");
  cmd_fci->add_option("--dump-state", fci_dump, "write eigenvector amplitudes");
  cmd_fci->add_option("--config", config_doc, "flat key=value file; flags override");

  std::string rdm_path;
  int rdm_n = 0;
  bool rdm_json = false;
  CLI::App* cmd_rdm = app.add_subcommand("check-rdm",
                                         "N-representability report");
  cmd_rdm->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd_rdm->add_option("--rdm", rdm_path, "RDM dump file")->required();
  cmd_rdm->add_option("--n-electrons", rdm_n,
                      "override electron count from the dump header");
  cmd_rdm->add_flag("--json", rdm_json, "emit JSON instead of text");
  cmd_rdm->add_option("--config", config_doc, "flat key=value file; flags override");

  AcseOptions acse;
  CLI::App* cmd_acse = app.add_subcommand("acse", "run the solver loop");
  cmd_acse->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_input_flags(cmd_acse, acse.src);
  cmd_acse->add_option("--encoding", acse.encoding, "fermionic|qubit|both");
  cmd_acse->add_option("--epsilon0", acse.solver.epsilon0, "line search seed step");
  cmd_acse->add_option("--line-search", acse.line_search, "on|off");
  cmd_acse->add_option("--max-iters", acse.solver.max_iterations, "iteration cap");
  cmd_acse->add_option("--residual-tol", acse.solver.residual_tol,
                       "stop when the residual norm falls below");
  cmd_acse->add_option("--energy-tol", acse.solver.energy_tol,
                       "stop when the energy change falls below");
  cmd_acse->add_option("--out", acse.out_dir, "output directory");
  cmd_acse->add_option("--format", acse.formats, "comma list from {csv,json}");
  cmd_acse->add_option("--config", config_doc, "flat key=value file; flags override");

  std::vector<std::string> args;
  try {
    args = config_expanded_args(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (cmd_int->parsed()) return run_integrals(int_src, int_out);
    if (cmd_fci->parsed()) return run_fci(fci_src, fci_ms2, fci_dump);
    if (cmd_rdm->parsed()) return run_check_rdm(rdm_path, rdm_n, rdm_json);
    if (cmd_acse->parsed()) return run_acse(acse);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  }
  return 0;
}
