#include "disslab/app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "disslab/certificate.hpp"
#include "disslab/dissipation.hpp"
#include "disslab/error.hpp"
#include "disslab/keyval.hpp"
#include "disslab/riemann.hpp"

namespace disslab::app {

using keyval::format_double;

namespace {

struct Overrides {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<double> L;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> grid_rho1;
  std::optional<std::string> grid_C;
  std::optional<double> tol;
  std::optional<double> margin_floor;
};

Scenario load_scenario(const Overrides& o) {
  Scenario sc = Scenario::load(o.scenario_path);
  try {
    if (o.L) sc.L = *o.L;
    if (o.seed) sc.seed = *o.seed;
    if (o.grid_rho1) sc.grid_rho1 = GridAxis::parse(*o.grid_rho1);
    if (o.grid_C) sc.grid_C = GridAxis::parse(*o.grid_C);
    if (o.tol) sc.tol = *o.tol;
    if (o.margin_floor) sc.margin_floor = *o.margin_floor;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("command line: ") + e.what(), 0);
  }
  sc.validate();
  return sc;
}

void add_common(CLI::App* cmd, Overrides& o, bool search_flags) {
  cmd->add_option("--scenario", o.scenario_path, "scenario file")->required();
  cmd->add_option("--L", o.L, "box half-width");
  if (!search_flags) return;
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed, "seed of the weak-form test functions");
  cmd->add_option("--grid-rho1", o.grid_rho1, "rho1 axis lo:hi:n");
  cmd->add_option("--grid-C", o.grid_C, "C axis lo:hi:n");
  cmd->add_option("--tol", o.tol, "relative residual tolerance");
  cmd->add_option("--margin-floor", o.margin_floor, "minimum feasibility margin");
}

int cmd_classify(const Overrides& o, std::ostream& out) {
  const Scenario sc = load_scenario(o);
  const auto cond = two_shock_condition(sc.data, sc.law());
  out << "scenario: " << sc.name << '\n';
  if (!sc.data.equal_tangential()) out << "tangential velocities differ\n";
  out << "two-shock: " << (cond.holds ? "yes" : "no") << ", margin " << format_double(cond.margin)
      << '\n';
  return cond.holds ? kSuccess : kNoCertificate;
}

int cmd_selfsimilar(const Overrides& o, bool machine, std::ostream& out) {
  const Scenario sc = load_scenario(o);
  const GasLaw law = sc.law();
  const auto ss = solve_middle_state(sc.data, law);
  const auto levels = energy_levels(sc.data, law, ss);
  const double rate = rate_self_similar(levels, ss.nu1, ss.nu2, sc.L);
  if (machine) {
    keyval::Document doc;
    doc.add("self_similar")
        .set("rho_m", ss.rho_m)
        .set("v_bar", ss.v_bar)
        .set("nu1", ss.nu1)
        .set("nu2", ss.nu2)
        .set("lax_ok_1", ss.lax_ok_1)
        .set("lax_ok_3", ss.lax_ok_3);
    doc.add("energy").set("E_minus", levels.minus).set("E_m", levels.middle).set("E_plus", levels.plus);
    doc.add("dissipation").set("L", sc.L).set("D_self", rate);
    out << doc.serialize();
    return kSuccess;
  }
  out << "scenario: " << sc.name << " (gamma = " << format_double(sc.gamma) << ")\n"
      << "rho_m  = " << format_double(ss.rho_m) << '\n'
      << "v_bar  = " << format_double(ss.v_bar) << '\n'
      << "nu1    = " << format_double(ss.nu1) << '\n'
      << "nu2    = " << format_double(ss.nu2) << '\n'
      << "lax    = " << (ss.lax_ok_1 ? "ok" : "FAIL") << " / " << (ss.lax_ok_3 ? "ok" : "FAIL") << '\n'
      << "E_-    = " << format_double(levels.minus) << '\n'
      << "E_m    = " << format_double(levels.middle) << '\n'
      << "E_+    = " << format_double(levels.plus) << '\n'
      << "D_self = " << format_double(rate) << " (L = " << format_double(sc.L) << ")\n";
  return kSuccess;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

int cmd_search(const Overrides& o, std::ostream& out) {
  const Scenario sc = load_scenario(o);
  if (!sc.grid_rho1 || !sc.grid_C) {
    throw ParseError("search needs grid_rho1 and grid_C (scenario [search] or --grid-rho1/--grid-C)", 0);
  }
  SolverOptions options = sc.solver_options();
  options.threads = threads_from_env();
  const SearchReport report = scan(sc.data, sc.law(), *sc.grid_rho1, *sc.grid_C, sc.L, options);

  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  write_text(dir / "grid.csv", grid_csv(report));

  out << "scenario: " << sc.name << '\n'
      << "grid points: " << report.points.size() << ", feasible: " << report.feasible_count() << '\n'
      << "D_self = " << format_double(report.D_self) << '\n';

  if (!report.best) {
    keyval::Document summary;
    sc.write_to(summary);
    summary.add("result").set("feasible_points", static_cast<std::uint64_t>(0)).set("D_self", report.D_self);
    write_text(dir / "search_report.txt", summary.serialize());
    out << "no feasible subsolution on this grid; report written to "
        << (dir / "search_report.txt").string() << '\n';
    return kNoCertificate;
  }

  const auto& best = report.points[*report.best];
  const Certificate cert = certify(sc, *best.sub);
  const auto cert_path = dir / "certificate.txt";
  cert.to_document().save(cert_path.string());
  out << "best: rho1 = " << format_double(best.rho1) << ", C = " << format_double(best.C)
      << ", D_sub = " << format_double(cert.dissipation.D_sub)
      << ", gap = " << format_double(cert.dissipation.gap) << '\n'
      << "certificate: " << cert_path.string() << " (" << cert.status() << ")\n";
  return cert.dominant() ? kSuccess : kNoCertificate;
}

int cmd_verify(const std::string& path, std::ostream& out) {
  if (!std::filesystem::is_regular_file(path)) throw Error("cannot open '" + path + "'");
  Certificate cert;
  try {
    cert = Certificate::from_document(keyval::Document::load(path));
  } catch (const Error& e) {
    // A file that does not even parse fails the first check.
    out << "  FAIL  format: " << e.what() << '\n' << "verify: FAIL at format\n";
    return kNoCertificate;
  }
  const VerifyResult result = verify(cert);
  for (const auto& c : result.checks) {
    out << (c.passed ? "  ok    " : "  FAIL  ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << '\n';
  }
  if (const auto* f = result.first_failure()) {
    out << "verify: FAIL at " << f->name << '\n';
    return kNoCertificate;
  }
  out << "verify: PASS (" << cert.status() << ")\n";
  return kSuccess;
}

}  // namespace

unsigned threads_from_env() {
  const char* v = std::getenv("DISSLAB_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0) return 0;
  return static_cast<unsigned>(n);
}

std::string grid_csv(const SearchReport& report) {
  std::ostringstream csv;
  csv << "rho1,C,feasible,m_trace,m_det,m_adm_left,m_adm_right,D_sub\n";
  for (const auto& p : report.points) {
    csv << format_double(p.rho1) << ',' << format_double(p.C) << ',' << (p.feasible ? 1 : 0);
    if (p.sub) {
      csv << ',' << format_double(p.margins.trace) << ',' << format_double(p.margins.det) << ','
          << format_double(p.margins.adm_left) << ',' << format_double(p.margins.adm_right) << ','
          << format_double(p.D_sub);
    } else {
      csv << ",nan,nan,nan,nan,nan";
    }
    csv << '\n';
  }
  return csv.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Dissipation-rate laboratory for the 2-D isentropic Euler Riemann problem", "disslab"};
  cli.require_subcommand(1);

  Overrides classify_opts;
  auto* classify = cli.add_subcommand("classify", "check the two-shock condition");
  add_common(classify, classify_opts, false);

  Overrides selfsim_opts;
  bool machine = false;
  auto* selfsim = cli.add_subcommand("selfsimilar", "self-similar two-shock solution and D_self");
  add_common(selfsim, selfsim_opts, false);
  selfsim->add_flag("--machine", machine, "print a key/value block");

  Overrides search_opts;
  auto* search = cli.add_subcommand("search", "scan (rho1, C) for admissible fan subsolutions");
  add_common(search, search_opts, true);

  std::string cert_path;
  auto* verify_cmd = cli.add_subcommand("verify", "replay every check of a certificate");
  verify_cmd->add_option("certificate", cert_path, "certificate file")->required();

  // CLI11 parses in reverse order from a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    cli.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << cli.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << cli.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  try {
    if (*classify) return cmd_classify(classify_opts, out);
    if (*selfsim) return cmd_selfsimilar(selfsim_opts, machine, out);
    if (*search) return cmd_search(search_opts, out);
    if (*verify_cmd) return cmd_verify(cert_path, out);
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << '\n';
    return kNoCertificate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace disslab::app
