#include "disslab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "disslab/error.hpp"
#include "disslab/solver.hpp"

namespace disslab {

std::string Certificate::status() const {
  return dominant() ? "dissipation-dominant" : "feasible but not dissipation-dominant";
}

Certificate certify(const Scenario& scenario, const FanSubsolution& sub,
                    const QuadratureOptions& quadrature) {
  scenario.validate();
  const GasLaw law = scenario.law();
  Certificate c;
  c.scenario = scenario;
  c.self_sim = solve_middle_state(scenario.data, law);
  c.sub = sub;
  c.residuals = rh_residuals(sub, scenario.data, law);
  c.margins = margins(sub, scenario.data, law);

  const double limit = scenario.tol * (1.0 + residual_scale(sub, scenario.data, law));
  if (c.residuals.max_abs() > limit) {
    std::ostringstream msg;
    msg << "not a subsolution: max interface residual " << c.residuals.max_abs() << " > " << limit;
    throw InfeasibleError(msg.str());
  }
  if (!sub.partition.valid()) throw InfeasibleError("not a fan partition: nu_minus >= nu_plus");
  if (!c.margins.meets_floor(scenario.margin_floor)) {
    std::ostringstream msg;
    msg << "not strictly feasible: min margin " << c.margins.min() << " < floor "
        << scenario.margin_floor;
    throw InfeasibleError(msg.str());
  }

  c.dissipation = compare(scenario.data, law, c.self_sim, sub, scenario.L);
  c.weak = weak_summary(fan_fields(sub, scenario.data, law), scenario.seed, scenario.weak_tests,
                        quadrature);
  return c;
}

keyval::Document Certificate::to_document() const {
  keyval::Document doc;
  doc.add("certificate")
      .set("tool_version", tool_version)
      .set("status", status())
      .set("dominant", dominant());
  scenario.write_to(doc, "scenario.");
  doc.add("self_similar")
      .set("rho_m", self_sim.rho_m)
      .set("v_bar", self_sim.v_bar)
      .set("tangential", self_sim.tangential)
      .set("nu1", self_sim.nu1)
      .set("nu2", self_sim.nu2)
      .set("lax_ok_1", self_sim.lax_ok_1)
      .set("lax_ok_3", self_sim.lax_ok_3);
  doc.add("subsolution")
      .set("nu_minus", sub.partition.nu_minus)
      .set("nu_plus", sub.partition.nu_plus)
      .set("rho1", sub.rho1)
      .set("alpha", sub.alpha)
      .set("beta", sub.beta)
      .set("gamma1", sub.gamma1)
      .set("gamma2", sub.gamma2)
      .set("C", sub.C);
  auto& r = doc.add("residuals");
  const char* names[] = {"cont_left", "mom_1_left", "mom_2_left", "cont_right", "mom_1_right", "mom_2_right"};
  for (std::size_t i = 0; i < 6; ++i) r.set(names[i], residuals.r[i]);
  doc.add("margins")
      .set("trace", margins.trace)
      .set("det", margins.det)
      .set("adm_left", margins.adm_left)
      .set("adm_right", margins.adm_right);
  doc.add("dissipation")
      .set("L", dissipation.L)
      .set("D_self", dissipation.D_self)
      .set("D_sub", dissipation.D_sub)
      .set("gap", dissipation.gap)
      .set("relative_gap", dissipation.relative_gap())
      .set("verdict", dissipation.verdict);
  doc.add("weak_form")
      .set("seed", weak.seed)
      .set("count", weak.count)
      .set("max_mass", weak.max_mass)
      .set("max_momentum", weak.max_momentum)
      .set("min_admissibility", weak.min_admissibility);
  doc.add("checks").set("weak_tol", weak_tol).set("replay_tol", replay_tol);
  return doc;
}

Certificate Certificate::from_document(const keyval::Document& doc) {
  Certificate c;
  c.tool_version = doc.at("certificate").get_string("tool_version");
  c.scenario = Scenario::from_document(doc, "scenario.");

  const auto& ss = doc.at("self_similar");
  c.self_sim.rho_m = ss.get_double("rho_m");
  c.self_sim.v_bar = ss.get_double("v_bar");
  c.self_sim.tangential = ss.get_double("tangential");
  c.self_sim.nu1 = ss.get_double("nu1");
  c.self_sim.nu2 = ss.get_double("nu2");
  c.self_sim.lax_ok_1 = ss.get_bool("lax_ok_1");
  c.self_sim.lax_ok_3 = ss.get_bool("lax_ok_3");

  const auto& s = doc.at("subsolution");
  c.sub.partition = {s.get_double("nu_minus"), s.get_double("nu_plus")};
  c.sub.rho1 = s.get_double("rho1");
  c.sub.alpha = s.get_double("alpha");
  c.sub.beta = s.get_double("beta");
  c.sub.gamma1 = s.get_double("gamma1");
  c.sub.gamma2 = s.get_double("gamma2");
  c.sub.C = s.get_double("C");

  const auto& r = doc.at("residuals");
  const char* names[] = {"cont_left", "mom_1_left", "mom_2_left", "cont_right", "mom_1_right", "mom_2_right"};
  for (std::size_t i = 0; i < 6; ++i) c.residuals.r[i] = r.get_double(names[i]);

  const auto& m = doc.at("margins");
  c.margins = {m.get_double("trace"), m.get_double("det"), m.get_double("adm_left"),
               m.get_double("adm_right")};

  const auto& d = doc.at("dissipation");
  c.dissipation.L = d.get_double("L");
  c.dissipation.D_self = d.get_double("D_self");
  c.dissipation.D_sub = d.get_double("D_sub");
  c.dissipation.gap = d.get_double("gap");
  c.dissipation.verdict = d.get_bool("verdict");

  const auto& w = doc.at("weak_form");
  c.weak.seed = w.get_uint("seed");
  c.weak.count = static_cast<int>(w.get_int("count"));
  c.weak.max_mass = w.get_double("max_mass");
  c.weak.max_momentum = w.get_double("max_momentum");
  c.weak.min_admissibility = w.get_double("min_admissibility");

  const auto& k = doc.at("checks");
  c.weak_tol = k.get_double("weak_tol");
  c.replay_tol = k.get_double("replay_tol");
  return c;
}

bool VerifyResult::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

const CheckOutcome* VerifyResult::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

namespace {

bool close(double stored, double fresh, double rel) {
  if (std::isnan(stored) || std::isnan(fresh)) return false;
  return std::abs(stored - fresh) <= rel * (1.0 + std::abs(fresh));
}

class Recorder {
 public:
  explicit Recorder(VerifyResult& out) : out_(out) {}

  // Run `body`, which appends failure messages to `why`; exceptions count as failures.
  template <class F>
  void check(std::string name, F&& body) {
    CheckOutcome outcome{std::move(name), true, {}};
    std::ostringstream why;
    try {
      body(why);
    } catch (const std::exception& e) {
      why << "exception: " << e.what();
    }
    outcome.detail = why.str();
    outcome.passed = outcome.detail.empty();
    out_.checks.push_back(std::move(outcome));
  }

 private:
  VerifyResult& out_;
};

}  // namespace

VerifyResult verify(const Certificate& cert, const QuadratureOptions& quadrature) {
  VerifyResult result;
  Recorder rec(result);
  const Scenario& sc = cert.scenario;
  const double rel = cert.replay_tol;

  rec.check("scenario", [&](std::ostream& why) {
    sc.validate();
    const auto cond = two_shock_condition(sc.data, sc.law());
    if (!cond.holds) why << "data outside the two-shock regime (margin " << cond.margin << ")";
    if (!(cert.replay_tol > 0.0 && cert.replay_tol <= 1e-6)) why << "replay_tol out of range";
    if (!(cert.weak_tol > 0.0 && cert.weak_tol <= 1e-6)) why << "weak_tol out of range";
  });

  rec.check("self_similar", [&](std::ostream& why) {
    const auto fresh = solve_middle_state(sc.data, sc.law());
    if (!close(cert.self_sim.rho_m, fresh.rho_m, rel)) why << "rho_m ";
    if (!close(cert.self_sim.v_bar, fresh.v_bar, rel)) why << "v_bar ";
    if (!close(cert.self_sim.nu1, fresh.nu1, rel)) why << "nu1 ";
    if (!close(cert.self_sim.nu2, fresh.nu2, rel)) why << "nu2 ";
    if (!fresh.lax_ok_1 || !fresh.lax_ok_3 || cert.self_sim.lax_ok_1 != fresh.lax_ok_1 ||
        cert.self_sim.lax_ok_3 != fresh.lax_ok_3) {
      why << "lax flags ";
    }
    if (why.tellp() > 0) why << "do not replay";
  });

  rec.check("residuals", [&](std::ostream& why) {
    const auto fresh = rh_residuals(cert.sub, sc.data, sc.law());
    const double limit = sc.tol * (1.0 + residual_scale(cert.sub, sc.data, sc.law()));
    if (fresh.max_abs() > limit) {
      why << "max interface residual " << fresh.max_abs() << " exceeds " << limit;
      return;
    }
    for (std::size_t i = 0; i < 6; ++i) {
      if (!(std::abs(cert.residuals.r[i] - fresh.r[i]) <= limit)) {
        why << "stored residual " << i << " does not replay";
        return;
      }
    }
  });

  rec.check("margins", [&](std::ostream& why) {
    const auto fresh = margins(cert.sub, sc.data, sc.law());
    if (!cert.sub.partition.valid()) why << "nu_minus >= nu_plus; ";
    if (!fresh.meets_floor(sc.margin_floor)) {
      why << "min margin " << fresh.min() << " below floor " << sc.margin_floor << "; ";
    }
    if (!close(cert.margins.trace, fresh.trace, rel) || !close(cert.margins.det, fresh.det, rel) ||
        !close(cert.margins.adm_left, fresh.adm_left, rel) ||
        !close(cert.margins.adm_right, fresh.adm_right, rel)) {
      why << "stored margins do not replay";
    }
  });

  rec.check("dissipation", [&](std::ostream& why) {
    const auto ss = solve_middle_state(sc.data, sc.law());
    const auto fresh = compare(sc.data, sc.law(), ss, cert.sub, sc.L);
    if (!close(cert.dissipation.L, sc.L, rel)) why << "L ";
    if (!close(cert.dissipation.D_self, fresh.D_self, rel)) why << "D_self ";
    if (!close(cert.dissipation.D_sub, fresh.D_sub, rel)) why << "D_sub ";
    if (!close(cert.dissipation.gap, fresh.gap, rel)) why << "gap ";
    if (cert.dissipation.verdict != fresh.verdict) why << "verdict ";
    if (why.tellp() > 0) why << "do not replay";
  });

  rec.check("weak_form", [&](std::ostream& why) {
    const auto fresh =
        weak_summary(fan_fields(cert.sub, sc.data, sc.law()), cert.weak.seed, cert.weak.count, quadrature);
    if (cert.weak.count != sc.weak_tests || cert.weak.seed != sc.seed) {
      why << "weak-form sample does not match the scenario; ";
    }
    if (fresh.max_mass > cert.weak_tol) why << "mass residual " << fresh.max_mass << "; ";
    if (fresh.max_momentum > cert.weak_tol) why << "momentum residual " << fresh.max_momentum << "; ";
    if (fresh.min_admissibility < -cert.weak_tol) {
      why << "admissibility functional " << fresh.min_admissibility << "; ";
    }
    const double abs_tol = 1e-12;
    if (std::abs(cert.weak.max_mass - fresh.max_mass) > abs_tol ||
        std::abs(cert.weak.max_momentum - fresh.max_momentum) > abs_tol ||
        std::abs(cert.weak.min_admissibility - fresh.min_admissibility) > abs_tol) {
      why << "stored weak-form summary does not replay";
    }
  });
  return result;
}

}  // namespace disslab
