#include "disslab/solver.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "disslab/error.hpp"
#include "disslab/roots.hpp"

namespace disslab {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ok:
      return "ok";
    case SolveStatus::no_root:
      return "no_root";
    case SolveStatus::partition_violation:
      return "partition_violation";
    case SolveStatus::nonpositive_bound:
      return "nonpositive_bound";
  }
  return "unknown";
}

double residual_scale(const FanSubsolution& s, const RiemannData& d, const GasLaw& law) {
  const double terms[] = {
      law.pressure(d.rho_minus),
      law.pressure(d.rho_plus),
      law.pressure(s.rho1),
      d.rho_minus * d.v_minus.norm_sq(),
      d.rho_plus * d.v_plus.norm_sq(),
      s.rho1 * std::abs(s.C),
      s.rho1 * (std::abs(s.gamma1) + std::abs(s.gamma2)),
  };
  return *std::max_element(std::begin(terms), std::end(terms));
}

SolveResult solve_for(double rho1, double C, const RiemannData& data, const GasLaw& law,
                      const SolverOptions& options) {
  data.validate();
  if (!(rho1 > 0.0) || !std::isfinite(rho1)) throw DomainError("rho1 must be positive");
  if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("C must be positive");
  if (!data.equal_tangential()) {
    throw RegimeError("fan subsolutions need equal tangential velocities");
  }
  const double rm = data.rho_minus;
  const double rp = data.rho_plus;
  const double singular_tol = 1e-12 * std::max({rm, rp, rho1});
  if (std::abs(rho1 - rm) <= singular_tol || std::abs(rho1 - rp) <= singular_tol) {
    std::ostringstream msg;
    msg << "singular elimination: rho1 = " << rho1 << " coincides with an outer density";
    throw SingularEliminationError(msg.str());
  }

  // Work in the frame moving with the common tangential speed c.
  const double c = data.v_minus.tangential;
  const double C_rest = C - c * c;
  SolveResult result;
  if (!(C_rest > 0.0)) {
    result.status = SolveStatus::nonpositive_bound;
    return result;
  }

  const double um = data.v_minus.normal;
  const double up = data.v_plus.normal;
  const double pm = law.pressure(rm);
  const double pp = law.pressure(rp);
  const double p1 = law.pressure(rho1);
  const double constant = -rm * um * um + rp * up * up - pm + pp;

  auto nu_minus = [&](double beta) { return (rm * um - rho1 * beta) / (rm - rho1); };
  auto nu_plus = [&](double beta) { return (rho1 * beta - rp * up) / (rho1 - rp); };
  // rho1 times the difference of the two expressions for gamma1.
  auto compat = [&](double beta) -> std::pair<double, double> {
    const double a = rm * um - rho1 * beta;
    const double b = rho1 * beta - rp * up;
    const double nl = a / (rm - rho1);
    const double nr = b / (rho1 - rp);
    return {nl * a + nr * b + constant, 2.0 * rho1 * (nr - nl)};
  };

  const double wave = std::max({std::abs(um) + std::sqrt(law.sound_speed_sq(rm)),
                                std::abs(up) + std::sqrt(law.sound_speed_sq(rp)),
                                std::sqrt(law.sound_speed_sq(rho1))});
  const double delta = 2.0 * wave;
  const double lo = std::min(um, up) - delta;
  const double hi = std::max(um, up) + delta;
  const auto brackets =
      roots::sign_changes([&](double b) { return compat(b).first; }, lo, hi, options.beta_samples);
  if (brackets.empty()) {
    result.status = SolveStatus::no_root;
    return result;
  }

  roots::Tolerance tol;
  tol.max_iter = options.max_iter;
  std::vector<double> betas;
  for (const auto& [a, b] : brackets) {
    const double beta = a == b ? a : roots::safeguarded_newton(compat, a, b, tol);
    if (betas.empty() || std::abs(beta - betas.back()) > 1e-12 * (1.0 + std::abs(beta))) {
      betas.push_back(beta);
    }
  }

  for (double beta : betas) {
    FanSubsolution s;
    s.partition = {nu_minus(beta), nu_plus(beta)};
    if (!s.partition.valid()) continue;
    s.rho1 = rho1;
    s.beta = beta;
    s.C = C_rest;
    const double gamma1_left =
        (s.partition.nu_minus * (rm * um - rho1 * beta) - rm * um * um - pm + p1 + rho1 * C_rest / 2.0) /
        rho1;
    const double gamma1_right =
        (-s.partition.nu_plus * (rho1 * beta - rp * up) - rp * up * up + p1 - pp + rho1 * C_rest / 2.0) /
        rho1;
    s.gamma1 = 0.5 * (gamma1_left + gamma1_right);
    // Boost back to the lab frame.
    s.alpha = c;
    s.gamma2 = c * beta;
    s.gamma1 += c * c / 2.0;
    s.C = C;
    const double res = rh_residuals(s, data, law).max_abs();
    if (res > options.tol * (1.0 + residual_scale(s, data, law))) {
      std::ostringstream msg;
      msg << "solve_for residual " << res << " above tolerance at (rho1, C) = (" << rho1 << ", "
          << C << ")";
      throw NumericalError(msg.str());
    }
    result.candidates.push_back(s);
  }
  result.status = result.candidates.empty() ? SolveStatus::partition_violation : SolveStatus::ok;
  return result;
}

Unknowns to_unknowns(const FanSubsolution& s) {
  return {s.partition.nu_minus, s.partition.nu_plus, s.rho1, s.alpha, s.beta, s.gamma1, s.gamma2, s.C};
}

FanSubsolution from_unknowns(const Unknowns& x) {
  FanSubsolution s;
  s.partition = {x[0], x[1]};
  s.rho1 = x[2];
  s.alpha = x[3];
  s.beta = x[4];
  s.gamma1 = x[5];
  s.gamma2 = x[6];
  s.C = x[7];
  return s;
}

Jacobian rh_jacobian(const FanSubsolution& s, const RiemannData& d, const GasLaw& law) {
  enum { kNuM, kNuP, kRho, kAlpha, kBeta, kG1, kG2, kC };
  const double nm = s.partition.nu_minus;
  const double np = s.partition.nu_plus;
  const double rm = d.rho_minus;
  const double rp = d.rho_plus;
  const double r1 = s.rho1;
  const double dp1 = law.sound_speed_sq(r1);
  Jacobian J{};

  J[kContLeft][kNuM] = rm - r1;
  J[kContLeft][kRho] = s.beta - nm;
  J[kContLeft][kBeta] = r1;

  J[kMom1Left][kNuM] = rm * d.v_minus.tangential - r1 * s.alpha;
  J[kMom1Left][kRho] = s.gamma2 - nm * s.alpha;
  J[kMom1Left][kAlpha] = -nm * r1;
  J[kMom1Left][kG2] = r1;

  J[kMom2Left][kNuM] = rm * d.v_minus.normal - r1 * s.beta;
  J[kMom2Left][kRho] = -nm * s.beta - s.gamma1 + dp1 + s.C / 2.0;
  J[kMom2Left][kBeta] = -nm * r1;
  J[kMom2Left][kG1] = -r1;
  J[kMom2Left][kC] = r1 / 2.0;

  J[kContRight][kNuP] = r1 - rp;
  J[kContRight][kRho] = np - s.beta;
  J[kContRight][kBeta] = -r1;

  J[kMom1Right][kNuP] = r1 * s.alpha - rp * d.v_plus.tangential;
  J[kMom1Right][kRho] = np * s.alpha - s.gamma2;
  J[kMom1Right][kAlpha] = np * r1;
  J[kMom1Right][kG2] = -r1;

  J[kMom2Right][kNuP] = r1 * s.beta - rp * d.v_plus.normal;
  J[kMom2Right][kRho] = np * s.beta + s.gamma1 - dp1 - s.C / 2.0;
  J[kMom2Right][kBeta] = np * r1;
  J[kMom2Right][kG1] = r1;
  J[kMom2Right][kC] = -r1 / 2.0;
  return J;
}

double jacobian_check(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law,
                      double h) {
  const Jacobian analytic = rh_jacobian(sub, data, law);
  const Unknowns x0 = to_unknowns(sub);
  double worst = 0.0;
  for (std::size_t j = 0; j < x0.size(); ++j) {
    const double step = h * std::max(1.0, std::abs(x0[j]));
    Unknowns xp = x0;
    Unknowns xm = x0;
    xp[j] += step;
    xm[j] -= step;
    const auto rp = rh_residuals(from_unknowns(xp), data, law);
    const auto rm = rh_residuals(from_unknowns(xm), data, law);
    for (std::size_t i = 0; i < 6; ++i) {
      const double fd = (rp.r[i] - rm.r[i]) / (2.0 * step);
      const double a = analytic[i][j];
      worst = std::max(worst, std::abs(a - fd) / std::max(1.0, std::abs(a)));
    }
  }
  return worst;
}

std::vector<double> GridAxis::values() const {
  if (n < 1) throw std::invalid_argument("grid axis needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

GridAxis GridAxis::parse(std::string_view text) {
  auto bad = [&]() {
    return std::invalid_argument("grid axis must look like lo:hi:n, got '" + std::string(text) + "'");
  };
  const auto first = text.find(':');
  if (first == std::string_view::npos) throw bad();
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos) throw bad();
  auto to_double = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) throw bad();
    return v;
  };
  GridAxis axis;
  axis.lo = to_double(text.substr(0, first));
  axis.hi = to_double(text.substr(first + 1, second - first - 1));
  const auto count = text.substr(second + 1);
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), axis.n);
  if (ec != std::errc{} || ptr != count.data() + count.size()) throw bad();
  if (axis.n < 1) throw std::invalid_argument("grid axis '" + std::string(text) + "' is empty");
  if (axis.hi < axis.lo) throw bad();
  return axis;
}

std::string GridAxis::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g:%.17g:%d", lo, hi, n);
  return buf;
}

std::size_t SearchReport::feasible_count() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const ScanPoint& p) { return p.feasible; }));
}

namespace {

ScanPoint evaluate_point(double rho1, double C, const RiemannData& data, const GasLaw& law,
                         double L, const SolverOptions& options) {
  ScanPoint point;
  point.rho1 = rho1;
  point.C = C;
  SolveResult solved;
  try {
    solved = solve_for(rho1, C, data, law, options);
  } catch (const SingularEliminationError&) {
    point.status = SolveStatus::no_root;
    return point;
  }
  point.status = solved.status;

  bool have = false;
  for (const auto& cand : solved.candidates) {
    ScanPoint trial = point;
    trial.sub = cand;
    trial.margins = margins(cand, data, law);
    trial.residual = rh_residuals(cand, data, law).max_abs();
    trial.D_sub = rate_subsolution(data, law, cand, L);
    trial.feasible = trial.residual <= options.tol * (1.0 + residual_scale(cand, data, law)) &&
                     trial.margins.meets_floor(options.margin_floor);
    const bool better =
        !have || (trial.feasible && !point.feasible) ||
        (trial.feasible == point.feasible &&
         (trial.feasible ? trial.D_sub < point.D_sub : trial.margins.min() > point.margins.min()));
    if (better) {
      point = trial;
      have = true;
    }
  }
  return point;
}

}  // namespace

SearchReport scan(const RiemannData& data, const GasLaw& law, const GridAxis& rho1_axis,
                  const GridAxis& C_axis, double L, const SolverOptions& options) {
  if (rho1_axis.n < 1 || C_axis.n < 1) throw std::invalid_argument("scan grid is empty");
  if (!(options.margin_floor > 0.0)) throw std::invalid_argument("margin floor must be positive");
  SearchReport report;
  report.self_sim = solve_middle_state(data, law);
  report.L = L;
  report.D_self =
      rate_self_similar(energy_levels(data, law, report.self_sim), report.self_sim.nu1,
                        report.self_sim.nu2, L);
  report.margin_floor = options.margin_floor;

  const auto rho1_values = rho1_axis.values();
  const auto C_values = C_axis.values();
  const std::size_t total = rho1_values.size() * C_values.size();
  report.points.resize(total);

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(total, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t k = next++; k < total; k = next++) {
        const double rho1 = rho1_values[k / C_values.size()];
        const double C = C_values[k % C_values.size()];
        report.points[k] = evaluate_point(rho1, C, data, law, L, options);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t k = 0; k < total; ++k) {
    const auto& p = report.points[k];
    if (!p.feasible) continue;
    if (!report.best) {
      report.best = k;
      continue;
    }
    const auto& b = report.points[*report.best];
    const bool better = p.D_sub < b.D_sub ||
                        (p.D_sub == b.D_sub && (p.rho1 < b.rho1 || (p.rho1 == b.rho1 && p.C < b.C)));
    if (better) report.best = k;
  }
  return report;
}

}  // namespace disslab
