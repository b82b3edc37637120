#include "disslab/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "disslab/error.hpp"
#include "disslab/roots.hpp"

namespace disslab {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

// S(a; b) and dS/da for a >= b.
std::pair<double, double> shock_curve_with_derivative(double a, double b, const GasLaw& law) {
  const double dp = law.pressure(a) - law.pressure(b);
  const double h = (a - b) * dp / (a * b);
  if (h <= 0.0) return {0.0, std::numeric_limits<double>::quiet_NaN()};
  const double dh = (dp + (a - b) * law.sound_speed_sq(a)) / (a * b) - h / a;
  const double s = std::sqrt(h);
  return {s, dh / (2.0 * s)};
}

}  // namespace

void RiemannData::validate() const {
  if (!finite_positive(rho_minus) || !finite_positive(rho_plus)) {
    throw DomainError("Riemann densities must be positive and finite");
  }
  for (double v : {v_minus.tangential, v_minus.normal, v_plus.tangential, v_plus.normal}) {
    if (!std::isfinite(v)) throw DomainError("Riemann velocities must be finite");
  }
}

RiemannData RiemannData::mirrored() const {
  RiemannData m;
  m.rho_minus = rho_plus;
  m.v_minus = {v_plus.tangential, -v_plus.normal};
  m.rho_plus = rho_minus;
  m.v_plus = {v_minus.tangential, -v_minus.normal};
  return m;
}

RiemannData RiemannData::shifted_normal(double shift) const {
  RiemannData s = *this;
  s.v_minus.normal += shift;
  s.v_plus.normal += shift;
  return s;
}

double shock_curve_speed(double a, double b, const GasLaw& law) {
  return shock_curve_with_derivative(a, b, law).first;
}

TwoShockCondition two_shock_condition(const RiemannData& data, const GasLaw& law) {
  data.validate();
  const double rm = data.rho_minus;
  const double rp = data.rho_plus;
  const double radicand = (rm - rp) * (law.pressure(rm) - law.pressure(rp)) / (rm * rp);
  const double rhs = -std::sqrt(std::max(radicand, 0.0));
  const double lhs = data.v_plus.normal - data.v_minus.normal;
  TwoShockCondition out;
  out.margin = rhs - lhs;
  out.holds = data.equal_tangential() && lhs < rhs;
  return out;
}

SelfSimilarTwoShock solve_middle_state(const RiemannData& data, const GasLaw& law,
                                       const RiemannOptions& options) {
  const auto condition = two_shock_condition(data, law);
  if (!data.equal_tangential()) {
    throw RegimeError("not in two-shock regime: tangential velocities differ");
  }
  if (!condition.holds) {
    std::ostringstream msg;
    msg << "not in two-shock regime: condition margin " << condition.margin << " <= 0";
    throw RegimeError(msg.str());
  }

  const double rm = data.rho_minus;
  const double rp = data.rho_plus;
  const double um = data.v_minus.normal;
  const double up = data.v_plus.normal;

  // Gap between the admissible 1-shock and 3-shock curves; strictly decreasing.
  auto gap = [&](double rho) -> std::pair<double, double> {
    const auto [s_minus, ds_minus] = shock_curve_with_derivative(rho, rm, law);
    const auto [s_plus, ds_plus] = shock_curve_with_derivative(rho, rp, law);
    return {um - s_minus - (up + s_plus), -ds_minus - ds_plus};
  };

  const double lo = std::max(rm, rp);
  double hi = 2.0 * lo;
  int doublings = 0;
  while (gap(hi).first > 0.0) {
    hi *= 2.0;
    if (++doublings > options.max_doublings || !std::isfinite(hi)) {
      std::ostringstream msg;
      msg << "could not bracket middle density: gap(" << hi << ") = " << gap(hi).first
          << " still positive after " << doublings << " doublings";
      throw NumericalError(msg.str());
    }
  }

  roots::Tolerance tol;
  tol.abs_f = options.gap_tol;
  tol.max_iter = options.max_iter;
  const double rho_m = roots::safeguarded_newton(gap, lo, hi, tol);
  if (!(rho_m > lo)) {
    throw NumericalError("middle density collapsed onto the bracket endpoint");
  }
  if (std::abs(gap(rho_m).first) > options.gap_tol * (1.0 + std::abs(um) + std::abs(up))) {
    std::ostringstream msg;
    msg << "shock-curve gap " << gap(rho_m).first << " above tolerance at rho_m = " << rho_m;
    throw NumericalError(msg.str());
  }

  SelfSimilarTwoShock out;
  out.rho_m = rho_m;
  // Average the two curve evaluations so mirrored data gives exactly mirrored output.
  out.v_bar = 0.5 * ((um - shock_curve_speed(rho_m, rm, law)) + (up + shock_curve_speed(rho_m, rp, law)));
  out.tangential = data.v_minus.tangential;
  out.nu1 = (rm * um - rho_m * out.v_bar) / (rm - rho_m);
  out.nu2 = (rho_m * out.v_bar - rp * up) / (rho_m - rp);
  out.lax_ok_1 = check_lax({rm, um}, {rho_m, out.v_bar}, out.nu1, WaveFamily::first, law);
  out.lax_ok_3 = check_lax({rho_m, out.v_bar}, {rp, up}, out.nu2, WaveFamily::third, law);
  return out;
}

bool check_lax(NormalState left, NormalState right, double sigma, WaveFamily family,
               const GasLaw& law) {
  const double sign = family == WaveFamily::first ? -1.0 : 1.0;
  const double lambda_left = left.u + sign * std::sqrt(law.sound_speed_sq(left.rho));
  const double lambda_right = right.u + sign * std::sqrt(law.sound_speed_sq(right.rho));
  return lambda_right < sigma && sigma < lambda_left;
}

std::array<double, 3> rh_residual(const JumpState& left, const JumpState& right, double sigma,
                                  const GasLaw& law) {
  auto jump = [&](auto q) { return q(right) - q(left); };
  const double mass = jump([](const JumpState& s) { return s.rho; });
  const double mass_flux = jump([](const JumpState& s) { return s.rho * s.u_n; });
  const double tang_flux = jump([](const JumpState& s) { return s.rho * s.u_t * s.u_n; });
  const double tang = jump([](const JumpState& s) { return s.rho * s.u_t; });
  const double normal_flux =
      jump([&](const JumpState& s) { return s.rho * s.u_n * s.u_n + law.pressure(s.rho); });
  return {sigma * mass - mass_flux, sigma * tang - tang_flux, sigma * mass_flux - normal_flux};
}

}  // namespace disslab
