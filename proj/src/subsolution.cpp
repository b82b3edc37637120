#include "disslab/subsolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "disslab/error.hpp"

namespace disslab {

double SystemResiduals::max_abs() const noexcept {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

bool FeasibilityMargins::feasible() const noexcept {
  return trace > 0.0 && det > 0.0 && adm_left >= 0.0 && adm_right >= 0.0;
}

bool FeasibilityMargins::meets_floor(double floor) const noexcept {
  return trace >= floor && det >= floor && adm_left >= floor && adm_right >= floor;
}

double FeasibilityMargins::min() const noexcept {
  return std::min({trace, det, adm_left, adm_right});
}

SystemResiduals rh_residuals(const FanSubsolution& s, const RiemannData& d, const GasLaw& law) {
  const double nm = s.partition.nu_minus;
  const double np = s.partition.nu_plus;
  const double rm = d.rho_minus;
  const double rp = d.rho_plus;
  const double vm1 = d.v_minus.tangential;
  const double vm2 = d.v_minus.normal;
  const double vp1 = d.v_plus.tangential;
  const double vp2 = d.v_plus.normal;
  const double r1 = s.rho1;
  const double pm = law.pressure(rm);
  const double pp = law.pressure(rp);
  const double p1 = law.pressure(r1);

  SystemResiduals out;
  out.r[kContLeft] = nm * (rm - r1) - (rm * vm2 - r1 * s.beta);
  out.r[kMom1Left] = nm * (rm * vm1 - r1 * s.alpha) - (rm * vm1 * vm2 - r1 * s.gamma2);
  out.r[kMom2Left] =
      nm * (rm * vm2 - r1 * s.beta) - (rm * vm2 * vm2 + r1 * s.gamma1 + pm - p1 - r1 * s.C / 2.0);
  out.r[kContRight] = np * (r1 - rp) - (r1 * s.beta - rp * vp2);
  out.r[kMom1Right] = np * (r1 * s.alpha - rp * vp1) - (r1 * s.gamma2 - rp * vp1 * vp2);
  out.r[kMom2Right] =
      np * (r1 * s.beta - rp * vp2) - (-r1 * s.gamma1 - rp * vp2 * vp2 + p1 - pp + r1 * s.C / 2.0);
  return out;
}

FeasibilityMargins margins(const FanSubsolution& s, const RiemannData& d, const GasLaw& law) {
  const double nm = s.partition.nu_minus;
  const double np = s.partition.nu_plus;
  const double rm = d.rho_minus;
  const double rp = d.rho_plus;
  const double r1 = s.rho1;
  const double vm2 = d.v_minus.normal;
  const double vp2 = d.v_plus.normal;
  const double qm = d.v_minus.norm_sq();
  const double qp = d.v_plus.norm_sq();
  const double em = rm * law.internal_energy(rm);
  const double ep = rp * law.internal_energy(rp);
  const double e1 = r1 * law.internal_energy(r1);
  const double pm = law.pressure(rm);
  const double pp = law.pressure(rp);
  const double p1 = law.pressure(r1);

  FeasibilityMargins out;
  out.trace = s.C - s.alpha * s.alpha - s.beta * s.beta;
  out.det = (s.C / 2.0 - s.alpha * s.alpha + s.gamma1) * (s.C / 2.0 - s.beta * s.beta - s.gamma1) -
            (s.gamma2 - s.alpha * s.beta) * (s.gamma2 - s.alpha * s.beta);

  const double lhs_left = nm * (em - e1) + nm * (rm * qm / 2.0 - r1 * s.C / 2.0);
  const double rhs_left = ((em + pm) * vm2 - (e1 + p1) * s.beta) +
                          (rm * vm2 * qm / 2.0 - r1 * s.beta * s.C / 2.0);
  const double lhs_right = np * (e1 - ep) + np * (r1 * s.C / 2.0 - rp * qp / 2.0);
  const double rhs_right = ((e1 + p1) * s.beta - (ep + pp) * vp2) +
                           (r1 * s.beta * s.C / 2.0 - rp * vp2 * qp / 2.0);
  out.adm_left = rhs_left - lhs_left;
  out.adm_right = rhs_right - lhs_right;
  return out;
}

FanSubsolution reduce_tangential(const RiemannData& data, const FanSubsolution& sub, double tol) {
  if (data.v_minus.tangential != 0.0 || data.v_plus.tangential != 0.0) {
    throw ReductionError("tangential reduction needs v-1 = v+1 = 0");
  }
  if (!(sub.partition.nu_minus != sub.partition.nu_plus)) {
    throw ReductionError("tangential reduction needs distinct interface speeds");
  }
  if (std::abs(sub.alpha) > tol || std::abs(sub.gamma2) > tol) {
    std::ostringstream msg;
    msg << "inconsistent tangential unknowns: alpha = " << sub.alpha << ", gamma2 = " << sub.gamma2
        << " cannot satisfy gamma2 = nu_minus alpha = nu_plus alpha with nu_minus != nu_plus";
    throw ReductionError(msg.str());
  }
  FanSubsolution out = sub;
  out.alpha = 0.0;
  out.gamma2 = 0.0;
  return out;
}

FanSubsolution embed_self_similar(const SelfSimilarTwoShock& ss) {
  FanSubsolution s;
  s.partition = {ss.nu1, ss.nu2};
  s.rho1 = ss.rho_m;
  s.alpha = ss.tangential;
  s.beta = ss.v_bar;
  s.gamma1 = (ss.tangential * ss.tangential - ss.v_bar * ss.v_bar) / 2.0;
  s.gamma2 = ss.tangential * ss.v_bar;
  s.C = ss.tangential * ss.tangential + ss.v_bar * ss.v_bar;
  return s;
}

}  // namespace disslab
