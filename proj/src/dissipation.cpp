#include "disslab/dissipation.hpp"

#include <algorithm>
#include <cmath>

#include "disslab/error.hpp"

namespace disslab {

namespace {

void require_positive_width(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("box half-width L must be positive");
}

double outer_energy_minus(const RiemannData& d, const GasLaw& law) {
  return law.energy_density(d.rho_minus, d.v_minus.norm_sq());
}

double outer_energy_plus(const RiemannData& d, const GasLaw& law) {
  return law.energy_density(d.rho_plus, d.v_plus.norm_sq());
}

double fan_rate(double nu_left, double nu_right, double e_minus, double e_mid, double e_plus,
                double L) {
  return -2.0 * L * (nu_left * (e_minus - e_mid) + nu_right * (e_mid - e_plus));
}

}  // namespace

EnergyLevels energy_levels(const RiemannData& data, const GasLaw& law,
                           const SelfSimilarTwoShock& ss) {
  EnergyLevels e;
  e.minus = outer_energy_minus(data, law);
  e.middle = law.energy_density(ss.rho_m, ss.v_bar * ss.v_bar + ss.tangential * ss.tangential);
  e.plus = outer_energy_plus(data, law);
  return e;
}

double subsolution_energy(const FanSubsolution& sub, const GasLaw& law) {
  return sub.rho1 * law.internal_energy(sub.rho1) + sub.rho1 * sub.C / 2.0;
}

double rate_self_similar(const EnergyLevels& levels, double nu1, double nu2, double L) {
  require_positive_width(L);
  return fan_rate(nu1, nu2, levels.minus, levels.middle, levels.plus, L);
}

double rate_subsolution(const RiemannData& data, const GasLaw& law, const FanSubsolution& sub,
                        double L) {
  require_positive_width(L);
  return fan_rate(sub.partition.nu_minus, sub.partition.nu_plus, outer_energy_minus(data, law),
                  subsolution_energy(sub, law), outer_energy_plus(data, law), L);
}

double DissipationReport::relative_gap() const noexcept {
  return D_self != 0.0 ? gap / std::abs(D_self) : gap;
}

DissipationReport compare(const RiemannData& data, const GasLaw& law,
                          const SelfSimilarTwoShock& ss, const FanSubsolution& sub, double L,
                          double rel_tol) {
  DissipationReport r;
  r.L = L;
  r.D_self = rate_self_similar(energy_levels(data, law, ss), ss.nu1, ss.nu2, L);
  r.D_sub = rate_subsolution(data, law, sub, L);
  r.gap = r.D_sub - r.D_self;
  r.verdict = r.gap < -rel_tol * (1.0 + std::abs(r.D_self));
  return r;
}

FanEnergyProfile energy_profile(const RiemannData& data, const GasLaw& law,
                                const SelfSimilarTwoShock& ss) {
  const auto levels = energy_levels(data, law, ss);
  return {ss.nu1, ss.nu2, levels.minus, levels.middle, levels.plus};
}

FanEnergyProfile energy_profile(const RiemannData& data, const GasLaw& law,
                                const FanSubsolution& sub) {
  return {sub.partition.nu_minus, sub.partition.nu_plus, outer_energy_minus(data, law),
          subsolution_energy(sub, law), outer_energy_plus(data, law)};
}

BoxEnergy box_energy(const FanEnergyProfile& fan, double L, double t) {
  require_positive_width(L);
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  auto clipped_length = [L](double a, double b) {
    const double lo = std::clamp(a, -L, L);
    const double hi = std::clamp(b, -L, L);
    return std::max(hi - lo, 0.0);
  };
  const double left = fan.nu_minus * t;
  const double right = fan.nu_plus * t;
  const double width = 2.0 * L;  // extent in x1, where nothing varies
  double value = 0.0;
  value += fan.e_minus * clipped_length(-L, left);
  value += fan.e_mid * clipped_length(left, right);
  value += fan.e_plus * clipped_length(right, L);
  return {L, width * value};
}

}  // namespace disslab
