#pragma once

#include "disslab/gas.hpp"
#include "disslab/riemann.hpp"
#include "disslab/subsolution.hpp"

namespace disslab {

// Energy dissipation rates at t = 0+ on the box (-L, L)^2.
//
// Sign convention: D_L = -2L (nu_left (E_minus - E_mid) + nu_right (E_mid - E_plus)).
// For a fan this equals MINUS the right derivative of the box energy
// E_L(t) = int_{(-L,L)^2} (rho eps + rho |v|^2 / 2) dx, see box_energy(). Fan
// states do not depend on x1, so the flux through the lateral sides x1 = +-L
// cancels and only the wedge areas change with t.

struct EnergyLevels {
  double minus = 0.0;
  double middle = 0.0;
  double plus = 0.0;
};

/// E+- from the outer states (full speed |v+-|^2), E_m from the middle state.
EnergyLevels energy_levels(const RiemannData& data, const GasLaw& law,
                           const SelfSimilarTwoShock& self_sim);

/// E1 = rho1 eps(rho1) + rho1 C / 2.
double subsolution_energy(const FanSubsolution& sub, const GasLaw& law);

double rate_self_similar(const EnergyLevels& levels, double nu1, double nu2, double L);

double rate_subsolution(const RiemannData& data, const GasLaw& law, const FanSubsolution& sub,
                        double L);

struct DissipationReport {
  double L = 1.0;
  double D_self = 0.0;
  double D_sub = 0.0;
  double gap = 0.0;  ///< D_sub - D_self
  bool verdict = false;

  /// gap / |D_self| (gap itself when D_self vanishes).
  double relative_gap() const noexcept;
};

/// verdict is true iff D_sub < D_self by more than rel_tol * (1 + |D_self|).
/// Both rates scale linearly with L, so the verdict does not depend on L.
DissipationReport compare(const RiemannData& data, const GasLaw& law,
                          const SelfSimilarTwoShock& self_sim, const FanSubsolution& sub, double L,
                          double rel_tol = 1e-12);

/// Energy densities of the three wedges of a fan, separated by x2 = nu_minus t
/// and x2 = nu_plus t. At t = 0 the fan reduces to the Riemann data.
struct FanEnergyProfile {
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  double e_minus = 0.0;
  double e_mid = 0.0;
  double e_plus = 0.0;
};

FanEnergyProfile energy_profile(const RiemannData& data, const GasLaw& law,
                                const SelfSimilarTwoShock& self_sim);
FanEnergyProfile energy_profile(const RiemannData& data, const GasLaw& law,
                                const FanSubsolution& sub);

struct BoxEnergy {
  double L = 1.0;
  double value = 0.0;
};

/// Total energy in (-L, L)^2 at time t >= 0, integrating the wedge energies over
/// the clipped x2-intervals.
BoxEnergy box_energy(const FanEnergyProfile& fan, double L, double t);

}  // namespace disslab
