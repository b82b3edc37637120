#pragma once

#include <array>

#include "disslab/gas.hpp"
#include "disslab/riemann.hpp"

namespace disslab {

/// Interface speeds of the wedges P-, P1, P+ (nu_minus < nu_plus).
struct FanPartition {
  double nu_minus = -1.0;
  double nu_plus = 1.0;

  bool valid() const noexcept { return nu_minus < nu_plus; }
};

/// Piecewise-constant fan subsolution: outer states are the Riemann data, the
/// wedge P1 carries density rho1, velocity (alpha, beta), traceless symmetric
/// u1 = [[gamma1, gamma2], [gamma2, -gamma1]] and kinetic bound C.
struct FanSubsolution {
  FanPartition partition;
  double rho1 = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double C = 1.0;
};

/// Indices into SystemResiduals::r, one per interface equation.
enum ResidualIndex : int {
  kContLeft = 0,
  kMom1Left = 1,
  kMom2Left = 2,
  kContRight = 3,
  kMom1Right = 4,
  kMom2Right = 5,
};

struct SystemResiduals {
  std::array<double, 6> r{};

  double max_abs() const noexcept;
};

struct FeasibilityMargins {
  double trace = 0.0;      ///< C - alpha^2 - beta^2
  double det = 0.0;        ///< (C/2 - alpha^2 + gamma1)(C/2 - beta^2 - gamma1) - (gamma2 - alpha beta)^2
  double adm_left = 0.0;   ///< energy flux balance on nu_minus, RHS - LHS
  double adm_right = 0.0;  ///< energy flux balance on nu_plus, RHS - LHS

  /// trace > 0, det > 0, adm_left >= 0, adm_right >= 0.
  bool feasible() const noexcept;
  /// Every margin is at least `floor`.
  bool meets_floor(double floor) const noexcept;
  double min() const noexcept;
};

/// Left-minus-right residuals of the six interface identities (continuity and both
/// momentum components on each interface), the normal momentum equations
/// including the rho1 C / 2 pressure correction.
SystemResiduals rh_residuals(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law);

FeasibilityMargins margins(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law);

/// With zero tangential data the tangential momentum equations force
/// gamma2 = nu_minus alpha = nu_plus alpha, hence alpha = gamma2 = 0. Entries with
/// |alpha|, |gamma2| <= tol are snapped to zero; larger ones throw ReductionError.
FanSubsolution reduce_tangential(const RiemannData& data, const FanSubsolution& sub,
                                 double tol = 1e-12);

/// The self-similar solution written in subsolution variables:
/// rho1 = rho_m, v1 = (c, v_bar), u1 = v1 (x) v1 - |v1|^2/2 Id, C = |v1|^2.
FanSubsolution embed_self_similar(const SelfSimilarTwoShock& self_sim);

}  // namespace disslab
