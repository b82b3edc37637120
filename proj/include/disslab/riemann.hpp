#pragma once

#include <array>

#include "disslab/gas.hpp"

namespace disslab {

/// Velocity split into the component along the initial interface (x1) and
/// normal to it (x2).
struct Velocity {
  double tangential = 0.0;
  double normal = 0.0;

  double norm_sq() const noexcept { return tangential * tangential + normal * normal; }
};

/// Constant states below (x2 < 0) and above (x2 > 0) the initial interface.
struct RiemannData {
  double rho_minus = 1.0;
  Velocity v_minus;
  double rho_plus = 1.0;
  Velocity v_plus;

  /// Throws DomainError on nonpositive or non-finite entries.
  void validate() const;
  bool equal_tangential() const noexcept { return v_minus.tangential == v_plus.tangential; }
  /// Swap the states and negate normal velocities (x2 -> -x2).
  RiemannData mirrored() const;
  /// Add `shift` to both normal velocities.
  RiemannData shifted_normal(double shift) const;
};

struct TwoShockCondition {
  bool holds = false;
  /// sqrt-bound minus the normal velocity jump; positive when the condition holds.
  double margin = 0.0;
};

/// Holds iff the tangential components agree and
///   v+2 - v-2 < -sqrt((rho- - rho+)(p(rho-) - p(rho+)) / (rho- rho+)).
TwoShockCondition two_shock_condition(const RiemannData& data, const GasLaw& law);

/// Normal-velocity change across a compressive shock from density b to a >= b:
/// S(a; b) = sqrt((a - b)(p(a) - p(b)) / (a b)).
double shock_curve_speed(double a, double b, const GasLaw& law);

struct SelfSimilarTwoShock {
  double rho_m = 0.0;
  double v_bar = 0.0;       ///< normal velocity of the middle state
  double tangential = 0.0;  ///< shared tangential velocity
  double nu1 = 0.0;         ///< 1-shock speed
  double nu2 = 0.0;         ///< 3-shock speed
  bool lax_ok_1 = false;
  bool lax_ok_3 = false;
};

struct RiemannOptions {
  double gap_tol = 1e-12;
  int max_iter = 200;
  int max_doublings = 200;
};

/// Middle state and shock speeds of the self-similar 1-shock / 3-shock solution.
/// Throws RegimeError outside the two-shock regime (rarefactions are not
/// approximated) and NumericalError when bracketing fails.
SelfSimilarTwoShock solve_middle_state(const RiemannData& data, const GasLaw& law,
                                       const RiemannOptions& options = {});

/// Density and normal velocity on one side of a planar discontinuity.
struct NormalState {
  double rho = 1.0;
  double u = 0.0;
};

enum class WaveFamily { first = 1, third = 3 };

/// Lax inequalities lambda_k(right) < sigma < lambda_k(left), with
/// lambda_1 = u - c and lambda_3 = u + c.
bool check_lax(NormalState left, NormalState right, double sigma, WaveFamily family,
               const GasLaw& law);

struct JumpState {
  double rho = 1.0;
  double u_n = 0.0;
  double u_t = 0.0;
};

/// (sigma[rho] - [rho u_n], sigma[rho u_t] - [rho u_t u_n], sigma[rho u_n] - [rho u_n^2 + p])
/// with [q] = q(right) - q(left).
std::array<double, 3> rh_residual(const JumpState& left, const JumpState& right, double sigma,
                                  const GasLaw& law);

}  // namespace disslab
