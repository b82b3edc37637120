#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disslab/dissipation.hpp"
#include "disslab/gas.hpp"
#include "disslab/riemann.hpp"
#include "disslab/subsolution.hpp"

namespace disslab {

struct SolverOptions {
  /// Relative tolerance on interface residuals: |r| <= tol * (1 + scale).
  double tol = 1e-10;
  /// Every margin of a reported-feasible point must be at least this.
  double margin_floor = 1e-6;
  /// Samples used to bracket the compatibility equation in beta.
  int beta_samples = 512;
  int max_iter = 200;
  /// Worker threads for scan(); 0 picks the hardware concurrency.
  unsigned threads = 0;
};

enum class SolveStatus {
  ok,
  no_root,              ///< compatibility equation has no sign change in the bracket
  partition_violation,  ///< every root gives nu_minus >= nu_plus
  nonpositive_bound,    ///< C <= c^2 for tangential speed c
};

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::no_root;
  /// All admissible-partition roots, ordered by beta.
  std::vector<FanSubsolution> candidates;
};

/// Fix (rho1, C) and solve the six interface identities for the remaining
/// unknowns. nu_minus and nu_plus come from the continuity equations, gamma1 from
/// the normal momentum equations, whose compatibility is a scalar equation in
/// beta. Tangential data v-1 = v+1 = c are handled in the frame moving with c.
///
/// Throws SingularEliminationError when rho1 equals rho_minus or rho_plus and
/// RegimeError when the tangential components differ.
SolveResult solve_for(double rho1, double C, const RiemannData& data, const GasLaw& law,
                      const SolverOptions& options = {});

/// Scale used for relative residual tolerances: the largest momentum-flux term.
double residual_scale(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law);

/// Unknown ordering for the Jacobian: nu_minus, nu_plus, rho1, alpha, beta, gamma1, gamma2, C.
using Unknowns = std::array<double, 8>;
using Jacobian = std::array<std::array<double, 8>, 6>;

Unknowns to_unknowns(const FanSubsolution& sub);
FanSubsolution from_unknowns(const Unknowns& x);

/// Analytic derivative of rh_residuals with respect to the eight unknowns.
Jacobian rh_jacobian(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law);

/// Max over entries of |analytic - central difference| / max(1, |analytic|),
/// with step h * max(1, |x_j|).
double jacobian_check(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law,
                      double h = 1e-6);

/// Uniform axis "lo:hi:n" (n points, endpoints included).
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  std::vector<double> values() const;
  /// Throws std::invalid_argument on malformed text.
  static GridAxis parse(std::string_view text);
  std::string to_string() const;
};

struct ScanPoint {
  double rho1 = 0.0;
  double C = 0.0;
  SolveStatus status = SolveStatus::no_root;
  std::optional<FanSubsolution> sub;
  FeasibilityMargins margins;
  double residual = 0.0;
  double D_sub = 0.0;
  bool feasible = false;
};

struct SearchReport {
  SelfSimilarTwoShock self_sim;
  double L = 1.0;
  double D_self = 0.0;
  double margin_floor = 0.0;
  /// Row-major over (rho1, C): index = i_rho1 * n_C + i_C.
  std::vector<ScanPoint> points;
  /// Feasible point with the smallest D_sub; ties go to smaller rho1, then smaller C.
  std::optional<std::size_t> best;

  std::size_t feasible_count() const;
};

/// Run solve_for on every grid point, keep points whose residuals are within
/// tolerance and whose margins clear the floor, and rank them by D_sub. Grid
/// points are evaluated concurrently; the report is independent of thread count.
/// Throws std::invalid_argument on an empty grid and RegimeError outside the
/// two-shock regime.
SearchReport scan(const RiemannData& data, const GasLaw& law, const GridAxis& rho1_axis,
                  const GridAxis& C_axis, double L, const SolverOptions& options = {});

}  // namespace disslab
