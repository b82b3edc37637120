#pragma once

// Quadrature evaluation of the distributional identities for piecewise-constant
// fan objects: mass and momentum (weak solution / subsolution system) and the
// energy admissibility functional, each tested against a smooth compactly
// supported function psi(x1, x2, t) on R^2 x [0, inf), including the initial
// data term at t = 0.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "disslab/gas.hpp"
#include "disslab/riemann.hpp"
#include "disslab/subsolution.hpp"

namespace disslab {

using Vec2 = std::array<double, 2>;  // components along x1, x2

/// Constant state in one wedge, in conservation form.
struct SectorState {
  double density = 0.0;
  Vec2 mass_flux{};
  /// momentum_flux[k][j]: flux of momentum component k in direction j.
  std::array<Vec2, 2> momentum_flux{};
  double energy = 0.0;
  Vec2 energy_flux{};
};

/// Three wedges separated by x2 = nu_minus t and x2 = nu_plus t. The outer wedges
/// also hold the initial data for x2 < 0 and x2 > 0.
struct FanFields {
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  SectorState minus;
  SectorState middle;
  SectorState plus;
};

/// State of an exact solution: momentum flux rho v (x) v + p Id, energy flux (e + p) v.
SectorState solution_sector(double rho, Velocity v, const GasLaw& law);

FanFields fan_fields(const RiemannData& data, const GasLaw& law, const SelfSimilarTwoShock& self_sim);

/// Middle wedge uses momentum flux rho1 u1 + (p(rho1) + rho1 C / 2) Id and
/// energy rho1 eps(rho1) + rho1 C / 2.
FanFields fan_fields(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law);

/// One factor of a tensor-product test function:
/// f(y) = exp(1 / (s^2 - 1)) (1 + a s + b s^2), s = (y - center) / radius, |s| < 1.
struct BumpAxis {
  double center = 0.0;
  double radius = 1.0;
  double a = 0.0;
  double b = 0.0;

  double lo() const noexcept { return center - radius; }
  double hi() const noexcept { return center + radius; }
  double value(double y) const noexcept;
  double derivative(double y) const noexcept;
  bool nonnegative() const noexcept;
};

/// psi(x1, x2, t) = f1(x1) f2(x2) f3(t).
class TestFunction {
 public:
  TestFunction() = default;
  TestFunction(BumpAxis x1, BumpAxis x2, BumpAxis t);

  const BumpAxis& x1() const noexcept { return axes_[0]; }
  const BumpAxis& x2() const noexcept { return axes_[1]; }
  const BumpAxis& t() const noexcept { return axes_[2]; }

  double value(double x1, double x2, double t) const noexcept;
  bool nonnegative() const noexcept;
  /// Volume of the support intersected with t >= 0 (0 if the support lies in t < 0).
  double support_volume() const noexcept;
  /// max(sup |psi|, sup |d psi / d x1|, sup |d psi / d x2|, sup |d psi / dt|), sampled per axis.
  double derivative_sup() const;

  /// Random function whose support meets the fan near the origin.
  static TestFunction sample(std::mt19937_64& rng, const FanFields& fan, bool nonnegative);

 private:
  std::array<BumpAxis, 3> axes_{};
};

struct QuadratureOptions {
  int order = 16;      ///< Gauss-Legendre points per cell
  int base_cells = 8;  ///< cells per axis at level 0
  int levels = 4;      ///< level k uses base_cells * 2^k cells
  /// Largest allowed change of a normalized functional between the two finest levels.
  double resolve_tol = 1e-9;
  /// Workers for weak_summary(); 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct WeakResidualReport {
  /// Normalized by TestFunction::derivative_sup() * support_volume().
  double mass = 0.0;
  double momentum1 = 0.0;
  double momentum2 = 0.0;
  /// Admissibility functional; nonnegative for admissible objects when psi >= 0.
  double energy = 0.0;
  double scale = 1.0;
  /// Normalized (mass, momentum1, momentum2, energy) per refinement level.
  std::vector<std::array<double, 4>> trace;
};

/// Throws RefinementError when the two finest levels disagree by more than resolve_tol.
WeakResidualReport weak_functionals(const FanFields& fan, const TestFunction& tf,
                                    const QuadratureOptions& options = {});

std::array<double, 3> weak_residual_solution(const RiemannData& data, const GasLaw& law,
                                             const SelfSimilarTwoShock& self_sim,
                                             const TestFunction& tf,
                                             const QuadratureOptions& options = {});

std::array<double, 3> weak_residual_subsolution(const FanSubsolution& sub, const RiemannData& data,
                                                const GasLaw& law, const TestFunction& tf,
                                                const QuadratureOptions& options = {});

/// Throws std::invalid_argument if tf takes negative values.
double weak_admissibility(const FanFields& fan, const TestFunction& tf,
                          const QuadratureOptions& options = {});

struct WeakSummary {
  std::uint64_t seed = 0;
  int count = 0;
  double max_mass = 0.0;
  double max_momentum = 0.0;
  double min_admissibility = 0.0;
};

/// `count` signed test functions for the residuals and `count` nonnegative ones
/// for admissibility, all drawn from one generator seeded with `seed`.
WeakSummary weak_summary(const FanFields& fan, std::uint64_t seed, int count,
                         const QuadratureOptions& options = {});

/// Composite Gauss-Legendre rule on [lo, hi].
class CompositeGauss {
 public:
  explicit CompositeGauss(int order);

  template <class F>
  double integrate(F&& f, double lo, double hi, int cells) const {
    if (!(hi > lo)) return 0.0;
    const double h = (hi - lo) / cells;
    double sum = 0.0;
    for (int c = 0; c < cells; ++c) {
      const double mid = lo + (c + 0.5) * h;
      for (std::size_t q = 0; q < nodes_.size(); ++q) sum += weights_[q] * f(mid + 0.5 * h * nodes_[q]);
    }
    return 0.5 * h * sum;
  }

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace disslab
