#include "disslab/weakform.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "disslab/error.hpp"

namespace disslab {

SectorState solution_sector(double rho, Velocity v, const GasLaw& law) {
  const double p = law.pressure(rho);
  const Vec2 vel{v.tangential, v.normal};
  SectorState s;
  s.density = rho;
  s.energy = law.energy_density(rho, v.norm_sq());
  for (int k = 0; k < 2; ++k) {
    s.mass_flux[k] = rho * vel[k];
    s.energy_flux[k] = (s.energy + p) * vel[k];
    for (int j = 0; j < 2; ++j) s.momentum_flux[k][j] = rho * vel[k] * vel[j] + (k == j ? p : 0.0);
  }
  return s;
}

FanFields fan_fields(const RiemannData& data, const GasLaw& law, const SelfSimilarTwoShock& ss) {
  FanFields f;
  f.nu_minus = ss.nu1;
  f.nu_plus = ss.nu2;
  f.minus = solution_sector(data.rho_minus, data.v_minus, law);
  f.middle = solution_sector(ss.rho_m, {ss.tangential, ss.v_bar}, law);
  f.plus = solution_sector(data.rho_plus, data.v_plus, law);
  return f;
}

FanFields fan_fields(const FanSubsolution& sub, const RiemannData& data, const GasLaw& law) {
  FanFields f;
  f.nu_minus = sub.partition.nu_minus;
  f.nu_plus = sub.partition.nu_plus;
  f.minus = solution_sector(data.rho_minus, data.v_minus, law);
  f.plus = solution_sector(data.rho_plus, data.v_plus, law);

  const double r1 = sub.rho1;
  const double p1 = law.pressure(r1);
  const Vec2 v1{sub.alpha, sub.beta};
  const double u1[2][2] = {{sub.gamma1, sub.gamma2}, {sub.gamma2, -sub.gamma1}};
  SectorState& m = f.middle;
  m.density = r1;
  m.energy = r1 * law.internal_energy(r1) + r1 * sub.C / 2.0;
  for (int k = 0; k < 2; ++k) {
    m.mass_flux[k] = r1 * v1[k];
    m.energy_flux[k] = (m.energy + p1) * v1[k];
    for (int j = 0; j < 2; ++j) {
      m.momentum_flux[k][j] = r1 * u1[k][j] + (k == j ? p1 + r1 * sub.C / 2.0 : 0.0);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------

namespace {

double bump(double s) { return std::exp(1.0 / (s * s - 1.0)); }

}  // namespace

double BumpAxis::value(double y) const noexcept {
  const double s = (y - center) / radius;
  if (!(std::abs(s) < 1.0)) return 0.0;
  return bump(s) * (1.0 + a * s + b * s * s);
}

double BumpAxis::derivative(double y) const noexcept {
  const double s = (y - center) / radius;
  if (!(std::abs(s) < 1.0)) return 0.0;
  const double d = s * s - 1.0;
  const double g = bump(s);
  const double dg = g * (-2.0 * s / (d * d));
  const double q = 1.0 + a * s + b * s * s;
  const double dq = a + 2.0 * b * s;
  return (dg * q + g * dq) / radius;
}

bool BumpAxis::nonnegative() const noexcept {
  auto q = [this](double s) { return 1.0 + a * s + b * s * s; };
  if (q(-1.0) < 0.0 || q(1.0) < 0.0) return false;
  if (b != 0.0) {
    const double vertex = -a / (2.0 * b);
    if (std::abs(vertex) < 1.0 && q(vertex) < 0.0) return false;
  }
  return true;
}

TestFunction::TestFunction(BumpAxis x1, BumpAxis x2, BumpAxis t) : axes_{x1, x2, t} {
  for (const auto& ax : axes_) {
    if (!(ax.radius > 0.0) || !std::isfinite(ax.center)) {
      throw std::invalid_argument("test function radii must be positive");
    }
  }
}

double TestFunction::value(double x1, double x2, double t) const noexcept {
  return axes_[0].value(x1) * axes_[1].value(x2) * axes_[2].value(t);
}

bool TestFunction::nonnegative() const noexcept {
  return std::all_of(axes_.begin(), axes_.end(), [](const BumpAxis& a) { return a.nonnegative(); });
}

double TestFunction::support_volume() const noexcept {
  const double t_len = std::max(0.0, t().hi() - std::max(0.0, t().lo()));
  return 2.0 * x1().radius * 2.0 * x2().radius * t_len;
}

double TestFunction::derivative_sup() const {
  constexpr int kSamples = 4001;
  std::array<double, 3> sup_value{};
  std::array<double, 3> sup_deriv{};
  for (int k = 0; k < 3; ++k) {
    const auto& ax = axes_[static_cast<std::size_t>(k)];
    const double lo = k == 2 ? std::max(0.0, ax.lo()) : ax.lo();
    for (int i = 0; i < kSamples; ++i) {
      const double y = lo + (ax.hi() - lo) * i / (kSamples - 1);
      sup_value[k] = std::max(sup_value[k], std::abs(ax.value(y)));
      sup_deriv[k] = std::max(sup_deriv[k], std::abs(ax.derivative(y)));
    }
  }
  const double v = sup_value[0] * sup_value[1] * sup_value[2];
  const double d1 = sup_deriv[0] * sup_value[1] * sup_value[2];
  const double d2 = sup_value[0] * sup_deriv[1] * sup_value[2];
  const double dt = sup_value[0] * sup_value[1] * sup_deriv[2];
  return std::max({v, d1, d2, dt});
}

namespace {

// Uniform double in [lo, hi) from the 53 high bits; independent of the
// standard library's distribution implementations.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

BumpAxis sample_axis(std::mt19937_64& rng, double c_lo, double c_hi, double r_lo, double r_hi,
                     bool nonnegative) {
  BumpAxis ax;
  ax.center = uniform(rng, c_lo, c_hi);
  ax.radius = uniform(rng, r_lo, r_hi);
  if (nonnegative) {
    ax.a = uniform(rng, -0.9, 0.9);
    ax.b = uniform(rng, 0.0, 1.0);
  } else {
    ax.a = uniform(rng, -1.5, 1.5);
    ax.b = uniform(rng, -1.5, 1.5);
  }
  return ax;
}

}  // namespace

TestFunction TestFunction::sample(std::mt19937_64& rng, const FanFields& fan, bool nonnegative) {
  const BumpAxis t = sample_axis(rng, 0.05, 0.8, 0.3, 1.0, nonnegative);
  const double reach = t.center;
  const double x2_lo = std::min(fan.nu_minus, 0.0) * reach - 0.3;
  const double x2_hi = std::max(fan.nu_plus, 0.0) * reach + 0.3;
  const BumpAxis x2 = sample_axis(rng, x2_lo, x2_hi, 0.3, 1.2, nonnegative);
  const BumpAxis x1 = sample_axis(rng, -1.0, 1.0, 0.4, 1.2, nonnegative);
  return TestFunction(x1, x2, t);
}

// ---------------------------------------------------------------------------

CompositeGauss::CompositeGauss(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be positive");
  nodes_.resize(static_cast<std::size_t>(order));
  weights_.resize(static_cast<std::size_t>(order));
  // Newton iteration on the Legendre polynomial from the Chebyshev guess.
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes_[static_cast<std::size_t>(i)] = x;
    weights_[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

using Functionals = std::array<double, 4>;  // mass, momentum1, momentum2, energy

// Contribution of a constant sector given the integrals of the partial
// derivatives of psi over the sector slice.
void accumulate(Functionals& out, const SectorState& s, double psi_x1, double psi_x2, double psi_t) {
  out[0] += s.density * psi_t + s.mass_flux[0] * psi_x1 + s.mass_flux[1] * psi_x2;
  for (int k = 0; k < 2; ++k) {
    out[1 + k] += s.mass_flux[k] * psi_t + s.momentum_flux[k][0] * psi_x1 +
                  s.momentum_flux[k][1] * psi_x2;
  }
  out[3] += s.energy * psi_t + s.energy_flux[0] * psi_x1 + s.energy_flux[1] * psi_x2;
}

void accumulate_initial(Functionals& out, const SectorState& s, double psi) {
  out[0] += s.density * psi;
  out[1] += s.mass_flux[0] * psi;
  out[2] += s.mass_flux[1] * psi;
  out[3] += s.energy * psi;
}

Functionals integrate_level(const FanFields& fan, const TestFunction& tf, const CompositeGauss& rule,
                            int cells) {
  const BumpAxis& ax1 = tf.x1();
  const BumpAxis& ax2 = tf.x2();
  const BumpAxis& axt = tf.t();

  // Fields do not depend on x1: integrate the x1 factor once. Its derivative
  // integrates to zero over the support.
  const double a0 = rule.integrate([&](double y) { return ax1.value(y); }, ax1.lo(), ax1.hi(), cells);
  const double a1 = 0.0;

  Functionals out{};
  const double t_lo = std::max(0.0, axt.lo());
  const double t_hi = axt.hi();
  if (!(t_hi > 0.0)) return out;

  const double y_lo = ax2.lo();
  const double y_hi = ax2.hi();
  // Pieces of the x2 support get cells in proportion to their length.
  auto piece_cells = [&](double lo, double hi) {
    return std::max(1, static_cast<int>(std::ceil(cells * (hi - lo) / (y_hi - y_lo))));
  };
  auto b0 = [&](double lo, double hi) {
    return rule.integrate([&](double y) { return ax2.value(y); }, lo, hi, piece_cells(lo, hi));
  };
  auto b1 = [&](double lo, double hi) { return ax2.value(hi) - ax2.value(lo); };

  const double h = (t_hi - t_lo) / cells;
  const auto& nodes = rule.nodes();
  const auto& weights = rule.weights();
  for (int c = 0; c < cells; ++c) {
    const double mid = t_lo + (c + 0.5) * h;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double t = mid + 0.5 * h * nodes[q];
      const double w = 0.5 * h * weights[q];
      const double ct = axt.value(t);
      const double dct = axt.derivative(t);
      if (ct == 0.0 && dct == 0.0) continue;
      const double left = fan.nu_minus * t;
      const double right = fan.nu_plus * t;
      struct Piece {
        double lo, hi;
        const SectorState* state;
      };
      const Piece pieces[3] = {
          {y_lo, std::min(left, y_hi), &fan.minus},
          {std::max(left, y_lo), std::min(right, y_hi), &fan.middle},
          {std::max(right, y_lo), y_hi, &fan.plus},
      };
      for (const auto& p : pieces) {
        if (!(p.hi > p.lo)) continue;
        const double B0 = b0(p.lo, p.hi);
        const double B1 = b1(p.lo, p.hi);
        accumulate(out, *p.state, w * ct * B0 * a1, w * ct * B1 * a0, w * dct * B0 * a0);
      }
    }
  }

  // Initial data term: integral of (state at t = 0) psi(x, 0).
  const double c0 = axt.value(0.0);
  if (c0 != 0.0) {
    if (y_lo < 0.0) accumulate_initial(out, fan.minus, c0 * a0 * b0(y_lo, std::min(0.0, y_hi)));
    if (y_hi > 0.0) accumulate_initial(out, fan.plus, c0 * a0 * b0(std::max(0.0, y_lo), y_hi));
  }
  return out;
}

}  // namespace

WeakResidualReport weak_functionals(const FanFields& fan, const TestFunction& tf,
                                    const QuadratureOptions& options) {
  if (options.levels < 1 || options.base_cells < 1) {
    throw std::invalid_argument("quadrature needs at least one level and one cell");
  }
  const CompositeGauss rule(options.order);
  WeakResidualReport report;
  const double volume = tf.support_volume();
  report.scale = tf.derivative_sup() * volume;
  if (!(report.scale > 0.0)) return report;  // support entirely in t < 0

  int cells = options.base_cells;
  for (int level = 0; level < options.levels; ++level, cells *= 2) {
    auto raw = integrate_level(fan, tf, rule, cells);
    for (double& x : raw) x /= report.scale;
    report.trace.push_back(raw);
  }
  const auto& fine = report.trace.back();
  if (report.trace.size() >= 2) {
    const auto& coarse = report.trace[report.trace.size() - 2];
    for (std::size_t i = 0; i < fine.size(); ++i) {
      if (std::abs(fine[i] - coarse[i]) > options.resolve_tol) {
        std::ostringstream msg;
        msg << "test function support not resolved: functional " << i << " changed by "
            << std::abs(fine[i] - coarse[i]) << " between the two finest levels";
        throw RefinementError(msg.str());
      }
    }
  }
  report.mass = fine[0];
  report.momentum1 = fine[1];
  report.momentum2 = fine[2];
  report.energy = fine[3];
  return report;
}

std::array<double, 3> weak_residual_solution(const RiemannData& data, const GasLaw& law,
                                             const SelfSimilarTwoShock& ss, const TestFunction& tf,
                                             const QuadratureOptions& options) {
  const auto r = weak_functionals(fan_fields(data, law, ss), tf, options);
  return {r.mass, r.momentum1, r.momentum2};
}

std::array<double, 3> weak_residual_subsolution(const FanSubsolution& sub, const RiemannData& data,
                                                const GasLaw& law, const TestFunction& tf,
                                                const QuadratureOptions& options) {
  const auto r = weak_functionals(fan_fields(sub, data, law), tf, options);
  return {r.mass, r.momentum1, r.momentum2};
}

double weak_admissibility(const FanFields& fan, const TestFunction& tf,
                          const QuadratureOptions& options) {
  if (!tf.nonnegative()) {
    throw std::invalid_argument("admissibility needs a nonnegative test function");
  }
  return weak_functionals(fan, tf, options).energy;
}

WeakSummary weak_summary(const FanFields& fan, std::uint64_t seed, int count,
                         const QuadratureOptions& options) {
  WeakSummary s;
  s.seed = seed;
  s.count = count;
  if (count <= 0) return s;

  // Draw every function up front so the sequence depends on the seed only.
  std::mt19937_64 rng(seed);
  std::vector<TestFunction> signed_tfs, positive_tfs;
  for (int i = 0; i < count; ++i) {
    signed_tfs.push_back(TestFunction::sample(rng, fan, false));
    positive_tfs.push_back(TestFunction::sample(rng, fan, true));
  }

  const auto n = static_cast<std::size_t>(count);
  std::vector<std::array<double, 3>> residuals(n);
  std::vector<double> admissibility(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const auto r = weak_functionals(fan, signed_tfs[i], options);
        residuals[i] = {r.mass, r.momentum1, r.momentum2};
        admissibility[i] = weak_admissibility(fan, positive_tfs[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(n));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  s.min_admissibility = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    s.max_mass = std::max(s.max_mass, std::abs(residuals[i][0]));
    s.max_momentum = std::max({s.max_momentum, std::abs(residuals[i][1]), std::abs(residuals[i][2])});
    s.min_admissibility = std::min(s.min_admissibility, admissibility[i]);
  }
  return s;
}

}  // namespace disslab
