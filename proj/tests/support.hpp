#pragma once

#include <cmath>
#include <random>
#include <string>

#include "disslab/gas.hpp"
#include "disslab/riemann.hpp"

namespace testing {

inline const double kSqrt15 = std::sqrt(1.5);

/// gamma = 2, rho+- = 1, v-2 = -v+2 = sqrt(1.5), zero tangential velocity.
inline disslab::RiemannData symmetric_data(double w = kSqrt15) {
  disslab::RiemannData d;
  d.rho_minus = 1.0;
  d.rho_plus = 1.0;
  d.v_minus = {0.0, w};
  d.v_plus = {0.0, -w};
  return d;
}

/// Cycles through the exponents covered by the bundled scenarios.
inline double gamma_at(int i) {
  constexpr double gammas[] = {1.0, 1.4, 2.0, 2.5};
  return gammas[i % 4];
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random data strictly inside the two-shock regime, margin in [0.05, 2].
inline disslab::RiemannData random_two_shock(std::mt19937_64& rng, const disslab::GasLaw& law,
                                             double tangential = 0.0) {
  disslab::RiemannData d;
  d.rho_minus = uniform(rng, 0.3, 3.0);
  d.rho_plus = uniform(rng, 0.3, 3.0);
  const double dp = law.pressure(d.rho_minus) - law.pressure(d.rho_plus);
  const double bound = std::sqrt((d.rho_minus - d.rho_plus) * dp / (d.rho_minus * d.rho_plus));
  const double vm = uniform(rng, -2.0, 2.0);
  d.v_minus = {tangential, vm};
  d.v_plus = {tangential, vm - bound - uniform(rng, 0.05, 2.0)};
  return d;
}

inline std::string scenario_path(const std::string& name) {
  return std::string(DISSLAB_SCENARIO_DIR) + "/" + name;
}

}  // namespace testing
