#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "disslab/dissipation.hpp"
#include "disslab/solver.hpp"
#include "support.hpp"

using namespace disslab;
using testing::kSqrt15;

namespace {

// Box energy from wedge areas: the strip |x1| < L times the clipped x2-lengths.
double box_energy_oracle(double e_minus, double e_mid, double e_plus, double nu_minus, double nu_plus,
                         double L, double t) {
  auto clip = [L](double x) { return std::clamp(x, -L, L); };
  const double a = clip(nu_minus * t), b = clip(nu_plus * t);
  return 2 * L * (e_minus * (a + L) + e_mid * (b - a) + e_plus * (L - b));
}

double difference_quotient(double e_minus, double e_mid, double e_plus, double nu_minus,
                           double nu_plus, double L) {
  const double t = 1e-6 * L / std::max(std::abs(nu_minus), std::abs(nu_plus));
  return (box_energy_oracle(e_minus, e_mid, e_plus, nu_minus, nu_plus, L, t) -
          box_energy_oracle(e_minus, e_mid, e_plus, nu_minus, nu_plus, L, 0.0)) /
         t;
}

}  // namespace

TEST_CASE("energy levels") {
  const GasLaw law(2);
  const auto d = testing::symmetric_data();
  const auto ss = solve_middle_state(d, law);
  const auto e = energy_levels(d, law, ss);
  CHECK(e.minus == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(e.middle == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(e.plus == doctest::Approx(1.75).epsilon(1e-14));

  const auto rest = testing::symmetric_data(0.0);
  SelfSimilarTwoShock flat;
  flat.rho_m = 1.0;
  const auto f = energy_levels(rest, law, flat);
  CHECK(f.minus == f.middle);
  CHECK(f.middle == f.plus);

  const auto iso = energy_levels(testing::symmetric_data(1.0), GasLaw(1), flat);
  CHECK(iso.middle == 0.0);
  CHECK(iso.minus == 0.5);
}

TEST_CASE("self-similar rate of the symmetric gamma = 2 instance") {
  const GasLaw law(2);
  const auto d = testing::symmetric_data();
  const auto ss = solve_middle_state(d, law);
  const auto e = energy_levels(d, law, ss);
  const double rate = rate_self_similar(e, ss.nu1, ss.nu2, 1.0);
  CHECK(rate == doctest::Approx(-9 * kSqrt15).epsilon(1e-12));
  CHECK(std::abs(rate - (-11.022704)) <= 1e-6);
  const double dq = difference_quotient(e.minus, e.middle, e.plus, ss.nu1, ss.nu2, 1.0);
  CHECK(std::abs(rate + dq) <= 1e-4 * std::abs(rate));
  CHECK(rate_self_similar({2.0, 2.0, 2.0}, ss.nu1, ss.nu2, 1.0) == 0.0);
}

TEST_CASE("rates are linear in L") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const GasLaw law(testing::gamma_at(i));
    const auto d = testing::random_two_shock(rng, law);
    const auto ss = solve_middle_state(d, law);
    const auto e = energy_levels(d, law, ss);
    const double r1 = rate_self_similar(e, ss.nu1, ss.nu2, 1.0);
    CHECK(rate_self_similar(e, ss.nu1, ss.nu2, 2.0) == 2 * r1);
    CHECK(rate_self_similar(e, ss.nu1, ss.nu2, 0.25) == 0.25 * r1);
    const double L = testing::uniform(rng, 0.1, 10);
    CHECK(rate_self_similar(e, ss.nu1, ss.nu2, L) == doctest::Approx(L * r1).epsilon(1e-15));
    const auto sub = embed_self_similar(ss);
    CHECK(rate_subsolution(d, law, sub, 2.0) == 2 * rate_subsolution(d, law, sub, 1.0));
  }
}

TEST_CASE("embedded subsolution has the self-similar rate") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const GasLaw law(testing::gamma_at(i));
    const auto d = testing::random_two_shock(rng, law);
    const auto ss = solve_middle_state(d, law);
    const double a = rate_self_similar(energy_levels(d, law, ss), ss.nu1, ss.nu2, 1.0);
    const double b = rate_subsolution(d, law, embed_self_similar(ss), 1.0);
    CHECK(std::abs(a - b) <= 1e-10 * (1 + std::abs(a)));
    const auto report = compare(d, law, ss, embed_self_similar(ss), 1.0);
    CHECK(std::abs(report.gap) <= 1e-10 * (1 + std::abs(a)));
    CHECK_FALSE(report.verdict);
  }
}

TEST_CASE("raising E1 lowers the subsolution rate") {
  const GasLaw law(2);
  const auto d = testing::symmetric_data();
  const auto ss = solve_middle_state(d, law);
  auto sub = embed_self_similar(ss);
  double prev = rate_subsolution(d, law, sub, 1.0);
  const double width = ss.nu2 - ss.nu1;
  for (int i = 1; i <= 20; ++i) {
    const double e1 = subsolution_energy(sub, law);
    sub.C += 0.05;
    const double rate = rate_subsolution(d, law, sub, 1.0);
    CHECK(rate < prev);
    const double de1 = subsolution_energy(sub, law) - e1;
    CHECK((rate - prev) / de1 == doctest::Approx(-2 * width).epsilon(1e-9));
    prev = rate;
  }
  const auto report = compare(d, law, ss, sub, 1.0);
  CHECK(report.verdict);
  CHECK(report.gap < 0);
}

TEST_CASE("verdict does not depend on L") {
  const GasLaw law(2);
  const auto d = testing::symmetric_data();
  const auto ss = solve_middle_state(d, law);
  const auto sub = solve_for(1.81, 0.775, d, law).candidates.front();
  const auto one = compare(d, law, ss, sub, 1.0);
  const auto seven = compare(d, law, ss, sub, 7.0);
  CHECK(one.verdict);
  CHECK(seven.verdict == one.verdict);
  CHECK(seven.gap == doctest::Approx(7 * one.gap).epsilon(1e-14));
  CHECK(seven.relative_gap() == doctest::Approx(one.relative_gap()).epsilon(1e-14));
  CHECK(one.D_sub == doctest::Approx(-13.472042382236936).epsilon(1e-12));
}

TEST_CASE("analytic rates equal minus the box-energy difference quotient") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const GasLaw law(testing::gamma_at(i));
    const auto d = testing::random_two_shock(rng, law);
    const auto ss = solve_middle_state(d, law);
    const double L = testing::uniform(rng, 0.5, 5);
    const auto e = energy_levels(d, law, ss);
    const double rate = rate_self_similar(e, ss.nu1, ss.nu2, L);
    const double dq = difference_quotient(e.minus, e.middle, e.plus, ss.nu1, ss.nu2, L);
    CHECK(std::abs(rate + dq) <= 1e-4 * std::abs(rate) + 1e-8);

    const auto prof = energy_profile(d, law, ss);
    const double t = 1e-6 * L / std::max(std::abs(ss.nu1), std::abs(ss.nu2));
    const double lib = (box_energy(prof, L, t).value - box_energy(prof, L, 0).value) / t;
    CHECK(std::abs(rate + lib) <= 1e-4 * std::abs(rate) + 1e-8);

    FanSubsolution sub = embed_self_similar(ss);
    sub.rho1 *= testing::uniform(rng, 0.9, 1.1);
    sub.C += testing::uniform(rng, 0.0, 1.0);
    sub.partition.nu_minus -= testing::uniform(rng, 0.0, 0.3);
    const double rs = rate_subsolution(d, law, sub, L);
    const double e1 = subsolution_energy(sub, law);
    const double dqs = difference_quotient(e.minus, e1, e.plus, sub.partition.nu_minus,
                                           sub.partition.nu_plus, L);
    CHECK(std::abs(rs + dqs) <= 1e-4 * std::abs(rs) + 1e-8);
    const auto sp = energy_profile(d, law, sub);
    CHECK(sp.e_mid == e1);
  }
}

TEST_CASE("box energy clips the wedges to the box") {
  FanEnergyProfile p{-1.0, 2.0, 1.0, 3.0, 5.0};
  CHECK(box_energy(p, 1.0, 0.0).value == doctest::Approx(2 * (1.0 + 5.0)));
  CHECK(box_energy(p, 1.0, 0.25).value == doctest::Approx(box_energy_oracle(1, 3, 5, -1, 2, 1, 0.25)));
  // Middle wedge fills the box once both fronts have left it.
  CHECK(box_energy(p, 1.0, 10.0).value == doctest::Approx(4 * 3.0));
}

TEST_CASE("self-similar rate is nonpositive in the rest frame of the middle state") {
  // The rate omits fluxes through x2 = +-L, so it is not Galilean invariant and
  // can be positive in a frame where the whole fan drifts.
  std::mt19937_64 rng(34);
  for (int i = 0; i < 1000; ++i) {
    const GasLaw law(testing::gamma_at(i));
    const auto lab = testing::random_two_shock(rng, law);
    const auto d = lab.shifted_normal(-solve_middle_state(lab, law).v_bar);
    const auto ss = solve_middle_state(d, law);
    CHECK(std::abs(ss.v_bar) <= 1e-10);
    CHECK(rate_self_similar(energy_levels(d, law, ss), ss.nu1, ss.nu2, 1.0) <= 1e-12);
  }
}
