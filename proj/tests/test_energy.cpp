// Energies: correlation profile, configuration energy, zero-order limit
// energy, mollified energy, and the core+tail sandwich.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/errors.hpp"
#include "gagliardo/energy.hpp"
#include "gagliardo/mollifier.hpp"
#include "gagliardo/oracle.hpp"
#include "gagliardo/profile.hpp"

using namespace gagliardo;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// brute-force int_0^T |u(x+t)-u(x)|^p dx with panels split at all kinks
double profile_by_quadrature(const Configuration& cfg, double p, double t) {
  const double T = cfg.T;
  std::vector<double> brk;
  for (int i = 0; i < cfg.T; ++i)
    for (int k = -1; k <= 1; ++k) {
      brk.push_back(cfg.points[i] + k * T);
      brk.push_back(cfg.points[i] - t + k * T);
    }
  return integrate_adaptive(
      [&](double x) {
        return std::pow(std::fabs(evaluate_u(cfg, x + t) - evaluate_u(cfg, x)),
                        p);
      },
      0.0, T, 1e-11, brk);
}

// independent Fubini evaluation of F0 = int_0^T int_0^T |u(x)-u(y)|^p:
// the inner x-integral is piecewise constant between the jump breakpoints
// (u(x+t)-u(x) = t - #jumps there), so adaptive quadrature with those cuts
// is exact; the outer t-integral has kinks only at pairwise differences and
// integers, which are passed as breakpoints
double energy_zero_by_quadrature(const Configuration& cfg, double p) {
  const double T = cfg.T;
  std::vector<double> tbrk;
  for (int i = 0; i < cfg.T; ++i)
    for (int j = 0; j < cfg.T; ++j)
      for (int k = -1; k <= 1; ++k) {
        const double d = cfg.points[i] - cfg.points[j] + k * T;
        if (d > 0.0 && d < T) tbrk.push_back(d);
      }
  for (int k = 1; k < cfg.T; ++k) tbrk.push_back(static_cast<double>(k));
  return integrate_adaptive(
      [&](double t) { return profile_by_quadrature(cfg, p, t); }, 0.0, T, 1e-9,
      tbrk);
}
}  // namespace

TEST_CASE("correlation profile: closed form, positivity, quadrature match") {
  const auto prof = correlation_profile(equispaced(1), 2.0);
  // unit sawtooth: g(t) = t(1-t) on [0,1]; g(1/2) = 1/4
  CHECK(prof.eval(0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(prof.eval(0.2) == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(prof.eval(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(prof.has_jump_level_sets());

  const auto cfg = random_configuration(4, 0.0, 3);
  const auto pr = correlation_profile(cfg, 2.0);
  for (double t : {0.37, 0.9, 2.13}) {
    CHECK(pr.eval(t) ==
          doctest::Approx(profile_by_quadrature(cfg, 2.0, t)).epsilon(1e-8));
  }
  // periodicity of the profile
  CHECK(pr.eval(0.37) == doctest::Approx(pr.eval(4.37)).epsilon(1e-12));
}

TEST_CASE("profile integral over one period equals the zero-order energy") {
  for (unsigned seed : {1u, 9u}) {
    const auto cfg = random_configuration(3, 0.05, seed);
    for (double p : {1.0, 1.5, 2.0}) {
      // |t-k|^p is only C^1 at interior t = k for non-integer p, so the
      // fixed-order piecewise Gauss integral is not exact there
      const double tol = (p == 2.0) ? 1e-12 : 1e-6;
      CHECK(correlation_profile(cfg, p).integral_over_period() ==
            doctest::Approx(energy_zero(cfg, p)).epsilon(tol));
    }
  }
}

TEST_CASE("configuration energy: reference value, invariance, divergence") {
  const FractionalParams prm{0.25, 2.0, 1, 1};
  const auto rep = energy_config(equispaced(1), prm);
  // reference computed with an independent high-precision zeta-function
  // evaluation of the same lattice integral
  CHECK(rep.value == doctest::Approx(3.32617959963767).epsilon(1e-9));
  CHECK(rep.tail_lower <= rep.tail_upper);

  // translation invariance
  const auto cfg = random_configuration(3, 0.1, 4);
  const FractionalParams prm3{0.3, 2.0, 3, 1};
  const double e0 = energy_config(cfg, prm3).value;
  const double e1 = energy_config(translate(cfg, 0.37), prm3).value;
  CHECK(e1 == doctest::Approx(e0).epsilon(1e-9));

  // critical and super-critical regimes diverge for configurations
  CHECK_THROWS_AS(energy_config(equispaced(2), FractionalParams{0.5, 2.0, 2, 1}),
                  DivergentEnergy);
  CHECK_THROWS_AS(energy_config(equispaced(2), FractionalParams{0.8, 2.0, 2, 1}),
                  DivergentEnergy);

  // a double jump keeps the energy finite below criticality but not at
  // sp = 1.2
  const auto dj = make_configuration(std::vector<double>{0.0, 0.0, 1.7}, 3);
  CHECK(energy_config(dj, FractionalParams{0.2, 2.0, 3, 1}).value > 0.0);
  CHECK_THROWS_AS(
      singular_integral(correlation_profile(dj, 2.0), 1.2, 1e-8),
      DivergentEnergy);
}

TEST_CASE("configuration energy matches the brute-force cell-pair oracle") {
  const FractionalParams prm{0.25, 2.0, 1, 1};
  const double e = energy_config(equispaced(1), prm).value;
  auto u1 = [](double x) { return evaluate_u(equispaced(1), x); };
  const auto oracle = cell_pair_oracle(u1, 0.25, 2.0, 1, 0, 768, {0.0});
  CHECK(std::fabs(e - oracle.value) / e < 1e-4);

  // constant function: zero energy exactly
  const auto zero = cell_pair_oracle([](double) { return 1.0; }, 0.3, 2.0, 1,
                                     4, 128);
  CHECK(zero.value == 0.0);
}

TEST_CASE("energy_smooth: constant is zero, sine is stable") {
  const FractionalParams prm{0.5, 2.0, 1, 1};
  CHECK(energy_smooth([](double) { return 3.0; }, prm).value ==
        doctest::Approx(0.0).epsilon(1e-12));
  auto s2 = [](double x) { return std::sin(2.0 * kPi * x); };
  const double a = energy_smooth(s2, prm, 1e-6).value;
  const double b = energy_smooth(s2, prm, 1e-9).value;
  CHECK(std::fabs(a - b) / b < 1e-4);
}

TEST_CASE("zero-order energy: closed forms and quadrature oracle") {
  CHECK(energy_zero(equispaced(2), 2.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  for (int T : {2, 5}) {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double expect = T * T * 2.0 / ((p + 1.0) * (p + 2.0));
      CHECK(energy_zero(equispaced(T), p) ==
            doctest::Approx(expect).epsilon(1e-11));
    }
  }
  const auto cfg = random_configuration(3, 0.0, 5);
  for (double p : {1.0, 2.0, 2.7}) {
    CHECK(energy_zero(cfg, p) ==
          doctest::Approx(energy_zero_by_quadrature(cfg, p)).epsilon(1e-6));
  }
}

TEST_CASE("segment pair integral: values, degeneracy, convexity in the shift") {
  CHECK(segment_pair_integral(0.5, 0.5, 0.0, 2.0) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(segment_pair_integral(0.7, 0.0, 0.3, 2.0) == 0.0);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ul(0.05, 0.6), up(1.0, 3.0),
      uc(-0.5, 0.5);
  for (int rep = 0; rep < 10; ++rep) {
    const double l = ul(rng), lp = ul(rng), p = up(rng), c = uc(rng);
    const double h = 1e-4;
    auto f = [&](double cc) { return segment_pair_integral(l, lp, cc, p); };
    // second difference >= 0 (convexity), first difference at c=0 vanishes
    CHECK(f(c + h) - 2.0 * f(c) + f(c - h) >= -1e-10);
    CHECK(std::fabs(f(h) - f(-h)) / (2.0 * h) < 1e-6);
  }
}

TEST_CASE("mollified energy: Jensen bound and convergence in eps") {
  const FractionalParams prm{0.25, 2.0, 1, 1};
  const auto exact = energy_config(equispaced(1), prm);
  const double e1 = mollified_energy(equispaced(1), prm, 0.02, 1e-9).value;
  const double e2 = mollified_energy(equispaced(1), prm, 0.05, 1e-9).value;
  const double e3 = mollified_energy(equispaced(1), prm, 0.1, 1e-9).value;
  // mollification never increases the energy
  CHECK(e1 <= exact.value + 1e-6);
  CHECK(e2 <= exact.value + 1e-6);
  CHECK(e3 <= exact.value + 1e-6);
  // and converges monotonically in the radius toward the exact value
  CHECK(std::fabs(e1 - exact.value) < std::fabs(e2 - exact.value));
  CHECK(std::fabs(e2 - exact.value) < std::fabs(e3 - exact.value));
}

TEST_CASE("critical mollified energy grows at least logarithmically") {
  // sp = 1, p = 2: halving eps raises the energy by ~ 2^{2-p} T ln 2 or more
  const FractionalParams prm{0.5, 2.0, 2, 1};
  const double ea = mollified_energy(equispaced(2), prm, 0.1, 1e-9).value;
  const double eb = mollified_energy(equispaced(2), prm, 0.05, 1e-9).value;
  const double slope = 2.0;  // 2^{2-p} * T
  CHECK(eb - ea >= slope * std::log(2.0) - 0.2);
}

TEST_CASE("tail sandwich: decay, constants, and containment") {
  const FractionalParams prm{0.3, 2.0, 1, 1};
  const double F0 = 1.0;
  const auto far = tail_sandwich(F0, 1e6, prm);
  // R^{-sp} decay law of both tails
  const double sp = prm.sp();
  const double decay = 2.0 * F0 / sp * std::pow(1e6, -sp);
  CHECK(far.lower == doctest::Approx(decay).epsilon(1e-4));
  CHECK(far.upper == doctest::Approx(decay).epsilon(1e-4));
  CHECK(std::fabs(far.c1 - 1.0) < 2.0 * 1.0 / 1e6);
  CHECK(std::fabs(far.c2 - 1.0) < 2.0 * 1.0 / 1e6);
  CHECK_THROWS_AS(tail_sandwich(1.0, 1.5, prm), InvalidRadius);

  // containment for u = sin(2 pi x)
  auto s2 = [](double x) { return std::sin(2.0 * kPi * x); };
  const double full = energy_smooth(s2, prm, 1e-9).value;
  const double F0s = energy_zero_smooth(s2, 2.0, 1);
  double prev_width = 1e300;
  for (double R : {3.0, 5.0, 10.0}) {
    const double core = energy_smooth_core(s2, prm, R, 1e-9);
    const auto tails = tail_sandwich(F0s, R, prm);
    CHECK(core + tails.lower <= full + 1e-6);
    CHECK(full <= core + tails.upper + 1e-6);
    const double width = tails.upper - tails.lower;
    CHECK(width < prev_width);
    prev_width = width;
  }
}
