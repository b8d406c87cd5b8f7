// Projected gradient descent on the configuration torus: exact, limit-energy,
// and mollified modes, plus the equispaced verdict.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/errors.hpp"
#include "gagliardo/optimizer.hpp"
#include "gagliardo/variations.hpp"

using namespace gagliardo;

namespace {
Configuration from_trace(const DescentTrace& tr, int T) {
  Configuration c;
  c.T = T;
  c.points = tr.iterates.back();
  return c;
}
}  // namespace

TEST_CASE("verify_equispaced") {
  CHECK(verify_equispaced(equispaced(7), 0.0));
  CHECK(verify_equispaced(translate(equispaced(4), 0.31), 1e-9));
  const auto c = make_configuration(std::vector<double>{0.0, 0.9, 2.0}, 3);
  std::string report;
  CHECK_FALSE(verify_equispaced(c, 1e-3, &report));
  CHECK(report.find("not equispaced") != std::string::npos);
}

TEST_CASE("exact descent converges to the equispaced configuration") {
  const auto start = random_configuration(5, 0.05, 3);
  const FractionalParams prm{0.3, 2.0, 5, 1};
  DescentOptions opts;
  opts.grad_tol = 1e-8;
  opts.grad_quad_tol = 1e-11;
  const auto tr = gradient_descent(start, prm, opts);
  CHECK(tr.termination == "converged");
  CHECK(tr.grad_norms.back() < 1e-8);
  CHECK(verify_equispaced(from_trace(tr, 5), 1e-6));

  // the Armijo path never increases the energy
  for (size_t i = 0; i + 1 < tr.energies.size(); ++i)
    CHECK(tr.energies[i + 1] <= tr.energies[i] + 1e-12);
}

TEST_CASE("exact descent from the minimiser terminates immediately") {
  DescentOptions opts;
  opts.grad_tol = 1e-7;
  const auto tr =
      gradient_descent(equispaced(3), FractionalParams{0.3, 2.0, 3, 1}, opts);
  CHECK(tr.termination == "converged");
  CHECK(tr.iterates.size() == 1);
}

TEST_CASE("exact descent rejects regimes where the energy diverges") {
  DescentOptions opts;
  CHECK_THROWS_AS(
      gradient_descent(equispaced(3), FractionalParams{0.5, 2.0, 3, 1}, opts),
      WrongRegime);
}

TEST_CASE("limit-energy descent reaches the closed-form minimum") {
  DescentOptions opts;
  opts.grad_tol = 1e-7;
  for (double p : {1.0, 2.0}) {
    const auto tr = minimize_zero(random_configuration(4, 0.05, 9), p, opts);
    const double bound = 16.0 * 2.0 / ((p + 1.0) * (p + 2.0));
    CHECK(tr.termination == "converged");
    CHECK(tr.energies.back() == doctest::Approx(bound).epsilon(1e-6));
    CHECK(tr.jensen_ok);  // Jensen lower bound held at every iterate
    CHECK(verify_equispaced(from_trace(tr, 4), 1e-5));
  }
}

TEST_CASE("mollified descent: option validation and two-phase convergence") {
  DescentOptions bad;
  bad.mode = DescentMode::Mollified;
  bad.eps = 0.05;
  bad.min_gap_floor = 0.1;  // < 4*eps
  CHECK_THROWS_AS(
      gradient_descent(equispaced(3), FractionalParams{0.5, 2.0, 3, 1}, bad),
      InvalidConfiguration);
  DescentOptions p1bad;
  p1bad.mode = DescentMode::Mollified;
  p1bad.eps = 0.05;
  p1bad.min_gap_floor = 0.2;
  CHECK_THROWS_AS(
      gradient_descent(equispaced(3), FractionalParams{0.5, 1.0, 3, 1}, p1bad),
      WrongRegime);

  // critical regime sp = 1 on T = 3: phase 1 runs the Armijo search down to
  // a loose gradient level, phase 2 polishes with the gradient-norm
  // safeguard (no energy evaluations)
  const FractionalParams prm{0.5, 2.0, 3, 1};
  DescentOptions o1;
  o1.mode = DescentMode::Mollified;
  o1.eps = 0.05;
  o1.min_gap_floor = 0.2;
  o1.grad_tol = 3e-3;
  o1.grad_quad_tol = 1e-6;
  o1.energy_tol = 1e-6;
  o1.max_iters = 150;
  const auto start = make_configuration(std::vector<double>{0.2, 0.9, 2.3}, 3);
  const auto tr1 = gradient_descent(start, prm, o1);
  CHECK(tr1.termination == "converged");

  DescentOptions o2 = o1;
  o2.grad_tol = 1e-8;
  o2.grad_quad_tol = 1e-9;
  o2.line_search = false;
  o2.max_iters = 60;
  const auto tr2 = gradient_descent(from_trace(tr1, 3), prm, o2);
  CHECK(tr2.termination == "converged");
  CHECK(tr2.grad_norms.back() < 1e-8);
  CHECK(verify_equispaced(from_trace(tr2, 3), 1e-6));
  // phase-2 energies are NaN by design
  CHECK(std::isnan(tr2.energies.back()));
}
