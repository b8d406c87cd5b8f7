#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/params.hpp"

namespace gagliardo {

enum class DescentMode { Exact, Mollified };

struct DescentOptions {
  int max_iters = 500;
  double grad_tol = 1e-8;
  double step0 = 0.25;       // initial step of the line search
  double shrink = 0.5;       // backtracking factor
  double armijo_c = 1e-4;    // sufficient-decrease constant
  double min_gap_floor = 0;  // projection barrier (use 4*eps when mollified)
  DescentMode mode = DescentMode::Exact;
  double eps = 0.0;  // mollification radius (mollified mode)
  double grad_quad_tol = 1e-10;
  double energy_tol = 1e-9;  // quadrature tolerance of energy evaluations
  // With line_search=false the energy is never evaluated: steps are accepted
  // on a gradient-norm safeguard instead of the Armijo test.  Use this to
  // polish near a minimum, where energy differences between iterates fall
  // below any affordable energy quadrature tolerance while the gradient is
  // still computed accurately.  Trace energies are NaN in this mode.
  bool line_search = true;
};

struct DescentTrace {
  std::vector<Eigen::VectorXd> iterates;  // sorted points, one row per iterate
  std::vector<double> energies;
  std::vector<double> grad_norms;  // infinity norms
  std::string termination;         // "converged" | "max_iters"
  bool jensen_ok = true;           // limit-energy lower bound held throughout
};

// Projected descent on the configuration torus: move points along the
// negative gradient (Barzilai-Borwein step with Armijo backtracking), wrap,
// re-sort, and enforce the min_gap floor by proportional gap redistribution.
// Throws StalledDescent after 50 consecutive line-search failures and
// CuspEncountered if an exact-mode iterate collapses a gap.
DescentTrace gradient_descent(const Configuration& config0,
                              const FractionalParams& params,
                              const DescentOptions& opts);

// True iff all circular gaps equal 1 within tol (equality up to translation).
bool verify_equispaced(const Configuration& config, double tol,
                       std::string* report = nullptr);

// Descent on the s = 0 limit energy (finite-difference gradient); also
// monitors the convexity lower bound T^2 * 2/((p+1)(p+2)) at every iterate.
DescentTrace minimize_zero(const Configuration& config0, double p,
                           const DescentOptions& opts);

}  // namespace gagliardo
