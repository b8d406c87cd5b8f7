#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "gagliardo/errors.hpp"

namespace gagliardo {

// One energy evaluation: value plus certified truncation bracket and
// quadrature diagnostics.  tail_lower/tail_upper bracket the part of the
// integral beyond the resolved truncation radius; value already includes the
// bracket midpoint.
struct EnergyReport {
  double value = 0.0;
  double tail_lower = 0.0;
  double tail_upper = 0.0;
  double abs_err_est = 0.0;
  long nodes = 0;
};

struct TailBound {
  double lower = 0.0;
  double upper = 0.0;
  double R = 0.0;       // truncation radius
  int terms_used = 0;
};

using Fn = std::function<double(double)>;

// --- Gauss-Legendre rules -------------------------------------------------
struct GaussRule {
  Eigen::VectorXd nodes;    // on (-1,1)
  Eigen::VectorXd weights;  // sum to 2
};
const GaussRule& gauss_rule(int n);

// Fixed-order Gauss on [a,b].
double integrate_gauss(const Fn& f, double a, double b, int n, long* nodes = nullptr);

// Globally adaptive bisection with nested Gauss(7)/Gauss(15) error estimate.
// Splits first at the supplied interior breakpoints.  Panels whose estimate
// falls below err_floor_abs + err_floor_rel*|value| are treated as converged:
// integrands evaluated through inner quadratures carry a noise floor that
// refinement cannot reduce, and chasing it explodes the panel count.
double integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                          const std::vector<double>& breakpoints = {},
                          long* nodes = nullptr, double err_floor_abs = 0.0,
                          double err_floor_rel = 0.0);

// tanh-sinh rule for integrals over (0,b] whose integrand may have an
// integrable power singularity at 0.  f receives the distance from 0,
// computed stably down to ~1e-300.
double integrate_tanh_sinh0(const Fn& f, double b, double abs_tol,
                            long* nodes = nullptr);

// --- Periodic singular kernels --------------------------------------------
// K(t) = sum_{k>=0} (t+kT)^(-1-sp): the one-sided periodic fold of the
// |x-y|^(-1-sp) kernel.
struct KernelValue {
  double partial = 0.0;  // sum over k = 0..K-1
  double value = 0.0;    // partial + midpoint of the tail bracket
  TailBound tail;
};

// Explicit-K form: partial sum plus rigorous integral-comparison tail
// brackets (midpoint/trapezoid bounds, valid since the summand is convex and
// decreasing in k).
KernelValue periodic_kernel(double t, int T, double sp, int K);

// Fast high-accuracy value of K(t) via Euler-Maclaurin tail corrections
// (~1e-13 relative at K=32; the alternating E-M tail is enveloping for the
// completely monotone summand).
double periodic_kernel_fast(double t, int T, double sp);

// Truncated kernel sum_{k>=0, t+kT<=R} (t+kT)^(-1-sp): resolves exactly the
// pairs with |x-y| <= R in the 1D cell decomposition.
double periodic_kernel_truncated(double t, int T, double sp, double R);

// Two-sided lattice sum L(z) = sum_{k in Z} |z-kT|^(-1-sp) for z in (0,T).
double lattice_sum(double z, int T, double sp);

}  // namespace gagliardo
