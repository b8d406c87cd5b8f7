#pragma once

#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/quadrature.hpp"

namespace gagliardo {

// Exact piecewise representation of the correlation profile
//   g(t) = int_0^T |u(x+t) - u(x)|^p dx = sum_k |t-k|^p * |A_t(k)|
// where A_t(k) = {x : the window (x, x+t] contains exactly k jumps}.
// On each interval between breakpoints (pairwise circular differences of the
// jump points) every level-set measure |A_t(k)| is affine in t.
struct ProfileTerm {
  int k;         // jump count of the level set
  double alpha;  // |A_t(k)| = alpha + beta * t
  int beta;      // slope is always an integer
};

struct ProfileInterval {
  double t0, t1;
  std::vector<ProfileTerm> terms;
};

struct CorrelationProfile {
  int T = 1;
  double p = 2.0;
  std::vector<ProfileInterval> intervals;  // covers [0,T]

  double eval(double t) const;  // T-periodic
  // F0 = int_0^T g(t) dt (exact piecewise integration by fixed-order Gauss,
  // the integrand is piecewise smooth per interval).
  double integral_over_period() const;
  // True iff some level set with k >= 1 has nonzero measure as t -> 0+
  // (always the case for a configuration with at least one jump).
  bool has_jump_level_sets() const;
};

CorrelationProfile correlation_profile(const Configuration& config, double p);

// 2 * int_0^inf g(t) t^(-1-sp) dt evaluated by folding g against the
// periodic kernel; equals the (s,p)-Gagliardo energy density of u[X] for d=1.
EnergyReport singular_integral(const CorrelationProfile& profile, double sp,
                               double tol);

// Resolved part of the same integral restricted to |x-y| <= R (the B_R core
// of the energy-estimates sandwich; exact in d=1 via the t-representation).
double singular_integral_core(const CorrelationProfile& profile, double sp,
                              double R, double tol);

}  // namespace gagliardo
