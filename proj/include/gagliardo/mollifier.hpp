#pragma once

#include <memory>
#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/energy.hpp"
#include "gagliardo/params.hpp"

namespace gagliardo {

// Standard bump rho(x) = Z^-1 exp(-1/(1-x^2)) on (-1,1), scaled to radius
// eps.  The smooth step H_eps = rho_eps * Heaviside is cached on a
// monotone-cubic table because u^eps is evaluated millions of times inside
// quadrature loops.
class MollifierSpec {
 public:
  explicit MollifierSpec(double eps);

  double eps() const { return eps_; }
  static double normalization();  // Z, computed once to ~1e-14

  double rho(double x) const;     // rho_eps(x); 0 outside (-eps, eps)
  double rho_prime(double x) const;
  double rho_second(double x) const;
  double step(double x) const;    // H_eps(x); clamped to {0,1} outside

 private:
  double eps_;
};

// u^eps[X](x) = (u * rho_eps)(x) = x - sum_{j,k} H_eps(x - x_j - kT) + const;
// keeps the mean-zero gauge of u.
double evaluate_u_mollified(const Configuration& config,
                            const MollifierSpec& moll, double x);

// Quadrature hints for the mollified sawtooth (transition edges).
SmoothHints mollified_hints(const Configuration& config, double eps);

// F^{s,eps}[X] = energy of u^eps; finite in every regime.
EnergyReport mollified_energy(const Configuration& config,
                              const FractionalParams& params, double eps,
                              double tol = 1e-8);

}  // namespace gagliardo
