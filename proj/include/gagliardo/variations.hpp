#pragma once

#include <Eigen/Core>
#include <optional>

#include "gagliardo/configuration.hpp"
#include "gagliardo/params.hpp"

namespace gagliardo {

struct VariationReport {
  Eigen::VectorXd gradient;
  std::optional<Eigen::MatrixXd> hessian;
  double row_sum_residual = 0.0;
};

// First variation of the configuration energy with respect to jump i:
//   2 P.V. int_R [ |u(x_i)-u(y)+1|^p - |u(x_i)-u(y)|^p ] / |x_i-y|^{1+sp} dy.
// Evaluated as a periodic fold with the exact symmetric-window cancellation
// around x_i built in (the principal value exists by that symmetry).
double rigid_laplacian(const Configuration& config, int i,
                       const FractionalParams& params, double tol = 1e-10);

Eigen::VectorXd rigid_gradient(const Configuration& config,
                               const FractionalParams& params,
                               double tol = 1e-10);

// Configuration Hessian: off-diagonal entries are closed-form lattice sums,
// the diagonal is fixed by the zero-row-sum identity.
VariationReport hessian(const Configuration& config,
                        const FractionalParams& params);

// Leading term of E(X + h e_i) - E(X) at a jump of multiplicity m >= 2:
// coefficient * h^exponent with exponent 1 - sp (coefficient < 0 for p > 1).
struct CuspExpansion {
  double coefficient;
  double exponent;
};
CuspExpansion cusp_expansion(int m, const FractionalParams& params);

// p = 1 one-sided separation functionals at an overlapping jump: the energy
// responds linearly, E(X +- h e_i) - E(X) = h F^{+-} + o(h), F^+ + F^- < 0.
struct SeparationFunctionals {
  double F_plus;   // slope for splitting one jump off to the right
  double F_minus;  // slope for splitting one jump off to the left
};
SeparationFunctionals separation_functionals_p1(const Configuration& config,
                                                int i, double s,
                                                double tol = 1e-9);

// Gradient of the mollified energy (p > 1, any regime).
Eigen::VectorXd mollified_gradient(const Configuration& config,
                                   const FractionalParams& params, double eps,
                                   double tol = 1e-9);

// Mollified Hessian: disjoint-support formula when min_gap >= 4*eps, the
// general symmetric-difference formula otherwise; diagonal by row-sum-zero.
VariationReport mollified_hessian(const Configuration& config,
                                  const FractionalParams& params, double eps);

}  // namespace gagliardo
