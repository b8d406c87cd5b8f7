#pragma once

#include <vector>

#include "gagliardo/quadrature.hpp"

namespace gagliardo {

// Brute-force tensor quadrature of
//   F = sum_k int_0^T int_0^T |u(x)-u(y)|^p / |x-y-kT|^{1+sp} dy dx
// over |k| <= K image cells plus the energy-estimates tail bracket beyond.
// Independent oracle, not a production path.  x and y axes use Gauss panels
// of different order, so no node pair ever has x = y (offset product rule).
// If breakpoints are supplied (e.g. jump positions of a configuration) the
// axis meshes are geometrically graded toward them, which is what makes
// 1e-4..1e-6 cross-validation reachable by brute force.  K <= 0 selects K
// adaptively until the certified tail bracket is below tail_rel_tol of the
// resolved part.
EnergyReport cell_pair_oracle(const Fn& u, double s, double p, int T, int K,
                              int n, const std::vector<double>& breakpoints = {},
                              double tail_rel_tol = 5e-6);

}  // namespace gagliardo
