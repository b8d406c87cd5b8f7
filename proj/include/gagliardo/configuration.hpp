#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "gagliardo/errors.hpp"

namespace gagliardo {

// T-periodic multiset of T jump positions, canonicalised to sorted values in
// [0,T).  Determines the piecewise-affine sawtooth u with unit slope and unit
// downward jumps (Du = L^1 minus a sum of unit Dirac masses).
struct Configuration {
  int T = 1;
  Eigen::VectorXd points;  // size T, sorted, each in [0,T)

  // Minimum circular distance between consecutive points, seam included.
  double min_gap() const;
  // Number of points equal (exactly) to points[i].
  int multiplicity_at(int i) const;
  // Mean-zero gauge constant: u(x) = frac-part machinery + this.
  double vertical_offset() const;
};

Configuration make_configuration(const std::vector<double>& pts, int T);
Configuration make_configuration(const Eigen::VectorXd& pts, int T);
Configuration equispaced(int T);

// Right-continuous mean-zero representative u[X] at x (T-periodic).
double evaluate_u(const Configuration& config, double x);

// Jump points (all periodic copies, with multiplicity) inside [a,b].
long jump_count(const Configuration& config, double a, double b);

// Deterministic in seed; result has circular min_gap >= min_gap.
Configuration random_configuration(int T, double min_gap, std::uint64_t seed);

// Translate all points by a and re-canonicalise.
Configuration translate(const Configuration& config, double a);

// Sorted circular gaps (size T, sums to T).
Eigen::VectorXd circular_gaps(const Configuration& config);

}  // namespace gagliardo
