#include "gagliardo/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gagliardo {

namespace {

double wrap_period(double x, double T) {
  double r = x - T * std::floor(x / T);
  if (r >= T) r -= T;  // guard against floor rounding at the seam
  if (r < 0.0) r = 0.0;
  return r;
}

// Uniform double in [0,1) from the top 53 bits; bit-exact across platforms
// (std::uniform_real_distribution is implementation-defined).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double Configuration::min_gap() const {
  const int n = static_cast<int>(points.size());
  if (n <= 1) return static_cast<double>(T);
  double g = points[0] + T - points[n - 1];
  for (int i = 1; i < n; ++i) g = std::min(g, points[i] - points[i - 1]);
  return g;
}

int Configuration::multiplicity_at(int i) const {
  int m = 0;
  for (int j = 0; j < points.size(); ++j)
    if (points[j] == points[i]) ++m;
  return m;
}

double Configuration::vertical_offset() const {
  return 0.5 * T - points.sum() / T;
}

Configuration make_configuration(const Eigen::VectorXd& pts, int T) {
  if (T < 1) throw InvalidConfiguration("T must be a positive integer");
  if (pts.size() != T)
    throw InvalidConfiguration("expected exactly T jump positions");
  Configuration c;
  c.T = T;
  c.points.resize(T);
  for (int i = 0; i < T; ++i) {
    if (!std::isfinite(pts[i]))
      throw InvalidConfiguration("non-finite jump position");
    c.points[i] = wrap_period(pts[i], static_cast<double>(T));
  }
  std::sort(c.points.data(), c.points.data() + T);
  return c;
}

Configuration make_configuration(const std::vector<double>& pts, int T) {
  return make_configuration(
      Eigen::Map<const Eigen::VectorXd>(pts.data(),
                                        static_cast<Eigen::Index>(pts.size())),
      T);
}

Configuration equispaced(int T) {
  if (T < 1) throw InvalidConfiguration("T must be a positive integer");
  Configuration c;
  c.T = T;
  c.points = Eigen::VectorXd::LinSpaced(T, 0.0, static_cast<double>(T - 1));
  return c;
}

double evaluate_u(const Configuration& config, double x) {
  const double T = static_cast<double>(config.T);
  const double xr = wrap_period(x, T);
  // jumps at position q are already subtracted at x = q (right-continuous)
  const double* b = config.points.data();
  const double* e = b + config.points.size();
  const long count = std::upper_bound(b, e, xr) - b;
  return xr - static_cast<double>(count) + config.vertical_offset();
}

long jump_count(const Configuration& config, double a, double b) {
  if (a > b) throw InvalidInterval("jump_count requires a <= b");
  const double T = static_cast<double>(config.T);
  long n = 0;
  for (int j = 0; j < config.points.size(); ++j) {
    const double xj = config.points[j];
    // copies xj + kT in [a,b]:  ceil((a-xj)/T) <= k <= floor((b-xj)/T)
    const long klo = static_cast<long>(std::ceil((a - xj) / T));
    const long khi = static_cast<long>(std::floor((b - xj) / T));
    if (khi >= klo) n += khi - klo + 1;
  }
  return n;
}

Configuration random_configuration(int T, double min_gap, std::uint64_t seed) {
  if (T < 1) throw InvalidConfiguration("T must be a positive integer");
  if (!(min_gap >= 0.0) || min_gap > 1.0)
    throw InvalidConfiguration("min_gap must lie in [0,1] (feasibility)");
  std::mt19937_64 rng(seed);
  // Gaps = floor + Dirichlet-distributed share of the slack length.
  const double slack = T - min_gap * T;
  Eigen::VectorXd w(T);
  double wsum = 0.0;
  for (int i = 0; i < T; ++i) {
    double u = uniform01(rng);
    if (u <= 0.0) u = 0x1.0p-53;
    w[i] = -std::log(u);  // Exp(1)
    wsum += w[i];
  }
  const double start = uniform01(rng) * T;
  Eigen::VectorXd pts(T);
  double pos = start;
  for (int i = 0; i < T; ++i) {
    pts[i] = pos;
    pos += min_gap + slack * w[i] / wsum;
  }
  return make_configuration(pts, T);
}

Configuration translate(const Configuration& config, double a) {
  return make_configuration(
      Eigen::VectorXd(config.points.array() + a), config.T);
}

Eigen::VectorXd circular_gaps(const Configuration& config) {
  const int n = config.T;
  Eigen::VectorXd g(n);
  if (n == 1) {
    g[0] = static_cast<double>(config.T);
    return g;
  }
  for (int i = 0; i + 1 < n; ++i) g[i] = config.points[i + 1] - config.points[i];
  g[n - 1] = config.points[0] + config.T - config.points[n - 1];
  return g;
}

}  // namespace gagliardo
