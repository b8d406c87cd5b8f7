#include "gagliardo/mollifier.hpp"

#include <array>
#include <cmath>

#include "gagliardo/quadrature.hpp"

namespace gagliardo {

namespace {

double bump_raw(double y) {  // exp(-1/(1-y^2)) on (-1,1)
  const double d = 1.0 - y * y;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

double bump_raw_prime(double y) {
  const double d = 1.0 - y * y;
  if (d <= 0.0) return 0.0;
  return std::exp(-1.0 / d) * (-2.0 * y / (d * d));
}

double bump_raw_second(double y) {
  const double d = 1.0 - y * y;
  if (d <= 0.0) return 0.0;
  const double g1 = -2.0 * y / (d * d);                       // (d/dy)(-1/d)
  const double g2 = (-2.0 * d - 8.0 * y * y) / (d * d * d);   // second derivative
  return std::exp(-1.0 / d) * (g2 + g1 * g1);
}

constexpr int kTableN = 4096;  // cells on [-1,1]

struct StepTable {
  std::array<double, kTableN + 1> value;  // cumulative integral of rho
  std::array<double, kTableN + 1> slope;  // monotone cubic tangents
  double Z = 0.0;

  StepTable() {
    const double h = 2.0 / kTableN;
    value[0] = 0.0;
    for (int i = 0; i < kTableN; ++i) {
      const double a = -1.0 + i * h;
      value[i + 1] =
          value[i] + integrate_gauss(bump_raw, a, a + h, 12, nullptr);
    }
    Z = value[kTableN];
    for (auto& v : value) v /= Z;
    // Fritsch-Carlson monotone tangents on the uniform grid
    std::array<double, kTableN> d{};
    for (int i = 0; i < kTableN; ++i) d[i] = (value[i + 1] - value[i]) / h;
    slope[0] = d[0];
    slope[kTableN] = d[kTableN - 1];
    for (int i = 1; i < kTableN; ++i)
      slope[i] = (d[i - 1] * d[i] > 0.0)
                     ? 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i])
                     : 0.0;
  }

  // H(y) on [-1,1] (normalised cumulative bump)
  double eval(double y) const {
    if (y <= -1.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double h = 2.0 / kTableN;
    int i = static_cast<int>((y + 1.0) / h);
    if (i >= kTableN) i = kTableN - 1;
    const double t = ((y + 1.0) - i * h) / h;
    const double y0 = value[i], y1 = value[i + 1];
    const double m0 = slope[i] * h, m1 = slope[i + 1] * h;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 +
           (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1;
  }

  static const StepTable& instance() {
    static StepTable table;
    return table;
  }
};

}  // namespace

MollifierSpec::MollifierSpec(double eps) : eps_(eps) {
  if (!(eps > 0.0)) throw InvalidConfiguration("mollifier radius must be > 0");
}

double MollifierSpec::normalization() { return StepTable::instance().Z; }

double MollifierSpec::rho(double x) const {
  const double y = x / eps_;
  return bump_raw(y) / (StepTable::instance().Z * eps_);
}

double MollifierSpec::rho_prime(double x) const {
  const double y = x / eps_;
  return bump_raw_prime(y) / (StepTable::instance().Z * eps_ * eps_);
}

double MollifierSpec::rho_second(double x) const {
  const double y = x / eps_;
  return bump_raw_second(y) / (StepTable::instance().Z * eps_ * eps_ * eps_);
}

double MollifierSpec::step(double x) const {
  return StepTable::instance().eval(x / eps_);
}

double evaluate_u_mollified(const Configuration& config,
                            const MollifierSpec& moll, double x) {
  const double T = static_cast<double>(config.T);
  const double eps = moll.eps();
  if (!(eps < 0.5 * T))
    throw InvalidConfiguration("mollifier radius must satisfy eps < T/2");
  double u = x + config.vertical_offset();
  for (int j = 0; j < config.points.size(); ++j) {
    const double r = x - config.points[j];
    // completed steps: copies with r - kT >= eps
    u -= std::floor((r - eps) / T) + 1.0;
    // at most one copy inside the transition window
    const double k = std::round(r / T);
    const double rr = r - k * T;
    if (rr > -eps && rr < eps && k > std::floor((r - eps) / T))
      u -= moll.step(rr);
  }
  return u;
}

SmoothHints mollified_hints(const Configuration& config, double eps) {
  SmoothHints h;
  h.small_scale = eps;
  const double T = static_cast<double>(config.T);
  for (int j = 0; j < config.points.size(); ++j) {
    double a = config.points[j] - eps;
    double b = config.points[j] + eps;
    a -= T * std::floor(a / T);
    b -= T * std::floor(b / T);
    h.x_breaks.push_back(a);
    h.x_breaks.push_back(b);
  }
  return h;
}

EnergyReport mollified_energy(const Configuration& config,
                              const FractionalParams& params, double eps,
                              double tol) {
  params.validate();
  if (params.T != config.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  MollifierSpec moll(eps);
  auto u = [&config, moll](double x) {
    return evaluate_u_mollified(config, moll, x);
  };
  return energy_smooth(u, params, tol, mollified_hints(config, eps));
}

}  // namespace gagliardo
