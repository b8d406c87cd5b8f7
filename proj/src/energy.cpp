#include "gagliardo/energy.hpp"

#include <algorithm>
#include <cmath>

namespace gagliardo {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double wrapT(double x, double T) {
  double r = x - T * std::floor(x / T);
  if (r >= T) r -= T;
  if (r < 0.0) r = 0.0;
  return r;
}
}  // namespace

// --- configuration energies --------------------------------------------------

EnergyReport energy_config(const Configuration& config,
                           const FractionalParams& params, double tol) {
  params.validate();
  if (params.d != 1)
    throw InvalidConfiguration("configuration energies require d = 1");
  if (params.T != config.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  if (params.sp() >= 1.0 - FractionalParams::kCriticalTol)
    throw DivergentEnergy("u[X] is not in W^{s,p} for sp >= 1");
  const CorrelationProfile prof = correlation_profile(config, params.p);
  return singular_integral(prof, params.sp(), tol);
}

double energy_config_core(const Configuration& config,
                          const FractionalParams& params, double R,
                          double tol) {
  const CorrelationProfile prof = correlation_profile(config, params.p);
  return singular_integral_core(prof, params.sp(), R, tol);
}

// --- smooth-path energies ----------------------------------------------------

namespace {

// g(t) = int_0^T |u(x+t)-u(x)|^p dx by breakpoint-aligned composite Gauss.
double g_smooth(const Fn& u, double p, double T, double t,
                const SmoothHints& hints, long* nodes) {
  std::vector<double> cuts{0.0, T};
  for (double b : hints.x_breaks) {
    cuts.push_back(wrapT(b, T));
    cuts.push_back(wrapT(b - t, T));
  }
  if (hints.x_breaks.empty()) {
    const int P = 8;
    for (int i = 1; i < P; ++i) cuts.push_back(T * i / P);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double s = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    s += integrate_gauss(
        [&](double x) { return std::pow(std::fabs(u(x + t) - u(x)), p); },
        cuts[i], cuts[i + 1], 16, nodes);
  }
  return s;
}

EnergyReport smooth_fold(const Fn& u, const FractionalParams& params,
                         double tol, const SmoothHints& hints,
                         double R /* <=0: full kernel */) {
  params.validate();
  if (params.d != 1) throw InvalidConfiguration("numerical energies require d = 1");
  const double T = static_cast<double>(params.T);
  const double sp = params.sp();
  long nodes = 0;

  auto g = [&](double t) { return g_smooth(u, params.p, T, t, hints, &nodes); };
  auto kernel = [&](double t) {
    return R > 0.0 ? periodic_kernel_truncated(t, params.T, sp, R)
                   : periodic_kernel_fast(t, params.T, sp);
  };

  // For a Lipschitz u (the contract of this path) g(t) = C_p t^p (1 + O(t^2))
  // with C_p = int |u'|^p, but the finite difference u(x+t) - u(x) is pure
  // rounding noise below t ~ 1e-14, and for sp near 2 the kernel still holds
  // non-negligible mass there (integrand ~ t^{p-1-sp}).  Below t_asym the
  // asymptotic form is used, with the kernel split into its leading power and
  // the smooth remainder K0 so nothing overflows at extreme nodes.
  const double t_asym =
      hints.small_scale > 0.0 ? std::min(1e-6, 0.1 * hints.small_scale) : 1e-6;
  const double Cp = g(t_asym) / std::pow(t_asym, params.p);
  const double K0 = kernel(t_asym) - std::pow(t_asym, -1.0 - sp);
  auto integrand = [&](double t) {
    if (t < t_asym)
      return Cp *
             (std::pow(t, params.p - 1.0 - sp) + std::pow(t, params.p) * K0);
    return g(t) * kernel(t);
  };

  const double delta0 =
      std::min(0.25 * T, hints.small_scale > 0.0 ? hints.small_scale : 0.25 * T);
  double total = integrate_tanh_sinh0(integrand, delta0, 0.25 * tol, &nodes);

  std::vector<double> breaks;
  for (double b : {2.0 * hints.small_scale, 4.0 * hints.small_scale})
    if (b > delta0 && b < T) breaks.push_back(b);
  if (R > 0.0) {
    const double rb = R - T * std::floor(R / T);
    if (rb > delta0 && rb < T) breaks.push_back(rb);
  }
  for (int k = 1; k < params.T; ++k)
    if (k > delta0) breaks.push_back(static_cast<double>(k));
  total += integrate_adaptive(integrand, delta0, T, 0.5 * tol, breaks, &nodes);

  EnergyReport rep;
  rep.value = 2.0 * total;
  if (R <= 0.0) {
    // rigorous kernel truncation bracket (K=32 explicit terms)
    double lo = 0.0, hi = 0.0;
    const GaussRule& r8 = gauss_rule(8);
    for (int i = 0; i < 8; ++i) {
      const double t = 0.5 * T * (1.0 + r8.nodes[i]);
      const double w = 0.5 * T * r8.weights[i];
      const double gv = g(t);
      const auto kv = periodic_kernel(std::max(t, 1e-10), params.T, sp, 32);
      lo += w * gv * kv.tail.lower;
      hi += w * gv * kv.tail.upper;
    }
    rep.tail_lower = 2.0 * lo;
    rep.tail_upper = 2.0 * hi;
    rep.abs_err_est = tol + (rep.tail_upper - rep.tail_lower);
  } else {
    rep.abs_err_est = tol;
  }
  rep.nodes = nodes;
  return rep;
}

}  // namespace

EnergyReport energy_smooth(const Fn& u, const FractionalParams& params,
                           double tol, const SmoothHints& hints) {
  return smooth_fold(u, params, tol, hints, -1.0);
}

double energy_smooth_core(const Fn& u, const FractionalParams& params,
                          double R, double tol, const SmoothHints& hints) {
  if (!(R > 0.0)) throw InvalidRadius("core radius must be positive");
  return smooth_fold(u, params, tol, hints, R).value;
}

double energy_zero_smooth(const Fn& u, double p, int T,
                          const SmoothHints& hints) {
  const double Td = static_cast<double>(T);
  long nodes = 0;
  // F0 = int_0^T g(t) dt
  SmoothHints h = hints;
  return integrate_adaptive(
      [&](double t) { return g_smooth(u, p, Td, t, h, &nodes); }, 0.0, Td,
      1e-10, {}, &nodes);
}

// --- s = 0 limit energy ------------------------------------------------------

double segment_pair_integral(double l, double lp, double c, double p) {
  if (!(l >= 0.0) || !(lp >= 0.0))
    throw InvalidConfiguration("segment half-lengths must be non-negative");
  if (l == 0.0 || lp == 0.0) return 0.0;
  // double antiderivative of |z|^p evaluated at the rectangle corners
  auto H = [p](double z) {
    return std::pow(std::fabs(z), p + 2.0) / ((p + 1.0) * (p + 2.0));
  };
  return H(c + l + lp) - H(c + l - lp) - H(c - l + lp) + H(c - l - lp);
}

double energy_zero(const Configuration& config, double p) {
  const int T = config.T;
  const double Td = static_cast<double>(T);
  // circular segments between consecutive jumps; u is affine on each
  std::vector<double> L, v;
  for (int i = 0; i < T; ++i) {
    const double a = config.points[i];
    const double b = (i + 1 < T) ? config.points[i + 1] : config.points[0] + Td;
    const double gap = b - a;
    if (gap <= 0.0) continue;
    L.push_back(0.5 * gap);
    v.push_back(evaluate_u(config, a + 0.5 * gap));
  }
  double s = 0.0;
  for (size_t i = 0; i < L.size(); ++i)
    for (size_t j = 0; j < L.size(); ++j)
      s += segment_pair_integral(L[i], L[j], v[j] - v[i], p);
  return s;
}

// --- energy-estimates sandwich ----------------------------------------------

SandwichTails tail_sandwich(double F0, double R, const FractionalParams& params) {
  params.validate();
  const double T = static_cast<double>(params.T);
  const double d = static_cast<double>(params.d);
  const double sd = std::sqrt(d);
  if (!(R > 2.0 * T * sd))
    throw InvalidRadius("sandwich requires R > 2*T*sqrt(d)");
  const double sp = params.sp();
  const double omega_d = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  SandwichTails out;
  out.c1 = (R + 2.0 * T * sd) / (R + T * sd);
  out.c2 = (R - 2.0 * T * sd) / (R - T * sd);
  out.lower = d * omega_d * std::pow(R / T + 2.0 * sd, -sp) /
              (sp * std::pow(T * out.c1, d + sp)) * F0;
  out.upper = d * omega_d * std::pow(R / T - 2.0 * sd, -sp) /
              (sp * std::pow(T * out.c2, d + sp)) * F0;
  return out;
}

}  // namespace gagliardo
