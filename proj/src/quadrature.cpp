#include "gagliardo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gagliardo {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

// --- Gauss-Legendre --------------------------------------------------------

static GaussRule compute_gauss(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

double integrate_gauss(const Fn& f, double a, double b, int n, long* nodes) {
  const GaussRule& r = gauss_rule(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  if (nodes) *nodes += n;
  return s * half;
}

// --- adaptive bisection with nested Gauss(7)/Gauss(15) ----------------------

namespace {
struct Panel {
  double a, b, coarse, fine, err;
};

Panel make_panel(const Fn& f, double a, double b, long* nodes) {
  Panel p;
  p.a = a;
  p.b = b;
  p.coarse = integrate_gauss(f, a, b, 7, nodes);
  p.fine = integrate_gauss(f, a, b, 15, nodes);
  p.err = std::fabs(p.fine - p.coarse);
  return p;
}
}  // namespace

double integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                          const std::vector<double>& breakpoints, long* nodes,
                          double err_floor_abs, double err_floor_rel) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a, b};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> heap;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    heap.push_back(make_panel(f, cuts[i], cuts[i + 1], nodes));

  auto refinable = [&](const Panel& p) {
    return p.err > err_floor_abs + err_floor_rel * std::fabs(p.fine) &&
           p.b - p.a >= 1e-15 * (b - a);
  };

  double err_sum = 0.0;
  for (const Panel& p : heap) err_sum += p.err;

  const int max_panels = 20000;
  while (err_sum > abs_tol && static_cast<int>(heap.size()) < max_panels) {
    // split the worst refinable panel
    size_t worst = heap.size();
    for (size_t i = 0; i < heap.size(); ++i)
      if (refinable(heap[i]) &&
          (worst == heap.size() || heap[i].err > heap[worst].err))
        worst = i;
    if (worst == heap.size()) break;  // everything at its floor
    Panel p = heap[worst];
    const double m = 0.5 * (p.a + p.b);
    heap[worst] = make_panel(f, p.a, m, nodes);
    heap.push_back(make_panel(f, m, p.b, nodes));
    err_sum += heap[worst].err + heap.back().err - p.err;
  }
  double s = 0.0;
  for (const Panel& p : heap) s += p.fine;
  return s;
}

// --- tanh-sinh on (0,b] ------------------------------------------------------

double integrate_tanh_sinh0(const Fn& f, double b, double abs_tol, long* nodes) {
  if (!(b > 0.0)) return 0.0;
  // t(v) = b/(1+exp(-2v)), dt/dv = (b/2) sech^2(v), v = (pi/2) sinh(u)
  auto term = [&](double u) {
    const double v = 0.5 * kPi * std::sinh(u);
    if (std::fabs(v) > 350.0) return 0.0;
    const double e = std::exp(-2.0 * v);
    const double t = b / (1.0 + e);
    if (t <= 0.0 || t >= b) return 0.0;
    const double sech = 2.0 / (std::exp(v) + std::exp(-v));
    const double dtdv = 0.5 * b * sech * sech;
    const double w = 0.5 * kPi * std::cosh(u) * dtdv;
    const double y = f(t);
    return std::isfinite(y) ? w * y : 0.0;
  };

  // |v| ~ 315, t within ~1e-260 of the endpoints: even a t^{-0.95}
  // singularity loses only ~1e-13 of its mass beyond the truncation
  const double umax = 6.0;
  double h = 0.5;
  double sum = term(0.0);
  for (double u = h; u <= umax; u += h) sum += term(u) + term(-u);
  double prev = sum * h;
  long used = static_cast<long>(2 * (umax / h) + 1);
  double result = prev;
  double prev_diff = 0.0;
  for (int level = 1; level <= 11; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double u = h; u <= umax; u += 2.0 * h) {
      add += term(u) + term(-u);
      used += 2;
    }
    sum += add;
    result = sum * h;
    const double diff = std::fabs(result - prev);
    if (level >= 3 && diff <= std::max(abs_tol, 1e-16 * std::fabs(result)))
      break;
    // genuine tanh-sinh convergence is doubly exponential; a stagnating
    // difference means the integrand's noise floor has been reached and
    // further halving cannot improve the result
    if (level >= 5 && prev_diff > 0.0 && diff > 0.3 * prev_diff) break;
    prev = result;
    prev_diff = diff;
  }
  if (nodes) *nodes += used;
  return result;
}

// --- periodic kernels --------------------------------------------------------

KernelValue periodic_kernel(double t, int T, double sp, int K) {
  if (!(t > 0.0)) throw SingularArgument("periodic_kernel requires t > 0");
  if (!(sp > 0.0)) throw SingularArgument("periodic_kernel requires sp > 0");
  if (K < 1) throw SingularArgument("periodic_kernel requires K >= 1");
  const double Td = static_cast<double>(T);
  KernelValue kv;
  for (int k = 0; k < K; ++k) kv.partial += std::pow(t + k * Td, -1.0 - sp);
  const double fK = std::pow(t + K * Td, -1.0 - sp);
  // Integral-comparison bounds for the convex decreasing summand:
  //   sum_{k>=K} f(k) >= int_K^inf f + f(K)/2   (trapezoid)
  //   sum_{k>=K} f(k) <= int_{K-1/2}^inf f      (midpoint)
  kv.tail.lower = std::pow(t + K * Td, -sp) / (sp * Td) + 0.5 * fK;
  kv.tail.upper = std::pow(t + (K - 0.5) * Td, -sp) / (sp * Td);
  kv.tail.R = t + K * Td;
  kv.tail.terms_used = K;
  kv.value = kv.partial + 0.5 * (kv.tail.lower + kv.tail.upper);
  return kv;
}

double periodic_kernel_fast(double t, int T, double sp) {
  const double Td = static_cast<double>(T);
  const int K = 32;
  double s = 0.0;
  for (int k = 0; k < K; ++k) s += std::pow(t + k * Td, -1.0 - sp);
  // Euler-Maclaurin tail at A = t + K*T (enveloping for this completely
  // monotone summand; truncation error ~ A^{-6-sp})
  const double A = t + K * Td;
  const double f = std::pow(A, -1.0 - sp);
  const double q = Td / A;
  s += std::pow(A, -sp) / (sp * Td);            // int_K^inf
  s += 0.5 * f;                                  // + f(K)/2
  s += f * (1.0 + sp) * q / 12.0;                // - f'(K)/12
  s -= f * (1.0 + sp) * (2.0 + sp) * (3.0 + sp) * q * q * q / 720.0;
  return s;
}

double periodic_kernel_truncated(double t, int T, double sp, double R) {
  if (!(t > 0.0)) throw SingularArgument("kernel requires t > 0");
  const double Td = static_cast<double>(T);
  double s = 0.0;
  for (double a = t; a <= R; a += Td) s += std::pow(a, -1.0 - sp);
  return s;
}

double lattice_sum(double z, int T, double sp) {
  const double Td = static_cast<double>(T);
  if (!(z > 0.0 && z < Td)) throw SingularArgument("lattice_sum requires z in (0,T)");
  return periodic_kernel_fast(z, T, sp) + periodic_kernel_fast(Td - z, T, sp);
}

}  // namespace gagliardo
