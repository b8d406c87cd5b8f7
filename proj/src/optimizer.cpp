#include "gagliardo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "gagliardo/energy.hpp"
#include "gagliardo/mollifier.hpp"
#include "gagliardo/variations.hpp"

namespace gagliardo {

namespace {

Configuration from_sorted(int T, const Eigen::VectorXd& x) {
  Configuration c;
  c.T = T;
  c.points = x;
  return c;
}

// wrap into [0,T), sort, and enforce the circular min-gap floor by raising
// deficient gaps and removing the excess proportionally from the slack of
// the remaining gaps (preserves the total length T and the cyclic order)
Eigen::VectorXd project(Eigen::VectorXd x, double T, double floor) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    x[i] -= T * std::floor(x[i] / T);
    if (x[i] >= T) x[i] = 0.0;
  }
  std::sort(x.data(), x.data() + n);
  if (floor <= 0.0 || n < 2) return x;

  Eigen::VectorXd g(n);
  for (int i = 0; i + 1 < n; ++i) g[i] = x[i + 1] - x[i];
  g[n - 1] = T - x[n - 1] + x[0];
  for (int pass = 0; pass < n; ++pass) {
    double deficit = 0.0, slack = 0.0;
    for (int i = 0; i < n; ++i) {
      if (g[i] < floor)
        deficit += floor - g[i];
      else
        slack += g[i] - floor;
    }
    if (deficit <= 0.0) break;
    if (slack <= 0.0) break;  // floor infeasible; leave as close as possible
    const double ratio = std::min(1.0, deficit / slack);
    for (int i = 0; i < n; ++i) {
      if (g[i] < floor)
        g[i] = floor;
      else
        g[i] -= ratio * (g[i] - floor);
    }
  }
  Eigen::VectorXd out(n);
  out[0] = x[0];
  for (int i = 1; i < n; ++i) out[i] = out[i - 1] + g[i - 1];
  for (int i = 0; i < n; ++i)
    if (out[i] >= T) out[i] -= T;
  std::sort(out.data(), out.data() + n);
  return out;
}

// displacement between consecutive sorted iterates, wrapped to (-T/2, T/2]
Eigen::VectorXd wrapped_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                             double T) {
  Eigen::VectorXd d = a - b;
  for (int i = 0; i < d.size(); ++i) {
    d[i] -= T * std::round(d[i] / T);
  }
  return d;
}

using EnergyFn = std::function<double(const Eigen::VectorXd&)>;
using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

DescentTrace descend(Eigen::VectorXd x, int T, const EnergyFn& energy,
                     const GradFn& grad, const DescentOptions& opts,
                     bool cusp_guard) {
  const double Td = static_cast<double>(T);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DescentTrace trace;
  double f = opts.line_search ? energy(x) : nan;
  Eigen::VectorXd g = grad(x);
  double step = opts.step0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
  int fails = 0;

  for (int iter = 0; iter <= opts.max_iters; ++iter) {
    trace.iterates.push_back(x);
    trace.energies.push_back(f);
    trace.grad_norms.push_back(g.lpNorm<Eigen::Infinity>());
    if (trace.grad_norms.back() <= opts.grad_tol) {
      trace.termination = "converged";
      return trace;
    }
    if (iter == opts.max_iters) break;

    // backtracking from the current trial step: Armijo on the energy when
    // line_search is on, otherwise a gradient-norm safeguard (no energy)
    double t = step;
    bool accepted = false;
    bool have_gn = false;
    Eigen::VectorXd xt;
    Eigen::VectorXd gn;
    double ft = f;
    const double gnorm = g.lpNorm<Eigen::Infinity>();
    for (int ls = 0; ls < 60; ++ls) {
      xt = project(x - t * g, Td, opts.min_gap_floor);
      if (cusp_guard) {
        Configuration c = from_sorted(T, xt);
        if (c.min_gap() < 1e-9)
          throw CuspEncountered(
              "iterate collapsed a gap; restart with jitter recommended");
      }
      if (opts.line_search) {
        ft = energy(xt);
        const Eigen::VectorXd dx = wrapped_diff(xt, x, Td);
        const double decrease = opts.armijo_c * g.dot(-dx);
        if (ft <= f - std::max(decrease, 0.0) && ft < f) {
          accepted = true;
          break;
        }
      } else {
        gn = grad(xt);
        have_gn = true;
        if (gn.lpNorm<Eigen::Infinity>() <= 1.5 * gnorm) {
          accepted = true;
          break;
        }
      }
      t *= opts.shrink;
      if (t < 1e-16) break;
    }
    if (!accepted) {
      if (++fails >= 50)
        throw StalledDescent("line search failed 50 consecutive times");
      step = opts.step0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
      continue;
    }
    fails = 0;

    if (!have_gn) gn = grad(xt);
    const Eigen::VectorXd sx = wrapped_diff(xt, x, Td);
    const Eigen::VectorXd sy = gn - g;
    const double sty = sx.dot(sy);
    step = sty > 1e-300 ? std::min(sx.dot(sx) / sty, 10.0) : 2.0 * t;
    if (!(step > 0.0) || !std::isfinite(step)) step = t;
    x = xt;
    f = ft;
    g = gn;
  }
  trace.termination = "max_iters";
  return trace;
}

}  // namespace

DescentTrace gradient_descent(const Configuration& config0,
                              const FractionalParams& params,
                              const DescentOptions& opts) {
  params.validate();
  if (params.T != config0.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  if (opts.max_iters < 1 || !(opts.grad_tol > 0.0) || !(opts.step0 > 0.0) ||
      !(opts.shrink > 0.0 && opts.shrink < 1.0) || !(opts.armijo_c > 0.0) ||
      !(opts.energy_tol > 0.0) || opts.min_gap_floor < 0.0 ||
      opts.min_gap_floor * config0.T > static_cast<double>(config0.T))
    throw InvalidConfiguration("invalid descent options");

  EnergyFn energy;
  GradFn grad;
  if (opts.mode == DescentMode::Exact) {
    if (params.regime() != Regime::SubCritical)
      throw WrongRegime("exact descent requires the sub-critical regime");
    energy = [&](const Eigen::VectorXd& x) {
      return energy_config(from_sorted(config0.T, x), params).value;
    };
    grad = [&](const Eigen::VectorXd& x) {
      return rigid_gradient(from_sorted(config0.T, x), params,
                            opts.grad_quad_tol);
    };
  } else {
    if (!(params.p > 1.0))
      throw WrongRegime("mollified descent requires p > 1");
    if (!(opts.eps > 0.0) || opts.min_gap_floor < 4.0 * opts.eps)
      throw InvalidConfiguration(
          "mollified descent requires eps > 0 and min_gap_floor >= 4*eps");
    energy = [&](const Eigen::VectorXd& x) {
      return mollified_energy(from_sorted(config0.T, x), params, opts.eps,
                              opts.energy_tol)
          .value;
    };
    grad = [&](const Eigen::VectorXd& x) {
      return mollified_gradient(from_sorted(config0.T, x), params, opts.eps,
                                opts.grad_quad_tol);
    };
  }

  Eigen::VectorXd x0 = project(config0.points, config0.T, opts.min_gap_floor);
  return descend(x0, config0.T, energy, grad, opts,
                 opts.mode == DescentMode::Exact);
}

bool verify_equispaced(const Configuration& config, double tol,
                       std::string* report) {
  const auto gaps = circular_gaps(config);
  double worst = 0.0;
  for (double gp : gaps) worst = std::max(worst, std::fabs(gp - 1.0));
  const bool ok = worst <= tol;
  if (report) {
    std::ostringstream os;
    os << (ok ? "equispaced" : "not equispaced")
       << " (max |gap-1| = " << worst << ", tol = " << tol << ")";
    *report = os.str();
  }
  return ok;
}

DescentTrace minimize_zero(const Configuration& config0, double p,
                           const DescentOptions& opts) {
  if (!(p >= 1.0)) throw InvalidConfiguration("p must be >= 1");
  const int T = config0.T;
  EnergyFn energy = [&](const Eigen::VectorXd& x) {
    return energy_zero(from_sorted(T, x), p);
  };
  GradFn grad = [&](const Eigen::VectorXd& x) {
    const double h = 1e-6;
    Eigen::VectorXd g(x.size());
    for (int i = 0; i < x.size(); ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double Td = static_cast<double>(T);
      for (auto* v : {&xp[i], &xm[i]}) *v -= Td * std::floor(*v / Td);
      std::sort(xp.data(), xp.data() + xp.size());
      std::sort(xm.data(), xm.data() + xm.size());
      g[i] = (energy(xp) - energy(xm)) / (2.0 * h);
    }
    return g;
  };
  Eigen::VectorXd x0 = project(config0.points, T, opts.min_gap_floor);
  DescentTrace trace = descend(x0, T, energy, grad, opts, false);
  const double bound =
      static_cast<double>(T) * T * 2.0 / ((p + 1.0) * (p + 2.0));
  for (double e : trace.energies)
    if (e < bound - 1e-9) trace.jensen_ok = false;
  return trace;
}

}  // namespace gagliardo
