#include "gagliardo/variations.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "gagliardo/io.hpp"
#include "gagliardo/mollifier.hpp"
#include "gagliardo/quadrature.hpp"

namespace gagliardo {

namespace {

double wrapT(double x, double T) {
  double r = x - T * std::floor(x / T);
  if (r >= T) r -= T;
  if (r < 0.0) r = 0.0;
  return r;
}

// z-values in (0, zmax) where x0 + z crosses a jump copy, z -> T - z images
// of the same, and the interior kinks v(z) in `levels` of the piecewise
// affine difference v(z) = u(x0 + z) - u(x0).
std::vector<double> difference_breakpoints(const Configuration& config,
                                           double x0, double zmax,
                                           const std::vector<double>& levels) {
  const double T = static_cast<double>(config.T);
  std::vector<double> cross;
  for (int j = 0; j < config.points.size(); ++j) {
    const double z = wrapT(config.points[j] - x0, T);
    cross.push_back(z);
    cross.push_back(T - z);
  }
  cross.push_back(0.0);
  cross.push_back(T);
  std::sort(cross.begin(), cross.end());
  cross.erase(std::unique(cross.begin(), cross.end()), cross.end());

  std::vector<double> out;
  const double u0 = evaluate_u(config, x0);
  for (size_t i = 0; i + 1 < cross.size(); ++i) {
    const double a = cross[i], b = cross[i + 1];
    if (a > 0.0 && a < zmax) out.push_back(a);
    if (b - a < 1e-13) continue;
    // v(z) = v(zm) + (z - zm) on (a,b)
    const double zm = 0.5 * (a + b);
    const double vm = evaluate_u(config, x0 + zm) - u0;
    for (double lv : levels) {
      const double z = zm + (lv - vm);
      if (z > a && z < b && z > 0.0 && z < zmax) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double rigid_laplacian(const Configuration& config, int i,
                       const FractionalParams& params, double tol) {
  params.validate();
  if (params.T != config.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  if (params.regime() != Regime::SubCritical)
    throw WrongRegime("rigid laplacian requires the sub-critical regime");
  if (i < 0 || i >= config.T) throw InvalidConfiguration("index out of range");
  if (config.multiplicity_at(i) > 1)
    throw CuspPoint("one-sided derivatives are infinite at overlapping jumps");
  if (config.min_gap() <= 0.0)
    throw CuspPoint("rigid laplacian requires a regular configuration");

  const double T = static_cast<double>(config.T);
  const double sp = params.sp();
  const double p = params.p;
  const double xi = config.points[i];
  const double ui = evaluate_u(config, xi);

  auto N = [p](double d) {
    return std::pow(std::fabs(d + 1.0), p) - std::pow(std::fabs(d), p);
  };
  // Periodic fold of the principal value:
  //   grad = 2 int_0^{T/2} L(z) [N(v(z)) + N(v(-z))] dz,
  // where v(z) = u(x_i) - u(x_i + z).  The bracket vanishes identically for
  // z below the distance to the nearest neighbour (the exact two-sided
  // cancellation that makes the principal value exist), so integration
  // starts there and no singularity remains.
  auto paired = [&](double z) {
    const double a = N(ui - evaluate_u(config, xi + z));
    const double b = N(ui - evaluate_u(config, xi + T - z));
    return lattice_sum(z, config.T, sp) * (a + b);
  };

  // distance from x_i to its nearest neighbour (either side)
  double dmin = T;
  for (int j = 0; j < config.T; ++j) {
    if (j == i) continue;
    const double z = wrapT(config.points[j] - xi, T);
    dmin = std::min({dmin, z, T - z});
  }
  const double z0 = 0.999 * std::min(dmin, 0.5 * T);
  if (z0 >= 0.5 * T) return 0.0;

  std::vector<double> brk =
      difference_breakpoints(config, xi, 0.5 * T, {0.0, -1.0});
  long nodes = 0;
  const double val =
      integrate_adaptive(paired, z0, 0.5 * T, 0.5 * tol, brk, &nodes);
  return 2.0 * val;
}

Eigen::VectorXd rigid_gradient(const Configuration& config,
                               const FractionalParams& params, double tol) {
  Eigen::VectorXd g(config.T);
  for (int i = 0; i < config.T; ++i)
    g[i] = rigid_laplacian(config, i, params, tol);
  return g;
}

VariationReport hessian(const Configuration& config,
                        const FractionalParams& params) {
  params.validate();
  if (params.T != config.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  if (params.regime() != Regime::SubCritical)
    throw WrongRegime("configuration Hessian requires the sub-critical regime");
  if (config.min_gap() <= 0.0)
    throw CuspPoint("configuration Hessian requires a regular configuration");

  const int n = config.T;
  const double T = static_cast<double>(n);
  const double p = params.p;
  const double sp = params.sp();

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = evaluate_u(config, config.points[i]);

  auto fill_row_block = [&](int i) {
    for (int j = i + 1; j < n; ++j) {
      const double du = u[i] - u[j];
      const double C = 2.0 * std::pow(std::fabs(du), p) -
                       std::pow(std::fabs(du + 1.0), p) -
                       std::pow(std::fabs(du - 1.0), p);
      const double delta = wrapT(config.points[i] - config.points[j], T);
      H(i, j) = 2.0 * C * lattice_sum(delta, n, sp);
      H(j, i) = H(i, j);
    }
  };
  const int workers = std::min(thread_cap(), n);
  if (workers > 1 && n >= 16) {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (int i = w; i < n; i += workers) fill_row_block(i);
      });
    for (auto& t : pool) t.join();
  } else {
    for (int i = 0; i < n; ++i) fill_row_block(i);
  }
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) row += H(i, j);
    H(i, i) = -row;
  }

  VariationReport rep;
  rep.gradient = Eigen::VectorXd::Zero(n);  // not computed here
  double residual = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    residual = std::max(residual, std::fabs(H.row(i).sum()));
    scale = std::max(scale, H.row(i).cwiseAbs().maxCoeff());
  }
  rep.row_sum_residual = scale > 0.0 ? residual / scale : 0.0;
  rep.hessian = std::move(H);
  return rep;
}

CuspExpansion cusp_expansion(int m, const FractionalParams& params) {
  params.validate();
  if (params.p <= 1.0)
    throw WrongRegime("cusp expansion requires p > 1 (use the p=1 separation functionals)");
  if (params.regime() != Regime::SubCritical)
    throw WrongRegime("cusp expansion requires the sub-critical regime");
  if (m < 2) throw NotOverlapping("cusp expansion requires multiplicity >= 2");
  const double p = params.p;
  const double sp = params.sp();
  CuspExpansion ce;
  ce.coefficient = (std::pow(m - 1.0, p) - std::pow(static_cast<double>(m), p) + 1.0) *
                   2.0 / (sp * (1.0 - sp));
  ce.exponent = 1.0 - sp;
  return ce;
}

SeparationFunctionals separation_functionals_p1(const Configuration& config,
                                                int i, double s, double tol) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidConfiguration("s must lie in (0,1)");
  if (i < 0 || i >= config.T) throw InvalidConfiguration("index out of range");
  const int m = config.multiplicity_at(i);
  if (m < 2) throw NotOverlapping("separation functionals require an overlapping jump");

  const double T = static_cast<double>(config.T);
  const double xi = config.points[i];
  const double ui = evaluate_u(config, xi);
  // v(t) = u(x_i + t) - u(x_i); v(0) = 0, v(0^-) = m
  auto v = [&](double t) { return evaluate_u(config, xi + t) - ui; };

  auto integral = [&](auto&& numer) {
    std::vector<double> brk = difference_breakpoints(
        config, xi, 0.5 * T,
        {0.0, 1.0, static_cast<double>(m - 1), static_cast<double>(m)});
    double b1 = 0.5 * T;
    for (double b : brk)
      if (b > 1e-12) {
        b1 = std::min(b1, b);
        break;
      }
    // The paired numerator N(z) = numer(v(z)) + numer(v(T-z)) is exactly
    // linear on (0, b1) (all kinks of v and of the piecewise-linear numer are
    // breakpoints), but its direct evaluation loses the O(z) cancellation to
    // rounding once z drops below ~1e-13, which the kernel then amplifies
    // into garbage.  Below z_asym the linear form is used instead.
    const double z_asym = std::min(1e-4, 0.5 * b1);
    const double slope =
        (numer(v(z_asym)) + numer(v(T - z_asym))) / z_asym;
    auto paired = [&](double z) {
      if (z < z_asym)
        return slope * z * lattice_sum(z, config.T, s);
      return lattice_sum(z, config.T, s) * (numer(v(z)) + numer(v(T - z)));
    };
    long nodes = 0;
    double val = integrate_tanh_sinh0(paired, b1, 0.25 * tol, &nodes);
    if (b1 < 0.5 * T)
      val += integrate_adaptive(paired, b1, 0.5 * T, 0.25 * tol, brk, &nodes);
    return 2.0 * val;
  };

  SeparationFunctionals out;
  out.F_plus = integral(
      [](double w) { return std::fabs(1.0 - w) - std::fabs(w); });
  out.F_minus = integral([m](double w) {
    return std::fabs(m - 1.0 - w) - std::fabs(m - w);
  });
  return out;
}


Eigen::VectorXd mollified_gradient(const Configuration& config,
                                   const FractionalParams& params, double eps,
                                   double tol) {
  params.validate();
  if (params.p <= 1.0)
    throw WrongRegime("mollified first-variation formula requires p > 1");
  if (params.T != config.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  MollifierSpec moll(eps);
  const double T = static_cast<double>(config.T);
  const double p = params.p;
  const double sp = params.sp();

  // Correlation form of the first variation.  With
  //   g(t) = int_0^T |u^eps(x+t) - u^eps(x)|^p dx
  // the energy is int_R |t|^{-1-sp} g(t) dt, so differentiating under the
  // integral and folding the lattice of images into L(t) gives
  //   dE/dx_i = 2p int_0^{T/2} L(t) phi_i(t) dt,
  //   phi_i(t) = int G_p(u^eps(x+t) - u^eps(x)) (r_i(x+t) - r_i(x)) dx,
  // where r_i is the periodised bump at x_i (= du^eps/dx_i) and the x-range
  // is the union of the two eps-windows where the second factor lives.  The
  // t-integrand is even and O(t^{p-1-sp}) at 0: no principal-value
  // cancellation is needed, and each component costs a single 1-D adaptive
  // pass with cheap window integrals inside.
  auto ue = [&](double x) { return evaluate_u_mollified(config, moll, x); };
  auto Gp = [p](double v) {
    return v == 0.0 ? 0.0 : std::pow(std::fabs(v), p - 1.0) * (v > 0.0 ? 1.0 : -1.0);
  };
  auto rho_at = [&](double x, int j) {  // periodised bump at x_j
    const double r = x - config.points[j];
    return moll.rho(r - T * std::round(r / T));
  };
  auto uprime = [&](double x) {
    double d = 1.0;
    for (int j = 0; j < config.T; ++j) d -= rho_at(x, j);
    return d;
  };

  // regular part of L at t = 0: 2 sum_{k>=1} (kT)^{-1-sp}, with an
  // integral-comparison tail for the truncated part
  double R0 = 0.0;
  for (int k = 1; k <= 2000; ++k) R0 += std::pow(k * T, -1.0 - sp);
  R0 = 2.0 * (R0 + std::pow(2000.5, -sp) / (sp * std::pow(T, 1.0 + sp)));

  const double rho_max = moll.rho(0.0);
  const double rho1_max = std::fabs(moll.rho_prime(0.58 * eps));
  const double mag0 =
      std::pow(1.0 + rho_max, p - 1.0) * rho1_max * 4.0 * eps;

  Eigen::VectorXd g(config.T);
  for (int i = 0; i < config.T; ++i) {
    const double xi = config.points[i];
    auto ri = [&](double x) { return rho_at(x, i); };

    // Psi = int G_p(u') r_i' over the window: small-t coefficient of phi/t^p
    auto psi_integrand = [&](double x) {
      double r = x - xi;
      r -= T * std::round(r / T);
      return Gp(uprime(x)) * moll.rho_prime(r);
    };
    // Psi multiplies t^{p-1-sp} over [0, t_asym]; errors in it enter the
    // gradient amplified by ~t_asym^{p-sp}, so it needs a tight tolerance.
    const double Psi = integrate_adaptive(psi_integrand, xi - eps, xi + eps,
                                          1e-11 * (1.0 + mag0), {xi});

    // Window integral at offset t, deterministic: split at the (few) zeros
    // of Delta(x) = u^eps(x+t) - u^eps(x) located by bisection, then
    // composite Gauss with a xi^4 grading substitution into each zero, which
    // turns the |Delta|^{p-1} cusp into the polynomial-like xi^{4p-1}.
    auto window_integral = [&](double t, double a, double b) {
      auto h = [&](double x) {
        return Gp(ue(x + t) - ue(x)) * (ri(x + t) - ri(x));
      };
      auto Delta = [&](double x) { return ue(x + t) - ue(x); };

      std::vector<double> cuts{a};
      std::vector<bool> is_root{false};
      if (p != 2.0) {
        constexpr int NS = 33;
        double xs[NS], dv[NS], amax = 0.0;
        for (int k = 0; k < NS; ++k) {
          xs[k] = a + (b - a) * k / (NS - 1);
          dv[k] = Delta(xs[k]);
          amax = std::max(amax, std::fabs(dv[k]));
        }
        for (int k = 0; k + 1 < NS; ++k) {
          if (dv[k] == 0.0 && k > 0) {
            cuts.push_back(xs[k]);
            is_root.push_back(true);
            continue;
          }
          const bool change = dv[k] * dv[k + 1] < 0.0;
          // A sharp dip toward zero without a sign change marks a grazing
          // double root between samples.  Samples adjacent to an actual
          // crossing are naturally small and must not count: that crossing is
          // already handled by bisection, and a spurious extra cut would
          // destroy the symmetric piece structure that makes the quadrature
          // errors cancel on symmetric configurations.
          const bool graze = !change && k > 0 && dv[k - 1] * dv[k] > 0.0 &&
                             std::fabs(dv[k]) < std::fabs(dv[k - 1]) &&
                             std::fabs(dv[k]) < std::fabs(dv[k + 1]) &&
                             std::fabs(dv[k]) < 0.05 * amax;
          if (change) {
            double lo = xs[k], hi = xs[k + 1], flo = dv[k];
            for (int it = 0; it < 60; ++it) {
              const double mid = 0.5 * (lo + hi), fm = Delta(mid);
              if (fm == 0.0) { lo = hi = mid; break; }
              if (flo * fm < 0.0) hi = mid;
              else { lo = mid; flo = fm; }
            }
            cuts.push_back(0.5 * (lo + hi));
            is_root.push_back(true);
          } else if (graze) {
            cuts.push_back(xs[k]);  // sharp dip: isolate it at a cut point
            is_root.push_back(true);
          }
        }
      }
      cuts.push_back(b);
      is_root.push_back(false);

      const GaussRule& plain = gauss_rule(16);
      const GaussRule& graded = gauss_rule(20);
      double acc = 0.0;
      for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double alpha = cuts[c], beta = cuts[c + 1];
        if (beta - alpha < 1e-14) continue;
        auto smooth_part = [&](double lo, double hi) {
          if (hi - lo < 1e-14) return;
          const int nseg =
              std::max(1, static_cast<int>(std::ceil((hi - lo) / (0.15 * eps))));
          for (int sgm = 0; sgm < nseg; ++sgm) {
            const double sa = lo + (hi - lo) * sgm / nseg;
            const double sb = lo + (hi - lo) * (sgm + 1) / nseg;
            const double m = 0.5 * (sa + sb), hw = 0.5 * (sb - sa);
            for (int q = 0; q < 16; ++q)
              acc += hw * plain.weights[q] * h(m + hw * plain.nodes[q]);
          }
        };
        auto graded_part = [&](double root, double far) {
          const double L = far - root;  // signed; the set integral is unsigned
          for (int q = 0; q < 20; ++q) {
            const double z = 0.5 * (1.0 + graded.nodes[q]);
            acc += 0.5 * graded.weights[q] * std::fabs(L) * 4.0 * z * z * z *
                   h(root + L * z * z * z * z);
          }
        };
        // the grading stays within the smoothness scale of the integrand;
        // the remainder of the piece is plain composite Gauss
        const double zone = std::min(0.25 * eps, 0.45 * (beta - alpha));
        double lo = alpha, hi = beta;
        if (is_root[c]) {
          graded_part(alpha, alpha + zone);
          lo = alpha + zone;
        }
        if (is_root[c + 1]) {
          graded_part(beta, beta - zone);
          hi = beta - zone;
        }
        smooth_part(lo, hi);
      }
      return acc;
    };

    auto phi = [&](double t) {
      // support: [xi-eps, xi+eps] u ([xi-eps, xi+eps] - t)
      if (t < 2.0 * eps) return window_integral(t, xi - eps - t, xi + eps);
      return window_integral(t, xi - eps - t, xi + eps - t) +
             window_integral(t, xi - eps, xi + eps);
    };

    // t-breakpoints: offsets at which the moving window passes an edge
    std::vector<double> brk;
    for (int j = 0; j < config.T; ++j) {
      const double d = config.points[j] - xi;
      for (double c : {-2.0 * eps, 0.0, 2.0 * eps})
        for (double v : {d + c, -d + c}) {
          const double r = wrapT(v, T);
          if (r > 1e-12 && r < 0.5 * T - 1e-12) brk.push_back(r);
          if (T - r > 1e-12 && T - r < 0.5 * T - 1e-12) brk.push_back(T - r);
        }
    }
    brk.push_back(2.0 * eps);
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    const double b1 = std::min(brk.front(), 0.5 * T);

    // Crossover to the small-t expansion phi(t) = Psi |t|^p (1 + O(t^2)):
    // the evenness of phi in t kills the odd correction, so the relative
    // truncation error is (t/eps)^2-sized.  Keeping the crossover well above
    // zero matters: the kernel L(t) ~ t^{-1-sp} amplifies inner-quadrature
    // noise in phi into a non-integrable bias as t -> 0.
    const double t_asym = std::min(0.025 * eps, 0.25 * b1);

    auto f = [&](double t) {
      if (t < t_asym) {
        const double tp = std::pow(t, p);
        return Psi * (std::pow(t, p - 1.0 - sp) + R0 * tp);
      }
      return lattice_sum(t, config.T, sp) * phi(t);
    };

    long nodes = 0;
    double val = integrate_tanh_sinh0(f, b1, 0.25 * tol / (2.0 * p), &nodes);
    if (b1 < 0.5 * T)
      val += integrate_adaptive(f, b1, 0.5 * T, 0.25 * tol / (2.0 * p), brk,
                                &nodes, 0.002 * tol, 3e-11);
    g[i] = 2.0 * p * val;
  }
  return g;
}

VariationReport mollified_hessian(const Configuration& config,
                                  const FractionalParams& params, double eps) {
  params.validate();
  if (params.p <= 1.0)
    throw WrongRegime("mollified second-variation formula requires p > 1");
  if (params.T != config.T)
    throw InvalidConfiguration("params.T does not match configuration period");
  MollifierSpec moll(eps);
  const int n = config.T;
  const double T = static_cast<double>(n);
  const double p = params.p;
  const double sp = params.sp();
  auto ue = [&](double x) { return evaluate_u_mollified(config, moll, x); };

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  const bool disjoint = config.min_gap() >= 4.0 * eps;

  if (disjoint) {
    // supports are separated: all periodic images folded into lattice_sum,
    // the kernel never becomes singular on the integration domain
    const int ng = p < 2.0 ? 48 : 32;
    const GaussRule& rule = gauss_rule(ng);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double acc = 0.0;
        for (int a = 0; a < ng; ++a) {
          const double x = config.points[i] + eps * rule.nodes[a];
          const double wx = eps * rule.weights[a] * moll.rho(x - config.points[i]);
          const double ux = ue(x);
          for (int b = 0; b < ng; ++b) {
            const double y = config.points[j] + eps * rule.nodes[b];
            const double wy = eps * rule.weights[b] * moll.rho(y - config.points[j]);
            const double du = std::fabs(ux - ue(y));
            const double weak = du > 0.0 ? std::pow(du, p - 2.0) : 0.0;
            double z = wrapT(x - y, T);
            z = std::min(std::max(z, 1e-14), T - 1e-14);
            acc += wx * wy * weak * lattice_sum(z, n, sp);
          }
        }
        H(i, j) = H(j, i) = -2.0 * p * (p - 1.0) * acc;
      }
    }
  } else {
    // general symmetric-difference branch (no sign assertion below 4*eps)
    auto rho_i = [&](double x, int i) { return moll.rho(x - config.points[i]); };
    auto rho_per = [&](double x, int j) {
      const double r = x - config.points[j];
      const double k = std::round(r / T);
      return moll.rho(r - k * T);
    };
    const GaussRule& rx = gauss_rule(24);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto xslice = [&](double z) {
          // x-integral of the symmetric-difference integrand at offset z
          auto f = [&](double x) {
            const double d = ue(x) - ue(x + z);
            const double weak =
                d != 0.0 ? std::pow(std::fabs(d), p - 2.0) : 0.0;
            return weak * (rho_per(x, j) - rho_per(x + z, j)) *
                   (rho_i(x, i) - rho_i(x + z, i));
          };
          // support of the second factor: B_eps(x_i) u (B_eps(x_i) - z)
          double acc = 0.0;
          const double c1 = config.points[i], c2 = config.points[i] - z;
          const bool merged = std::fabs(c1 - c2) < 2.0 * eps;
          if (merged) {
            const double a = std::min(c1, c2) - eps, b = std::max(c1, c2) + eps;
            for (int q = 0; q < 24; ++q)
              acc += 0.5 * (b - a) * rx.weights[q] *
                     f(0.5 * (a + b) + 0.5 * (b - a) * rx.nodes[q]);
          } else {
            for (double c : {c1, c2})
              for (int q = 0; q < 24; ++q)
                acc += eps * rx.weights[q] * f(c + eps * rx.nodes[q]);
          }
          return acc;
        };
        auto paired = [&](double z) {
          if (z < 1e-60) return 0.0;  // integrable; avoids inf * 0
          return (xslice(z) + xslice(-z)) * std::pow(z, -1.0 - sp);
        };
        long nodes = 0;
        double acc = integrate_tanh_sinh0(paired, 0.5 * eps, 1e-10, &nodes);
        acc += integrate_adaptive(paired, 0.5 * eps, 4.0 * eps + T, 1e-9,
                                  {eps, 2.0 * eps, 4.0 * eps, T}, &nodes);
        // far offsets: one period at a time until negligible
        double zlo = 4.0 * eps + T;
        for (int chunk = 0; chunk < 200; ++chunk) {
          const double add =
              integrate_adaptive(paired, zlo, zlo + T, 1e-10, {}, &nodes);
          acc += add;
          zlo += T;
          if (std::fabs(add) < 1e-11 * (1.0 + std::fabs(acc))) break;
        }
        H(i, j) = H(j, i) = p * (p - 1.0) * acc;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) row += H(i, j);
    H(i, i) = -row;
  }

  VariationReport rep;
  rep.gradient = Eigen::VectorXd::Zero(n);
  double residual = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    residual = std::max(residual, std::fabs(H.row(i).sum()));
    scale = std::max(scale, H.row(i).cwiseAbs().maxCoeff());
  }
  rep.row_sum_residual = scale > 0.0 ? residual / scale : 0.0;
  rep.hessian = std::move(H);
  return rep;
}

}  // namespace gagliardo
