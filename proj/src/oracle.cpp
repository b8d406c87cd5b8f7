#include "gagliardo/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gagliardo/energy.hpp"
#include "gagliardo/params.hpp"

namespace gagliardo {

namespace {

struct AxisMesh {
  std::vector<double> x, w;
};

AxisMesh build_axis(const std::vector<double>& cuts, int ng) {
  AxisMesh m;
  const GaussRule& r = gauss_rule(ng);
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    if (b - a < 1e-14) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < ng; ++i) {
      m.x.push_back(mid + half * r.nodes[i]);
      m.w.push_back(half * r.weights[i]);
    }
  }
  return m;
}

// Near-field integrator for one panel pair and one image shift: adaptive
// pair-space bisection.  A cell is integrated by tensor Gauss (different
// orders per axis, so no node pair ever has x = y) once it is separated from
// both singular lines of the integrand: the kernel line x - y = shift and
// the numerator zero line u(x) = u(y).  Cells pinned on the kernel line away
// from the numerator zero (jump corners) are finished with the closed-form
// antiderivative of |x-y-shift|^{-1-sp}; cells on the coincident or
// numerator lines stop at the resolution scale w_fine.
struct NearField {
  const Fn* u;
  double p, sp, shift, w_fine;
  long nodes = 0;
  double total = 0.0;

  double gauss_cell(double x1, double x2, double y1, double y2) {
    const GaussRule& rx = gauss_rule(6);
    const GaussRule& ry = gauss_rule(7);
    const double xm = 0.5 * (x1 + x2), xh = 0.5 * (x2 - x1);
    const double ym = 0.5 * (y1 + y2), yh = 0.5 * (y2 - y1);
    double acc = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double x = xm + xh * rx.nodes[i];
      const double ux = (*u)(x);
      for (int j = 0; j < 7; ++j) {
        const double y = ym + yh * ry.nodes[j];
        const double dist = std::fabs(x - y - shift);
        if (dist < 1e-150) continue;
        const double num = std::pow(std::fabs(ux - (*u)(y)), p);
        acc += xh * rx.weights[i] * yh * ry.weights[j] * num *
               std::pow(dist, -1.0 - sp);
      }
    }
    nodes += 42;
    return acc;
  }

  // exact integral of |x-y-shift|^{-1-sp} over the cell (G'' = |t|^{-1-sp})
  double kernel_cell(double x1, double x2, double y1, double y2) const {
    auto G = [this](double t) {
      return -std::pow(std::fabs(t), 1.0 - sp) / (sp * (1.0 - sp));
    };
    return G(x2 - y1 - shift) - G(x1 - y1 - shift) - G(x2 - y2 - shift) +
           G(x1 - y2 - shift);
  }

  void integrate(double x1, double x2, double y1, double y2, int depth) {
    const double wx = x2 - x1, wy = y2 - y1;
    const double w = std::max(wx, wy);
    const double tlo = x1 - y2 - shift, thi = x2 - y1 - shift;
    const double distk = tlo > 0.0 ? tlo : (thi < 0.0 ? -thi : 0.0);

    // numerator u(x)-u(y) is affine with slope 1 in x - y on a panel pair
    const double xc = 0.5 * (x1 + x2), yc = 0.5 * (y1 + y2);
    const double vc = (*u)(xc) - (*u)(yc);
    const double vlo = vc + (tlo - (xc - yc - shift));
    const double vhi = vc + (thi - (xc - yc - shift));
    const bool smooth_num = p == 2.0;  // |v|^2 is a polynomial
    const double vmargin =
        vlo > 0.0 ? vlo : (vhi < 0.0 ? -vhi : 0.0);  // distance to kink

    const bool kernel_ok = distk >= 1.5 * w;
    const bool numer_ok = smooth_num || vmargin >= 0.5 * w;
    if ((kernel_ok && numer_ok) || depth >= 60) {
      total += gauss_cell(x1, x2, y1, y2);
      return;
    }
    if (!kernel_ok) {
      // does the numerator zero meet the kernel line inside this cell?
      const bool coincident = std::fabs(vc) <= 3.0 * w;
      if (!coincident && w <= 1e-8) {
        // jump corner: numerator is (nearly) the constant |vc|^p here
        total += std::pow(std::fabs(vc), p) * kernel_cell(x1, x2, y1, y2);
        nodes += 4;
        return;
      }
      if (coincident && w <= w_fine) {  // diagonal: resolution floor reached
        total += gauss_cell(x1, x2, y1, y2);
        return;
      }
    } else if (w <= w_fine) {  // numerator kink only
      total += gauss_cell(x1, x2, y1, y2);
      return;
    }
    if (wx >= wy) {
      const double xm = 0.5 * (x1 + x2);
      integrate(x1, xm, y1, y2, depth + 1);
      integrate(xm, x2, y1, y2, depth + 1);
    } else {
      const double ym = 0.5 * (y1 + y2);
      integrate(x1, x2, y1, ym, depth + 1);
      integrate(x1, x2, ym, y2, depth + 1);
    }
  }
};

}  // namespace

EnergyReport cell_pair_oracle(const Fn& u, double s, double p, int T, int K,
                              int n, const std::vector<double>& breakpoints,
                              double tail_rel_tol) {
  if (n < 16) throw InvalidConfiguration("oracle requires n >= 16 nodes per axis");
  const double Td = static_cast<double>(T);
  const double sp = s * p;

  std::vector<double> cuts{0.0, Td};
  for (double b : breakpoints) {
    double r = b - Td * std::floor(b / Td);
    if (r > 1e-13 && r < Td - 1e-13) cuts.push_back(r);
  }
  if (breakpoints.empty())
    for (int i = 1; i < 8; ++i) cuts.push_back(Td * i / 8.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  long nodes = 0;

  // near cells k in {-1,0,1}: adaptive pair-space bisection per panel pair
  double core = 0.0;
  for (int k = -1; k <= 1; ++k) {
    NearField nf{&u, p, sp, k * Td, Td / n};
    for (size_t a = 0; a + 1 < cuts.size(); ++a)
      for (size_t b = 0; b + 1 < cuts.size(); ++b) {
        if (cuts[a + 1] - cuts[a] < 1e-14) continue;
        if (cuts[b + 1] - cuts[b] < 1e-14) continue;
        nf.integrate(cuts[a], cuts[a + 1], cuts[b], cuts[b + 1], 0);
      }
    core += nf.total;
    nodes += nf.nodes;
  }

  // far cells: numerator is k-independent, precompute it on a coarse mesh
  const AxisMesh cx = build_axis(cuts, 12);
  const AxisMesh cy = build_axis(cuts, 13);
  std::vector<double> ucx(cx.x.size()), ucy(cy.x.size());
  for (size_t i = 0; i < cx.x.size(); ++i) ucx[i] = u(cx.x[i]);
  for (size_t j = 0; j < cy.x.size(); ++j) ucy[j] = u(cy.x[j]);
  std::vector<double> P(cx.x.size() * cy.x.size());
  double F0 = 0.0;
  for (size_t i = 0; i < cx.x.size(); ++i)
    for (size_t j = 0; j < cy.x.size(); ++j) {
      const double v =
          cx.w[i] * cy.w[j] * std::pow(std::fabs(ucx[i] - ucy[j]), p);
      P[i * cy.x.size() + j] = v;
      F0 += v;
    }

  FractionalParams prm{s, p, T, 1};
  const bool adaptive = K <= 0;
  int Kcur = adaptive ? 8 : std::max(K, 3);
  const int Kcap = 4096;
  double far = 0.0;
  int kdone = 1;  // |k| <= kdone already accumulated
  SandwichTails tails;
  for (;;) {
    for (int k = kdone + 1; k <= Kcur; ++k) {
      for (int sign : {1, -1}) {
        const double shift = sign * k * Td;
        double cell = 0.0;
        for (size_t i = 0; i < cx.x.size(); ++i)
          for (size_t j = 0; j < cy.x.size(); ++j) {
            const double d = std::fabs(cx.x[i] - cy.x[j] - shift);
            cell += P[i * cy.x.size() + j] * std::pow(d, -1.0 - sp);
          }
        far += cell;
        nodes += static_cast<long>(cx.x.size() * cy.x.size());
      }
    }
    kdone = Kcur;
    // image cells |k| <= K cover all pair distances up to (K+1)T and none
    // beyond K*T is missing; bracket the remainder with the energy-estimate
    // tails at those two radii
    tails = tail_sandwich(F0, (Kcur + 1) * Td, prm);
    const double lo = tails.lower;
    const SandwichTails up = tail_sandwich(F0, Kcur * Td, prm);
    tails.upper = up.upper;
    tails.c2 = up.c2;
    const double width = tails.upper - lo;
    if (!adaptive || Kcur >= Kcap ||
        width <= tail_rel_tol * (core + far + lo)) {
      tails.lower = lo;
      break;
    }
    Kcur *= 2;
  }

  EnergyReport rep;
  rep.tail_lower = tails.lower;
  rep.tail_upper = tails.upper;
  rep.value = core + far + 0.5 * (tails.lower + tails.upper);
  rep.abs_err_est = 0.5 * (tails.upper - tails.lower);
  rep.nodes = nodes;
  return rep;
}

}  // namespace gagliardo
