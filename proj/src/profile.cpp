#include "gagliardo/profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gagliardo {

namespace {

double wrapT(double x, double T) {
  double r = x - T * std::floor(x / T);
  if (r >= T) r -= T;
  if (r < 0.0) r = 0.0;
  return r;
}

// Moving endpoint on the circle: position(t) = a + slope*t with slope in {0,-1}.
struct Event {
  double pos;   // position at t = tmid
  double a;     // intercept
  int slope;
};

}  // namespace

double CorrelationProfile::eval(double t) const {
  const double Td = static_cast<double>(T);
  double tr = wrapT(t, Td);
  // wrapT maps T to 0; both ends are equivalent by periodicity of g
  auto it = std::upper_bound(
      intervals.begin(), intervals.end(), tr,
      [](double v, const ProfileInterval& iv) { return v < iv.t1; });
  if (it == intervals.end()) it = std::prev(intervals.end());
  double g = 0.0;
  for (const ProfileTerm& term : it->terms)
    g += std::pow(std::fabs(tr - term.k), p) * (term.alpha + term.beta * tr);
  return std::max(g, 0.0);
}

double CorrelationProfile::integral_over_period() const {
  double s = 0.0;
  for (const ProfileInterval& iv : intervals) {
    s += integrate_gauss([this](double t) { return eval(t); }, iv.t0, iv.t1, 24);
  }
  return s;
}

bool CorrelationProfile::has_jump_level_sets() const {
  if (intervals.empty()) return false;
  for (const ProfileTerm& term : intervals.front().terms)
    if (term.k >= 1 && (std::fabs(term.alpha) > 1e-9 || term.beta != 0))
      return true;
  return false;
}

CorrelationProfile correlation_profile(const Configuration& config, double p) {
  if (!(p >= 1.0)) throw InvalidConfiguration("correlation profile requires p >= 1");
  const int T = config.T;
  const double Td = static_cast<double>(T);
  const Eigen::VectorXd& x = config.points;

  // Breakpoints in t: pairwise circular differences (structure changes),
  // the points themselves (a moving endpoint crosses the seam), and the
  // integers (kinks of the |t-k|^p weights).
  std::vector<double> brk{0.0, Td};
  for (int i = 0; i < T; ++i) {
    brk.push_back(x[i]);
    for (int j = 0; j < T; ++j) brk.push_back(wrapT(x[j] - x[i], Td));
  }
  for (int k = 1; k < T; ++k) brk.push_back(static_cast<double>(k));
  std::sort(brk.begin(), brk.end());
  std::vector<double> cuts;
  for (double b : brk)
    if (cuts.empty() || b - cuts.back() > 1e-12) cuts.push_back(b);
  if (Td - cuts.back() < 1e-12) cuts.back() = Td; else cuts.push_back(Td);

  CorrelationProfile prof;
  prof.T = T;
  prof.p = p;

  for (size_t m = 0; m + 1 < cuts.size(); ++m) {
    const double t0 = cuts[m], t1 = cuts[m + 1];
    const double tmid = 0.5 * (t0 + t1);

    std::vector<Event> ev;
    ev.reserve(2 * T);
    for (int j = 0; j < T; ++j) {
      ev.push_back({x[j], x[j], 0});
      const double pos = wrapT(x[j] - tmid, Td);
      ev.push_back({pos, pos + tmid, -1});
    }
    std::sort(ev.begin(), ev.end(),
              [](const Event& l, const Event& r) { return l.pos < r.pos; });

    std::map<int, std::pair<double, int>> agg;  // k -> (alpha, beta)
    const int n = static_cast<int>(ev.size());
    for (int r = 0; r < n; ++r) {
      const Event& lo = ev[r];
      const Event& hi = ev[(r + 1) % n];
      const double wrap = (r + 1 == n) ? Td : 0.0;
      const double len = hi.pos + wrap - lo.pos;
      const double alpha = hi.a + wrap - lo.a;
      const int beta = hi.slope - lo.slope;
      if (len <= 1e-14 && beta == 0) continue;
      const double xs = lo.pos + 0.5 * len;
      const int k = static_cast<int>(jump_count(config, xs, xs + tmid));
      auto& acc = agg[k];
      acc.first += alpha;
      acc.second += beta;
    }

    ProfileInterval iv;
    iv.t0 = t0;
    iv.t1 = t1;
    for (const auto& [k, ab] : agg) {
      if (std::fabs(ab.first) < 1e-13 && ab.second == 0) continue;
      iv.terms.push_back({k, ab.first, ab.second});
    }
    prof.intervals.push_back(std::move(iv));
  }
  return prof;
}

namespace {

// Evaluate one interval's terms at t.
double eval_terms(const std::vector<ProfileTerm>& terms, double p, double t) {
  double g = 0.0;
  for (const ProfileTerm& term : terms)
    g += std::pow(std::fabs(t - term.k), p) * (term.alpha + term.beta * t);
  return g;
}

void check_integrable(const CorrelationProfile& profile, double sp) {
  if (!(sp < profile.p))
    throw DivergentEnergy("sp >= p: kernel fold diverges at t = 0");
  if (profile.has_jump_level_sets() && sp >= 1.0)
    throw DivergentEnergy(
        "configuration with jumps has infinite energy for sp >= 1");
}

}  // namespace

EnergyReport singular_integral(const CorrelationProfile& profile, double sp,
                               double tol) {
  check_integrable(profile, sp);
  const int T = profile.T;
  const double p = profile.p;
  EnergyReport rep;
  long nodes = 0;

  const size_t n_iv = profile.intervals.size();
  const double tol_share = 0.5 * tol / static_cast<double>(std::max<size_t>(n_iv, 1));

  double total = 0.0;
  double tail_lo = 0.0, tail_hi = 0.0;
  for (size_t m = 0; m < n_iv; ++m) {
    const ProfileInterval& iv = profile.intervals[m];
    auto g = [&](double t) { return eval_terms(iv.terms, p, t); };

    if (m == 0) {
      const double b = iv.t1;
      // singular part int_0^b g(t) t^(-1-sp) dt, term by term
      for (const ProfileTerm& term : iv.terms) {
        double alpha = term.alpha;
        const double beta = term.beta;
        if (term.k == 0) {
          total += alpha * std::pow(b, p - sp) / (p - sp) +
                   beta * std::pow(b, p + 1.0 - sp) / (p + 1.0 - sp);
        } else {
          // level sets with k >= 1 have measure -> 0 as t -> 0; alpha is
          // zero up to construction round-off and must not multiply t^(-1-sp)
          if (std::fabs(alpha) < 1e-9) alpha = 0.0;
          const int k = term.k;
          total += integrate_tanh_sinh0(
              [&](double t) {
                return std::pow(std::fabs(t - k), p) * (alpha + beta * t) *
                       std::pow(t, -1.0 - sp);
              },
              b, tol_share, &nodes);
        }
      }
      // smooth remainder of the kernel on the first interval
      total += integrate_tanh_sinh0(
          [&](double t) {
            const double rest =
                periodic_kernel_fast(t, T, sp) - std::pow(t, -1.0 - sp);
            return g(t) * rest;
          },
          b, tol_share, &nodes);
    } else {
      total += integrate_adaptive(
          [&](double t) { return g(t) * periodic_kernel_fast(t, T, sp); },
          iv.t0, iv.t1, tol_share, {}, &nodes);
    }

    // rigorous kernel-truncation bracket (diagnostic, coarse quadrature)
    const double t_lo = (m == 0) ? 0.5 * iv.t1 : 0.5 * (iv.t0 + iv.t1);
    const auto kv = periodic_kernel(std::max(t_lo, 1e-12), T, sp, 32);
    double gint = integrate_gauss(g, iv.t0, iv.t1, 12, &nodes);
    tail_lo += gint * kv.tail.lower;
    tail_hi += gint * kv.tail.upper;
  }

  rep.value = 2.0 * total;
  rep.tail_lower = 2.0 * tail_lo;
  rep.tail_upper = 2.0 * tail_hi;
  rep.abs_err_est = tol + (rep.tail_upper - rep.tail_lower);
  rep.nodes = nodes;
  if (rep.value < 0.0 && rep.value > -tol) rep.value = 0.0;
  return rep;
}

double singular_integral_core(const CorrelationProfile& profile, double sp,
                              double R, double tol) {
  check_integrable(profile, sp);
  const int T = profile.T;
  const double Td = static_cast<double>(T);
  if (!(R > 0.0)) throw InvalidRadius("core radius must be positive");
  const double p = profile.p;
  long nodes = 0;
  const size_t n_iv = profile.intervals.size();
  const double tol_share = 0.5 * tol / static_cast<double>(std::max<size_t>(n_iv, 1));
  // the truncated kernel loses a term where t crosses R mod T
  const double rbreak = R - Td * std::floor(R / Td);

  double total = 0.0;
  for (size_t m = 0; m < n_iv; ++m) {
    const ProfileInterval& iv = profile.intervals[m];
    auto g = [&](double t) { return eval_terms(iv.terms, p, t); };
    if (m == 0) {
      const double b = iv.t1;
      for (const ProfileTerm& term : iv.terms) {
        double alpha = term.alpha;
        const double beta = term.beta;
        if (term.k == 0) {
          total += alpha * std::pow(b, p - sp) / (p - sp) +
                   beta * std::pow(b, p + 1.0 - sp) / (p + 1.0 - sp);
        } else {
          if (std::fabs(alpha) < 1e-9) alpha = 0.0;
          const int k = term.k;
          total += integrate_tanh_sinh0(
              [&](double t) {
                return std::pow(std::fabs(t - k), p) * (alpha + beta * t) *
                       std::pow(t, -1.0 - sp);
              },
              b, tol_share, &nodes);
        }
      }
      total += integrate_tanh_sinh0(
          [&](double t) {
            const double rest = periodic_kernel_truncated(t, T, sp, R) -
                                std::pow(t, -1.0 - sp);
            return g(t) * rest;
          },
          b, tol_share, &nodes);
    } else {
      total += integrate_adaptive(
          [&](double t) {
            return g(t) * periodic_kernel_truncated(t, T, sp, R);
          },
          iv.t0, iv.t1, tol_share, {rbreak}, &nodes);
    }
  }
  return 2.0 * total;
}

}  // namespace gagliardo
