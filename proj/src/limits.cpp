#include "gagliardo/limits.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gagliardo/io.hpp"
#include "gagliardo/mollifier.hpp"

namespace gagliardo {

namespace {

void check_schedule(const std::vector<double>& sched, bool increasing) {
  if (sched.empty()) throw InvalidConfiguration("empty sweep schedule");
  for (double s : sched)
    if (s < 0.02 || s > 0.99)
      throw InvalidConfiguration(
          "sweep s values must lie in [0.02, 0.99]: quadrature error "
          "estimates exceed the signal outside that range");
  for (size_t i = 1; i < sched.size(); ++i) {
    const bool ok = increasing ? sched[i] > sched[i - 1] : sched[i] < sched[i - 1];
    if (!ok) throw InvalidConfiguration("sweep schedule must be strictly monotone");
  }
}

// evaluate the raw energies of all rows concurrently
std::vector<EnergyReport> eval_rows(const Fn& u, double p, int T,
                                    const std::vector<double>& svals,
                                    const SmoothHints& hints) {
  std::vector<EnergyReport> out(svals.size());
  const int workers =
      std::min<int>(thread_cap(), static_cast<int>(svals.size()));
  auto work = [&](int w) {
    for (size_t i = w; i < svals.size(); i += workers) {
      FractionalParams prm{svals[i], p, T, 1};
      out[i] = energy_smooth(u, prm, 1e-8, hints);
    }
  };
  if (workers > 1) {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  } else {
    work(0);
  }
  return out;
}

// Iterated Richardson extrapolation to t = 0 (Neville tableau) of the scaled
// energies, which expand analytically in the small parameter t (= s or 1-s).
// Using all rows so far eliminates the t, t^2, ... terms order by order; a
// single first-order step leaves an O(t1*t2) residue that is too coarse for
// percent-level limit verification.
double richardson_all(const std::vector<double>& t, std::vector<double> v) {
  const size_t n = t.size();
  for (size_t m = 1; m < n; ++m)
    for (size_t i = 0; i + m < n; ++i) {
      const double dt = t[i + m] - t[i];
      if (std::fabs(dt) < 1e-300) return v[0];
      v[i] = (t[i + m] * v[i] - t[i] * v[i + 1]) / dt;
    }
  return v[0];
}

}  // namespace

double limit_constant_s0(int d, double p, int T) {
  if (d < 1) throw InvalidConfiguration("dimension must be >= 1");
  if (!(p >= 1.0)) throw InvalidConfiguration("p must be >= 1");
  if (T < 1) throw InvalidConfiguration("period must be >= 1");
  const double omega = 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
  return d * omega / (p * std::pow(static_cast<double>(T), d));
}

double limit_constant_s1(int d, double p) {
  if (d < 1) throw InvalidConfiguration("dimension must be >= 1");
  if (!(p >= 1.0)) throw InvalidConfiguration("p must be >= 1");
  if (d == 1) return 2.0 / p;  // the two Gamma factors cancel exactly
  return 2.0 * std::pow(M_PI, 0.5 * (d - 1)) * std::tgamma(0.5 * (p + 1.0)) /
         (p * std::tgamma(0.5 * (d + p)));
}

SweepTable sweep_s0(const Fn& u, double p, int T,
                    const std::vector<double>& schedule,
                    const SmoothHints& hints) {
  check_schedule(schedule, /*increasing=*/false);
  SweepTable tab;
  tab.p = p;
  tab.T = T;
  tab.d = 1;
  tab.label = "s->0";
  tab.target = limit_constant_s0(1, p, T) * energy_zero_smooth(u, p, T, hints);
  const auto reports = eval_rows(u, p, T, schedule, hints);
  std::vector<double> ts, vs;
  for (size_t i = 0; i < schedule.size(); ++i) {
    SweepRow row;
    row.param = schedule[i];
    row.raw = reports[i].value;
    row.scaled = schedule[i] * reports[i].value;
    ts.push_back(schedule[i]);
    vs.push_back(row.scaled);
    row.extrapolant = richardson_all(ts, vs);
    tab.rows.push_back(row);
    tab.err_certified = std::max(tab.err_certified,
                                 schedule[i] * reports[i].abs_err_est);
  }
  return tab;
}

SweepTable sweep_s1(const Fn& u, double p, int T,
                    const std::vector<double>& schedule,
                    std::optional<double> uprime_lp, const SmoothHints& hints) {
  check_schedule(schedule, /*increasing=*/true);
  SweepTable tab;
  tab.p = p;
  tab.T = T;
  tab.d = 1;
  tab.label = "s->1";
  double du_lp;
  if (uprime_lp) {
    du_lp = *uprime_lp;
  } else {
    const double h = 1e-6;
    auto integrand = [&](double x) {
      return std::pow(std::fabs((u(x + h) - u(x - h)) / (2.0 * h)), p);
    };
    du_lp = integrate_adaptive(integrand, 0.0, static_cast<double>(T), 1e-8,
                               hints.x_breaks);
  }
  tab.target = limit_constant_s1(1, p) * du_lp;
  const auto reports = eval_rows(u, p, T, schedule, hints);
  std::vector<double> ts, vs;
  for (size_t i = 0; i < schedule.size(); ++i) {
    SweepRow row;
    row.param = schedule[i];
    row.raw = reports[i].value;
    row.scaled = (1.0 - schedule[i]) * reports[i].value;
    ts.push_back(1.0 - schedule[i]);
    vs.push_back(row.scaled);
    row.extrapolant = richardson_all(ts, vs);
    tab.rows.push_back(row);
    tab.err_certified = std::max(
        tab.err_certified, (1.0 - schedule[i]) * reports[i].abs_err_est);
  }
  return tab;
}

SweepTable critical_scan(const Configuration& config, double p,
                         const std::vector<double>& eps_schedule) {
  if (!(p > 1.0))
    throw WrongRegime("critical scan requires p > 1 (s = 1/p must be < 1)");
  if (eps_schedule.empty())
    throw InvalidConfiguration("empty mollification schedule");
  for (size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0 && eps_schedule[i] < 0.5 * config.T))
      throw InvalidConfiguration("mollification radii must lie in (0, T/2)");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw InvalidConfiguration("mollification schedule must decrease");
  }
  const double s = 1.0 / p;
  const double T = static_cast<double>(config.T);
  FractionalParams prm{s, p, config.T, 1};

  SweepTable tab;
  tab.p = p;
  tab.T = config.T;
  tab.d = 1;
  tab.label = "critical";

  const size_t n = eps_schedule.size();
  std::vector<EnergyReport> reports(n);
  const int workers = std::min<int>(thread_cap(), static_cast<int>(n));
  auto work = [&](int w) {
    for (size_t i = w; i < n; i += workers)
      reports[i] = mollified_energy(config, prm, eps_schedule[i], 1e-7);
  };
  if (workers > 1) {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  } else {
    work(0);
  }

  const double comp = std::pow(2.0, 2.0 - p) * T;
  for (size_t i = 0; i < n; ++i) {
    SweepRow row;
    row.param = eps_schedule[i];
    row.raw = reports[i].value;
    row.scaled = reports[i].value + comp * std::log(eps_schedule[i]);
    // running least-squares slope of raw energy against ln(1/eps)
    if (i >= 1) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t j = 0; j <= i; ++j) {
        const double x = std::log(1.0 / eps_schedule[j]);
        const double y = reports[j].value;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double m = i + 1.0;
      row.extrapolant = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    tab.rows.push_back(row);
    tab.err_certified = std::max(tab.err_certified, reports[i].abs_err_est);
  }
  tab.fitted_slope = tab.rows.back().extrapolant;
  const double ref = tab.rows.front().scaled;
  for (const auto& r : tab.rows)
    if (r.scaled < ref - 0.5 - tab.err_certified) tab.bounded_below = false;
  return tab;
}

}  // namespace gagliardo
