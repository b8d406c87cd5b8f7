#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/energy.hpp"

namespace gagliardo {

struct SweepRow {
  double param = 0.0;        // s, or epsilon for the critical scan
  double raw = 0.0;          // energy value
  double scaled = 0.0;       // s*F, (1-s)*F, or the log-compensated energy
  double extrapolant = 0.0;  // running Richardson extrapolant / fitted slope
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::optional<double> target;
  double p = 2.0;
  int T = 1;
  int d = 1;
  std::string label;
  // critical-scan diagnostics
  bool bounded_below = true;
  double fitted_slope = 0.0;
  // largest certified quadrature error across rows
  double err_certified = 0.0;
};

// d*omega_d/(p*T^d) with omega_d = 2 pi^{d/2} / Gamma(d/2).
double limit_constant_s0(int d, double p, int T);

// K_{d,p} = 2 pi^{(d-1)/2} Gamma((p+1)/2) / (p Gamma((d+p)/2)); equals 2/p at d=1.
double limit_constant_s1(int d, double p);

// s -> 0 sweep for a smooth 1-periodic-extension function: rows
// (s, F_s, s*F_s, first-order Richardson extrapolant), target
// limit_constant_s0 * F0 with F0 by double quadrature.  Schedule must be
// strictly decreasing inside [0.02, 0.99].
SweepTable sweep_s0(const Fn& u, double p, int T,
                    const std::vector<double>& schedule,
                    const SmoothHints& hints = {});

// s -> 1 sweep: rows (s, F_s, (1-s)*F_s, extrapolant), target
// K_{1,p} * int |u'|^p.  If uprime_lp is absent it is computed by
// finite-difference quadrature.  Schedule strictly increasing in [0.02, 0.99].
SweepTable sweep_s1(const Fn& u, double p, int T,
                    const std::vector<double>& schedule,
                    std::optional<double> uprime_lp = std::nullopt,
                    const SmoothHints& hints = {});

// Critical-regime (s = 1/p) logarithmic scan over a decreasing geometric
// mollification schedule: rows (eps, F_eps, F_eps + 2^{2-p} T ln(eps),
// fitted slope of F vs ln(1/eps) over the rows so far); flags whether the
// compensated column stays bounded below.
SweepTable critical_scan(const Configuration& config, double p,
                         const std::vector<double>& eps_schedule);

}  // namespace gagliardo
