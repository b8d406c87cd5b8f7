#pragma once

#include <vector>

#include "gagliardo/configuration.hpp"
#include "gagliardo/params.hpp"
#include "gagliardo/profile.hpp"
#include "gagliardo/quadrature.hpp"

namespace gagliardo {

// --- configuration energy (profile path) -----------------------------------

EnergyReport energy_config(const Configuration& config,
                           const FractionalParams& params, double tol = 1e-8);

// Resolved |x-y| <= R part of the configuration energy (sandwich core).
double energy_config_core(const Configuration& config,
                          const FractionalParams& params, double R,
                          double tol = 1e-8);

// --- energies of smooth 1-periodic-extension functions ----------------------

// Structure hints for the quadrature: axis breakpoints where u has rapid
// transitions, and the transition length scale (0 = none).
struct SmoothHints {
  std::vector<double> x_breaks;
  double small_scale = 0.0;
};

EnergyReport energy_smooth(const Fn& u, const FractionalParams& params,
                           double tol = 1e-8, const SmoothHints& hints = {});

double energy_smooth_core(const Fn& u, const FractionalParams& params,
                          double R, double tol = 1e-8,
                          const SmoothHints& hints = {});

// F0 = int_0^T int_0^T |u(x)-u(y)|^p dy dx for an evaluable function.
double energy_zero_smooth(const Fn& u, double p, int T,
                          const SmoothHints& hints = {});

// --- the s = 0 limit energy --------------------------------------------------

// f_p(l, l', c) = int_{-l}^{l} int_{-l'}^{l'} |x - y - c|^p dy dx, exact.
double segment_pair_integral(double l, double lp, double c, double p);

// F0 over the segment-pair decomposition.
double energy_zero(const Configuration& config, double p);

// --- energy-estimates sandwich ----------------------------------------------

struct SandwichTails {
  double lower = 0.0;
  double upper = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

// Tail bounds of the (s,p)-energy beyond radius R in terms of F0; valid for
// any dimension d >= 1 (pure arithmetic), requires R > 2*T*sqrt(d).
SandwichTails tail_sandwich(double F0, double R, const FractionalParams& params);

}  // namespace gagliardo
