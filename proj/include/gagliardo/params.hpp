#pragma once

#include <cmath>

#include "gagliardo/errors.hpp"

namespace gagliardo {

enum class Regime { SubCritical, Critical, SuperCritical };

// Fractional order s in (0,1), exponent p >= 1, integer period T >= 1 and
// dimension d >= 1.  The configuration machinery requires d = 1; d > 1 is
// used only by the closed-form limit constants.
struct FractionalParams {
  double s = 0.5;
  double p = 2.0;
  int T = 1;
  int d = 1;

  // |s*p - 1| below this counts as critical.
  static constexpr double kCriticalTol = 1e-12;

  void validate() const {
    if (!(s > 0.0 && s < 1.0) || !std::isfinite(s))
      throw InvalidConfiguration("s must lie in (0,1)");
    if (!(p >= 1.0) || !std::isfinite(p))
      throw InvalidConfiguration("p must be >= 1");
    if (T < 1) throw InvalidConfiguration("T must be a positive integer");
    if (d < 1) throw InvalidConfiguration("d must be >= 1");
  }

  double sp() const { return s * p; }

  Regime regime() const {
    const double c = sp() - 1.0;
    if (std::fabs(c) <= kCriticalTol) return Regime::Critical;
    return c < 0.0 ? Regime::SubCritical : Regime::SuperCritical;
  }
};

}  // namespace gagliardo
