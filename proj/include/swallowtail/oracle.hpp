#pragma once

#include <complex>
#include <numbers>

#include "swallowtail/params.hpp"

namespace swallowtail {

struct QuadratureConfig {
  double target_abs_tol = 1e-10;
  int max_subdivisions = 2000;  // per ray
  double truncation_safety = 10.0;

  // target_abs_tol > 0, max_subdivisions >= 8, truncation_safety > 1.
  void validate() const;
};

struct EvalResult {
  std::complex<double> value;
  double abs_error_estimate = 0.0;
  int subdivisions_used = 0;
};

// The integration contour: a ray from infinity at `left_angle` into the
// origin, then out along `right_angle`. Both angles must sit inside the
// valleys of the quintic term, i.e. sin(5 theta) > 0, which holds on
// (4pi/5, pi) and (0, pi/5). `radius_scale` multiplies the truncation
// radius picked from the tail bound.
struct Contour {
  double left_angle = 0.9 * std::numbers::pi;
  double right_angle = 0.1 * std::numbers::pi;
  double radius_scale = 1.0;

  void validate() const;
};

// Outcome of a quadrature run that did not throw. `tolerance_met` is false
// when subdivisions ran out or the remaining error sits at the roundoff
// floor of double precision.
struct EvalAttempt {
  EvalResult result;
  bool tolerance_met = false;
  double truncation_radius = 0.0;
};

// Q(x,y,z) for Q-normalized p. Throws ToleranceNotReached when the error
// estimate cannot be brought under cfg.target_abs_tol.
EvalResult eval_q(const Params& p, const QuadratureConfig& cfg = {});

// S(x,y,z) = 5^{-1/5} Q(s_to_q(p)); the error estimate is scaled alike.
EvalResult eval_s(const Params& p, const QuadratureConfig& cfg = {});

// Dispatches on p.form.
EvalResult eval(const Params& p, const QuadratureConfig& cfg = {});

// Integral of t^k exp[i(t^5/5 + x t^3/3 + y t^2/2 + z t)], k in {1,2,3}.
// dQ/dz = i M1, dQ/dy = (i/2) M2, dQ/dx = (i/3) M3.
EvalResult eval_q_moment(const Params& p, int k, const QuadratureConfig& cfg = {});

// Non-throwing core shared by the evaluators above (k in {0,1,2,3}).
EvalAttempt try_eval_q(const Params& p, int k, const QuadratureConfig& cfg = {},
                       const Contour& contour = {});

// Largest modulus of t^k exp(i phase) along the contour. Values far above 1
// mean the result is an exponentially cancelling sum and accuracy is lost.
double integrand_peak(const Params& p, int k = 0, const Contour& contour = {});

}  // namespace swallowtail
