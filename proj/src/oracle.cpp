#include "swallowtail/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "gauss_kronrod.hpp"
#include "numfmt.hpp"
#include "swallowtail/errors.hpp"

namespace swallowtail {

namespace {

using cplx = std::complex<double>;

constexpr int kInitialPanels = 8;

// One straight ray t = r e^{i theta}, r >= 0, carrying the integrand
// t^k exp(i phase(t)) dt/dr.
struct Ray {
  double theta;
  cplx unit;
  const Params& p;
  int k;

  Ray(double angle, const Params& params, int power)
      : theta(angle), unit(std::polar(1.0, angle)), p(params), k(power) {}

  cplx operator()(double r) const {
    const cplx t = r * unit;
    const cplx t2 = t * t;
    const cplx phase = t * (t2 * t2 / 5.0 + p.x * t2 / 3.0 + p.y * t / 2.0 + p.z);
    cplx g = unit * std::exp(cplx(0.0, 1.0) * phase);
    for (int j = 0; j < k; ++j) g *= t;
    return g;
  }

  double decay_rate() const { return std::sin(5.0 * theta); }

  // -log of the integrand modulus at radius r.
  double log_decay(double r) const {
    double v = r * (r * r * r * r * decay_rate() / 5.0 + p.x * std::sin(3.0 * theta) * r * r / 3.0 +
                    p.y * std::sin(2.0 * theta) * r / 2.0 + p.z * std::sin(theta));
    if (k > 0) v -= k * std::log(r);
    return v;
  }

  // Smallest radius past which log_decay has slope >= 1, so that the tail
  // beyond any R >= this radius is at most exp(-log_decay(R)).
  double monotone_radius() const {
    const double c = decay_rate();
    const double a = std::abs(p.x * std::sin(3.0 * theta));
    const double b = std::abs(p.y * std::sin(2.0 * theta));
    const double d = std::abs(p.z * std::sin(theta));
    return std::max({1.0, 2.0 * std::sqrt(a / c), std::cbrt(4.0 * b / c),
                     std::pow(4.0 * (d + k + 1.0) / c, 0.25)});
  }
};

struct TruncatedRay {
  double radius;
  double tail_bound;
};

TruncatedRay truncate(const Ray& ray, const QuadratureConfig& cfg, double radius_scale) {
  const double level = std::log(2.0 * cfg.truncation_safety / cfg.target_abs_tol);
  double lo = ray.monotone_radius();
  double hi = lo;
  if (ray.log_decay(lo) < level) {
    while (ray.log_decay(hi) < level) hi *= 2.0;
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ray.log_decay(mid) < level ? lo : hi) = mid;
    }
  }
  const double radius = hi * radius_scale;
  return {radius, std::exp(-ray.log_decay(radius))};
}

struct Panel {
  double a, b;
  detail::PanelEstimate est;
};

struct RayIntegral {
  cplx value;
  double error = 0.0;
  int panels = 0;
};

RayIntegral integrate_ray(const Ray& ray, double radius, double target, int max_panels) {
  std::vector<Panel> panels;
  panels.reserve(static_cast<size_t>(std::max(max_panels, kInitialPanels)) + 1);
  auto cmp = [&panels](size_t l, size_t r) { return panels[l].est.error < panels[r].est.error; };
  std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> reducible(cmp);

  double total_error = 0.0;
  auto place = [&](size_t slot, double a, double b) {
    Panel pn{a, b, detail::gauss_kronrod_15(ray, a, b)};
    total_error += pn.est.error;
    const bool can_improve = pn.est.error > pn.est.roundoff_floor && (b - a) > 1e-13 * radius;
    if (slot == panels.size())
      panels.push_back(pn);
    else
      panels[slot] = pn;
    if (can_improve) reducible.push(slot);
  };

  for (int i = 0; i < kInitialPanels; ++i)
    place(panels.size(), radius * i / kInitialPanels, radius * (i + 1) / kInitialPanels);

  while (total_error > target && !reducible.empty() &&
         static_cast<int>(panels.size()) < max_panels) {
    const size_t worst = reducible.top();
    reducible.pop();
    const double a = panels[worst].a;
    const double b = panels[worst].b;
    const double mid = 0.5 * (a + b);
    total_error -= panels[worst].est.error;
    place(worst, a, mid);
    place(panels.size(), mid, b);
  }

  RayIntegral out;
  for (const Panel& pn : panels) {
    out.value += pn.est.value;
    out.error += pn.est.error;
    ++out.panels;
  }
  return out;
}

void check_moment(int k) {
  if (k < 0 || k > 3) throw InvalidArgument("moment order must be in {0,1,2,3}, got " + std::to_string(k));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(target_abs_tol > 0.0) || !std::isfinite(target_abs_tol))
    throw InvalidArgument("target_abs_tol must be a positive finite number");
  if (max_subdivisions < 8) throw InvalidArgument("max_subdivisions must be at least 8");
  if (!(truncation_safety > 1.0) || !std::isfinite(truncation_safety))
    throw InvalidArgument("truncation_safety must be greater than 1");
}

void Contour::validate() const {
  constexpr double pi = std::numbers::pi;
  if (!(left_angle > 0.8 * pi && left_angle < pi))
    throw InvalidArgument("left ray angle must lie in (4pi/5, pi)");
  if (!(right_angle > 0.0 && right_angle < 0.2 * pi))
    throw InvalidArgument("right ray angle must lie in (0, pi/5)");
  if (!(radius_scale >= 1.0) || !std::isfinite(radius_scale))
    throw InvalidArgument("radius_scale must be >= 1");
}

EvalAttempt try_eval_q(const Params& p, int k, const QuadratureConfig& cfg, const Contour& contour) {
  if (p.form != Form::Q) throw InvalidArgument("expected Q-normalized parameters");
  p.validate();
  cfg.validate();
  contour.validate();
  check_moment(k);

  const Ray right(contour.right_angle, p, k);
  const Ray left(contour.left_angle, p, k);
  const TruncatedRay right_cut = truncate(right, cfg, contour.radius_scale);
  const TruncatedRay left_cut = truncate(left, cfg, contour.radius_scale);

  const double ray_target = 0.5 * cfg.target_abs_tol * (1.0 - 1.0 / cfg.truncation_safety);
  const RayIntegral out = integrate_ray(right, right_cut.radius, ray_target, cfg.max_subdivisions);
  const RayIntegral in = integrate_ray(left, left_cut.radius, ray_target, cfg.max_subdivisions);

  EvalAttempt attempt;
  attempt.result.value = out.value - in.value;
  attempt.result.abs_error_estimate =
      out.error + in.error + right_cut.tail_bound + left_cut.tail_bound;
  attempt.result.subdivisions_used = out.panels + in.panels;
  attempt.tolerance_met = attempt.result.abs_error_estimate <= cfg.target_abs_tol;
  attempt.truncation_radius = std::max(right_cut.radius, left_cut.radius);
  return attempt;
}

namespace {

EvalResult checked(const EvalAttempt& attempt, const QuadratureConfig& cfg) {
  if (!attempt.tolerance_met)
    throw ToleranceNotReached("quadrature error estimate " + detail::g(attempt.result.abs_error_estimate) +
                              " exceeds target " + detail::g(cfg.target_abs_tol) + " after " +
                              std::to_string(attempt.result.subdivisions_used) + " panels");
  return attempt.result;
}

}  // namespace

EvalResult eval_q(const Params& p, const QuadratureConfig& cfg) {
  return checked(try_eval_q(p, 0, cfg), cfg);
}

EvalResult eval_q_moment(const Params& p, int k, const QuadratureConfig& cfg) {
  if (k < 1 || k > 3) throw InvalidArgument("moment order must be in {1,2,3}, got " + std::to_string(k));
  return checked(try_eval_q(p, k, cfg), cfg);
}

EvalResult eval_s(const Params& p, const QuadratureConfig& cfg) {
  const Rescaled r = s_to_q(p);
  QuadratureConfig qcfg = cfg;
  qcfg.target_abs_tol = cfg.target_abs_tol / r.value_factor;
  EvalResult q = eval_q(r.mapped, qcfg);
  q.value *= r.value_factor;
  q.abs_error_estimate *= r.value_factor;
  return q;
}

EvalResult eval(const Params& p, const QuadratureConfig& cfg) {
  return p.form == Form::Q ? eval_q(p, cfg) : eval_s(p, cfg);
}

double integrand_peak(const Params& p, int k, const Contour& contour) {
  p.validate();
  contour.validate();
  check_moment(k);
  const QuadratureConfig cfg;
  double peak = 0.0;
  for (double angle : {contour.left_angle, contour.right_angle}) {
    const Ray ray(angle, p, k);
    const double radius = truncate(ray, cfg, 1.0).radius;
    constexpr int samples = 512;
    for (int i = 0; i <= samples; ++i) {
      const double r = radius * i / samples;
      if (k > 0 && r == 0.0) continue;
      peak = std::max(peak, std::exp(-ray.log_decay(r)));
    }
  }
  return peak;
}

}  // namespace swallowtail
