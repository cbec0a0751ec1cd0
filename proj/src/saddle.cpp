#include "swallowtail/saddle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "numfmt.hpp"
#include "swallowtail/errors.hpp"

namespace swallowtail {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

constexpr double kRealTolerance = 1e-9;
constexpr double kPairTolerance = 1e-9;
constexpr double kCollisionTolerance = 1e-6;
constexpr double kCausticBand = 1e-9;

double sort_key(cplx t) {
  double a = std::arg(t);
  if (a < -pi / 8.0) a += 2.0 * pi;
  return a;
}

std::array<cplx, 4> companion_roots(double gamma, double s) {
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(3, 2) = 1.0;
  companion(0, 3) = -s;
  companion(1, 3) = -gamma;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  const auto eig = solver.eigenvalues();
  return {eig(0), eig(1), eig(2), eig(3)};
}

cplx newton_polish(const ScaledPhase& phase, cplx t) {
  for (int it = 0; it < 12; ++it) {
    const cplx r = phase.d1(t);
    const double scale = 1.0 + std::norm(t) * std::norm(t);
    if (std::abs(r) <= 1e-15 * scale) break;
    const cplx d = phase.d2(t);
    if (std::abs(d) == 0.0) break;
    const cplx next = t - r / d;
    if (std::abs(phase.d1(next)) >= std::abs(r)) break;
    t = next;
  }
  return t;
}

}  // namespace

ScaledParams scale(const Params& p) {
  if (p.form != Form::Q) throw InvalidArgument("scaling expects Q-normalized parameters");
  p.validate();
  if (p.x != 0.0) throw InvalidArgument("scaled phase analysis requires x = 0");
  if (p.z == 0.0) throw DegenerateScaling("z = 0 has no scaling t -> |z|^{1/4} t");
  const double az = std::abs(p.z);
  return {std::pow(az, 1.25), p.y / std::pow(az, 0.75), p.z > 0.0 ? ZSign::Positive : ZSign::Negative};
}

cplx ScaledPhase::value(cplx t) const {
  const cplx t2 = t * t;
  return t * (t2 * t2 / 5.0 + gamma_ * t / 2.0 + s_);
}

cplx ScaledPhase::d1(cplx t) const {
  const cplx t2 = t * t;
  return t2 * t2 + gamma_ * t + s_;
}

cplx ScaledPhase::d2(cplx t) const { return 4.0 * t * t * t + gamma_; }

cplx ScaledPhase::value_at_saddle(cplx t) const { return 0.3 * gamma_ * t * t + 0.8 * s_ * t; }

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::TwoConjugatePairs: return "two_conjugate_pairs";
    case Regime::RealPairPlusConjugatePair: return "real_pair_plus_conjugate_pair";
    case Regime::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::vector<int> SaddleSet::real_indices() const {
  std::vector<int> idx;
  for (int k = 0; k < 4; ++k)
    if (roots[k].imag() == 0.0) idx.push_back(k);
  std::sort(idx.begin(), idx.end(), [this](int a, int b) { return roots[a].real() < roots[b].real(); });
  return idx;
}

SaddleSet saddles(const ScaledParams& sp) {
  if (!std::isfinite(sp.gamma)) throw InvalidArgument("gamma must be finite");
  const ScaledPhase phase(sp);
  const double s = sp.sign_z == ZSign::Positive ? 1.0 : -1.0;

  SaddleSet set;
  set.gamma = sp.gamma;
  set.sign_z = sp.sign_z;
  set.roots = companion_roots(sp.gamma, s);
  for (cplx& t : set.roots) t = newton_polish(phase, t);

  bool paired = true;
  std::array<bool, 4> done{};
  for (int a = 0; a < 4; ++a) {
    if (std::abs(set.roots[a].imag()) <= kRealTolerance * std::max(1.0, std::abs(set.roots[a]))) {
      set.roots[a] = {set.roots[a].real(), 0.0};
      done[a] = true;
    }
  }
  for (int a = 0; a < 4; ++a) {
    if (done[a] || set.roots[a].imag() < 0.0) continue;
    int best = -1;
    double best_dist = 0.0;
    for (int b = 0; b < 4; ++b) {
      if (b == a || done[b] || set.roots[b].imag() > 0.0) continue;
      const double dist = std::abs(set.roots[a] - std::conj(set.roots[b]));
      if (best < 0 || dist < best_dist) {
        best = b;
        best_dist = dist;
      }
    }
    if (best < 0 || best_dist > kPairTolerance * std::max(1.0, std::abs(set.roots[a]))) {
      paired = false;
      continue;
    }
    const cplx mean = 0.5 * (set.roots[a] + std::conj(set.roots[best]));
    set.roots[a] = mean;
    set.roots[best] = std::conj(mean);
    done[a] = done[best] = true;
  }
  paired = paired && std::all_of(done.begin(), done.end(), [](bool d) { return d; });

  std::sort(set.roots.begin(), set.roots.end(), [](cplx a, cplx b) {
    const double ka = sort_key(a), kb = sort_key(b);
    if (ka != kb) return ka < kb;
    return a.real() > b.real();
  });

  double closest = std::abs(set.roots[0] - set.roots[1]);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) closest = std::min(closest, std::abs(set.roots[a] - set.roots[b]));

  const int real_count = static_cast<int>(set.real_indices().size());
  if (!paired || closest < kCollisionTolerance) {
    set.regime = Regime::Degenerate;
    return set;
  }
  if (real_count == 0) {
    set.regime = Regime::TwoConjugatePairs;
    double q_right = 0.0, q_left = 0.0, p_right = 0.0, p_left = 0.0;
    for (const cplx& t : set.roots) {
      if (t.imag() <= 0.0) continue;
      if (t.real() >= 0.0) {
        p_right = t.real();
        q_right = t.imag();
      } else {
        p_left = -t.real();
        q_left = t.imag();
      }
    }
    set.p = 0.5 * (p_right + p_left);
    set.q1 = q_right;
    set.q2 = q_left;
  } else if (real_count == 2) {
    set.regime = Regime::RealPairPlusConjugatePair;
    for (const cplx& t : set.roots) {
      if (t.imag() > 0.0) {
        set.p = t.real();
        set.q1 = t.imag();
      }
    }
  } else {
    set.regime = Regime::Degenerate;
  }
  return set;
}

cplx phase_at_saddle(const SaddleSet& set, int k) {
  if (k < 0 || k > 3) throw InvalidArgument("saddle index must be in 0..3");
  return ScaledPhase(set.gamma, set.sign_z).value_at_saddle(set.roots[k]);
}

cplx phase_at_saddle(const ScaledParams& sp, int k) { return phase_at_saddle(saddles(sp), k); }

double caustic_gamma() { return 4.0 * std::pow(3.0, -0.75); }

Regime classify_regime(const ScaledParams& sp) {
  if (sp.sign_z == ZSign::Negative) return Regime::RealPairPlusConjugatePair;
  const double g = std::abs(sp.gamma);
  const double gc = caustic_gamma();
  if (std::abs(g - gc) <= kCausticBand) return Regime::Degenerate;
  return g < gc ? Regime::TwoConjugatePairs : Regime::RealPairPlusConjugatePair;
}

double valley_angle(int k) { return pi / 10.0 + 2.0 * pi * k / 5.0; }

int nearest_valley(double angle) {
  int best = 0;
  double best_dist = 10.0;
  for (int k = 0; k < 5; ++k) {
    const double d = std::abs(std::remainder(angle - valley_angle(k), 2.0 * pi));
    if (d < best_dist) {
      best = k;
      best_dist = d;
    }
  }
  return best;
}

double SteepestPath::terminal_angle() const {
  if (points.empty()) return 0.0;
  double a = std::arg(points.back());
  if (a < 0.0) a += 2.0 * pi;
  return a;
}

SteepestPath trace_steepest(const ScaledParams& sp, int k, Direction direction, const TraceOptions& opts) {
  if (k < 0 || k > 3) throw InvalidArgument("saddle index must be in 0..3");
  if (!(opts.initial_step > 0.0) || !(opts.cutoff_radius > 0.0) || !(opts.level_tolerance > 0.0))
    throw InvalidArgument("trace step, cutoff radius and level tolerance must be positive");
  if (!(opts.min_step > 0.0) || opts.min_step > opts.initial_step)
    throw InvalidArgument("minimum trace step must lie in (0, initial step]");
  if (opts.max_steps < 1) throw InvalidArgument("trace step budget must be at least 1");
  const SaddleSet set = saddles(sp);
  if (set.regime == Regime::Degenerate) throw RegimeError("cannot trace from a degenerate saddle set");

  const ScaledPhase phase(sp);
  const cplx saddle = set.roots[k];
  const cplx f_saddle = phase.value(saddle);
  const cplx curvature = phase.d2(saddle);
  if (std::abs(curvature) < 1e-8) throw RegimeError("saddle is degenerate (vanishing second derivative)");

  auto level = [&](cplx t) { return phase.value(t) - f_saddle; };
  // Newton on Re F = 0 along the gradient of Re F.
  auto correct = [&](cplx t, bool& ok) {
    ok = false;
    for (int it = 0; it < 10; ++it) {
      const cplx F = level(t);
      if (std::abs(F.real()) <= opts.level_tolerance * std::max(1.0, std::abs(F))) {
        ok = true;
        return t;
      }
      const cplx g = phase.d1(t);
      const double g2 = std::norm(g);
      if (g2 < 1e-24) return t;
      t -= F.real() * std::conj(g) / g2;
    }
    return t;
  };
  // Unit tangent along which Im F increases with Re F held fixed.
  auto tangent = [&](cplx t) {
    const cplx g = phase.d1(t);
    return cplx(0.0, 1.0) * std::conj(g) / std::abs(g);
  };

  cplx heading = std::sqrt(cplx(0.0, 1.0) / curvature);
  heading /= std::abs(heading);
  const bool points_right = std::abs(heading.real()) < 1e-12 ? heading.imag() < 0.0 : heading.real() > 0.0;
  if ((direction == Direction::Left) == points_right) heading = -heading;

  SteepestPath path;
  path.saddle_index = k;
  path.points.push_back(saddle);

  double step = opts.initial_step;
  cplx t = saddle;
  double im_prev = 0.0;
  bool first = true;
  for (int n = 0; n < opts.max_steps && std::abs(t) <= opts.cutoff_radius; ++n) {
    for (;;) {
      if (step < opts.min_step)
        throw PathStalled("steepest-descent trace stalled near t = (" + detail::g(t.real()) + ", " +
                          detail::g(t.imag()) + ")");
      cplx guess;
      if (first) {
        guess = saddle + step * heading;
      } else {
        const cplx d0 = tangent(t);
        const cplx d1 = tangent(t + 0.5 * step * d0);
        guess = t + step * d1;
      }
      bool ok = false;
      const cplx next = correct(guess, ok);
      const double im_next = level(next).imag();
      const bool moved_forward = std::abs(next - t) <= 2.0 * step && std::abs(phase.d1(next)) > 1e-10;
      if (ok && moved_forward && im_next > im_prev) {
        t = next;
        im_prev = im_next;
        first = false;
        step = std::min(opts.initial_step, 2.0 * step);
        break;
      }
      step *= 0.5;
    }
    path.points.push_back(t);
  }
  if (std::abs(t) <= opts.cutoff_radius) throw PathStalled("steepest-descent trace exceeded its step budget");
  path.terminal_sector = nearest_valley(path.terminal_angle());
  return path;
}

}  // namespace swallowtail
