#pragma once

#include <array>
#include <complex>
#include <vector>

#include "swallowtail/params.hpp"

namespace swallowtail {

enum class ZSign { Positive, Negative };

// Q(0,y,±|z|) = |z|^{1/4} ∫ exp[i lambda f(t)] dt with the scaled phase
// f(t) = t^5/5 + gamma t^2/2 ± t, lambda = |z|^{5/4}, gamma = y/|z|^{3/4}.
struct ScaledParams {
  double lambda = 1.0;
  double gamma = 0.0;
  ZSign sign_z = ZSign::Positive;
};

// Requires Q form and x = 0 (InvalidArgument), z != 0 (DegenerateScaling).
ScaledParams scale(const Params& p);

// The scaled phase and its first two derivatives.
class ScaledPhase {
 public:
  ScaledPhase(double gamma, ZSign sign) : gamma_(gamma), s_(sign == ZSign::Positive ? 1.0 : -1.0) {}
  explicit ScaledPhase(const ScaledParams& sp) : ScaledPhase(sp.gamma, sp.sign_z) {}

  std::complex<double> value(std::complex<double> t) const;
  std::complex<double> d1(std::complex<double> t) const;  // t^4 + gamma t ± 1
  std::complex<double> d2(std::complex<double> t) const;  // 4 t^3 + gamma
  // Value at a root of d1, using t^4 = ∓1 - gamma t:
  // f = (3/10) gamma t^2 ± (4/5) t.
  std::complex<double> value_at_saddle(std::complex<double> t) const;

 private:
  double gamma_;
  double s_;
};

enum class Regime { TwoConjugatePairs, RealPairPlusConjugatePair, Degenerate };

const char* to_string(Regime regime);

// Roots of f'(t) = t^4 + gamma t ± 1.
//
// Roots are indexed by argument, taken in [-pi/8, 15pi/8), ties broken by
// larger real part first. At gamma = 0 this gives t_k = i^k e^{i pi/4} for
// z > 0 and t_k = i^k for z < 0, and the index follows each root
// continuously as gamma grows.
//
// In the two-conjugate-pairs regime the roots read p ± i q1, -p ± i q2 with
// p, q1, q2 >= 0. In the real-pair regime p ± i q1 is the complex pair and
// q2 = 0. All three are zero for a degenerate set.
struct SaddleSet {
  std::array<std::complex<double>, 4> roots{};
  Regime regime = Regime::Degenerate;
  double p = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double gamma = 0.0;
  ZSign sign_z = ZSign::Positive;

  // Indices of roots on the real axis, in increasing order of value.
  std::vector<int> real_indices() const;
};

SaddleSet saddles(const ScaledParams& sp);

// f(t_k) via the reduced form.
std::complex<double> phase_at_saddle(const SaddleSet& set, int k);
std::complex<double> phase_at_saddle(const ScaledParams& sp, int k);

// gamma on the caustic (z/3)^3 = (y/4)^4, i.e. 4 / 3^{3/4}.
double caustic_gamma();

// Classification from the sign of z and |gamma| alone; cross-checks the
// root counting done by saddles().
Regime classify_regime(const ScaledParams& sp);

enum class Direction { Left, Right };

struct TraceOptions {
  double initial_step = 0.01;
  double cutoff_radius = 8.0;
  double level_tolerance = 1e-10;  // relative to max(1, |f(t) - f(t_k)|)
  double min_step = 1e-9;
  int max_steps = 200000;
};

// A steepest-descent curve of exp(i lambda f) leaving saddle k: the branch of
// Im(i(f(t) - f(t_k))) = 0 along which Re(i(f(t) - f(t_k))) decreases.
struct SteepestPath {
  int saddle_index = 0;
  std::vector<std::complex<double>> points;
  int terminal_sector = 0;  // valley centred at pi/10 + 2 pi k / 5
  bool descending = true;

  double terminal_angle() const;  // in [0, 2pi)
};

// Angle of the valley sector `k` in 0..4.
double valley_angle(int k);
// Nearest valley sector to an angle.
int nearest_valley(double angle);

// Follows the descending branch that leaves t_k with negative (Left) or
// positive (Right) real part; a vertical departure counts upward as Left.
// Throws RegimeError for a degenerate saddle set, PathStalled when the
// corrector cannot hold the level set.
SteepestPath trace_steepest(const ScaledParams& sp, int k, Direction direction,
                            const TraceOptions& opts = {});

}  // namespace swallowtail
