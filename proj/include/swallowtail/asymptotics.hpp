#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "swallowtail/params.hpp"
#include "swallowtail/saddle.hpp"

namespace swallowtail {

enum class Branch { PositiveZ, NegativeZ };

const char* to_string(Branch branch);

struct ZeroPrediction {
  Branch branch = Branch::PositiveZ;
  int m = 0;
  double z_predicted = 0.0;
  Form form = Form::Q;
};

// Leading-order behaviour of Q(0,0,z), lambda = |z|^{5/4}:
//   z > 0: |z|^{1/4} sqrt(2pi/lambda) e^{-4 lambda/(5 sqrt 2)} cos(4 lambda/(5 sqrt 2) - pi/8)
//   z < 0: |z|^{1/4} sqrt(2pi/lambda) cos(4 lambda/5 - pi/4)
// For z < 0, `include_subdominant` adds the exponentially small
// |z|^{1/4} sqrt(pi/(2 lambda)) e^{-4 lambda/5} term of the saddle at -i.
// Throws DomainError at z = 0.
double leading_q00(double z, bool include_subdominant = false);

// Zero of the leading-order cosine, Q-normalized:
//   positive: z_m = [5 sqrt2/4 (pi/8 + (2m+1) pi/2)]^{4/5}
//   negative: z_m = -[5/4 (pi/4 + (2m+1) pi/2)]^{4/5}
double predicted_zero(Branch branch, int m);

// Points where the leading cosine peaks on either side of predicted_zero(m),
// i.e. the cosine argument shifted by ∓pi/2. Ordered by increasing |z|.
std::pair<double, double> predicted_extrema(Branch branch, int m);

// m = 0..m_max in the requested normalization. The S-form value is the
// image of the on-axis point under q_to_s, z_S = 5^{1/5} z_Q.
std::vector<ZeroPrediction> predicted_zeros(Branch branch, int m_max, Form form = Form::Q);

// Y_n = 5 * 2^{-6/5} (n + 5/8)^{4/5} pi^{4/5}, zeros of
// I5(0,Y) = ∫ exp[i(t^5 + Y t)] dt on the positive Y axis.
std::vector<double> pearcey_hill_zeros(int n_max);

// I5(0,Y) = S(0,0,Y), so a zero of Q(0,0,z) sits at Y = 5^{1/5} z.
double transport_to_pearcey_hill(double z_q);

// exp(lambda (exponent_real + i exponent_imag)) * amplitude is the leading
// contribution of one saddle, with
//   amplitude = e^{i pi/4 - i arg f''(t_k)/2} sqrt(2pi / (lambda |f''(t_k)|)),
//   exponent  = i f(t_k),
// arg taken in (-pi, pi].
struct SaddleContribution {
  int saddle_index = 0;
  std::complex<double> amplitude;
  double exponent_real = 0.0;
  double exponent_imag = 0.0;

  std::complex<double> value(double lambda) const;
};

SaddleContribution saddle_contribution(const ScaledParams& sp, const SaddleSet& set, int k);

// Saddles whose steepest-descent paths make up the deformed contour:
//   z > 0 above the caustic (gamma < 4/3^{3/4}): the two saddles in the upper half plane;
//   z < 0: the two real saddles, plus the lower complex one when
//   `include_subdominant` is set.
// Throws RegimeError for z > 0 with |gamma| at or past 4/3^{3/4}.
std::vector<int> relevant_saddles(const SaddleSet& set, bool include_subdominant = false);

// Sum of relevant saddle contributions for Q(0,y,z), z != 0. Negative y is
// handled through conjugation.
std::complex<double> leading_q0yz(double y, double z, bool include_subdominant = false);

// Decay rate of the t1 = p + i q1 contribution minus that of t3 = -p + i q2
// (rates per unit lambda, i.e. -Re(i f(t_k))):
//   gap = (3/5) gamma p (q1 + q2) + (4/5)(q1 - q2).
// Zero at gamma = 0, where the two balance into a cosine; positive gap means
// t3 dominates by a factor e^{lambda gap}. Uses |gamma|. Throws RegimeError
// unless z > 0 and above the caustic (gamma < 4/3^{3/4}).
double dominance_gap(const ScaledParams& sp);

// For z < 0 and gamma >= 0 the real saddles t1 < t2 can only produce a
// zero-making cosine if f(t1) = -f(t2) and f''(t1) = -f''(t2).
struct ObstructionReport {
  double t1 = 0.0;
  double t2 = 0.0;
  double phase_sum = 0.0;      // f(t1) + f(t2)
  double curvature_sum = 0.0;  // f''(t1) + f''(t2)
  double curvature_t1 = 0.0;
  double curvature_t2 = 0.0;
  bool phase_condition_violated = false;
  bool curvature_condition_violated = false;
  bool both_nonzero = false;
};

// Throws RegimeError unless z < 0, DomainError for gamma < 0.
ObstructionReport below_caustic_obstruction(const ScaledParams& sp, double zero_tolerance = 1e-10);

}  // namespace swallowtail
