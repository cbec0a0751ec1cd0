#include "swallowtail/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "swallowtail/errors.hpp"

namespace swallowtail {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

void check_index(int m, const char* what) {
  if (m < 0) throw InvalidArgument(std::string(what) + " must be non-negative");
}

// |z| at which the leading cosine argument equals `arg`.
double z_for_argument(Branch branch, double arg) {
  const double lambda = branch == Branch::PositiveZ ? 5.0 * sqrt2 / 4.0 * (arg + pi / 8.0)
                                                    : 5.0 / 4.0 * (arg + pi / 4.0);
  return std::pow(lambda, 0.8);
}

double signed_z(Branch branch, double magnitude) {
  return branch == Branch::PositiveZ ? magnitude : -magnitude;
}

}  // namespace

const char* to_string(Branch branch) { return branch == Branch::PositiveZ ? "pos" : "neg"; }

double leading_q00(double z, bool include_subdominant) {
  if (z == 0.0 || !std::isfinite(z)) throw DomainError("leading-order form needs finite z != 0");
  const double az = std::abs(z);
  const double lambda = std::pow(az, 1.25);
  const double prefactor = std::pow(az, 0.25) * std::sqrt(2.0 * pi / lambda);
  if (z > 0.0) {
    const double w = 4.0 * lambda / (5.0 * sqrt2);
    return prefactor * std::exp(-w) * std::cos(w - pi / 8.0);
  }
  double v = prefactor * std::cos(0.8 * lambda - pi / 4.0);
  if (include_subdominant) v += std::pow(az, 0.25) * std::sqrt(pi / (2.0 * lambda)) * std::exp(-0.8 * lambda);
  return v;
}

double predicted_zero(Branch branch, int m) {
  check_index(m, "zero index m");
  return signed_z(branch, z_for_argument(branch, (2 * m + 1) * pi / 2.0));
}

std::pair<double, double> predicted_extrema(Branch branch, int m) {
  check_index(m, "zero index m");
  const double arg = (2 * m + 1) * pi / 2.0;
  return {signed_z(branch, z_for_argument(branch, arg - pi / 2.0)),
          signed_z(branch, z_for_argument(branch, arg + pi / 2.0))};
}

std::vector<ZeroPrediction> predicted_zeros(Branch branch, int m_max, Form form) {
  check_index(m_max, "m_max");
  std::vector<ZeroPrediction> out;
  out.reserve(static_cast<size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) {
    double z = predicted_zero(branch, m);
    if (form == Form::S) z = q_to_s(Params{0.0, 0.0, z, Form::Q}).mapped.z;
    out.push_back({branch, m, z, form});
  }
  return out;
}

std::vector<double> pearcey_hill_zeros(int n_max) {
  check_index(n_max, "n_max");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  const double prefactor = 5.0 * std::pow(2.0, -1.2) * std::pow(pi, 0.8);
  for (int n = 0; n <= n_max; ++n) out.push_back(prefactor * std::pow(n + 0.625, 0.8));
  return out;
}

double transport_to_pearcey_hill(double z_q) { return q_to_s(Params{0.0, 0.0, z_q, Form::Q}).mapped.z; }

cplx SaddleContribution::value(double lambda) const {
  return amplitude * std::exp(lambda * cplx(exponent_real, exponent_imag));
}

SaddleContribution saddle_contribution(const ScaledParams& sp, const SaddleSet& set, int k) {
  if (k < 0 || k > 3) throw InvalidArgument("saddle index must be in 0..3");
  const ScaledPhase phase(set.gamma, set.sign_z);
  const cplx t = set.roots[k];
  const cplx curvature = phase.d2(t);
  if (std::abs(curvature) == 0.0) throw RegimeError("saddle contribution undefined at a degenerate saddle");
  const double theta = pi / 4.0 - std::arg(curvature) / 2.0;
  const double magnitude = std::sqrt(2.0 * pi / (sp.lambda * std::abs(curvature)));
  const cplx exponent = cplx(0.0, 1.0) * phase.value_at_saddle(t);
  return {k, std::polar(magnitude, theta), exponent.real(), exponent.imag()};
}

std::vector<int> relevant_saddles(const SaddleSet& set, bool include_subdominant) {
  std::vector<int> out;
  if (set.sign_z == ZSign::Positive) {
    if (set.regime != Regime::TwoConjugatePairs)
      throw RegimeError("saddle structure for z > 0 is only resolved above the caustic (gamma < 4/3^{3/4})");
    for (int k = 0; k < 4; ++k)
      if (set.roots[k].imag() > 0.0) out.push_back(k);
    return out;
  }
  if (set.regime != Regime::RealPairPlusConjugatePair)
    throw RegimeError("expected two real saddles for z < 0");
  for (int k = 0; k < 4; ++k) {
    const double im = set.roots[k].imag();
    if (im == 0.0 || (include_subdominant && im < 0.0)) out.push_back(k);
  }
  return out;
}

cplx leading_q0yz(double y, double z, bool include_subdominant) {
  if (y < 0.0) return std::conj(leading_q0yz(-y, z, include_subdominant));
  const ScaledParams sp = scale(Params{0.0, y, z, Form::Q});
  const SaddleSet set = saddles(sp);
  cplx sum;
  for (int k : relevant_saddles(set, include_subdominant))
    sum += saddle_contribution(sp, set, k).value(sp.lambda);
  return std::pow(std::abs(z), 0.25) * sum;
}

double dominance_gap(const ScaledParams& sp) {
  ScaledParams folded = sp;
  folded.gamma = std::abs(sp.gamma);
  if (folded.sign_z != ZSign::Positive || classify_regime(folded) != Regime::TwoConjugatePairs)
    throw RegimeError("dominance gap is defined for z > 0 above the caustic (gamma < 4/3^{3/4})");
  const SaddleSet set = saddles(folded);
  if (set.regime != Regime::TwoConjugatePairs)
    throw RegimeError("root structure is not two conjugate pairs");
  const ScaledPhase phase(folded);
  const cplx t1(set.p, set.q1);
  const cplx t3(-set.p, set.q2);
  const double decay_t1 = -(cplx(0.0, 1.0) * phase.value_at_saddle(t1)).real();
  const double decay_t3 = -(cplx(0.0, 1.0) * phase.value_at_saddle(t3)).real();
  return decay_t1 - decay_t3;
}

ObstructionReport below_caustic_obstruction(const ScaledParams& sp, double zero_tolerance) {
  if (sp.sign_z != ZSign::Negative) throw RegimeError("obstruction analysis is for z < 0");
  if (sp.gamma < 0.0) throw DomainError("obstruction analysis expects gamma >= 0");
  const SaddleSet set = saddles(sp);
  const std::vector<int> real = set.real_indices();
  if (set.regime != Regime::RealPairPlusConjugatePair || real.size() != 2)
    throw RegimeError("expected a real saddle pair plus a conjugate pair");
  const ScaledPhase phase(sp);

  ObstructionReport r;
  r.t1 = set.roots[real[0]].real();
  r.t2 = set.roots[real[1]].real();
  r.phase_sum = phase.value_at_saddle(r.t1).real() + phase.value_at_saddle(r.t2).real();
  r.curvature_t1 = phase.d2(r.t1).real();
  r.curvature_t2 = phase.d2(r.t2).real();
  r.curvature_sum = r.curvature_t1 + r.curvature_t2;
  r.phase_condition_violated = std::abs(r.phase_sum) > zero_tolerance;
  r.curvature_condition_violated = std::abs(r.curvature_sum) > zero_tolerance;
  r.both_nonzero = r.phase_condition_violated && r.curvature_condition_violated;
  return r;
}

}  // namespace swallowtail
