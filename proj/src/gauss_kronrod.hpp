#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace swallowtail::detail {

struct PanelEstimate {
  std::complex<double> value;
  double error = 0.0;
  // Error the panel would carry at pure roundoff; bisection cannot go below.
  double roundoff_floor = 0.0;
};

// 7-point Gauss / 15-point Kronrod pair on [a, b] for a complex integrand,
// with the QUADPACK qk15 error heuristic applied to the modulus.
template <class F>
PanelEstimate gauss_kronrod_15(const F& f, double a, double b) {
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::complex<double> fv1[7], fv2[7];
  const std::complex<double> fc = f(center);
  std::complex<double> gauss = fc * wg[3];
  std::complex<double> kronrod = fc * wgk[7];
  double resabs = std::abs(fc) * wgk[7];

  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const std::complex<double> sum = fv1[j] + fv2[j];
    kronrod += wgk[j] * sum;
    resabs += wgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }

  const std::complex<double> mean = 0.5 * kronrod;
  double resasc = wgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double width = std::abs(half);
  resabs *= width;
  resasc *= width;

  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = 50.0 * eps * resabs;
  return {kronrod * half, std::max(err, floor), floor};
}

}  // namespace swallowtail::detail
