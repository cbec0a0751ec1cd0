#include "swallowtail/zeros.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <limits>
#include <thread>

#include "numfmt.hpp"
#include "swallowtail/errors.hpp"

namespace swallowtail {

namespace {

using cplx = std::complex<double>;
constexpr cplx I(0.0, 1.0);

cplx q_at(double y, double z, const QuadratureConfig& cfg) { return eval_q(Params{0.0, y, z, Form::Q}, cfg).value; }

cplx dq_dz(double y, double z, const QuadratureConfig& cfg) {
  return I * eval_q_moment(Params{0.0, y, z, Form::Q}, 1, cfg).value;
}

cplx dq_dy(double y, double z, const QuadratureConfig& cfg) {
  return 0.5 * I * eval_q_moment(Params{0.0, y, z, Form::Q}, 2, cfg).value;
}

}  // namespace

QuadratureConfig refinement_quadrature() {
  QuadratureConfig cfg;
  cfg.target_abs_tol = 1e-11;
  return cfg;
}

double axis_envelope(double z) {
  if (z == 0.0) throw DomainError("axis envelope needs z != 0");
  const double az = std::abs(z);
  const double lambda = std::pow(az, 1.25);
  const double base = std::pow(az, 0.25) * std::sqrt(2.0 * std::numbers::pi / lambda);
  return z > 0.0 ? base * std::exp(-4.0 * lambda / (5.0 * std::numbers::sqrt2)) : base;
}

RefinedZero refine_on_axis(const ZeroPrediction& seed, const QuadratureConfig& cfg, const RefineOptions& opts) {
  cfg.validate();
  double z = seed.z_predicted;
  if (seed.form == Form::S) z = s_to_q(Params{0.0, 0.0, z, Form::S}).mapped.z;
  if (!std::isfinite(z) || z == 0.0) throw InvalidArgument("seed must be a finite nonzero z");
  if (std::abs(z) > opts.z_cutoff)
    throw SeedOutOfRange("seed |z| = " + detail::g(std::abs(z), 9) + " exceeds cutoff " +
                         detail::g(opts.z_cutoff));

  auto residual = [&](double at, double value) {
    return opts.relative_residual ? std::abs(value) / axis_envelope(at) : std::abs(value);
  };

  RefinedZero out;
  out.m = seed.m;
  out.branch = seed.branch;
  out.seed = z;

  // Q is real on the axis; the imaginary part is quadrature noise.
  double value = q_at(0.0, z, cfg).real();
  double res = residual(z, value);
  int iterations = 0;
  while (res > opts.residual_tolerance) {
    if (iterations == opts.max_iterations)
      throw NoConvergence("on-axis Newton did not converge from seed " + detail::g(out.seed, 9) + " (residual " +
                          detail::g(res) + ")");
    const double slope = dq_dz(0.0, z, cfg).real();
    if (slope == 0.0) throw NoConvergence("vanishing derivative during on-axis Newton");
    double step = -value / slope;
    double cand = z + step;
    double cand_value = 0.0;
    double cand_res = 0.0;
    for (int h = 0;; ++h) {
      if (cand == 0.0 || std::abs(cand) > 1.5 * opts.z_cutoff) {
        cand_res = res * 2.0;
      } else {
        cand_value = q_at(0.0, cand, cfg).real();
        cand_res = residual(cand, cand_value);
      }
      if (cand_res < res || h == opts.max_halvings) break;
      step *= 0.5;
      cand = z + step;
    }
    if (cand == 0.0 || std::abs(cand) > 1.5 * opts.z_cutoff)
      throw NoConvergence("on-axis Newton left the feasible range");
    z = cand;
    value = cand_value;
    res = cand_res;
    ++iterations;
  }
  out.z = z;
  out.residual = res;
  out.iterations = iterations;
  return out;
}

AxisConfinementRecord axis_confinement_scan(double y0, Branch branch, int m, const QuadratureConfig& cfg,
                                            const ConfinementOptions& opts) {
  cfg.validate();
  if (!std::isfinite(y0) || y0 < 0.0) throw InvalidArgument("y0 must be a finite non-negative number");
  AxisConfinementRecord rec;
  rec.seed_y = y0;
  rec.seed_z = predicted_zero(branch, m);
  if (std::abs(rec.seed_z) > opts.z_cutoff)
    throw SeedOutOfRange("seed |z| = " + detail::g(std::abs(rec.seed_z), 9) + " exceeds cutoff");

  auto value_at = [&](double y, double z) {
    cplx q = q_at(y, z, cfg);
    if (y == 0.0) q.imag(0.0);
    return q;
  };

  double y = y0;
  double z = rec.seed_z;
  try {
    cplx q = value_at(y, z);
    int it = 0;
    // Newton keeps polishing after the residual test passes, for as long as
    // steps still reduce |Q|, so y settles at the noise floor.
    while (it < opts.max_iterations) {
      const bool within = std::abs(q) <= opts.residual_tolerance;
      const cplx qy = dq_dy(y, z, cfg);
      const cplx qz = dq_dz(y, z, cfg);
      double j00 = qy.real(), j01 = qz.real();
      double j10 = qy.imag(), j11 = qz.imag();
      if (y == 0.0) {
        j00 = 0.0;
        j11 = 0.0;
      }
      const double det = j00 * j11 - j01 * j10;
      if (det == 0.0 || !std::isfinite(det)) break;
      double dy = (-q.real() * j11 + q.imag() * j01) / det;
      double dz = (-q.imag() * j00 + q.real() * j10) / det;

      double cy = y + dy, cz = z + dz;
      cplx cq;
      bool improved = false;
      bool inside = true;
      for (int h = 0; h <= opts.max_halvings; ++h) {
        inside = std::abs(cy) <= opts.y_limit && std::abs(cz) <= 1.5 * opts.z_cutoff;
        if (inside) {
          cq = value_at(cy, cz);
          if (std::abs(cq) < std::abs(q)) {
            improved = true;
            break;
          }
        }
        if (h == opts.max_halvings) break;
        dy *= 0.5;
        dz *= 0.5;
        cy = y + dy;
        cz = z + dz;
      }
      if (within && !improved) break;
      ++it;
      y = cy;
      z = cz;
      if (!inside) {
        rec.iterations = it;
        rec.final_y = y;
        rec.final_z = z;
        rec.final_modulus = std::abs(q);
        return rec;
      }
      q = cq;
      if (std::abs(q) <= opts.residual_tolerance && std::hypot(dy, dz) <= opts.step_tolerance) break;
    }
    rec.iterations = it;
    rec.final_modulus = std::abs(q);
    rec.converged = rec.final_modulus <= opts.residual_tolerance;
  } catch (const ToleranceNotReached&) {
    rec.converged = false;
    rec.final_modulus = std::numeric_limits<double>::quiet_NaN();
  }
  rec.final_y = y;
  rec.final_z = z;
  return rec;
}

void ScanRegion::validate() const {
  auto axis = [](double lo, double hi, int n, const char* name) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
      throw InvalidArgument(std::string(name) + " range must be finite with min <= max");
    if (n < 1) throw InvalidArgument(std::string(name) + " resolution must be positive");
    if (n == 1 && lo != hi) throw InvalidArgument(std::string(name) + " resolution must be >= 2 for a non-degenerate range");
  };
  axis(y_min, y_max, ny, "y");
  axis(z_min, z_max, nz, "z");
}

double ScanRegion::y_at(int iy) const { return ny == 1 ? y_min : y_min + (y_max - y_min) * iy / (ny - 1); }
double ScanRegion::z_at(int iz) const { return nz == 1 ? z_min : z_min + (z_max - z_min) * iz / (nz - 1); }

long ScanGrid::argmin() const {
  long best = -1;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].tol_miss) continue;
    if (best < 0 || cells[i].abs_q() < cells[static_cast<size_t>(best)].abs_q()) best = static_cast<long>(i);
  }
  return best;
}

int ScanGrid::flagged_count() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const ScanCell& c) { return c.tol_miss; }));
}

std::vector<double> ScanGrid::axis_sign_changes() const {
  std::vector<double> out;
  for (int iy = 0; iy < region.ny; ++iy) {
    if (region.y_at(iy) != 0.0) continue;
    for (int iz = 0; iz + 1 < region.nz; ++iz) {
      const ScanCell& a = at(iy, iz);
      const ScanCell& b = at(iy, iz + 1);
      const double va = a.value.real(), vb = b.value.real();
      if ((va < 0.0) != (vb < 0.0)) out.push_back(a.z - va * (b.z - a.z) / (vb - va));
    }
  }
  return out;
}

ScanGrid modulus_scan(const ScanRegion& region, const QuadratureConfig& cfg, unsigned threads) {
  region.validate();
  cfg.validate();
  ScanGrid grid;
  grid.region = region;
  const size_t total = static_cast<size_t>(region.ny) * region.nz;
  grid.cells.resize(total);

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < total; i = next++) {
      ScanCell& cell = grid.cells[i];
      cell.y = region.y_at(static_cast<int>(i / region.nz));
      cell.z = region.z_at(static_cast<int>(i % region.nz));
      const EvalAttempt a = try_eval_q(Params{0.0, cell.y, cell.z, Form::Q}, 0, cfg);
      cell.value = a.result.value;
      if (cell.y == 0.0) cell.value.imag(0.0);
      cell.abs_error_estimate = a.result.abs_error_estimate;
      cell.tol_miss = !a.tolerance_met;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, total));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  return grid;
}

}  // namespace swallowtail
