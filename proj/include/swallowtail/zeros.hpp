#pragma once

#include <complex>
#include <vector>

#include "swallowtail/asymptotics.hpp"
#include "swallowtail/oracle.hpp"

namespace swallowtail {

// Oracle settings used for zero refinement: tight enough that a 1e-9
// residual is meaningful.
QuadratureConfig refinement_quadrature();

struct RefineOptions {
  double residual_tolerance = 1e-9;
  int max_iterations = 25;
  int max_halvings = 6;
  double z_cutoff = 12.0;
  // Measure the residual relative to the leading-order envelope of
  // Q(0,0,z), for large |z| where Q itself is exponentially small.
  bool relative_residual = false;
};

struct RefinedZero {
  double z = 0.0;  // Q normalization
  int m = 0;
  Branch branch = Branch::PositiveZ;
  double seed = 0.0;  // Q normalization
  double residual = 0.0;
  int iterations = 0;
};

// Leading-order envelope of |Q(0,0,z)|, z != 0.
double axis_envelope(double z);

// Damped Newton on the real function z -> Q(0,0,z), with dQ/dz = i M1.
// Seeds in S form are mapped to Q first. Throws SeedOutOfRange beyond
// opts.z_cutoff and NoConvergence after opts.max_iterations.
RefinedZero refine_on_axis(const ZeroPrediction& seed, const QuadratureConfig& cfg = refinement_quadrature(),
                           const RefineOptions& opts = {});

struct ConfinementOptions {
  double residual_tolerance = 1e-9;
  int max_iterations = 40;
  int max_halvings = 6;
  double z_cutoff = 12.0;
  double y_limit = 6.0;  // |y| beyond this counts as divergence
  double step_tolerance = 1e-12;
};

struct AxisConfinementRecord {
  double seed_y = 0.0;
  double seed_z = 0.0;
  bool converged = false;
  double final_y = 0.0;
  double final_z = 0.0;
  double final_modulus = 0.0;
  int iterations = 0;
};

// Damped 2D Newton on (y,z) -> (Re Q(0,y,z), Im Q(0,y,z)) started at
// (y0, predicted_zero(branch, m)), Jacobian from dQ/dy = (i/2) M2 and
// dQ/dz = i M1. On y = 0 the conjugation symmetry makes Im Q, d(Re Q)/dy and
// d(Im Q)/dz vanish identically; they are set to zero there so the axis is
// invariant under the iteration. Non-convergence is recorded, not thrown.
AxisConfinementRecord axis_confinement_scan(double y0, Branch branch, int m,
                                            const QuadratureConfig& cfg = refinement_quadrature(),
                                            const ConfinementOptions& opts = {});

struct ScanRegion {
  double y_min = 0.0, y_max = 0.0;
  double z_min = 0.0, z_max = 0.0;
  int ny = 2, nz = 2;

  // A count of 1 is allowed only for a degenerate range.
  void validate() const;
  double y_at(int iy) const;
  double z_at(int iz) const;
};

struct ScanCell {
  double y = 0.0;
  double z = 0.0;
  std::complex<double> value;
  double abs_error_estimate = 0.0;
  bool tol_miss = false;

  double abs_q() const { return std::abs(value); }
};

struct ScanGrid {
  ScanRegion region;
  std::vector<ScanCell> cells;  // iy-major: cells[iy * nz + iz]

  const ScanCell& at(int iy, int iz) const { return cells[static_cast<size_t>(iy) * region.nz + iz]; }
  // Index of the smallest |Q| among unflagged cells, or -1.
  long argmin() const;
  int flagged_count() const;
  // Midpoints (in z) where Re Q changes sign along each row lying on y = 0.
  std::vector<double> axis_sign_changes() const;
};

// |Q(0,y,z)| on a regular grid. Cells are spread over `threads` workers
// (0 picks the hardware concurrency). A cell whose quadrature misses its
// tolerance keeps its best value and is flagged.
ScanGrid modulus_scan(const ScanRegion& region, const QuadratureConfig& cfg = {}, unsigned threads = 0);

}  // namespace swallowtail
