#include "swallowtail/swallowtail.h"

#include <cstdio>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "swallowtail/asymptotics.hpp"
#include "swallowtail/errors.hpp"
#include "swallowtail/oracle.hpp"
#include "swallowtail/saddle.hpp"
#include "swallowtail/zeros.hpp"

namespace st = swallowtail;

struct st_path {
  st::SteepestPath path;
};

struct st_scan {
  st::ScanGrid grid;
};

namespace {

thread_local std::string last_error;

st_status to_status(st::ErrorCode code) {
  switch (code) {
    case st::ErrorCode::InvalidArgument: return ST_INVALID_ARGUMENT;
    case st::ErrorCode::ToleranceNotReached: return ST_TOLERANCE_NOT_REACHED;
    case st::ErrorCode::DegenerateScaling: return ST_DEGENERATE_SCALING;
    case st::ErrorCode::PathStalled: return ST_PATH_STALLED;
    case st::ErrorCode::NoConvergence: return ST_NO_CONVERGENCE;
    case st::ErrorCode::SeedOutOfRange: return ST_SEED_OUT_OF_RANGE;
    case st::ErrorCode::RegimeError: return ST_REGIME_ERROR;
    case st::ErrorCode::DomainError: return ST_DOMAIN_ERROR;
  }
  return ST_INTERNAL_ERROR;
}

st_status fail(st_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
st_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const st::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ST_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(ST_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(ST_INTERNAL_ERROR, "unknown error");
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) throw st::InvalidArgument(std::string(name) + " must not be null");
}

st::Form to_form(st_form f) {
  if (f == ST_FORM_S) return st::Form::S;
  if (f == ST_FORM_Q) return st::Form::Q;
  throw st::InvalidArgument("unknown form value");
}

st::Branch to_branch(st_branch b) {
  if (b == ST_BRANCH_POSITIVE_Z) return st::Branch::PositiveZ;
  if (b == ST_BRANCH_NEGATIVE_Z) return st::Branch::NegativeZ;
  throw st::InvalidArgument("unknown branch value");
}

st::Params to_params(const st_params* p) {
  require(p, "params");
  return {p->x, p->y, p->z, to_form(p->form)};
}

st_params from_params(const st::Params& p) {
  return {p.x, p.y, p.z, p.form == st::Form::S ? ST_FORM_S : ST_FORM_Q};
}

st::QuadratureConfig to_config(const st_quad_config* cfg, st::QuadratureConfig fallback = {}) {
  if (cfg == nullptr) return fallback;
  return {cfg->target_abs_tol, cfg->max_subdivisions, cfg->truncation_safety};
}

st::ScaledParams to_scaled(const st_scaled_params* sp) {
  require(sp, "scaled params");
  if (sp->sign_z != ST_SIGN_POSITIVE && sp->sign_z != ST_SIGN_NEGATIVE)
    throw st::InvalidArgument("unknown sign value");
  if (!(sp->lambda > 0.0)) throw st::InvalidArgument("lambda must be positive");
  return {sp->lambda, sp->gamma, sp->sign_z == ST_SIGN_POSITIVE ? st::ZSign::Positive : st::ZSign::Negative};
}

st_regime from_regime(st::Regime r) {
  switch (r) {
    case st::Regime::TwoConjugatePairs: return ST_REGIME_TWO_CONJUGATE_PAIRS;
    case st::Regime::RealPairPlusConjugatePair: return ST_REGIME_REAL_PAIR_PLUS_CONJUGATE_PAIR;
    case st::Regime::Degenerate: return ST_REGIME_DEGENERATE;
  }
  return ST_REGIME_DEGENERATE;
}

st_eval_result from_eval(const st::EvalResult& r) {
  return {r.value.real(), r.value.imag(), r.abs_error_estimate, r.subdivisions_used};
}

}  // namespace

extern "C" {

const char* st_version(void) { return "1.0.0"; }

const char* st_last_error(void) { return last_error.c_str(); }

const char* st_status_name(st_status status) {
  switch (status) {
    case ST_OK: return "ok";
    case ST_INVALID_ARGUMENT: return "invalid_argument";
    case ST_TOLERANCE_NOT_REACHED: return "tolerance_not_reached";
    case ST_DEGENERATE_SCALING: return "degenerate_scaling";
    case ST_PATH_STALLED: return "path_stalled";
    case ST_NO_CONVERGENCE: return "no_convergence";
    case ST_SEED_OUT_OF_RANGE: return "seed_out_of_range";
    case ST_REGIME_ERROR: return "regime_error";
    case ST_DOMAIN_ERROR: return "domain_error";
    case ST_IO_ERROR: return "io_error";
    case ST_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

void st_quad_config_default(st_quad_config* cfg) {
  if (cfg == nullptr) return;
  const st::QuadratureConfig d;
  *cfg = {d.target_abs_tol, d.max_subdivisions, d.truncation_safety};
}

void st_quad_config_refinement(st_quad_config* cfg) {
  if (cfg == nullptr) return;
  const st::QuadratureConfig d = st::refinement_quadrature();
  *cfg = {d.target_abs_tol, d.max_subdivisions, d.truncation_safety};
}

void st_refine_options_default(st_refine_options* opts) {
  if (opts == nullptr) return;
  const st::RefineOptions d;
  *opts = {d.residual_tolerance, d.max_iterations, d.max_halvings, d.z_cutoff, d.relative_residual ? 1 : 0};
}

void st_confinement_options_default(st_confinement_options* opts) {
  if (opts == nullptr) return;
  const st::ConfinementOptions d;
  *opts = {d.residual_tolerance, d.max_iterations, d.max_halvings, d.z_cutoff, d.y_limit, d.step_tolerance};
}

void st_trace_options_default(st_trace_options* opts) {
  if (opts == nullptr) return;
  const st::TraceOptions d;
  *opts = {d.initial_step, d.cutoff_radius, d.level_tolerance, d.min_step, d.max_steps};
}

st_status st_s_to_q(const st_params* in, st_params* out, double* value_factor) {
  return guarded([&] {
    require(out, "out");
    const st::Rescaled r = st::s_to_q(to_params(in));
    *out = from_params(r.mapped);
    if (value_factor) *value_factor = r.value_factor;
    return ST_OK;
  });
}

st_status st_q_to_s(const st_params* in, st_params* out, double* value_factor) {
  return guarded([&] {
    require(out, "out");
    const st::Rescaled r = st::q_to_s(to_params(in));
    *out = from_params(r.mapped);
    if (value_factor) *value_factor = r.value_factor;
    return ST_OK;
  });
}

st_status st_conjugate_reflection(const st_params* in, st_params* out) {
  return guarded([&] {
    require(out, "out");
    *out = from_params(st::conjugate_reflection(to_params(in)));
    return ST_OK;
  });
}

st_status st_eval(const st_params* p, const st_quad_config* cfg, st_eval_result* out) {
  return guarded([&] {
    require(out, "out");
    *out = from_eval(st::eval(to_params(p), to_config(cfg)));
    return ST_OK;
  });
}

st_status st_eval_q_moment(const st_params* p, int k, const st_quad_config* cfg, st_eval_result* out) {
  return guarded([&] {
    require(out, "out");
    *out = from_eval(st::eval_q_moment(to_params(p), k, to_config(cfg)));
    return ST_OK;
  });
}

st_status st_integrand_peak(const st_params* p, double* peak) {
  return guarded([&] {
    require(peak, "peak");
    st::Params q = to_params(p);
    if (q.form == st::Form::S) q = st::s_to_q(q).mapped;
    *peak = st::integrand_peak(q);
    return ST_OK;
  });
}

st_status st_scale(const st_params* p, st_scaled_params* out) {
  return guarded([&] {
    require(out, "out");
    const st::ScaledParams sp = st::scale(to_params(p));
    *out = {sp.lambda, sp.gamma, sp.sign_z == st::ZSign::Positive ? ST_SIGN_POSITIVE : ST_SIGN_NEGATIVE};
    return ST_OK;
  });
}

st_status st_saddles(const st_scaled_params* sp, st_saddle_set* out) {
  return guarded([&] {
    require(out, "out");
    const st::SaddleSet set = st::saddles(to_scaled(sp));
    for (int k = 0; k < 4; ++k) {
      out->re[k] = set.roots[k].real();
      out->im[k] = set.roots[k].imag();
    }
    out->regime = from_regime(set.regime);
    out->p = set.p;
    out->q1 = set.q1;
    out->q2 = set.q2;
    return ST_OK;
  });
}

st_status st_phase_at_saddle(const st_scaled_params* sp, int k, double* re, double* im) {
  return guarded([&] {
    require(re, "re");
    require(im, "im");
    const auto f = st::phase_at_saddle(to_scaled(sp), k);
    *re = f.real();
    *im = f.imag();
    return ST_OK;
  });
}

double st_caustic_gamma(void) { return st::caustic_gamma(); }

st_status st_classify_regime(const st_scaled_params* sp, st_regime* out) {
  return guarded([&] {
    require(out, "out");
    *out = from_regime(st::classify_regime(to_scaled(sp)));
    return ST_OK;
  });
}

double st_valley_angle(int sector) { return st::valley_angle(sector); }

st_status st_trace_steepest(const st_scaled_params* sp, int k, st_direction direction,
                            const st_trace_options* opts, st_path** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (direction != ST_DIRECTION_LEFT && direction != ST_DIRECTION_RIGHT)
      throw st::InvalidArgument("unknown direction value");
    const st::Direction d = direction == ST_DIRECTION_LEFT ? st::Direction::Left : st::Direction::Right;
    st::TraceOptions o;
    if (opts != nullptr)
      o = {opts->initial_step, opts->cutoff_radius, opts->level_tolerance, opts->min_step, opts->max_steps};
    *out = new st_path{st::trace_steepest(to_scaled(sp), k, d, o)};
    return ST_OK;
  });
}

size_t st_path_size(const st_path* path) { return path ? path->path.points.size() : 0; }

st_status st_path_point(const st_path* path, size_t i, double* re, double* im) {
  return guarded([&] {
    require(path, "path");
    require(re, "re");
    require(im, "im");
    if (i >= path->path.points.size()) throw st::InvalidArgument("path point index out of range");
    *re = path->path.points[i].real();
    *im = path->path.points[i].imag();
    return ST_OK;
  });
}

int st_path_saddle_index(const st_path* path) { return path ? path->path.saddle_index : -1; }
int st_path_terminal_sector(const st_path* path) { return path ? path->path.terminal_sector : -1; }
double st_path_terminal_angle(const st_path* path) { return path ? path->path.terminal_angle() : 0.0; }
void st_path_free(st_path* path) { delete path; }

st_status st_leading_q00(double z, int include_subdominant, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = st::leading_q00(z, include_subdominant != 0);
    return ST_OK;
  });
}

st_status st_predicted_zeros(st_branch branch, int m_max, st_form form, double* z_out, size_t capacity) {
  return guarded([&] {
    require(z_out, "z_out");
    const auto zs = st::predicted_zeros(to_branch(branch), m_max, to_form(form));
    if (capacity < zs.size()) throw st::InvalidArgument("output buffer needs m_max + 1 entries");
    for (size_t i = 0; i < zs.size(); ++i) z_out[i] = zs[i].z_predicted;
    return ST_OK;
  });
}

st_status st_predicted_extrema(st_branch branch, int m, double* z_inner, double* z_outer) {
  return guarded([&] {
    require(z_inner, "z_inner");
    require(z_outer, "z_outer");
    const auto [a, b] = st::predicted_extrema(to_branch(branch), m);
    *z_inner = a;
    *z_outer = b;
    return ST_OK;
  });
}

st_status st_pearcey_hill_zeros(int n_max, double* y_out, size_t capacity) {
  return guarded([&] {
    require(y_out, "y_out");
    const auto ys = st::pearcey_hill_zeros(n_max);
    if (capacity < ys.size()) throw st::InvalidArgument("output buffer needs n_max + 1 entries");
    for (size_t i = 0; i < ys.size(); ++i) y_out[i] = ys[i];
    return ST_OK;
  });
}

double st_transport_to_pearcey_hill(double z_q) { return st::transport_to_pearcey_hill(z_q); }

st_status st_saddle_contribution(const st_scaled_params* sp, int k, st_contribution* out) {
  return guarded([&] {
    require(out, "out");
    const st::ScaledParams s = to_scaled(sp);
    const st::SaddleContribution c = st::saddle_contribution(s, st::saddles(s), k);
    *out = {c.saddle_index, c.amplitude.real(), c.amplitude.imag(), c.exponent_real, c.exponent_imag};
    return ST_OK;
  });
}

st_status st_dominance_gap(const st_scaled_params* sp, double* gap) {
  return guarded([&] {
    require(gap, "gap");
    *gap = st::dominance_gap(to_scaled(sp));
    return ST_OK;
  });
}

st_status st_below_caustic_obstruction(const st_scaled_params* sp, st_obstruction_report* out) {
  return guarded([&] {
    require(out, "out");
    const st::ObstructionReport r = st::below_caustic_obstruction(to_scaled(sp));
    *out = {r.t1,
            r.t2,
            r.phase_sum,
            r.curvature_sum,
            r.curvature_t1,
            r.curvature_t2,
            r.phase_condition_violated ? 1 : 0,
            r.curvature_condition_violated ? 1 : 0,
            r.both_nonzero ? 1 : 0};
    return ST_OK;
  });
}

st_status st_refine_on_axis(st_branch branch, int m, const st_quad_config* cfg, const st_refine_options* opts,
                            st_refined_zero* out) {
  return guarded([&] {
    require(out, "out");
    const st::Branch b = to_branch(branch);
    st::RefineOptions o;
    if (opts) o = {opts->residual_tolerance, opts->max_iterations, opts->max_halvings, opts->z_cutoff,
                   opts->relative_residual != 0};
    const st::ZeroPrediction seed{b, m, st::predicted_zero(b, m), st::Form::Q};
    const st::RefinedZero r = st::refine_on_axis(seed, to_config(cfg, st::refinement_quadrature()), o);
    *out = {r.z, r.seed, r.residual, r.m, r.iterations, branch};
    return ST_OK;
  });
}

st_status st_axis_confinement_scan(double y0, st_branch branch, int m, const st_quad_config* cfg,
                                   const st_confinement_options* opts, st_confinement_record* out) {
  return guarded([&] {
    require(out, "out");
    st::ConfinementOptions o;
    if (opts) o = {opts->residual_tolerance, opts->max_iterations, opts->max_halvings,
                   opts->z_cutoff, opts->y_limit, opts->step_tolerance};
    const st::AxisConfinementRecord r =
        st::axis_confinement_scan(y0, to_branch(branch), m, to_config(cfg, st::refinement_quadrature()), o);
    *out = {r.seed_y, r.seed_z, r.converged ? 1 : 0, r.final_y, r.final_z, r.final_modulus, r.iterations};
    return ST_OK;
  });
}

st_status st_modulus_scan(const st_scan_region* region, const st_quad_config* cfg, unsigned threads,
                          st_scan** out) {
  return guarded([&] {
    require(region, "region");
    require(out, "out");
    *out = nullptr;
    const st::ScanRegion r{region->y_min, region->y_max, region->z_min, region->z_max, region->ny, region->nz};
    *out = new st_scan{st::modulus_scan(r, to_config(cfg), threads)};
    return ST_OK;
  });
}

st_status st_scan_dims(const st_scan* scan, int* ny, int* nz) {
  return guarded([&] {
    require(scan, "scan");
    if (ny) *ny = scan->grid.region.ny;
    if (nz) *nz = scan->grid.region.nz;
    return ST_OK;
  });
}

st_status st_scan_cell_at(const st_scan* scan, int iy, int iz, st_scan_cell* out) {
  return guarded([&] {
    require(scan, "scan");
    require(out, "out");
    if (iy < 0 || iz < 0 || iy >= scan->grid.region.ny || iz >= scan->grid.region.nz)
      throw st::InvalidArgument("scan cell index out of range");
    const st::ScanCell& c = scan->grid.at(iy, iz);
    *out = {c.y, c.z, c.value.real(), c.value.imag(), c.abs_q(), c.abs_error_estimate, c.tol_miss ? 1 : 0};
    return ST_OK;
  });
}

long st_scan_argmin(const st_scan* scan) { return scan ? scan->grid.argmin() : -1; }

int st_scan_flagged_count(const st_scan* scan) { return scan ? scan->grid.flagged_count() : 0; }

st_status st_scan_axis_sign_changes(const st_scan* scan, double* z_out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(scan, "scan");
    const auto changes = scan->grid.axis_sign_changes();
    if (count) *count = changes.size();
    for (size_t i = 0; i < changes.size() && i < capacity && z_out; ++i) z_out[i] = changes[i];
    return ST_OK;
  });
}

st_status st_scan_write_csv(const st_scan* scan, const char* path) {
  return guarded([&] {
    require(scan, "scan");
    require(path, "path");
    std::ofstream os(path);
    if (!os) return fail(ST_IO_ERROR, std::string("cannot open '") + path + "' for writing");
    os << "y,z,abs_q,flag\n";
    char line[128];
    for (const st::ScanCell& c : scan->grid.cells) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%s\n", c.y, c.z, c.abs_q(), c.tol_miss ? "tol_miss" : "ok");
      os << line;
    }
    os.flush();
    if (!os) return fail(ST_IO_ERROR, std::string("write to '") + path + "' failed");
    return ST_OK;
  });
}

void st_scan_free(st_scan* scan) { delete scan; }

}  // extern "C"
