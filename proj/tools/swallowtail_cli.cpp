// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "swallowtail/swallowtail.h"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitPathStalled = 4;
constexpr int kExitIo = 5;

// Past this integrand peak the straight-ray oracle loses more than six
// digits to cancellation.
constexpr double kPeakWarning = 1e6;

struct Failure {
  st_status status;
  std::string message;
};

void check(st_status s) {
  if (s != ST_OK) throw Failure{s, st_last_error()};
}

int exit_code_for(st_status s) {
  switch (s) {
    case ST_OK: return kExitOk;
    case ST_INVALID_ARGUMENT:
    case ST_DEGENERATE_SCALING:
    case ST_SEED_OUT_OF_RANGE:
    case ST_REGIME_ERROR:
    case ST_DOMAIN_ERROR: return kExitUsage;
    case ST_TOLERANCE_NOT_REACHED:
    case ST_NO_CONVERGENCE: return kExitNumerics;
    case ST_PATH_STALLED: return kExitPathStalled;
    case ST_IO_ERROR: return kExitIo;
    case ST_INTERNAL_ERROR: return kExitInternal;
  }
  return kExitInternal;
}

json envelope(const std::string& command, json params, json results) {
  return {{"command", command}, {"params_echo", std::move(params)}, {"results", std::move(results)},
          {"tool_version", st_version()}};
}

json config_json(const st_quad_config& c) {
  return {{"target_abs_tol", c.target_abs_tol},
          {"max_subdivisions", c.max_subdivisions},
          {"truncation_safety", c.truncation_safety}};
}

void add_quadrature_flags(CLI::App* cmd, st_quad_config& cfg) {
  cmd->add_option("--tol", cfg.target_abs_tol, "Absolute error target of the quadrature")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-subdivisions", cfg.max_subdivisions, "Panel budget per integration ray")
      ->capture_default_str()
      ->check(CLI::Range(8, 1 << 24));
  cmd->add_option("--truncation-safety", cfg.truncation_safety, "Tail-bound safety factor (> 1)")
      ->capture_default_str();
}

st_branch parse_branch(const std::string& s) { return s == "pos" ? ST_BRANCH_POSITIVE_Z : ST_BRANCH_NEGATIVE_Z; }
st_form parse_form(const std::string& s) { return (s == "S" || s == "s") ? ST_FORM_S : ST_FORM_Q; }

const char* regime_name(st_regime r) {
  switch (r) {
    case ST_REGIME_TWO_CONJUGATE_PAIRS: return "two_conjugate_pairs";
    case ST_REGIME_REAL_PAIR_PLUS_CONJUGATE_PAIR: return "real_pair_plus_conjugate_pair";
    case ST_REGIME_DEGENERATE: return "degenerate";
  }
  return "unknown";
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string::npos) throw Failure{ST_INVALID_ARGUMENT, std::string(flag) + " expects a:b"};
  try {
    size_t used = 0;
    const std::string lo_s = text.substr(0, colon), hi_s = text.substr(colon + 1);
    const double lo = std::stod(lo_s, &used);
    if (used != lo_s.size()) throw std::invalid_argument(flag);
    const double hi = std::stod(hi_s, &used);
    if (used != hi_s.size()) throw std::invalid_argument(flag);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Failure{ST_INVALID_ARGUMENT, std::string(flag) + " expects two numbers a:b, got '" + text + "'"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swallowtail integral: evaluation, saddle structure, asymptotics and zeros"};
  app.require_subcommand(1);
  app.set_version_flag("--version", st_version());

  st_quad_config quad;
  st_quad_config_default(&quad);
  st_quad_config refine_quad;
  st_quad_config_refinement(&refine_quad);

  // eval
  double ex = 0, ey = 0, ez = 0;
  std::string eform = "Q";
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate S or Q at (x,y,z)");
  eval_cmd->add_option("--x", ex)->required();
  eval_cmd->add_option("--y", ey)->required();
  eval_cmd->add_option("--z", ez)->required();
  eval_cmd->add_option("--form", eform)->check(CLI::IsMember({"S", "Q"}))->capture_default_str();
  add_quadrature_flags(eval_cmd, quad);

  // saddles / trace
  double sy = 0, sz = 0;
  auto* saddles_cmd = app.add_subcommand("saddles", "Saddle points of the scaled phase of Q(0,y,z)");
  saddles_cmd->add_option("--y", sy)->required();
  saddles_cmd->add_option("--z", sz)->required();

  double ty = 0, tz = 0;
  int tk = 0;
  std::string tdir = "right";
  auto* trace_cmd = app.add_subcommand("trace", "Trace a steepest-descent path from a saddle");
  trace_cmd->add_option("--y", ty)->required();
  trace_cmd->add_option("--z", tz)->required();
  trace_cmd->add_option("--saddle", tk)->required()->check(CLI::Range(0, 3));
  trace_cmd->add_option("--direction", tdir)->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  st_trace_options topts;
  st_trace_options_default(&topts);
  trace_cmd->add_option("--step", topts.initial_step, "Initial arclength step")->capture_default_str();
  trace_cmd->add_option("--cutoff-radius", topts.cutoff_radius, "Stop once |t| exceeds this")->capture_default_str();
  trace_cmd->add_option("--level-tol", topts.level_tolerance, "Level-set tolerance of the corrector")
      ->capture_default_str();
  trace_cmd->add_option("--min-step", topts.min_step, "Smallest step before the trace counts as stalled")
      ->capture_default_str();
  trace_cmd->add_option("--max-steps", topts.max_steps, "Step budget")->capture_default_str();

  // zeros
  auto* zeros_cmd = app.add_subcommand("zeros", "Predicted and refined zeros of Q(0,y,z)");
  zeros_cmd->require_subcommand(1);
  std::string zbranch = "pos", zform = "Q";
  int zm_max = 5, zm = 0;
  double y0 = 0.3;
  auto* predict_cmd = zeros_cmd->add_subcommand("predict", "Leading-order zero sequence on the z-axis");
  predict_cmd->add_option("--branch", zbranch)->required()->check(CLI::IsMember({"pos", "neg"}));
  predict_cmd->add_option("--m-max", zm_max)->capture_default_str()->check(CLI::Range(0, 100000));
  predict_cmd->add_option("--form", zform)->check(CLI::IsMember({"S", "Q"}))->capture_default_str();

  st_refine_options ropts;
  st_refine_options_default(&ropts);
  bool relative = false;
  auto* refine_cmd = zeros_cmd->add_subcommand("refine", "Newton-refine a predicted zero against quadrature");
  refine_cmd->add_option("--branch", zbranch)->required()->check(CLI::IsMember({"pos", "neg"}));
  refine_cmd->add_option("--m", zm)->required()->check(CLI::NonNegativeNumber);
  refine_cmd->add_option("--residual-tol", ropts.residual_tolerance)->capture_default_str();
  refine_cmd->add_option("--z-cutoff", ropts.z_cutoff)->capture_default_str();
  refine_cmd->add_flag("--relative-residual", relative, "Residual relative to the leading-order envelope");
  add_quadrature_flags(refine_cmd, refine_quad);

  st_confinement_options copts;
  st_confinement_options_default(&copts);
  auto* confine_cmd = zeros_cmd->add_subcommand("confine", "2D Newton from an off-axis seed");
  confine_cmd->add_option("--y0", y0)->required()->check(CLI::NonNegativeNumber);
  confine_cmd->add_option("--branch", zbranch)->required()->check(CLI::IsMember({"pos", "neg"}));
  confine_cmd->add_option("--m", zm)->required()->check(CLI::NonNegativeNumber);
  confine_cmd->add_option("--residual-tol", copts.residual_tolerance)->capture_default_str();
  confine_cmd->add_option("--z-cutoff", copts.z_cutoff)->capture_default_str();
  // Shares the refinement quadrature defaults.
  add_quadrature_flags(confine_cmd, refine_quad);

  // scan
  std::string y_range, z_range, out_path, scan_format = "csv";
  int ny = 2, nz = 2;
  unsigned threads = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Grid of |Q(0,y,z)| written to a file");
  scan_cmd->add_option("--y-range", y_range, "a:b")->required();
  scan_cmd->add_option("--z-range", z_range, "c:d")->required();
  scan_cmd->add_option("--ny", ny)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--nz", nz)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", out_path)->required();
  scan_cmd->add_option("--format", scan_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  scan_cmd->add_option("--threads", threads, "Worker count, 0 = hardware concurrency")->capture_default_str();
  add_quadrature_flags(scan_cmd, quad);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    json out;
    if (*eval_cmd) {
      const st_params p{ex, ey, ez, parse_form(eform)};
      double peak = 0.0;
      check(st_integrand_peak(&p, &peak));
      json warnings = json::array();
      if (peak > kPeakWarning) {
        const std::string w = "integrand peaks at " + std::to_string(peak) +
                              " on the contour; quadrature loses digits to cancellation, "
                              "consider the leading-order asymptotics instead";
        std::cerr << "warning: " << w << "\n";
        warnings.push_back(w);
      }
      st_eval_result r;
      check(st_eval(&p, &quad, &r));
      out = envelope("eval", {{"x", ex}, {"y", ey}, {"z", ez}, {"form", eform}, {"quadrature", config_json(quad)}},
                     {{"re", r.re},
                      {"im", r.im},
                      {"abs", std::hypot(r.re, r.im)},
                      {"abs_error_estimate", r.abs_error_estimate},
                      {"subdivisions_used", r.subdivisions_used},
                      {"integrand_peak", peak},
                      {"warnings", warnings}});
    } else if (*saddles_cmd) {
      const st_params p{0.0, sy, sz, ST_FORM_Q};
      st_scaled_params sp;
      check(st_scale(&p, &sp));
      st_saddle_set set;
      check(st_saddles(&sp, &set));
      st_regime by_gamma;
      check(st_classify_regime(&sp, &by_gamma));
      json roots = json::array(), phases = json::array();
      for (int k = 0; k < 4; ++k) {
        roots.push_back({set.re[k], set.im[k]});
        double fr = 0, fi = 0;
        check(st_phase_at_saddle(&sp, k, &fr, &fi));
        phases.push_back({fr, fi});
      }
      out = envelope("saddles", {{"x", 0.0}, {"y", sy}, {"z", sz}, {"form", "Q"}},
                     {{"lambda", sp.lambda},
                      {"gamma", sp.gamma},
                      {"sign_z", sp.sign_z == ST_SIGN_POSITIVE ? "positive" : "negative"},
                      {"roots", roots},
                      {"phase_at_saddles", phases},
                      {"regime", regime_name(set.regime)},
                      {"regime_by_gamma", regime_name(by_gamma)},
                      {"p", set.p},
                      {"q1", set.q1},
                      {"q2", set.q2},
                      {"caustic_gamma", st_caustic_gamma()}});
    } else if (*trace_cmd) {
      const st_params p{0.0, ty, tz, ST_FORM_Q};
      st_scaled_params sp;
      check(st_scale(&p, &sp));
      st_path* path = nullptr;
      check(st_trace_steepest(&sp, tk, tdir == "left" ? ST_DIRECTION_LEFT : ST_DIRECTION_RIGHT, &topts, &path));
      json points = json::array();
      for (size_t i = 0; i < st_path_size(path); ++i) {
        double re = 0, im = 0;
        st_path_point(path, i, &re, &im);
        points.push_back({re, im});
      }
      const int sector = st_path_terminal_sector(path);
      json results = {{"saddle_index", st_path_saddle_index(path)},
                      {"direction", tdir},
                      {"terminal_sector", sector},
                      {"terminal_angle", st_path_terminal_angle(path)},
                      {"sector_angle", st_valley_angle(sector)},
                      {"descending", true},
                      {"points", points}};
      st_path_free(path);
      out = envelope("trace",
                     {{"x", 0.0},
                      {"y", ty},
                      {"z", tz},
                      {"saddle", tk},
                      {"direction", tdir},
                      {"step", topts.initial_step},
                      {"cutoff_radius", topts.cutoff_radius},
                      {"level_tol", topts.level_tolerance},
                      {"min_step", topts.min_step},
                      {"max_steps", topts.max_steps}},
                     results);
    } else if (*predict_cmd) {
      std::vector<double> zs(static_cast<size_t>(zm_max) + 1);
      check(st_predicted_zeros(parse_branch(zbranch), zm_max, parse_form(zform), zs.data(), zs.size()));
      json table = json::array();
      for (int m = 0; m <= zm_max; ++m) table.push_back({{"m", m}, {"z", zs[static_cast<size_t>(m)]}});
      out = envelope("zeros predict", {{"branch", zbranch}, {"m_max", zm_max}, {"form", zform}},
                     {{"branch", zbranch}, {"form", zform}, {"predictions", table}});
    } else if (*refine_cmd) {
      ropts.relative_residual = relative ? 1 : 0;
      st_refined_zero r;
      check(st_refine_on_axis(parse_branch(zbranch), zm, &refine_quad, &ropts, &r));
      out = envelope("zeros refine",
                     {{"branch", zbranch},
                      {"m", zm},
                      {"residual_tol", ropts.residual_tolerance},
                      {"z_cutoff", ropts.z_cutoff},
                      {"relative_residual", relative},
                      {"max_iterations", ropts.max_iterations},
                      {"quadrature", config_json(refine_quad)}},
                     {{"m", r.m},
                      {"branch", zbranch},
                      {"seed", r.seed},
                      {"z", r.z},
                      {"residual", r.residual},
                      {"iterations", r.iterations}});
    } else if (*confine_cmd) {
      st_confinement_record rec;
      check(st_axis_confinement_scan(y0, parse_branch(zbranch), zm, &refine_quad, &copts, &rec));
      out = envelope("zeros confine",
                     {{"y0", y0},
                      {"branch", zbranch},
                      {"m", zm},
                      {"residual_tol", copts.residual_tolerance},
                      {"z_cutoff", copts.z_cutoff},
                      {"max_iterations", copts.max_iterations},
                      {"quadrature", config_json(refine_quad)}},
                     {{"seed_y", rec.seed_y},
                      {"seed_z", rec.seed_z},
                      {"converged", rec.converged != 0},
                      {"final_y", rec.final_y},
                      {"final_z", rec.final_z},
                      {"final_modulus", std::isfinite(rec.final_modulus) ? json(rec.final_modulus) : json(nullptr)},
                      {"iterations", rec.iterations}});
    } else if (*scan_cmd) {
      const auto [ylo, yhi] = parse_range(y_range, "--y-range");
      const auto [zlo, zhi] = parse_range(z_range, "--z-range");
      const st_scan_region region{ylo, yhi, zlo, zhi, ny, nz};
      st_scan* scan = nullptr;
      check(st_modulus_scan(&region, &quad, threads, &scan));
      struct ScanGuard {
        st_scan* s;
        ~ScanGuard() { st_scan_free(s); }
      } guard{scan};

      if (scan_format == "csv") {
        check(st_scan_write_csv(scan, out_path.c_str()));
      } else {
        json cells = json::array();
        for (int iy = 0; iy < ny; ++iy)
          for (int iz = 0; iz < nz; ++iz) {
            st_scan_cell c;
            check(st_scan_cell_at(scan, iy, iz, &c));
            cells.push_back({{"y", c.y}, {"z", c.z}, {"abs_q", c.abs_q}, {"flag", c.tol_miss ? "tol_miss" : "ok"}});
          }
        std::ofstream os(out_path);
        if (!os) throw Failure{ST_IO_ERROR, "cannot open '" + out_path + "' for writing"};
        os << json{{"ny", ny}, {"nz", nz}, {"cells", cells}}.dump() << "\n";
        if (!os) throw Failure{ST_IO_ERROR, "write to '" + out_path + "' failed"};
      }

      json summary = {{"cells", ny * nz}, {"flagged_cells", st_scan_flagged_count(scan)}, {"output", out_path}};
      const long best = st_scan_argmin(scan);
      if (best >= 0) {
        st_scan_cell c;
        check(st_scan_cell_at(scan, static_cast<int>(best / nz), static_cast<int>(best % nz), &c));
        summary["min_abs_q"] = c.abs_q;
        summary["argmin"] = {{"y", c.y}, {"z", c.z}};
      } else {
        summary["min_abs_q"] = nullptr;
        summary["argmin"] = nullptr;
      }
      size_t n_changes = 0;
      check(st_scan_axis_sign_changes(scan, nullptr, 0, &n_changes));
      std::vector<double> changes(n_changes);
      check(st_scan_axis_sign_changes(scan, changes.data(), changes.size(), &n_changes));
      summary["axis_sign_changes"] = changes;
      out = envelope("scan",
                     {{"y_range", {ylo, yhi}},
                      {"z_range", {zlo, zhi}},
                      {"ny", ny},
                      {"nz", nz},
                      {"out", out_path},
                      {"format", scan_format},
                      {"threads", threads},
                      {"quadrature", config_json(quad)}},
                     summary);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  } catch (const Failure& f) {
    std::cerr << "error (" << st_status_name(f.status) << "): " << f.message << "\n";
    return exit_code_for(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
