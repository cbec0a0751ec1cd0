#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "swallowtail/swallowtail.h"

namespace {

std::string temp_path(const char* name) { return std::string(CAPI_TEST_TMPDIR) + "/" + name; }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(st_version()) == "1.0.0");
  CHECK(std::string(st_status_name(ST_OK)) == "ok");
  CHECK(std::string(st_status_name(ST_TOLERANCE_NOT_REACHED)) == "tolerance_not_reached");
  CHECK(std::string(st_status_name(ST_IO_ERROR)) == "io_error");
  CHECK(std::string(st_status_name(static_cast<st_status>(99))) == "unknown");
}

TEST_CASE("defaults") {
  st_quad_config cfg;
  st_quad_config_default(&cfg);
  CHECK(cfg.target_abs_tol == 1e-10);
  CHECK(cfg.max_subdivisions == 2000);
  CHECK(cfg.truncation_safety == 10.0);
  st_quad_config_refinement(&cfg);
  CHECK(cfg.target_abs_tol == 1e-11);
  st_refine_options ro;
  st_refine_options_default(&ro);
  CHECK(ro.residual_tolerance == 1e-9);
  CHECK(ro.max_iterations == 25);
  CHECK(ro.z_cutoff == 12.0);
  CHECK(ro.relative_residual == 0);
  st_confinement_options co;
  st_confinement_options_default(&co);
  CHECK(co.residual_tolerance == 1e-9);
  st_quad_config_default(nullptr);
}

TEST_CASE("evaluation through the C API") {
  st_params p{0, 0, 0, ST_FORM_Q};
  st_eval_result r;
  REQUIRE(st_eval(&p, nullptr, &r) == ST_OK);
  CHECK(r.re == doctest::Approx(2.409643673187).epsilon(1e-11));
  CHECK(std::abs(r.im) < 1e-12);
  CHECK(r.subdivisions_used >= 1);
  p.form = ST_FORM_S;
  REQUIRE(st_eval(&p, nullptr, &r) == ST_OK);
  CHECK(r.re == doctest::Approx(1.7464607310).epsilon(1e-9));

  st_params a{0, -2, 1, ST_FORM_Q}, b{0, 2, 1, ST_FORM_Q};
  st_eval_result ra, rb;
  REQUIRE(st_eval(&a, nullptr, &ra) == ST_OK);
  REQUIRE(st_eval(&b, nullptr, &rb) == ST_OK);
  CHECK(ra.re == doctest::Approx(rb.re).epsilon(1e-9));
  CHECK(ra.im == doctest::Approx(-rb.im).epsilon(1e-9));

  st_eval_result m;
  st_params o{0, 0, 0, ST_FORM_Q};
  REQUIRE(st_eval_q_moment(&o, 2, nullptr, &m) == ST_OK);
  CHECK(m.re == doctest::Approx(0.9196258).epsilon(1e-6));
  double peak = 0;
  REQUIRE(st_integrand_peak(&o, &peak) == ST_OK);
  CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("errors map to status codes with a message") {
  st_eval_result r;
  CHECK(st_eval(nullptr, nullptr, &r) == ST_INVALID_ARGUMENT);
  CHECK(std::string(st_last_error()).find("null") != std::string::npos);
  st_params far{0, 0, -40, ST_FORM_Q};
  st_quad_config tight{1e-12, 8, 10.0};
  CHECK(st_eval(&far, &tight, &r) == ST_TOLERANCE_NOT_REACHED);
  CHECK(std::string(st_last_error()).find("exceeds target") != std::string::npos);
  st_params nan_p{NAN, 0, 0, ST_FORM_Q};
  CHECK(st_eval(&nan_p, nullptr, &r) == ST_INVALID_ARGUMENT);
  st_quad_config bad{-1.0, 100, 10.0};
  st_params o{0, 0, 0, ST_FORM_Q};
  CHECK(st_eval(&o, &bad, &r) == ST_INVALID_ARGUMENT);
  CHECK(st_eval_q_moment(&o, 0, nullptr, &r) == ST_INVALID_ARGUMENT);

  st_scaled_params sp;
  st_params z0{0, 1, 0, ST_FORM_Q};
  CHECK(st_scale(&z0, &sp) == ST_DEGENERATE_SCALING);
  st_params ok{0, 1, 1, ST_FORM_Q};
  REQUIRE(st_scale(&ok, &sp) == ST_OK);
  st_refined_zero rz;
  CHECK(st_refine_on_axis(ST_BRANCH_POSITIVE_Z, 9, nullptr, nullptr, &rz) == ST_SEED_OUT_OF_RANGE);
  st_refine_options ro;
  st_refine_options_default(&ro);
  ro.max_iterations = 0;
  CHECK(st_refine_on_axis(ST_BRANCH_NEGATIVE_Z, 0, nullptr, &ro, &rz) == ST_NO_CONVERGENCE);
  double gap;
  st_scaled_params neg{1, 0.5, ST_SIGN_NEGATIVE};
  CHECK(st_dominance_gap(&neg, &gap) == ST_REGIME_ERROR);
  st_obstruction_report rep;
  st_scaled_params neg_gamma{1, -0.5, ST_SIGN_NEGATIVE};
  CHECK(st_below_caustic_obstruction(&neg_gamma, &rep) == ST_DOMAIN_ERROR);
  double v;
  CHECK(st_leading_q00(0.0, 0, &v) == ST_DOMAIN_ERROR);
}

TEST_CASE("error messages are per thread") {
  st_eval_result r;
  CHECK(st_eval(nullptr, nullptr, &r) == ST_INVALID_ARGUMENT);
  std::string other;
  std::thread([&] {
    double v;
    st_leading_q00(0.0, 0, &v);
    other = st_last_error();
  }).join();
  CHECK(std::string(st_last_error()).find("null") != std::string::npos);
  CHECK(other.find("z") != std::string::npos);
  CHECK(other != st_last_error());
}

TEST_CASE("rescalings") {
  st_params s{0, 0, 1, ST_FORM_S}, q;
  double factor = 0;
  REQUIRE(st_s_to_q(&s, &q, &factor) == ST_OK);
  CHECK(q.form == ST_FORM_Q);
  CHECK(factor == doctest::Approx(std::pow(5.0, -0.2)));
  st_params back;
  REQUIRE(st_q_to_s(&q, &back, &factor) == ST_OK);
  CHECK(back.z == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st_q_to_s(&s, &back, &factor) == ST_INVALID_ARGUMENT);
  st_params r;
  st_params p{1, 2, 3, ST_FORM_Q};
  REQUIRE(st_conjugate_reflection(&p, &r) == ST_OK);
  CHECK(r.y == -2.0);
}

TEST_CASE("saddles and paths") {
  st_params p{0, 0, -1, ST_FORM_Q};
  st_scaled_params sp;
  REQUIRE(st_scale(&p, &sp) == ST_OK);
  CHECK(sp.sign_z == ST_SIGN_NEGATIVE);
  st_saddle_set set;
  REQUIRE(st_saddles(&sp, &set) == ST_OK);
  CHECK(set.regime == ST_REGIME_REAL_PAIR_PLUS_CONJUGATE_PAIR);
  CHECK(set.re[0] == doctest::Approx(1.0).epsilon(1e-12));
  st_regime regime;
  REQUIRE(st_classify_regime(&sp, &regime) == ST_OK);
  CHECK(regime == set.regime);
  double fr, fi;
  REQUIRE(st_phase_at_saddle(&sp, 0, &fr, &fi) == ST_OK);
  CHECK(fr == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(st_caustic_gamma() == doctest::Approx(1.754765).epsilon(1e-6));
  CHECK(st_valley_angle(1) == doctest::Approx(M_PI / 2));

  st_path* path = nullptr;
  REQUIRE(st_trace_steepest(&sp, 0, ST_DIRECTION_RIGHT, nullptr, &path) == ST_OK);
  REQUIRE(path != nullptr);
  CHECK(st_path_size(path) > 10);
  CHECK(st_path_saddle_index(path) == 0);
  CHECK(st_path_terminal_sector(path) == 0);
  CHECK(std::abs(st_path_terminal_angle(path) - M_PI / 10) < 0.05);
  double re, im;
  REQUIRE(st_path_point(path, 0, &re, &im) == ST_OK);
  CHECK(re == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st_path_point(path, st_path_size(path), &re, &im) == ST_INVALID_ARGUMENT);
  st_path_free(path);
  st_path_free(nullptr);

  st_scaled_params caustic{1, st_caustic_gamma(), ST_SIGN_POSITIVE};
  st_path* none = reinterpret_cast<st_path*>(0x1);
  CHECK(st_trace_steepest(&caustic, 0, ST_DIRECTION_LEFT, nullptr, &none) == ST_REGIME_ERROR);
  CHECK(none == nullptr);

  st_trace_options opts;
  st_trace_options_default(&opts);
  CHECK(opts.initial_step == 0.01);
  CHECK(opts.cutoff_radius == 8.0);
  CHECK(opts.level_tolerance == 1e-10);
  opts.max_steps = 5;
  CHECK(st_trace_steepest(&sp, 0, ST_DIRECTION_RIGHT, &opts, &path) == ST_PATH_STALLED);
  CHECK(std::string(st_last_error()).find("budget") != std::string::npos);
  st_trace_options_default(&opts);
  opts.min_step = -1.0;
  CHECK(st_trace_steepest(&sp, 0, ST_DIRECTION_RIGHT, &opts, &path) == ST_INVALID_ARGUMENT);
  st_trace_options_default(&opts);
  opts.cutoff_radius = 4.0;
  REQUIRE(st_trace_steepest(&sp, 0, ST_DIRECTION_LEFT, &opts, &path) == ST_OK);
  CHECK(st_path_terminal_sector(path) == 4);
  st_path_free(path);
}

TEST_CASE("asymptotic predictions") {
  double z[3];
  REQUIRE(st_predicted_zeros(ST_BRANCH_POSITIVE_Z, 2, ST_FORM_Q, z, 3) == ST_OK);
  CHECK(z[0] == doctest::Approx(2.706225118283).epsilon(1e-11));
  CHECK(z[2] == doctest::Approx(8.530281300889).epsilon(1e-11));
  CHECK(st_predicted_zeros(ST_BRANCH_POSITIVE_Z, 2, ST_FORM_Q, z, 2) == ST_INVALID_ARGUMENT);
  double inner, outer;
  REQUIRE(st_predicted_extrema(ST_BRANCH_NEGATIVE_Z, 0, &inner, &outer) == ST_OK);
  CHECK(inner == doctest::Approx(-0.985371).epsilon(1e-5));
  double y[21];
  REQUIRE(st_pearcey_hill_zeros(20, y, 21) == ST_OK);
  REQUIRE(st_predicted_zeros(ST_BRANCH_POSITIVE_Z, 2, ST_FORM_S, z, 3) == ST_OK);
  CHECK(std::abs(z[1] - y[1]) < 1e-10);
  CHECK(st_transport_to_pearcey_hill(2.706225118283) == doctest::Approx(y[0]).epsilon(1e-11));

  st_scaled_params sp{32, 0, ST_SIGN_POSITIVE};
  st_contribution c;
  REQUIRE(st_saddle_contribution(&sp, 1, &c) == ST_OK);
  CHECK(c.saddle_index == 1);
  CHECK(std::hypot(c.amplitude_re, c.amplitude_im) == doctest::Approx(std::sqrt(2 * M_PI / (4 * 32))));
  double gap;
  st_scaled_params g1{1, 1.0, ST_SIGN_POSITIVE};
  REQUIRE(st_dominance_gap(&g1, &gap) == ST_OK);
  CHECK(gap == doctest::Approx(0.998405724358).epsilon(1e-10));
  st_obstruction_report rep;
  st_scaled_params half{1, 0.5, ST_SIGN_NEGATIVE};
  REQUIRE(st_below_caustic_obstruction(&half, &rep) == ST_OK);
  CHECK(rep.both_nonzero == 1);
  double v;
  REQUIRE(st_leading_q00(-2.372995525276, 0, &v) == ST_OK);
  CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("zeros through the C API") {
  st_refined_zero r;
  REQUIRE(st_refine_on_axis(ST_BRANCH_NEGATIVE_Z, 0, nullptr, nullptr, &r) == ST_OK);
  CHECK(r.z == doctest::Approx(-2.473282048212).epsilon(1e-10));
  CHECK(r.residual < 1e-9);
  CHECK(r.branch == ST_BRANCH_NEGATIVE_Z);
  st_confinement_record rec;
  REQUIRE(st_axis_confinement_scan(0.3, ST_BRANCH_POSITIVE_Z, 0, nullptr, nullptr, &rec) == ST_OK);
  CHECK(rec.converged == 1);
  CHECK(std::abs(rec.final_y) < 1e-6);
}

TEST_CASE("scan handle, CSV export and unwritable paths") {
  st_scan_region region{0, 1, 1, 2, 3, 4};
  st_scan* scan = nullptr;
  REQUIRE(st_modulus_scan(&region, nullptr, 2, &scan) == ST_OK);
  int ny = 0, nz = 0;
  REQUIRE(st_scan_dims(scan, &ny, &nz) == ST_OK);
  CHECK(ny == 3);
  CHECK(nz == 4);
  st_scan_cell cell;
  REQUIRE(st_scan_cell_at(scan, 2, 3, &cell) == ST_OK);
  CHECK(cell.y == 1.0);
  CHECK(cell.z == 2.0);
  CHECK(cell.abs_q == doctest::Approx(std::hypot(cell.re, cell.im)));
  CHECK(st_scan_cell_at(scan, 3, 0, &cell) == ST_INVALID_ARGUMENT);
  CHECK(st_scan_argmin(scan) >= 0);
  CHECK(st_scan_flagged_count(scan) == 0);

  const std::string csv = temp_path("capi_scan.csv");
  REQUIRE(st_scan_write_csv(scan, csv.c_str()) == ST_OK);
  std::ifstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 13);
  CHECK(lines[0] == "y,z,abs_q,flag");
  for (size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "ok");
  CHECK(st_scan_write_csv(scan, "/nonexistent-dir/scan.csv") == ST_IO_ERROR);
  std::remove(csv.c_str());
  st_scan_free(scan);

  st_scan_region axis{0, 0, 2, 3, 1, 101};
  REQUIRE(st_modulus_scan(&axis, nullptr, 0, &scan) == ST_OK);
  size_t count = 0;
  REQUIRE(st_scan_axis_sign_changes(scan, nullptr, 0, &count) == ST_OK);
  REQUIRE(count == 1);
  double zc = 0;
  REQUIRE(st_scan_axis_sign_changes(scan, &zc, 1, &count) == ST_OK);
  CHECK(zc == doctest::Approx(2.7543).epsilon(1e-4));
  st_scan_free(scan);

  st_scan_region bad{0, 1, 1, 2, 1, 4};
  CHECK(st_modulus_scan(&bad, nullptr, 0, &scan) == ST_INVALID_ARGUMENT);
}
