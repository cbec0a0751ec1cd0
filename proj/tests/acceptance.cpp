// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any fail.
//
//   acceptance            run all criteria
//   acceptance 3 5        run only criteria 3 and 5

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swallowtail/asymptotics.hpp"
#include "swallowtail/oracle.hpp"
#include "swallowtail/saddle.hpp"
#include "swallowtail/zeros.hpp"

using namespace swallowtail;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

std::string sci(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// 1. Q(0,0,0) against 2 5^{1/5} Gamma(6/5) cos(pi/10), tolerance 1e-8.
void oracle_anchor(Outcome& o) {
  const double exact = 2.0 * std::pow(5.0, 0.2) * std::tgamma(1.2) * std::cos(pi / 10);
  const double err = std::abs(eval_q({0, 0, 0, Form::Q}).value - exact);
  o.detail << "|Q(0,0,0) - " << sci(exact, 15) << "| = " << sci(err) << " (tol 1e-8)";
  o.require(err < 1e-8, "anchor");
}

// 2. 500 points in [-4,4]^3: conjugation within 2x summed estimates, and the
// y = 0 slice through the same (x,z) real within 2x its estimate.
void symmetry_suite(Outcome& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int conj_bad = 0, real_bad = 0, misses = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Params p{u(rng), u(rng), u(rng), Form::Q};
    const auto a = try_eval_q(p, 0);
    const auto b = try_eval_q(conjugate_reflection(p), 0);
    const auto c = try_eval_q({p.x, 0.0, p.z, Form::Q}, 0);
    misses += !a.tolerance_met + !b.tolerance_met + !c.tolerance_met;
    const double bound = 2.0 * (a.result.abs_error_estimate + b.result.abs_error_estimate);
    const double dev = std::abs(b.result.value - std::conj(a.result.value));
    if (dev > bound) ++conj_bad;
    if (bound > 0) worst = std::max(worst, dev / bound);
    if (std::abs(c.result.value.imag()) > 2.0 * c.result.abs_error_estimate) ++real_bad;
  }
  o.detail << "conjugation violations " << conj_bad << "/500 (worst dev/bound " << sci(worst)
           << "), realness violations " << real_bad << "/500, tolerance misses " << misses;
  o.require(conj_bad == 0, "conjugation");
  o.require(real_bad == 0, "realness");
}

// 3. Symmetric roots within 1e-12, Vieta within 1e-11 over 1000 gamma per sign,
// q1^2 + q2^2 = 2 p^2 within 1e-10 over the two-pair regime.
void saddle_exactness(Outcome& o) {
  double root_err = 0.0;
  const auto pos = saddles({1.0, 0.0, ZSign::Positive});
  const auto neg = saddles({1.0, 0.0, ZSign::Negative});
  cd ik(1.0, 0.0);
  for (int k = 0; k < 4; ++k, ik *= cd(0, 1)) {
    root_err = std::max(root_err, std::abs(pos.roots[k] - ik * std::polar(1.0, pi / 4)));
    root_err = std::max(root_err, std::abs(neg.roots[k] - ik));
  }
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  double vieta = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double g = u(rng);
    for (ZSign s : {ZSign::Positive, ZSign::Negative}) {
      const auto r = saddles({1.0, g, s}).roots;
      cd e1 = 0, e2 = 0;
      for (int j = 0; j < 4; ++j) {
        e1 += r[j];
        for (int k = j + 1; k < 4; ++k) e2 += r[j] * r[k];
      }
      vieta = std::max({vieta, std::abs(e1), std::abs(e2)});
    }
  }
  double identity = 0.0;
  int two_pair = 0;
  for (int i = 0; i < 1000; ++i) {
    const double g = caustic_gamma() * (i + 0.5) / 1000.0;
    const auto set = saddles({1.0, g, ZSign::Positive});
    if (set.regime != Regime::TwoConjugatePairs) continue;
    ++two_pair;
    identity = std::max(identity, std::abs(set.q1 * set.q1 + set.q2 * set.q2 - 2 * set.p * set.p));
  }
  o.detail << "root error " << sci(root_err) << " (tol 1e-12), Vieta " << sci(vieta) << " (tol 1e-11), identity "
           << sci(identity) << " over " << two_pair << " samples (tol 1e-10)";
  o.require(root_err < 1e-12, "roots");
  o.require(vieta < 1e-11, "Vieta");
  o.require(identity < 1e-10, "identity");
  o.require(two_pair == 1000, "regime");
}

// 4. Terminal sectors of the symmetric steepest paths, angles within 0.05 rad.
void path_geometry(Outcome& o) {
  struct Case {
    const char* label;
    ZSign sign;
    int k;
    double a, b;
  };
  const Case cases[] = {
      {"G1+", ZSign::Positive, 1, 9 * pi / 10, pi / 2},     {"G0+", ZSign::Positive, 0, pi / 2, pi / 10},
      {"G2-", ZSign::Negative, 2, 9 * pi / 10, 13 * pi / 10}, {"G3-", ZSign::Negative, 3, 13 * pi / 10, 17 * pi / 10},
      {"G0-", ZSign::Negative, 0, 17 * pi / 10, pi / 10},
  };
  double worst_angle = 0.0;
  int wrong = 0;
  for (const auto& c : cases) {
    std::set<int> got, want{nearest_valley(c.a), nearest_valley(c.b)};
    for (Direction d : {Direction::Left, Direction::Right}) {
      const auto path = trace_steepest({1.0, 0.0, c.sign}, c.k, d);
      got.insert(path.terminal_sector);
      double gap = std::fmod(std::abs(path.terminal_angle() - valley_angle(path.terminal_sector)), 2 * pi);
      worst_angle = std::max(worst_angle, std::min(gap, 2 * pi - gap));
    }
    if (got != want) {
      ++wrong;
      o.detail << c.label << " wrong sectors; ";
    }
  }
  o.detail << "5 curves, wrong sector pairs " << wrong << ", worst angle offset " << sci(worst_angle)
           << " rad (tol 0.05)";
  o.require(wrong == 0, "sectors");
  o.require(worst_angle < 0.05, "angles");
}

// 5. Refined zeros: residual < 1e-9; within 2% of the positive-axis formula
// (m = 0,1) and 3% of the negative-axis formula (m = 0,1,2); gap shrinks with m.
void zero_reproduction(Outcome& o) {
  auto branch_check = [&](Branch b, int m_max, double bound) {
    double prev_gap = 1e300;
    for (int m = 0; m <= m_max; ++m) {
      const auto seed = predicted_zeros(b, m)[static_cast<size_t>(m)];
      RefinedZero r;
      try {
        r = refine_on_axis(seed);
      } catch (const std::exception& e) {
        o.require(false, std::string(to_string(b)) + " m=" + std::to_string(m) + " threw: " + e.what());
        continue;
      }
      const double rel = std::abs(r.z - seed.z_predicted) / std::abs(seed.z_predicted);
      const double gap = std::abs(r.z - seed.z_predicted);
      o.detail << to_string(b) << " m=" << m << " z=" << sci(r.z, 10) << " off " << sci(100 * rel) << "% (bound "
               << 100 * bound << "%), residual " << sci(r.residual) << "; ";
      o.require(r.residual < 1e-9, "residual");
      o.require(rel < bound, std::string(to_string(b)) + " m=" + std::to_string(m) + " relative offset");
      o.require(gap < prev_gap, "shrinking gap");
      prev_gap = gap;
    }
  };
  branch_check(Branch::PositiveZ, 1, 0.02);
  branch_check(Branch::NegativeZ, 2, 0.03);
}

// 6. Seed sweep y0 in {0.1,0.2,0.3,0.5}, both branches, m <= 2: diverges or
// lands with |y| < 1e-6. Grid 40x40 over [0.5,3]x[-6,6]: min |Q| above the
// frozen threshold 0.004 (measured 0.00427 at y = 0.5, z = 6, no flagged cells).
void axis_confinement(Outcome& o) {
  int runs = 0, converged = 0, off_axis = 0;
  double worst_y = 0.0;
  for (double y0 : {0.1, 0.2, 0.3, 0.5})
    for (Branch b : {Branch::PositiveZ, Branch::NegativeZ})
      for (int m = 0; m <= 2; ++m) {
        const auto r = axis_confinement_scan(y0, b, m);
        ++runs;
        if (!r.converged) continue;
        ++converged;
        worst_y = std::max(worst_y, std::abs(r.final_y));
        if (std::abs(r.final_y) >= 1e-6) ++off_axis;
      }
  constexpr double threshold = 0.004;
  const auto grid = modulus_scan({0.5, 3.0, -6.0, 6.0, 40, 40});
  const auto& best = grid.cells[static_cast<size_t>(grid.argmin())];
  o.detail << runs << " Newton runs, " << converged << " converged, off-axis " << off_axis << ", worst |y| "
           << sci(worst_y) << " (tol 1e-6); grid min |Q| " << sci(best.abs_q()) << " at (" << best.y << ", "
           << best.z << ") vs threshold " << threshold << ", flagged " << grid.flagged_count();
  o.require(off_axis == 0, "confinement");
  o.require(best.abs_q() > threshold, "grid threshold");
  o.require(grid.flagged_count() == 0, "grid tolerance");
}

// 7. Transported positive-axis predictions equal the Pearcey-Hill sequence to
// 1e-10 for n <= 20.
void pearcey_hill(Outcome& o) {
  const auto z = predicted_zeros(Branch::PositiveZ, 20);
  const auto y = pearcey_hill_zeros(20);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) worst = std::max(worst, std::abs(transport_to_pearcey_hill(z[n].z_predicted) - y[n]));
  o.detail << "max |Y_transported - Y| over n <= 20: " << sci(worst) << " (tol 1e-10)";
  o.require(worst < 1e-10, "reconciliation");
}

// 8. Gap > 0 at 50 gammas in (0.05, caustic - 0.05); both obstruction
// conditions violated at 50 gammas in (0.05, 3) with z < 0.
void dominance(Outcome& o) {
  int gap_bad = 0, obs_bad = 0;
  double min_gap = 1e300;
  const double lo = 0.05, hi = caustic_gamma() - 0.05;
  for (int i = 0; i < 50; ++i) {
    const double g = lo + (hi - lo) * (i + 0.5) / 50.0;
    const double gap = dominance_gap({1.0, g, ZSign::Positive});
    min_gap = std::min(min_gap, gap);
    if (!(gap > 0.0)) ++gap_bad;
  }
  for (int i = 0; i < 50; ++i) {
    const double g = 0.05 + (3.0 - 0.05) * (i + 0.5) / 50.0;
    const auto r = below_caustic_obstruction({1.0, g, ZSign::Negative});
    if (!(r.phase_condition_violated && r.curvature_condition_violated)) ++obs_bad;
  }
  o.detail << "gap <= 0 at " << gap_bad << "/50 (min gap " << sci(min_gap) << "), obstruction not certified at "
           << obs_bad << "/50";
  o.require(gap_bad == 0, "gap");
  o.require(obs_bad == 0, "obstruction");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "oracle anchor", 1.0, oracle_anchor},
      {2, "symmetry suite", 60.0, symmetry_suite},
      {3, "saddle exactness", 60.0, saddle_exactness},
      {4, "path geometry", 10.0, path_geometry},
      {5, "zero reproduction", 120.0, zero_reproduction},
      {6, "axis confinement", 600.0, axis_confinement},
      {7, "Pearcey-Hill reconciliation", 1.0, pearcey_hill},
      {8, "dominance structure", 5.0, dominance},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_seconds, "runtime");
    std::string detail = o.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    std::string failures;
    for (const auto& f : o.failures) failures += (failures.empty() ? " -- failed: " : ", ") + f;
    std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s]%s\n", o.pass() ? "PASS" : "FAIL", c.id,
                c.name, detail.c_str(), secs, c.budget_seconds, failures.c_str());
    failed += !o.pass();
  }
  return failed == 0 ? 0 : 1;
}
