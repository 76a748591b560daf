// Acceptance suite: one pass/fail line per criterion. Exits nonzero if any
// criterion fails. argv[1] = path to the zerodrag CLI binary (criterion 12).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zerodrag/billiard.hpp"
#include "zerodrag/export.hpp"
#include "zerodrag/metrics.hpp"
#include "zerodrag/profile.hpp"
#include "zerodrag/verify.hpp"

#include "oracles.hpp"

using namespace zerodrag;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

SamplingPlan hull_plan(const Profile& p, int n) {
  const BoundingBox bb = bounding_box(p);
  const double L = std::max(std::fabs(bb.x_min), std::fabs(bb.x_max));
  return stratified_plan(n, {{-L, L}});
}

const SimConfig kCfg{};

// --- criterion 1: zero resistance of B_alpha ---
void criterion_1() {
  bool pass = true;
  std::ostringstream detail;
  for (double a : {0.2, kPi / 8.0, kPi / 6.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = triangle_pair_profile(a);
    const auto plan = hull_plan(p, 10000);
    const auto d1 = check_zero_resistance(p, plan, kCfg, 1e-9);
    const auto r = resistance(p, plan, kCfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    pass = pass && d1.pass && std::fabs(r.r_axial) <= 1e-9 * r.normalization &&
           r.degenerate_fraction < 1e-3 && secs < 1.0;
    detail << "a=" << a << " vdev=" << d1.max_velocity_deviation
           << " R=" << r.r_axial << " t=" << secs << "s; ";
  }
  report(1, "B_alpha zero resistance (D1, R_axial, runtime)", pass, detail.str());
}

// --- criterion 2: closed-form scatter oracle ---
void criterion_2() {
  double max_err = 0.0;
  for (double a : {0.2, kPi / 8.0, kPi / 6.0}) {
    const auto walls = profile_to_walls(triangle_pair_profile(a));
    const auto p = triangle_pair_profile(a);
    for (const auto& s : draw_samples(p, hull_plan(p, 2000))) {
      if (s.excluded) continue;
      const auto tr = trace_particle(walls, s.x, kCfg);
      if (tr.outcome != Outcome::escaped) continue;
      max_err = std::max(
          max_err,
          std::fabs(tr.x_tilde - oracles::triangle_pair_exit_offset(a, s.x)));
    }
  }
  report(2, "signed exit map equals xi -> xi +/- tan(2a)", max_err <= 1e-9,
         "max_err=" + fmt(max_err));
}

// --- criterion 3: reflection counts are sharp ---
void criterion_3() {
  bool pass = true;
  std::ostringstream detail;
  try {
    for (double a : {0.2, kPi / 8.0, kPi / 6.0}) {
      const auto p = triangle_pair_profile(a);
      const auto st = max_reflections(p, hull_plan(p, 10000), kCfg);
      const auto d = double_profile(p);
      const auto st2 = max_reflections(d, hull_plan(d, 10000), kCfg);
      pass = pass && st.m_max == 2 && st2.m_max == 4;
      detail << "a=" << a << " m=" << st.m_max << "/" << st2.m_max << "; ";
    }
  } catch (const VerificationError& e) {
    pass = false;
    detail << "capped: " << e.what();
  }
  report(3, "m_max = 2 for B_alpha, 4 for doubled B_alpha, none capped", pass,
         detail.str());
}

// --- criterion 4: invisibility of the doubled bodies ---
void criterion_4() {
  bool pass = true;
  std::ostringstream detail;
  const std::vector<Profile> bodies{
      double_profile(triangle_pair_profile(kPi / 6.0)),
      double_profile(trapezoid_pair_profile(kPi / 10.0, 2.0))};
  for (const auto& d : bodies) {
    const auto plan = hull_plan(d, 10000);
    const auto down = check_invisible(d, plan, kCfg, 1e-9);
    SimConfig up_cfg = kCfg;
    up_cfg.upward = true;
    const auto up = check_invisible(d, plan, up_cfg, 1e-9);
    pass = pass && down.pass && up.pass && down.parity_ok && up.parity_ok;
    detail << "xdev=" << down.max_position_deviation
           << " vdev=" << down.max_velocity_deviation
           << " rev=" << (up.pass ? "ok" : "FAIL")
           << " even_m=" << (down.parity_ok ? "ok" : "FAIL") << "; ";
  }
  report(4, "doubled B_pi6 and doubled trapezoid(pi/10,2) invisible (D3)", pass,
         detail.str());
}

// --- criterion 5: tracklessness of the translational pair ---
void criterion_5() {
  auto p = triangle_pair_profile(kPi / 6.0);
  p.symmetry = {SymmetryMode::translational, 1.0};
  const double L = triangle_pair_outer_radius(kPi / 6.0);
  const int n = 1000000, bins = 100;
  const double tol = 3.0 / std::sqrt(static_cast<double>(n) / bins);
  const auto rep =
      check_trackless(p, random_plan(n, 12345, {{-L, L}}), kCfg, bins, tol);

  // per-sample finite-difference unit Jacobian away from breakpoints
  const auto walls = profile_to_walls(p);
  const double c = triangle_pair_inner_radius(kPi / 6.0);
  double max_jac_err = 0.0;
  const double delta = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const double x = -L + (2.0 * L) * (i + 0.5) / 1000.0;
    bool near_bp = false;
    for (double b : {-L, -c, 0.0, c, L})
      if (std::fabs(x - b) < 1e-3) near_bp = true;
    if (near_bp) continue;
    const auto lo = trace_particle(walls, x - delta, kCfg);
    const auto hi = trace_particle(walls, x + delta, kCfg);
    if (lo.outcome != Outcome::escaped || hi.outcome != Outcome::escaped) continue;
    const double jac = (hi.x_tilde - lo.x_tilde) / (2.0 * delta);
    max_jac_err = std::max(max_jac_err, std::fabs(std::fabs(jac) - 1.0));
  }
  const bool pass = rep.pass && max_jac_err <= 1e-6;
  report(5, "translational pair leaves no trace (D2 histogram + unit Jacobian)",
         pass,
         "ratio=[" + fmt(rep.density_ratio_min) + "," + fmt(rep.density_ratio_max) +
             "] tol=" + fmt(tol) + " jac_err=" + fmt(max_jac_err));
}

// --- criterion 6: twofold trace factor of the rotational body ---
void criterion_6() {
  const auto p = triangle_pair_profile(kPi / 6.0);
  const double L = triangle_pair_outer_radius(kPi / 6.0);
  const double c = triangle_pair_inner_radius(kPi / 6.0);
  const auto plan = stratified_plan(100000, {{c, L}});
  const auto rep = check_trackless(p, plan, kCfg, 100, 0.03);
  // equal-measure bins: max ratio sits at the innermost exit annulus and the
  // min at the outermost
  const bool pass = !rep.pass && std::fabs(rep.density_ratio_max - 2.0) <= 0.04 &&
                    std::fabs(rep.density_ratio_min - 0.5) <= 0.01;
  report(6, "B_pi6 pushforward density reaches 2 and 1/2; D2 fails", pass,
         "ratio=[" + fmt(rep.density_ratio_min) + "," + fmt(rep.density_ratio_max) + "]");
}

// --- criterion 7: shape formulas ---
void criterion_7() {
  const auto m6 = shape_metrics(triangle_pair_profile(kPi / 6.0));
  bool pass = std::fabs(m6.kappa - 5.0 / 12.0) <= 1e-12 &&
              std::fabs(m6.h - std::sqrt(3.0)) <= 1e-12 &&
              std::fabs(m6.volume - 10.0 * kPi / 9.0) <= 1e-12;
  const auto m_small = shape_metrics(triangle_pair_profile(0.01));
  pass = pass && std::fabs(m_small.kappa - 14.0 / 27.0) <= 0.01;
  // sweep: kappa monotone decreasing, below 0.15 near pi/4
  double prev = 1.0, last = 1.0;
  bool monotone = true;
  for (int i = 0; i < 50; ++i) {
    const double a = 0.01 + (0.75 - 0.01) * i / 49.0;
    const double kap = shape_metrics(triangle_pair_profile(a)).kappa;
    if (kap > prev + 1e-12) monotone = false;
    prev = kap;
    last = kap;
  }
  pass = pass && monotone && last < 0.15;
  report(7, "kappa(B_pi6)=5/12, h=sqrt(3), Vol=10pi/9; limits and monotonicity",
         pass,
         "kappa=" + fmt(m6.kappa) + " kappa(0.01)=" + fmt(m_small.kappa) +
             " kappa(0.75)=" + fmt(last));
}

// --- criterion 8: r(alpha) ---
void criterion_8() {
  bool pass = std::fabs(inner_ratio(kPi / 6.0) - 0.5) <= 1e-12 &&
              std::fabs(inner_ratio(kPi / 8.0) - (std::sqrt(2.0) - 1.0)) <= 1e-12;
  for (int n = 1; n <= 8; ++n) {
    const double a = kPi / (4.0 * n);
    // n = 1 is the domain endpoint, where r -> 1 from the left
    const double hi = (n == 1) ? 1.0 : inner_ratio(a + 1e-10);
    if (std::fabs(hi - inner_ratio(a - 1e-10)) > 1e-9) pass = false;
  }
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double a = (kPi / 4.0) * i / 1001.0;
    const double r = inner_ratio(a);
    if (r < prev - 1e-12) pass = false;
    prev = r;
  }
  double max_tangency_err = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double a = 0.03 + (kPi / 4.0 - 0.06) * (i - 1) / 19.0;
    max_tangency_err = std::max(
        max_tangency_err,
        std::fabs(oracles::unfolded_chain_max_abs_x(a, inner_ratio(a)) - 1.0));
  }
  pass = pass && max_tangency_err <= 1e-9;
  report(8, "r(alpha): values, continuity, monotonicity, unfolding tangency",
         pass, "tangency_err=" + fmt(max_tangency_err));
}

// --- criterion 9: trapezoid dynamics ---
void criterion_9() {
  bool pass = true;
  std::ostringstream detail;
  for (double a : {kPi / 10.0, kPi / 14.0}) {
    for (double k : {1.0, 3.0}) {
      const auto p = trapezoid_pair_profile(a, k);
      const auto d1 = check_zero_resistance(p, hull_plan(p, 5000), kCfg, 1e-9);
      pass = pass && d1.pass;
      // angle progression on a few representative particles
      const auto walls = profile_to_walls(p);
      const double r = inner_ratio(a);
      for (double frac : {0.2, 0.5, 0.8}) {
        const auto tr = trace_particle(walls, -(r + frac * (1.0 - r)), kCfg);
        if (tr.outcome != Outcome::escaped) continue;
        std::vector<double> ang;
        for (std::size_t i = 0; i + 1 < tr.vertices.size(); ++i)
          ang.push_back(std::atan2(
              std::fabs(tr.vertices[i + 1].x - tr.vertices[i].x),
              -(tr.vertices[i + 1].z - tr.vertices[i].z)));
        int phase = 0;
        for (std::size_t i = 0; i + 1 < ang.size(); ++i) {
          const double d = ang[i + 1] - ang[i];
          if (std::fabs(d - 2.0 * a) <= 1e-9 && phase == 0) continue;
          if (std::fabs(d) <= 1e-9 && phase <= 1) { phase = 1; continue; }
          if (std::fabs(d + 2.0 * a) <= 1e-9) { phase = 2; continue; }
          pass = false;
        }
        if (std::fabs(ang.back()) > 1e-9) pass = false;
      }
      detail << "a=" << a << ",k=" << k << " vdev=" << d1.max_velocity_deviation
             << "; ";
    }
  }
  report(9, "trapezoid D1 and 2a,4a,... angle progression", pass, detail.str());
}

// --- criterion 10: Proposition 1 negative instances ---
void criterion_10() {
  const auto cyl = cylinder_profile(1.0, 2.0);
  const auto cone = cone_profile(1.0, 1.0);
  const auto plan = stratified_plan(10000, {{0.0, 1.0}});
  const auto r_cyl = resistance(cyl, plan, kCfg);
  const auto r_cone = resistance(cone, plan, kCfg);
  const bool d1_cyl = check_zero_resistance(cyl, plan, kCfg, 1e-9).pass;
  const bool d1_cone = check_zero_resistance(cone, plan, kCfg, 1e-9).pass;
  const bool pass = std::fabs(r_cyl.r_axial + 2.0 * kPi) <= 1e-9 &&
                    std::fabs(r_cone.r_axial + kPi) <= 1e-6 && !d1_cyl && !d1_cone;
  report(10, "cylinder R=-2pi, cone R=-pi, both fail D1", pass,
         "R_cyl=" + fmt(r_cyl.r_axial) + " R_cone=" + fmt(r_cone.r_axial));
}

// --- criterion 11: Newton functional ---
void criterion_11() {
  const double flat = newton_functional([](double) { return 0.0; }, 4096);
  const double cone = newton_functional([](double r) { return 1.0 - r; }, 4096);
  bool pass = std::fabs(flat - kPi) <= 1e-6 && std::fabs(cone - kPi / 2.0) <= 1e-6;
  // convergence order: the cone integrand is linear in r, so the midpoint
  // rule is exact on it; if its errors sit at roundoff, measure the order on
  // a curved profile instead
  double cone_coarse_err = 0.0;
  for (int n : {64, 128, 256})
    cone_coarse_err = std::max(
        cone_coarse_err,
        std::fabs(newton_functional([](double r) { return 1.0 - r; }, n) -
                  kPi / 2.0));
  double order = std::numeric_limits<double>::infinity();
  if (cone_coarse_err > 1e-12) {
    const double e1 =
        std::fabs(newton_functional([](double r) { return 1.0 - r; }, 64) - kPi / 2.0);
    const double e2 =
        std::fabs(newton_functional([](double r) { return 1.0 - r; }, 256) - kPi / 2.0);
    order = std::log2(e1 / e2) / 2.0;
  } else {
    const double exact = kPi / 4.0 * std::log(5.0);
    auto f = [](double r) { return 1.0 - r * r; };
    const double e1 = std::fabs(newton_functional(f, 64) - exact);
    const double e2 = std::fabs(newton_functional(f, 256) - exact);
    order = std::log2(e1 / e2) / 2.0;
  }
  pass = pass && order >= 1.9;
  report(11, "Newton functional: flat=pi, cone=pi/2, order >= 1.9", pass,
         "flat=" + fmt(flat) + " cone=" + fmt(cone) + " order=" + fmt(order));
}

// --- criterion 12: CLI end-to-end ---
void criterion_12(const std::string& bin) {
  const fs::path dir = fs::temp_directory_path() / "zerodrag_acceptance";
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    const int rc = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  };
  bool pass = true;
  std::ostringstream detail;

  // deterministic sweep
  const std::string flags =
      " --family triangle-pair --alpha-min 0.05 --alpha-max 0.7 --steps 10 --n 1000 --out ";
  pass = pass && run("sweep" + flags + (dir / "s1.csv").string()) == 0;
  pass = pass && run("sweep" + flags + (dir / "s2.csv").string()) == 0;
  pass = pass && slurp(dir / "s1.csv") == slurp(dir / "s2.csv");
  if (!pass) detail << "sweep not deterministic; ";

  // exit codes match the pass/fail matrix of criteria 1-10
  const std::string b6 = (dir / "b6.json").string();
  const std::string dbl = (dir / "dbl.json").string();
  const std::string cone = (dir / "cone.json").string();
  const std::string cyl = (dir / "cyl.json").string();
  pass = pass && run("build --family triangle-pair --alpha pi/6 --out " + b6) == 0;
  pass = pass &&
         run("build --family doubled --inner trapezoid-pair --alpha pi/10 --k 2 --out " + dbl) == 0;
  pass = pass && run("build --family cone --out " + cone) == 0;
  pass = pass && run("build --family cylinder --out " + cyl) == 0;
  struct Case {
    std::string args;
    int expected;
  };
  const std::vector<Case> cases{
      {"verify --profile " + b6 + " --checks d1", 0},
      {"verify --profile " + b6 + " --checks d2 --n 100000", 1},
      {"verify --profile " + b6 + " --checks d3", 1},
      {"verify --profile " + dbl + " --checks d1,d2,d3,reflections --n 20000", 0},
      {"verify --profile " + dbl + " --checks d1,d3 --reversed", 0},
      {"verify --profile " + cone + " --checks d1 --domain 0 1", 1},
      {"verify --profile " + cyl + " --checks d1 --domain 0 1", 1},
  };
  for (const auto& c : cases) {
    const int rc = run(c.args);
    if (rc != c.expected) {
      pass = false;
      detail << "'" << c.args << "' -> " << rc << " (want " << c.expected << "); ";
    }
  }
  report(12, "CLI: deterministic sweep and exit-code matrix", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (argc > 1) {
    criterion_12(argv[1]);
  } else {
    report(12, "CLI end-to-end (binary path not supplied)", false);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT")
            << " (" << secs << " s)\n";
  return g_failures == 0 ? 0 : 1;
}
