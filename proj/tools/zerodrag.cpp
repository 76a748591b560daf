// zerodrag: build, trace, verify, and measure zero-resistance / trackless /
// invisible billiard bodies.
//
// Exit codes: 0 = all requested checks pass, 1 = a check failed,
// 2 = bad parameters / configuration / degeneracy.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zerodrag/billiard.hpp"
#include "zerodrag/export.hpp"
#include "zerodrag/metrics.hpp"
#include "zerodrag/profile.hpp"
#include "zerodrag/verify.hpp"

namespace zd = zerodrag;

namespace {

zd::Profile build_family(const std::string& family, const std::string& alpha_s,
                         double k, double eps, const std::string& symmetry,
                         double depth, const std::string& inner) {
  zd::Profile p;
  if (family == "triangle-pair") {
    p = zd::triangle_pair_profile(zd::parse_angle(alpha_s));
  } else if (family == "trapezoid-pair") {
    p = zd::trapezoid_pair_profile(zd::parse_angle(alpha_s), k);
  } else if (family == "doubled") {
    p = zd::double_profile(
        build_family(inner, alpha_s, k, 0.0, "rotational", depth, ""), eps);
  } else if (family == "cylinder") {
    p = zd::cylinder_profile(k > 0 ? k : 1.0, eps > 0 ? eps : 2.0);
  } else if (family == "cone") {
    p = zd::cone_profile(k > 0 ? k : 1.0, eps > 0 ? eps : 1.0);
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }
  if (symmetry == "translational") {
    p.symmetry = {zd::SymmetryMode::translational, depth};
  } else if (symmetry != "rotational") {
    throw std::invalid_argument("unknown symmetry: " + symmetry);
  }
  zd::validate_profile(p);
  return p;
}

zd::Profile load_profile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open profile: " + path);
  nlohmann::json j;
  f >> j;
  return zd::profile_from_json(j);
}

std::vector<std::pair<double, double>> default_domain(const zd::Profile& p) {
  const zd::BoundingBox bb = zd::bounding_box(p);
  const double L = std::max(std::fabs(bb.x_min), std::fabs(bb.x_max));
  return {{-L, L}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-resistance / trackless / invisible body toolkit"};
  app.require_subcommand(1);

  // ---- build ----
  auto* build = app.add_subcommand("build", "construct a body profile");
  std::string b_family, b_alpha = "pi/6", b_symmetry = "rotational", b_inner = "triangle-pair";
  std::string b_out, b_svg;
  double b_k = 0.0, b_eps = 0.0, b_depth = 1.0;
  build->add_option("--family", b_family, "triangle-pair|trapezoid-pair|doubled|cylinder|cone")->required();
  build->add_option("--alpha", b_alpha, "half-opening angle, radians or pi fraction");
  build->add_option("--k", b_k, "channel ratio |CD|/|BC| (or radius for cylinder/cone)");
  build->add_option("--eps", b_eps, "doubling clearance (or height for cylinder/cone)");
  build->add_option("--symmetry", b_symmetry, "rotational|translational");
  build->add_option("--depth", b_depth, "extrusion depth (translational)");
  build->add_option("--inner", b_inner, "inner family for doubled bodies");
  build->add_option("--out", b_out, "profile JSON output path")->required();
  build->add_option("--svg", b_svg, "optional SVG rendering path");

  // ---- trace ----
  auto* trace = app.add_subcommand("trace", "trace flow particles");
  std::string t_profile, t_out, t_svg;
  std::vector<double> t_xs;
  int t_n = 0;
  trace->add_option("--profile", t_profile)->required();
  trace->add_option("--x0", t_xs, "explicit launch offsets");
  trace->add_option("--n", t_n, "number of stratified launch offsets");
  trace->add_option("--out", t_out, "trajectory CSV path");
  trace->add_option("--svg", t_svg, "trajectory SVG overlay path");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run flow checks");
  std::string v_profile, v_checks = "d1", v_report;
  int v_n = 10000, v_bins = 100;
  std::uint64_t v_seed = 0;
  bool v_random = false, v_reversed = false;
  double v_tol = 1e-9, v_d2_tol = 0.03;
  std::vector<double> v_domain, v_ring;
  verify->add_option("--profile", v_profile)->required();
  verify->add_option("--checks", v_checks, "comma list of d1,d2,d3,reflections,inscribed");
  verify->add_option("--n", v_n, "sample count");
  verify->add_flag("--random", v_random, "uniform random sampling (default stratified)");
  verify->add_option("--seed", v_seed);
  verify->add_option("--tol", v_tol, "velocity/position tolerance");
  verify->add_option("--d2-tol", v_d2_tol, "relative density tolerance for d2");
  verify->add_option("--bins", v_bins, "histogram bins for d2");
  verify->add_option("--domain", v_domain, "sampling interval pairs a b [a b ...]");
  verify->add_option("--ring", v_ring, "inscribed spec: r_in r_out h")->expected(3);
  verify->add_flag("--reversed", v_reversed, "flow direction (0,+1)");
  verify->add_option("--report", v_report, "report JSON path");

  // ---- metrics ----
  auto* metrics = app.add_subcommand("metrics", "shape metrics of a profile");
  std::string m_profile, m_out;
  metrics->add_option("--profile", m_profile)->required();
  metrics->add_option("--out", m_out, "metrics JSON path");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "parameter sweep CSV");
  std::string s_family = "triangle-pair", s_amin = "0.01", s_amax = "0.75", s_out;
  int s_steps = 50, s_n = 2000;
  double s_k = 1.0;
  sweep->add_option("--family", s_family, "triangle-pair|trapezoid-pair");
  sweep->add_option("--alpha-min", s_amin);
  sweep->add_option("--alpha-max", s_amax);
  sweep->add_option("--steps", s_steps);
  sweep->add_option("--k", s_k);
  sweep->add_option("--n", s_n, "samples per body for m_max / velocity check");
  sweep->add_option("--out", s_out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      const zd::Profile p = build_family(b_family, b_alpha, b_k, b_eps,
                                         b_symmetry, b_depth, b_inner);
      zd::write_file(b_out, zd::to_json(p).dump(2) + "\n");
      if (!b_svg.empty()) zd::write_file(b_svg, zd::svg_scene(p));
      return 0;
    }

    if (*trace) {
      const zd::Profile p = load_profile(t_profile);
      const auto walls = zd::profile_to_walls(p);
      zd::SimConfig cfg;
      std::vector<double> xs = t_xs;
      if (t_n > 0) {
        const auto dom = default_domain(p);
        for (int i = 0; i < t_n; ++i)
          xs.push_back(dom[0].first + (i + 0.5) * (dom[0].second - dom[0].first) / t_n);
      }
      if (xs.empty()) throw zd::VerificationError("trace: need --x0 or --n");
      std::vector<zd::Trajectory> trs;
      bool capped = false;
      for (double x : xs) {
        trs.push_back(zd::trace_particle(walls, x, cfg));
        capped = capped || trs.back().outcome == zd::Outcome::capped;
      }
      if (!t_out.empty()) zd::write_file(t_out, zd::trajectory_csv(trs));
      if (!t_svg.empty()) zd::write_file(t_svg, zd::svg_scene(p, trs));
      if (capped) {
        std::cerr << "trace: trajectory hit the bounce cap\n";
        return 1;
      }
      return 0;
    }

    if (*verify) {
      const zd::Profile p = load_profile(v_profile);
      zd::SimConfig cfg;
      cfg.upward = v_reversed;
      std::vector<std::pair<double, double>> dom;
      if (!v_domain.empty()) {
        if (v_domain.size() % 2 != 0)
          throw zd::VerificationError("--domain needs pairs of endpoints");
        for (std::size_t i = 0; i + 1 < v_domain.size(); i += 2)
          dom.push_back({v_domain[i], v_domain[i + 1]});
      } else {
        dom = default_domain(p);
      }
      zd::SamplingPlan plan = v_random ? zd::random_plan(v_n, v_seed, dom)
                                       : zd::stratified_plan(v_n, dom);
      nlohmann::json reports = nlohmann::json::array();
      bool all_pass = true;
      std::stringstream checks(v_checks);
      std::string check;
      while (std::getline(checks, check, ',')) {
        if (check == "d1") {
          const auto rep = zd::check_zero_resistance(p, plan, cfg, v_tol);
          reports.push_back(zd::to_json(rep));
          all_pass = all_pass && rep.pass;
        } else if (check == "d2") {
          const auto rep = zd::check_trackless(p, plan, cfg, v_bins, v_d2_tol, v_tol);
          reports.push_back(zd::to_json(rep));
          all_pass = all_pass && rep.pass;
        } else if (check == "d3") {
          const auto rep = zd::check_invisible(p, plan, cfg, v_tol);
          reports.push_back(zd::to_json(rep));
          all_pass = all_pass && rep.pass;
        } else if (check == "reflections") {
          const auto st = zd::max_reflections(p, plan, cfg);
          zd::VerificationReport rep;
          rep.check = "reflections";
          rep.m_max = st.m_max;
          rep.parity_ok = st.parity_ok;
          rep.sample_count = plan.n;
          rep.pass = true;  // informational unless a trajectory is capped
          reports.push_back(zd::to_json(rep));
        } else if (check == "inscribed") {
          if (v_ring.size() != 3)
            throw zd::VerificationError("inscribed check needs --ring r_in r_out h");
          zd::VerificationReport rep;
          rep.check = "inscribed";
          rep.pass = zd::check_inscribed(p, {v_ring[0], v_ring[1], v_ring[2]});
          reports.push_back(zd::to_json(rep));
          all_pass = all_pass && rep.pass;
        } else {
          throw zd::VerificationError("unknown check: " + check);
        }
      }
      const std::string text = reports.dump(2) + "\n";
      if (!v_report.empty())
        zd::write_file(v_report, text);
      else
        std::cout << text;
      return all_pass ? 0 : 1;
    }

    if (*metrics) {
      const zd::Profile p = load_profile(m_profile);
      const std::string text = zd::to_json(zd::shape_metrics(p)).dump(2) + "\n";
      if (!m_out.empty())
        zd::write_file(m_out, text);
      else
        std::cout << text;
      return 0;
    }

    if (*sweep) {
      const double amin = zd::parse_angle(s_amin);
      const double amax = zd::parse_angle(s_amax);
      if (!(amax > amin) || s_steps < 1)
        throw zd::VerificationError("sweep: need alpha-max > alpha-min, steps >= 1");
      std::vector<zd::SweepRow> rows;
      for (int i = 0; i < s_steps; ++i) {
        const double a = amin + (amax - amin) * i / (s_steps - 1 > 0 ? s_steps - 1 : 1);
        zd::Profile p = s_family == "trapezoid-pair"
                            ? zd::trapezoid_pair_profile(a, s_k)
                            : zd::triangle_pair_profile(a);
        const zd::ShapeMetrics m = zd::shape_metrics(p);
        zd::SimConfig cfg;
        const auto plan = zd::stratified_plan(s_n, default_domain(p));
        const auto st = zd::max_reflections(p, plan, cfg);
        const auto d1 = zd::check_zero_resistance(p, plan, cfg);
        rows.push_back({a, s_family == "trapezoid-pair" ? s_k : 0.0,
                        zd::inner_ratio(a), m.kappa, m.h, st.m_max,
                        d1.max_velocity_deviation});
      }
      zd::write_file(s_out, zd::sweep_csv(rows));
      return 0;
    }
  } catch (const zd::VerificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
