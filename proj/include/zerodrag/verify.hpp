#pragma once

// Quantitative checks over sampled flows: resistance integral, zero
// resistance (D1), tracklessness (D2), invisibility (D3), reflection
// counts, and the inscribed-in-cylinder predicate.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerodrag/billiard.hpp"
#include "zerodrag/geometry.hpp"
#include "zerodrag/profile.hpp"

namespace zerodrag {

// Configuration or degeneracy problem; maps to CLI exit code 2.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SamplingPlan {
  int n = 10000;
  bool stratified = true;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> intervals;
};

inline SamplingPlan stratified_plan(int n, std::vector<std::pair<double, double>> iv) {
  return {n, true, 0, std::move(iv)};
}

inline SamplingPlan random_plan(int n, std::uint64_t seed,
                                std::vector<std::pair<double, double>> iv) {
  return {n, false, seed, std::move(iv)};
}

// Cross-section measure density at signed offset x: annulus weight for
// bodies of revolution, uniform (times depth) for extruded bodies.
inline double measure_density(const Symmetry& sym, double x) {
  return sym.mode == SymmetryMode::rotational ? 2.0 * kPi * std::fabs(x)
                                              : sym.depth;
}

// Exact measure of [a, b] under the symmetry weight.
inline double interval_measure(const Symmetry& sym, double a, double b) {
  if (sym.mode == SymmetryMode::translational) return sym.depth * (b - a);
  return kPi * (b * std::fabs(b) - a * std::fabs(a));
}

struct WeightedSample {
  double x = 0.0;
  double weight = 0.0;
  bool excluded = false;  // within eps of a construction breakpoint
};

// Horizontal coordinates of all wall endpoints: the breakpoints of the
// piecewise-smooth scattering map. Samples within eps of one are part of
// the exceptional (measure-zero) set and are pre-excluded.
inline std::vector<double> breakpoints(const Profile& p) {
  std::set<double> bs{0.0};
  for (const auto& poly : p.polygons)
    for (const auto& v : poly) bs.insert(v.x);
  return {bs.begin(), bs.end()};
}

inline std::vector<WeightedSample> draw_samples(const Profile& p,
                                                const SamplingPlan& plan,
                                                double eps_exclude = kEpsCorner) {
  if (plan.n < 1 || plan.intervals.empty())
    throw VerificationError("sampling plan needs n >= 1 and a domain");
  double total_len = 0.0;
  for (auto [a, b] : plan.intervals) {
    if (!(b > a)) throw VerificationError("degenerate sampling interval");
    total_len += b - a;
  }
  const std::vector<double> bps = breakpoints(p);
  auto near_breakpoint = [&](double x) {
    for (double b : bps)
      if (std::fabs(x - b) < eps_exclude) return true;
    return false;
  };

  std::vector<WeightedSample> out;
  out.reserve(plan.n);
  if (plan.stratified) {
    // equal-length cells across the whole domain, midpoint samples,
    // exact per-cell measure weights
    int assigned = 0;
    for (std::size_t ii = 0; ii < plan.intervals.size(); ++ii) {
      auto [a, b] = plan.intervals[ii];
      int ni = (ii + 1 == plan.intervals.size())
                   ? plan.n - assigned
                   : static_cast<int>(std::llround(plan.n * (b - a) / total_len));
      ni = std::max(ni, 1);
      assigned += ni;
      const double h = (b - a) / ni;
      for (int j = 0; j < ni; ++j) {
        WeightedSample s;
        s.x = a + (j + 0.5) * h;
        s.weight = interval_measure(p.symmetry, a + j * h, a + (j + 1) * h);
        s.excluded = near_breakpoint(s.x);
        out.push_back(s);
      }
    }
  } else {
    std::mt19937_64 rng(plan.seed);
    std::uniform_real_distribution<double> u(0.0, total_len);
    for (int j = 0; j < plan.n; ++j) {
      double t = u(rng);
      double x = plan.intervals.back().second;
      for (auto [a, b] : plan.intervals) {
        if (t <= b - a) {
          x = a + t;
          break;
        }
        t -= b - a;
      }
      WeightedSample s;
      s.x = x;
      // importance weight: measure / (uniform sampling density over length)
      s.weight = measure_density(p.symmetry, x) * total_len / plan.n;
      s.excluded = near_breakpoint(x);
      out.push_back(s);
    }
  }
  return out;
}

struct ResistanceResult {
  double r_axial = 0.0;
  double r_lateral = 0.0;
  double normalization = 0.0;  // hull cross-section measure
  double degenerate_fraction = 0.0;
};

// Hull cross-section measure: disk of the hull radius (rotational) or the
// hull width times depth (translational).
inline double hull_cross_section_measure(const Profile& p) {
  const BoundingBox bb = bounding_box(p);
  const double L = std::max(std::fabs(bb.x_min), std::fabs(bb.x_max));
  if (p.symmetry.mode == SymmetryMode::rotational) return kPi * L * L;
  return p.symmetry.depth * (bb.x_max - bb.x_min);
}

inline constexpr double kMaxDegenerateFraction = 1e-3;

struct FlowRun {
  std::vector<WeightedSample> samples;
  std::vector<ScatterSample> scatter;
  int n_escaped = 0;
  int n_degenerate = 0;
  double degenerate_fraction = 0.0;
};

inline FlowRun run_flow(const Profile& p, const SamplingPlan& plan,
                        const SimConfig& cfg) {
  FlowRun run;
  run.samples = draw_samples(p, plan);
  const std::vector<Wall> walls = profile_to_walls(p);
  std::vector<double> xs(run.samples.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = run.samples[i].x;
  run.scatter = scatter_map(walls, xs, cfg);
  for (std::size_t i = 0; i < run.scatter.size(); ++i) {
    if (run.samples[i].excluded || run.scatter[i].degenerate)
      ++run.n_degenerate;
    else
      ++run.n_escaped;
  }
  run.degenerate_fraction =
      static_cast<double>(run.n_degenerate) / run.samples.size();
  if (run.degenerate_fraction >= kMaxDegenerateFraction)
    throw VerificationError("degenerate sample fraction too large");
  return run;
}

inline bool usable(const FlowRun& run, std::size_t i) {
  return !run.samples[i].excluded && !run.scatter[i].degenerate;
}

inline Direction2 flow_direction(const SimConfig& cfg) {
  return {0.0, cfg.upward ? 1.0 : -1.0};
}

// R = integral of (v0 - v+) over the flow cross-section, axial component
// along e_z plus the lateral component that must vanish by symmetry.
inline ResistanceResult resistance(const Profile& p, const SamplingPlan& plan,
                                   const SimConfig& cfg) {
  const FlowRun run = run_flow(p, plan, cfg);
  const Direction2 v0 = flow_direction(cfg);
  ResistanceResult r;
  r.normalization = hull_cross_section_measure(p);
  r.degenerate_fraction = run.degenerate_fraction;
  for (std::size_t i = 0; i < run.scatter.size(); ++i) {
    if (!usable(run, i)) continue;
    const double w = run.samples[i].weight;
    r.r_axial += w * (v0.w - run.scatter[i].v_plus.w);
    r.r_lateral += w * (v0.u - run.scatter[i].v_plus.u);
  }
  return r;
}

struct VerificationReport {
  std::string check;
  bool pass = false;
  double max_velocity_deviation = 0.0;
  double max_position_deviation = 0.0;
  double density_ratio_min = 0.0;
  double density_ratio_max = 0.0;
  int m_max = 0;
  bool parity_ok = true;
  int sample_count = 0;
  double degenerate_fraction = 0.0;
  double tolerance = 0.0;
};

// D1: v+(x, v0) = v0 for almost every x.
inline VerificationReport check_zero_resistance(const Profile& p,
                                                const SamplingPlan& plan,
                                                const SimConfig& cfg,
                                                double tol = 1e-9) {
  const FlowRun run = run_flow(p, plan, cfg);
  const Direction2 v0 = flow_direction(cfg);
  VerificationReport rep;
  rep.check = "D1";
  rep.tolerance = tol;
  rep.sample_count = static_cast<int>(run.samples.size());
  rep.degenerate_fraction = run.degenerate_fraction;
  for (std::size_t i = 0; i < run.scatter.size(); ++i) {
    if (!usable(run, i)) continue;
    const Direction2 v = run.scatter[i].v_plus;
    rep.max_velocity_deviation = std::max(
        rep.max_velocity_deviation, std::hypot(v.u - v0.u, v.w - v0.w));
  }
  rep.pass = rep.max_velocity_deviation <= tol;
  return rep;
}

// D2: the exit map preserves the cross-section measure. Estimated by the
// pushforward histogram over equal-measure bins spanning the exit range.
inline VerificationReport check_trackless(const Profile& p,
                                          const SamplingPlan& plan,
                                          const SimConfig& cfg, int bins = 100,
                                          double tol = 0.03,
                                          double vel_tol = 1e-9) {
  if (bins < 1) throw VerificationError("need at least one histogram bin");
  const FlowRun run = run_flow(p, plan, cfg);
  const Direction2 v0 = flow_direction(cfg);
  const bool rotational = p.symmetry.mode == SymmetryMode::rotational;
  VerificationReport rep;
  rep.check = "D2";
  rep.tolerance = tol;
  rep.sample_count = static_cast<int>(run.samples.size());
  rep.degenerate_fraction = run.degenerate_fraction;

  double lo = 1e300, hi = -1e300, total = 0.0;
  for (std::size_t i = 0; i < run.scatter.size(); ++i) {
    if (!usable(run, i)) continue;
    const Direction2 v = run.scatter[i].v_plus;
    rep.max_velocity_deviation = std::max(
        rep.max_velocity_deviation, std::hypot(v.u - v0.u, v.w - v0.w));
    const double e = rotational ? std::fabs(run.scatter[i].x_tilde)
                                : run.scatter[i].x_tilde;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    total += run.samples[i].weight;
  }
  if (!(hi > lo)) throw VerificationError("exit range is degenerate");

  // equal-measure bin edges over [lo, hi]
  std::vector<double> edges(bins + 1);
  for (int b = 0; b <= bins; ++b) {
    const double f = static_cast<double>(b) / bins;
    edges[b] = rotational ? std::sqrt(lo * lo + f * (hi * hi - lo * lo))
                          : lo + f * (hi - lo);
  }
  std::vector<double> mass(bins, 0.0);
  for (std::size_t i = 0; i < run.scatter.size(); ++i) {
    if (!usable(run, i)) continue;
    const double e = rotational ? std::fabs(run.scatter[i].x_tilde)
                                : run.scatter[i].x_tilde;
    int b = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), e) -
                             edges.begin()) - 1;
    b = std::clamp(b, 0, bins - 1);
    mass[b] += run.samples[i].weight;
  }
  const double expected = total / bins;
  if (!(expected > 0.0)) throw VerificationError("histogram bin with zero expected mass");
  rep.density_ratio_min = 1e300;
  rep.density_ratio_max = -1e300;
  for (double m : mass) {
    rep.density_ratio_min = std::min(rep.density_ratio_min, m / expected);
    rep.density_ratio_max = std::max(rep.density_ratio_max, m / expected);
  }
  rep.pass = rep.max_velocity_deviation <= vel_tol &&
             rep.density_ratio_min >= 1.0 - tol &&
             rep.density_ratio_max <= 1.0 + tol;
  return rep;
}

// Perpendicular distance between the exit ray and the vertical entry line.
inline double exit_line_deviation(const Trajectory& tr) {
  const Point2 rel{tr.x0 - tr.x_plus.x, 0.0 - tr.x_plus.z};
  return std::fabs(cross(tr.v_plus.u, tr.v_plus.w, rel.x, rel.z));
}

// D3: the exit line coincides with the entry line (x~ = x, v+ = v0).
inline VerificationReport check_invisible(const Profile& p,
                                          const SamplingPlan& plan,
                                          const SimConfig& cfg,
                                          double tol = 1e-9) {
  const FlowRun run = run_flow(p, plan, cfg);
  const Direction2 v0 = flow_direction(cfg);
  const std::vector<Wall> walls = profile_to_walls(p);
  VerificationReport rep;
  rep.check = "D3";
  rep.tolerance = tol;
  rep.sample_count = static_cast<int>(run.samples.size());
  rep.degenerate_fraction = run.degenerate_fraction;
  for (std::size_t i = 0; i < run.scatter.size(); ++i) {
    if (!usable(run, i)) continue;
    const ScatterSample& s = run.scatter[i];
    rep.max_velocity_deviation =
        std::max(rep.max_velocity_deviation,
                 std::hypot(s.v_plus.u - v0.u, s.v_plus.w - v0.w));
    rep.max_position_deviation =
        std::max(rep.max_position_deviation, std::fabs(s.x_tilde - s.x));
    if (s.m % 2 != 0) rep.parity_ok = false;
    rep.m_max = std::max(rep.m_max, s.m);
  }
  rep.pass = rep.max_velocity_deviation <= tol &&
             rep.max_position_deviation <= tol;
  return rep;
}

struct ReflectionStats {
  int m_max = 0;
  std::map<int, int> histogram;
  bool parity_ok = true;  // all escaped samples have even m
};

inline ReflectionStats max_reflections(const Profile& p,
                                       const SamplingPlan& plan,
                                       const SimConfig& cfg) {
  const std::vector<Wall> walls = profile_to_walls(p);
  const auto samples = draw_samples(p, plan);
  ReflectionStats st;
  int n_deg = 0;
  for (const auto& s : samples) {
    if (s.excluded) {
      ++n_deg;
      continue;
    }
    const Trajectory tr = trace_particle(walls, s.x, cfg);
    if (tr.outcome == Outcome::capped)
      throw VerificationError("trajectory hit the bounce cap");
    if (tr.outcome != Outcome::escaped) {
      ++n_deg;
      continue;
    }
    st.m_max = std::max(st.m_max, tr.m);
    ++st.histogram[tr.m];
    if (tr.m % 2 != 0) st.parity_ok = false;
  }
  if (static_cast<double>(n_deg) / samples.size() >= kMaxDegenerateFraction)
    throw VerificationError("degenerate sample fraction too large");
  return st;
}

struct CylinderSpec {
  double r_in = 0.0;  // 0 for a disk cross-section
  double r_out = 1.0;
  double h = 1.0;
};

namespace detail {

// x-intervals of the section of a polygon at height z (interior spans).
inline std::vector<std::pair<double, double>> polygon_section(
    const std::vector<Point2>& poly, double z) {
  std::vector<double> xs;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if ((a.z <= z) == (b.z <= z)) continue;  // no crossing
    xs.push_back(a.x + (z - a.z) / (b.z - a.z) * (b.x - a.x));
  }
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) spans.push_back({xs[i], xs[i + 1]});
  return spans;
}

inline bool spans_cover(const std::vector<std::pair<double, double>>& spans,
                        double a, double b, double eps) {
  double covered = a;
  // spans sorted by construction per polygon, but merged list is not; sort
  auto s = spans;
  std::sort(s.begin(), s.end());
  for (auto [lo, hi] : s) {
    if (lo > covered + eps) return false;
    covered = std::max(covered, hi);
    if (covered >= b - eps) return true;
  }
  return covered >= b - eps;
}

}  // namespace detail

// True iff the body fits in the (translated) cylinder slab Omega x [0, h]
// and some horizontal level covers the full radial extent of Omega on both
// sides of the axis.
inline bool check_inscribed(const Profile& p, const CylinderSpec& spec,
                            double eps = 1e-6) {
  const BoundingBox bb = bounding_box(p);
  if (bb.z_max - bb.z_min > spec.h + eps) return false;
  for (const auto& poly : p.polygons)
    for (const auto& v : poly) {
      const double r = std::fabs(v.x);
      if (r > spec.r_out + eps || r < spec.r_in - eps) return false;
    }
  // candidate levels: midpoints between consecutive distinct vertex heights
  std::set<double> zs;
  for (const auto& poly : p.polygons)
    for (const auto& v : poly) zs.insert(v.z);
  std::vector<double> levels(zs.begin(), zs.end());
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double c = 0.5 * (levels[i] + levels[i + 1]);
    std::vector<std::pair<double, double>> spans;
    for (const auto& poly : p.polygons)
      for (auto sp : detail::polygon_section(poly, c)) spans.push_back(sp);
    const bool pos = detail::spans_cover(spans, std::max(spec.r_in, 0.0) + eps,
                                         spec.r_out - eps, eps);
    const bool neg = detail::spans_cover(spans, -spec.r_out + eps,
                                         -std::max(spec.r_in, 0.0) - eps, eps);
    if (pos && neg) return true;
  }
  return false;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  return {{"check", r.check},
          {"pass", r.pass},
          {"max_velocity_deviation", r.max_velocity_deviation},
          {"max_position_deviation", r.max_position_deviation},
          {"density_ratio_range", {r.density_ratio_min, r.density_ratio_max}},
          {"m_max", r.m_max},
          {"parity_ok", r.parity_ok},
          {"sample_count", r.sample_count},
          {"degenerate_fraction", r.degenerate_fraction},
          {"tolerance", r.tolerance}};
}

}  // namespace zerodrag
