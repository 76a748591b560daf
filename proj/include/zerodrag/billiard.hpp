#pragma once

// Single-particle tracing of the vertical flow through a profile and the
// scattering map (x, v0) -> (x+, v+, x~, t*).

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "zerodrag/geometry.hpp"
#include "zerodrag/profile.hpp"

namespace zerodrag {

struct SimConfig {
  double z_start = std::numeric_limits<double>::quiet_NaN();  // NaN: auto
  int max_bounces = 10000;
  double eps_geom = kEpsGeom;
  double eps_corner = kEpsCorner;
  double eps_grazing = kEpsGrazing;
  double escape_margin = 1.0;
  bool upward = false;  // reversed flow: launch below, v = (0, +1)
};

enum class Outcome { escaped, capped, degenerate_corner, degenerate_grazing };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::escaped: return "escaped";
    case Outcome::capped: return "capped";
    case Outcome::degenerate_corner: return "corner";
    case Outcome::degenerate_grazing: return "grazing";
  }
  return "?";
}

struct Trajectory {
  double x0 = 0.0;
  std::vector<Point2> vertices;  // launch point, impacts, exit point
  int m = 0;                     // reflection count
  Outcome outcome = Outcome::escaped;
  // exit data, valid when outcome == escaped
  Direction2 v_plus{0.0, -1.0};
  Point2 x_plus;      // point where free motion resumes
  double x_tilde = 0.0;  // horizontal component of x+ - <x+,v+> v+
  double t_star = 0.0;   // -<x+, v+>
};

struct ScatterSample {
  double x = 0.0;
  Direction2 v_plus{0.0, -1.0};
  double x_tilde = 0.0;
  int m = 0;
  bool degenerate = false;
};

inline Trajectory trace_particle(const std::vector<Wall>& walls, double x0,
                                 const SimConfig& cfg) {
  double z_lo = 1e300, z_hi = -1e300, x_lo = 1e300, x_hi = -1e300;
  for (const Wall& w : walls) {
    z_lo = std::min({z_lo, w.a.z, w.b.z});
    z_hi = std::max({z_hi, w.a.z, w.b.z});
    x_lo = std::min({x_lo, w.a.x, w.b.x});
    x_hi = std::max({x_hi, w.a.x, w.b.x});
  }
  if (walls.empty()) {
    z_lo = z_hi = 0.0;
    x_lo = x_hi = x0;
  }
  const double dirw = cfg.upward ? 1.0 : -1.0;
  double z0 = cfg.z_start;
  if (std::isnan(z0)) z0 = cfg.upward ? z_lo - 1.0 : z_hi + 1.0;

  Trajectory tr;
  tr.x0 = x0;
  Point2 pos{x0, z0};
  Direction2 vel{0.0, dirw};
  tr.vertices.push_back(pos);

  while (true) {
    auto hit = first_hit(pos, vel, walls, cfg.eps_geom, cfg.eps_corner);
    if (!hit) break;
    if (hit->corner_flag) {
      tr.outcome = Outcome::degenerate_corner;
      tr.vertices.push_back(hit->point);
      return tr;
    }
    const Direction2 n = walls[hit->wall_id].n;
    if (std::fabs(dot(vel, n)) < cfg.eps_grazing || dot(vel, n) > 0.0) {
      tr.outcome = Outcome::degenerate_grazing;
      tr.vertices.push_back(hit->point);
      return tr;
    }
    pos = hit->point;
    vel = reflect(vel, n);
    tr.vertices.push_back(pos);
    if (++tr.m >= cfg.max_bounces) {
      tr.outcome = Outcome::capped;
      return tr;
    }
  }

  tr.outcome = Outcome::escaped;
  tr.v_plus = vel;
  tr.x_plus = pos;
  const double proj = dot(pos, vel);
  tr.t_star = -proj;
  tr.x_tilde = pos.x - proj * vel.u;
  // exit point: smallest positive crossing of the inflated bounding box
  const double mx = cfg.escape_margin;
  double t_exit = 1e300;
  if (std::fabs(vel.u) > 0.0) {
    const double c1 = (x_hi + mx - pos.x) / vel.u;
    const double c2 = (x_lo - mx - pos.x) / vel.u;
    if (c1 > 0) t_exit = std::min(t_exit, c1);
    if (c2 > 0) t_exit = std::min(t_exit, c2);
  }
  if (std::fabs(vel.w) > 0.0) {
    const double c1 = (z_hi + mx - pos.z) / vel.w;
    const double c2 = (z_lo - mx - pos.z) / vel.w;
    if (c1 > 0) t_exit = std::min(t_exit, c1);
    if (c2 > 0) t_exit = std::min(t_exit, c2);
  }
  if (!(t_exit < 1e300)) t_exit = 1.0;
  tr.vertices.push_back(pos + t_exit * Point2{vel.u, vel.w});
  return tr;
}

inline ScatterSample to_sample(const Trajectory& tr) {
  ScatterSample s;
  s.x = tr.x0;
  s.m = tr.m;
  s.degenerate = tr.outcome != Outcome::escaped;
  if (!s.degenerate) {
    s.v_plus = tr.v_plus;
    s.x_tilde = tr.x_tilde;
  }
  return s;
}

inline unsigned thread_count_hint() {
  if (const char* env = std::getenv("ZERODRAG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

// Batch scattering map; order preserved, degenerate samples flagged rather
// than dropped. Deterministic regardless of the thread count.
inline std::vector<ScatterSample> scatter_map(const std::vector<Wall>& walls,
                                              const std::vector<double>& xs,
                                              const SimConfig& cfg) {
  std::vector<ScatterSample> out(xs.size());
  const unsigned nthreads =
      std::min<unsigned>(thread_count_hint(), std::max<std::size_t>(xs.size(), 1));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      out[i] = to_sample(trace_particle(walls, xs[i], cfg));
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (xs.size() + nthreads - 1) / nthreads;
  for (unsigned t = 0; t < nthreads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(xs.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i)
        out[i] = to_sample(trace_particle(walls, xs[i], cfg));
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace zerodrag
