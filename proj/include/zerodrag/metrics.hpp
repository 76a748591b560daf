#pragma once

// Volumes, convex-hull ratios, cylinder dimensions, and the single-impact
// resistance functional over radial height profiles.

#include <functional>
#include <vector>

#include <json.hpp>

#include "zerodrag/geometry.hpp"
#include "zerodrag/profile.hpp"

namespace zerodrag {

namespace detail {

// Clip a polygon to the half-plane x >= 0 (Sutherland-Hodgman).
inline std::vector<Point2> clip_right_half(const std::vector<Point2>& poly) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const bool ina = a.x >= 0.0;
    const bool inb = b.x >= 0.0;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double t = a.x / (a.x - b.x);
      out.push_back({0.0, a.z + t * (b.z - a.z)});
    }
  }
  return out;
}

// Exact volume of revolution of a CCW polygon in the half-plane x >= 0:
// closed contour integral of pi x^2 dz along straight edges.
inline double revolved_volume(const std::vector<Point2>& poly) {
  double v = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    v += (b.z - a.z) * (a.x * a.x + a.x * b.x + b.x * b.x) / 3.0;
  }
  return kPi * v;
}

}  // namespace detail

// Edge-exact body volume: solid of revolution of the x >= 0 part of the
// profile, or polygon area times depth for extruded bodies.
inline double volume_of_solid(const Profile& p) {
  validate_profile(p);
  if (p.symmetry.mode == SymmetryMode::translational) {
    double area = 0.0;
    for (const auto& poly : p.polygons) area += signed_area(poly);
    return area * p.symmetry.depth;
  }
  double v = 0.0;
  for (const auto& poly : p.polygons) {
    const auto clipped = detail::clip_right_half(poly);
    if (clipped.size() >= 3) v += detail::revolved_volume(clipped);
  }
  return v;
}

// Closed form Vol(B_alpha) = pi tan(alpha) (tan(2 alpha) + tan(alpha)/3).
inline double triangle_pair_volume_formula(double alpha) {
  require_alpha(alpha);
  const double t = std::tan(alpha);
  return kPi * t * (std::tan(2.0 * alpha) + t / 3.0);
}

struct ShapeMetrics {
  double volume = 0.0;
  double hull_volume = 0.0;
  double kappa = 0.0;  // volume / hull_volume
  double L = 0.0;      // hull cylinder radius (max |x|)
  double H = 0.0;      // hull cylinder height (z extent)
  double h = 0.0;      // relative height H / L
};

inline ShapeMetrics shape_metrics(const Profile& p) {
  const BoundingBox bb = bounding_box(p);
  ShapeMetrics m;
  m.volume = volume_of_solid(p);
  m.L = std::max(std::fabs(bb.x_min), std::fabs(bb.x_max));
  m.H = bb.z_max - bb.z_min;
  m.h = m.H / m.L;
  if (p.symmetry.mode == SymmetryMode::rotational) {
    // the hull of the revolved solid is the circumscribed cylinder for
    // these mirror-symmetric families
    m.hull_volume = kPi * m.L * m.L * m.H;
  } else {
    std::vector<Point2> pts;
    for (const auto& poly : p.polygons)
      for (const auto& v : poly) pts.push_back(v);
    m.hull_volume = signed_area(convex_hull(pts)) * p.symmetry.depth;
  }
  m.kappa = m.volume / m.hull_volume;
  return m;
}

// Radial height function over the unit disk, sampled uniformly on [0, 1].
struct NewtonProfile {
  std::vector<double> f;
};

inline NewtonProfile sample_newton_profile(const std::function<double(double)>& f,
                                           int quad_n) {
  if (quad_n < 16) throw std::invalid_argument("quad_n must be >= 16");
  NewtonProfile p;
  p.f.resize(quad_n + 1);
  for (int i = 0; i <= quad_n; ++i) p.f[i] = f(static_cast<double>(i) / quad_n);
  return p;
}

// Single-impact resistance functional 2 pi * integral_0^1 r / (1 + f'(r)^2) dr,
// composite midpoint rule with secant derivatives at cell midpoints.
inline double newton_functional(const NewtonProfile& p) {
  const int n = static_cast<int>(p.f.size()) - 1;
  if (n < 1) throw std::invalid_argument("newton_functional: too few samples");
  const double h = 1.0 / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(p.f[i]) || !std::isfinite(p.f[i + 1]))
      throw std::invalid_argument("newton_functional: non-finite sample");
    const double df = (p.f[i + 1] - p.f[i]) / h;
    const double r = (i + 0.5) * h;
    acc += r / (1.0 + df * df);
  }
  return 2.0 * kPi * acc * h;
}

inline double newton_functional(const std::function<double(double)>& f,
                                int quad_n) {
  return newton_functional(sample_newton_profile(f, quad_n));
}

inline nlohmann::json to_json(const ShapeMetrics& m) {
  return {{"volume", m.volume},   {"hull_volume", m.hull_volume},
          {"kappa", m.kappa},     {"L", m.L},
          {"H", m.H},             {"h", m.h}};
}

}  // namespace zerodrag
