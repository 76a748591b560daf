#pragma once

// Planar primitives for billiard simulation in a symmetry plane.
// Coordinates: x = signed horizontal offset (signed radius for bodies of
// revolution), z = height along the flow axis.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zerodrag {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Default tolerances. Impacts closer than eps_corner to a wall endpoint and
// impacts more grazing than eps_grazing are flagged as degenerate; the maps
// are only defined almost everywhere, so callers discard such samples.
inline constexpr double kEpsGeom = 1e-9;
inline constexpr double kEpsCorner = 1e-9;
inline constexpr double kEpsGrazing = 1e-12;

struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.z + b.z}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.z - b.z}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.z}; }

// Unit vector; invariant u^2 + w^2 = 1 within 1e-12.
struct Direction2 {
  double u = 0.0;
  double w = -1.0;
};

inline double dot(Direction2 a, Direction2 b) { return a.u * b.u + a.w * b.w; }
inline double dot(Point2 p, Direction2 d) { return p.x * d.u + p.z * d.w; }
inline double cross(double ax, double az, double bx, double bz) {
  return ax * bz - az * bx;
}

inline Direction2 normalized(double u, double w) {
  const double n = std::hypot(u, w);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("cannot normalize zero or non-finite vector");
  return {u / n, w / n};
}

inline bool is_unit(Direction2 d, double tol = 1e-12) {
  return std::fabs(d.u * d.u + d.w * d.w - 1.0) <= tol;
}

// Oriented boundary segment with outward unit normal.
struct Wall {
  Point2 a;
  Point2 b;
  Direction2 n;
};

// Wall along a->b with the outward side on the right of the direction of
// travel (CCW polygon boundary => normal points out of the body).
inline Wall make_wall(Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dz = b.z - a.z;
  if (std::hypot(dx, dz) <= 0.0)
    throw std::invalid_argument("degenerate wall: coincident endpoints");
  return {a, b, normalized(dz, -dx)};
}

struct Hit {
  std::size_t wall_id = 0;
  double t = 0.0;  // ray parameter (distance travelled)
  Point2 point;
  bool corner_flag = false;  // impact within eps_corner of a wall endpoint
};

// Specular reflection v' = v - 2<v,n>n. Pre: unit vectors, <v,n> < 0.
inline Direction2 reflect(Direction2 v, Direction2 n) {
  const double vn = dot(v, n);
  Direction2 r{v.u - 2.0 * vn * n.u, v.w - 2.0 * vn * n.w};
  // renormalize to keep the unit invariant through long reflection chains
  const double s = 1.0 / std::hypot(r.u, r.w);
  return {r.u * s, r.w * s};
}

inline bool is_grazing(Direction2 v, Direction2 n, double eps = kEpsGrazing) {
  return std::fabs(dot(v, n)) < eps;
}

// Nearest intersection of the ray origin + t*dir (t >= eps_geom) with any
// wall. Returns nullopt when the ray escapes every wall.
inline std::optional<Hit> first_hit(Point2 origin, Direction2 dir,
                                    const std::vector<Wall>& walls,
                                    double eps_geom = kEpsGeom,
                                    double eps_corner = kEpsCorner) {
  std::optional<Hit> best;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const Wall& w = walls[i];
    const double ex = w.b.x - w.a.x;
    const double ez = w.b.z - w.a.z;
    const double len = std::hypot(ex, ez);
    const double denom = cross(dir.u, dir.w, ex, ez);
    if (std::fabs(denom) < 1e-300) continue;  // parallel: no transversal hit
    const double qx = w.a.x - origin.x;
    const double qz = w.a.z - origin.z;
    const double t = cross(qx, qz, ex, ez) / denom;
    const double s = cross(qx, qz, dir.u, dir.w) / denom;
    if (t < eps_geom) continue;
    const double slack = eps_geom / len;
    if (s < -slack || s > 1.0 + slack) continue;
    if (best && t >= best->t) continue;
    Hit h;
    h.wall_id = i;
    h.t = t;
    h.point = {origin.x + t * dir.u, origin.z + t * dir.w};
    const double d_a = s * len;
    const double d_b = (1.0 - s) * len;
    h.corner_flag = (std::fabs(d_a) < eps_corner) || (std::fabs(d_b) < eps_corner);
    best = h;
  }
  return best;
}

// Shoelace area, positive for CCW orientation.
inline double signed_area(const std::vector<Point2>& v) {
  double a = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    a += p.x * q.z - q.x * p.z;
  }
  return 0.5 * a;
}

namespace detail {

inline bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b.x - a.x, b.z - a.z, c.x - a.x, c.z - a.z);
  const double d2 = cross(b.x - a.x, b.z - a.z, d.x - a.x, d.z - a.z);
  const double d3 = cross(d.x - c.x, d.z - c.z, a.x - c.x, a.z - c.z);
  const double d4 = cross(d.x - c.x, d.z - c.z, b.x - c.x, b.z - c.z);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace detail

inline bool polygon_is_simple(const std::vector<Point2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (detail::segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

inline double polygon_area(const std::vector<Point2>& v) {
  if (v.size() < 3)
    throw std::invalid_argument("polygon_area: need at least 3 vertices");
  if (!polygon_is_simple(v))
    throw std::invalid_argument("polygon_area: self-intersecting polygon");
  return signed_area(v);
}

// Andrew monotone chain; returns CCW hull vertices, duplicates and collinear
// runs removed within eps.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts,
                                       double eps = kEpsGeom) {
  if (pts.size() < 3)
    throw std::invalid_argument("convex_hull: need at least 3 points");
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.z < b.z);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [eps](Point2 a, Point2 b) {
                          return std::fabs(a.x - b.x) <= eps &&
                                 std::fabs(a.z - b.z) <= eps;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  auto turn = [](Point2 o, Point2 a, Point2 b) {
    return cross(a.x - o.x, a.z - o.z, b.x - o.x, b.z - o.z);
  };
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && turn(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3)
    throw std::invalid_argument("convex_hull: all points collinear");
  return hull;
}

// True when p lies inside or on the boundary of a CCW convex polygon.
inline bool point_in_convex_polygon(Point2 p, const std::vector<Point2>& hull,
                                    double eps = kEpsGeom) {
  for (std::size_t i = 0, n = hull.size(); i < n; ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % n];
    if (cross(b.x - a.x, b.z - a.z, p.x - a.x, p.z - a.z) < -eps) return false;
  }
  return true;
}

}  // namespace zerodrag
