#pragma once

// Parametric body families. Every body is represented by its planar profile:
// a list of simple CCW polygons in the symmetry plane plus a symmetry mode
// (rotation around the z axis, or translation orthogonal to the plane).

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zerodrag/geometry.hpp"

namespace zerodrag {

enum class SymmetryMode { rotational, translational };

struct Symmetry {
  SymmetryMode mode = SymmetryMode::rotational;
  double depth = 1.0;  // extrusion depth, translational mode only
};

struct Profile {
  std::vector<std::vector<Point2>> polygons;
  Symmetry symmetry;
  // provenance
  std::string family = "custom";
  double alpha = 0.0;
  double k = 0.0;
  double eps = 0.0;
};

inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi / 4.0))
    throw std::invalid_argument("alpha must lie in (0, pi/4)");
}

// Cylinder radius of the hull of B_alpha.
inline double triangle_pair_outer_radius(double alpha) {
  return 0.5 * (std::tan(2.0 * alpha) + std::tan(alpha));
}

// Radius of the obtuse vertices (inner edge of the open channel).
inline double triangle_pair_inner_radius(double alpha) {
  return 0.5 * (std::tan(2.0 * alpha) - std::tan(alpha));
}

// Pair of isosceles triangles with base angles alpha, vertical bases of
// length 2 at |x| = L_alpha and obtuse vertices at |x| = c_alpha, z = 0.
inline Profile triangle_pair_profile(double alpha) {
  require_alpha(alpha);
  const double L = triangle_pair_outer_radius(alpha);
  const double c = triangle_pair_inner_radius(alpha);
  Profile p;
  p.symmetry = {SymmetryMode::rotational, 1.0};
  p.family = "triangle-pair";
  p.alpha = alpha;
  p.polygons.push_back({{-L, -1.0}, {-c, 0.0}, {-L, 1.0}});
  p.polygons.push_back({{L, -1.0}, {L, 1.0}, {c, 0.0}});
  return p;
}

// Channel half-width of the trapezoid construction, normalized to outer
// walls at |x| = 1: r(alpha) = sin(alpha) / sin(2*floor(pi/(4 alpha))*alpha + alpha).
inline double inner_ratio(double alpha) {
  require_alpha(alpha);
  const double n = std::floor(kPi / (4.0 * alpha));
  return std::sin(alpha) / std::sin((2.0 * n + 1.0) * alpha);
}

// Two mirror isosceles trapezia; outer vertical sides at |x| = 1, inner
// vertical sides at |x| = r(alpha), slant edges at angle alpha to the
// vertical, |CD| = k * |BC|.
inline Profile trapezoid_pair_profile(double alpha, double k) {
  require_alpha(alpha);
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const double r = inner_ratio(alpha);
  const double bc = (1.0 - r) / std::sin(alpha);
  const double zc = 0.5 * k * bc;           // inner corner height
  const double zb = zc + bc * std::cos(alpha);  // outer corner height
  Profile p;
  p.symmetry = {SymmetryMode::rotational, 1.0};
  p.family = "trapezoid-pair";
  p.alpha = alpha;
  p.k = k;
  // left trapezoid A(-1,-zb) B(-1,zb) C(-r,zc) D(-r,-zc), CCW
  p.polygons.push_back({{-1.0, -zb}, {-r, -zc}, {-r, zc}, {-1.0, zb}});
  p.polygons.push_back({{1.0, -zb}, {1.0, zb}, {r, zc}, {r, -zc}});
  return p;
}

// Union of p with its mirror image about the horizontal plane
// z = z_min - eps/2; the doubled body is invisible when p has zero
// resistance.
inline Profile double_profile(const Profile& p, double eps = 0.0) {
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  double z_min = std::numeric_limits<double>::infinity();
  for (const auto& poly : p.polygons)
    for (const auto& v : poly) z_min = std::min(z_min, v.z);
  const double z_mirror = z_min - 0.5 * eps;
  Profile d = p;
  d.family = "doubled:" + p.family;
  d.eps = eps;
  for (const auto& poly : p.polygons) {
    std::vector<Point2> m(poly.rbegin(), poly.rend());
    for (auto& v : m) v.z = 2.0 * z_mirror - v.z;
    d.polygons.push_back(std::move(m));
  }
  return d;
}

// Solid cylinder of revolution: radius r, z in [0, h].
inline Profile cylinder_profile(double r, double h) {
  if (!(r > 0.0 && h > 0.0))
    throw std::invalid_argument("cylinder needs positive radius and height");
  Profile p;
  p.symmetry = {SymmetryMode::rotational, 1.0};
  p.family = "cylinder";
  p.polygons.push_back({{-r, 0.0}, {r, 0.0}, {r, h}, {-r, h}});
  return p;
}

// Solid cone, apex up: base radius r at z = 0, apex at (0, h).
inline Profile cone_profile(double r, double h) {
  if (!(r > 0.0 && h > 0.0))
    throw std::invalid_argument("cone needs positive radius and height");
  Profile p;
  p.symmetry = {SymmetryMode::rotational, 1.0};
  p.family = "cone";
  p.polygons.push_back({{-r, 0.0}, {r, 0.0}, {0.0, h}});
  return p;
}

// Each CCW polygon edge becomes a wall with the outward normal on the right
// of the direction of travel.
inline std::vector<Wall> profile_to_walls(const Profile& p) {
  std::vector<Wall> walls;
  for (const auto& poly : p.polygons) {
    for (std::size_t i = 0, n = poly.size(); i < n; ++i)
      walls.push_back(make_wall(poly[i], poly[(i + 1) % n]));
  }
  return walls;
}

struct BoundingBox {
  double x_min = 0, x_max = 0, z_min = 0, z_max = 0;
};

inline BoundingBox bounding_box(const Profile& p) {
  BoundingBox b{1e300, -1e300, 1e300, -1e300};
  for (const auto& poly : p.polygons)
    for (const auto& v : poly) {
      b.x_min = std::min(b.x_min, v.x);
      b.x_max = std::max(b.x_max, v.x);
      b.z_min = std::min(b.z_min, v.z);
      b.z_max = std::max(b.z_max, v.z);
    }
  if (p.polygons.empty()) throw std::invalid_argument("empty profile");
  return b;
}

namespace detail {

inline bool polygons_equal_cyclic(const std::vector<Point2>& a,
                                  const std::vector<Point2>& b, double tol) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;
  for (std::size_t off = 0; off < n; ++off) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Point2& p = a[i];
      const Point2& q = b[(i + off) % n];
      ok = std::fabs(p.x - q.x) <= tol && std::fabs(p.z - q.z) <= tol;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

// Rotational profiles must be mirror-symmetric about x = 0.
inline bool is_mirror_symmetric(const Profile& p, double tol = 1e-12) {
  for (const auto& poly : p.polygons) {
    std::vector<Point2> m(poly.rbegin(), poly.rend());
    for (auto& v : m) v.x = -v.x;
    bool found = false;
    for (const auto& other : p.polygons)
      if (detail::polygons_equal_cyclic(m, other, tol)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline void validate_profile(const Profile& p) {
  if (p.polygons.empty()) throw std::invalid_argument("empty profile");
  for (const auto& poly : p.polygons) {
    if (poly.size() < 3) throw std::invalid_argument("polygon with < 3 vertices");
    if (!polygon_is_simple(poly))
      throw std::invalid_argument("self-intersecting polygon");
    if (signed_area(poly) <= 0.0)
      throw std::invalid_argument("polygon not CCW");
  }
  if (p.symmetry.mode == SymmetryMode::translational && !(p.symmetry.depth > 0.0))
    throw std::invalid_argument("translational depth must be positive");
  if (p.symmetry.mode == SymmetryMode::rotational && !is_mirror_symmetric(p))
    throw std::invalid_argument("rotational profile not mirror-symmetric");
}

// --- JSON (the single persistent body format) ---

inline nlohmann::json to_json(const Profile& p) {
  nlohmann::json j;
  j["family"] = p.family;
  j["params"] = {{"alpha", p.alpha}, {"k", p.k}, {"eps", p.eps}};
  j["symmetry"]["mode"] =
      p.symmetry.mode == SymmetryMode::rotational ? "rotational" : "translational";
  if (p.symmetry.mode == SymmetryMode::translational)
    j["symmetry"]["depth"] = p.symmetry.depth;
  auto& polys = j["polygons"] = nlohmann::json::array();
  for (const auto& poly : p.polygons) {
    nlohmann::json jp = nlohmann::json::array();
    for (const auto& v : poly) jp.push_back({v.x, v.z});
    polys.push_back(std::move(jp));
  }
  return j;
}

inline Profile profile_from_json(const nlohmann::json& j) {
  Profile p;
  p.family = j.value("family", "custom");
  if (j.contains("params")) {
    p.alpha = j["params"].value("alpha", 0.0);
    p.k = j["params"].value("k", 0.0);
    p.eps = j["params"].value("eps", 0.0);
  }
  const std::string mode = j.at("symmetry").at("mode").get<std::string>();
  if (mode == "rotational") {
    p.symmetry.mode = SymmetryMode::rotational;
  } else if (mode == "translational") {
    p.symmetry.mode = SymmetryMode::translational;
    p.symmetry.depth = j["symmetry"].value("depth", 1.0);
  } else {
    throw std::invalid_argument("unknown symmetry mode: " + mode);
  }
  for (const auto& jp : j.at("polygons")) {
    std::vector<Point2> poly;
    for (const auto& jv : jp) poly.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
    p.polygons.push_back(std::move(poly));
  }
  validate_profile(p);
  return p;
}

}  // namespace zerodrag
