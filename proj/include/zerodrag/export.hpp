#pragma once

// Deterministic file outputs: CSV and schematic SVG. All numbers are
// printed with %.17g so reruns are byte-identical.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "zerodrag/billiard.hpp"
#include "zerodrag/profile.hpp"

namespace zerodrag {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accepts plain decimals and pi fractions: "pi", "pi/6", "3*pi/10", "3pi/10".
inline double parse_angle(const std::string& s) {
  static const std::regex pi_form(
      R"(^\s*(?:([0-9]*\.?[0-9]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    double v = kPi;
    if (m[1].matched) v *= std::stod(m[1].str());
    if (m[2].matched) v /= std::stod(m[2].str());
    return v;
  }
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw std::invalid_argument("cannot parse angle: " + s);
  return v;
}

inline std::string trajectory_csv(const std::vector<Trajectory>& trs) {
  std::ostringstream os;
  os << "x0,m,outcome,v_plus_u,v_plus_w,x_tilde,t_star\n";
  for (const auto& tr : trs) {
    os << fmt(tr.x0) << ',' << tr.m << ',' << outcome_name(tr.outcome) << ',';
    if (tr.outcome == Outcome::escaped)
      os << fmt(tr.v_plus.u) << ',' << fmt(tr.v_plus.w) << ','
         << fmt(tr.x_tilde) << ',' << fmt(tr.t_star);
    else
      os << ",,,";
    os << '\n';
  }
  return os.str();
}

struct SweepRow {
  double alpha = 0.0;
  double k = 0.0;
  double r_alpha = 0.0;
  double kappa = 0.0;
  double h = 0.0;
  int m_max = 0;
  double max_vel_dev = 0.0;
};

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "alpha,k,r_alpha,kappa,h,m_max,max_vel_dev\n";
  for (const auto& r : rows)
    os << fmt(r.alpha) << ',' << fmt(r.k) << ',' << fmt(r.r_alpha) << ','
       << fmt(r.kappa) << ',' << fmt(r.h) << ',' << r.m_max << ','
       << fmt(r.max_vel_dev) << '\n';
  return os.str();
}

// Schematic rendering: filled profile polygons plus trajectory polylines.
inline std::string svg_scene(const Profile& p,
                             const std::vector<Trajectory>& trs = {}) {
  const BoundingBox bb = bounding_box(p);
  const double margin = 0.2 * std::max(bb.x_max - bb.x_min, bb.z_max - bb.z_min) + 0.5;
  const double x0 = bb.x_min - margin, x1 = bb.x_max + margin;
  const double z0 = bb.z_min - margin, z1 = bb.z_max + margin;
  const double scale = 400.0 / std::max(x1 - x0, z1 - z0);
  auto px = [&](double x) { return fmt((x - x0) * scale); };
  auto pz = [&](double z) { return fmt((z1 - z) * scale); };  // z up

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
     << fmt((x1 - x0) * scale) << "\" height=\"" << fmt((z1 - z0) * scale)
     << "\">\n";
  for (const auto& poly : p.polygons) {
    os << "  <polygon fill=\"#b0b0b0\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (const auto& v : poly) os << px(v.x) << ',' << pz(v.z) << ' ';
    os << "\"/>\n";
  }
  for (const auto& tr : trs) {
    os << "  <polyline fill=\"none\" stroke=\"red\" stroke-width=\"1\" points=\"";
    for (const auto& v : tr.vertices) os << px(v.x) << ',' << pz(v.z) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace zerodrag
