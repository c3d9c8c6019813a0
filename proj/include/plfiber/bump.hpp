#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "plfiber/errors.hpp"
#include "plfiber/levelset.hpp"
#include "plfiber/pl2.hpp"

namespace plfiber {

// Default sampled levels: one per gap between the usual cell-functional
// critical values of the bundled constructions.
inline std::vector<Rat> default_bump_levels() {
  return {rat(1, 8), rat(1, 4), rat(3, 8), rat(1, 2), rat(5, 8), rat(3, 4), rat(7, 8)};
}

struct LevelSummary {
  Rat level;
  int components = 0;
  bool closed_simple = false;
  double turning = 0.0;
};

struct BumpCertificate {
  Pt2 center;
  Pt2 transversal_end;
  std::vector<Rat> levels;
  std::vector<LevelSummary> per_level;
  bool range_ok = false;
  bool plateau_ok = false;
  bool boundary_ok = false;
  bool levels_ok = false;
  bool monotone_ok = false;
  bool pass = false;
  std::string detail;

  std::string report() const {
    std::ostringstream os;
    os << "range: " << (range_ok ? "pass" : "FAIL") << "\n"
       << "plateau_at_center: " << (plateau_ok ? "pass" : "FAIL") << "\n"
       << "zero_near_boundary: " << (boundary_ok ? "pass" : "FAIL") << "\n"
       << "single_level_components: " << (levels_ok ? "pass" : "FAIL") << "\n"
       << "monotone_transversal: " << (monotone_ok ? "pass" : "FAIL") << "\n";
    for (const auto& s : per_level)
      os << "level " << rat_str(s.level) << ": components=" << s.components
         << " closed_simple=" << (s.closed_simple ? 1 : 0) << "\n";
    os << "overall: " << (pass ? "pass" : "FAIL") << "\n";
    if (!detail.empty()) os << "detail: " << detail << "\n";
    return os.str();
  }
};

namespace detail {

inline bool cell_touches_rect_boundary(const Polygon& poly, const Rect& r) {
  for (const auto& p : poly)
    if (p.u == r.ulo || p.u == r.uhi || p.v == r.vlo || p.v == r.vhi) return true;
  return false;
}

}  // namespace detail

// Certify the testable standard-bump properties of f: values in [0,1],
// identically 1 near the center, identically 0 near the chart boundary, a
// single simple closed level polygon at every sampled level, and strict
// monotonicity along the transversal between the plateau and the boundary.
// Failures are recorded in the certificate, never thrown.
inline BumpCertificate verify_bump(const PLFunction2& f, const Pt2& center,
                                   const Pt2& transversal_end,
                                   std::vector<Rat> levels = default_bump_levels()) {
  BumpCertificate cert;
  cert.center = center;
  cert.transversal_end = transversal_end;
  cert.levels = levels;
  std::ostringstream why;

  cert.range_ok = true;
  for (const auto& c : f.cells())
    for (const auto& p : c.poly) {
      Rat v = c.f.eval(p);
      if (v < 0 || v > 1) cert.range_ok = false;
    }
  if (!cert.range_ok) why << "range exceeds [0,1]; ";

  // plateau: every cell whose closure contains the center must be constant 1
  cert.plateau_ok = false;
  {
    bool touches = false, all_one = true;
    for (const auto& c : f.cells()) {
      if (point_in_convex(c.poly, center)) {
        touches = true;
        if (!(c.f.is_constant() && c.f.c == 1)) all_one = false;
      }
    }
    cert.plateau_ok = touches && all_one;
  }
  if (!cert.plateau_ok) why << "no constant-1 neighborhood at center; ";

  // boundary: every cell meeting the chart boundary must be constant 0
  cert.boundary_ok = true;
  for (const auto& c : f.cells()) {
    if (detail::cell_touches_rect_boundary(c.poly, f.chart())) {
      if (!(c.f.is_constant() && c.f.c == 0)) cert.boundary_ok = false;
    }
  }
  if (!cert.boundary_ok) why << "nonzero cell touches chart boundary; ";

  cert.levels_ok = true;
  for (const auto& p : levels) {
    LevelSummary s;
    s.level = p;
    try {
      auto polys = level_set(f, p);
      s.components = static_cast<int>(polys.size());
      s.closed_simple = !polys.empty();
      for (const auto& poly : polys) {
        if (!poly.is_simple()) s.closed_simple = false;
        s.turning = poly.turning_number();
      }
    } catch (const std::exception& e) {
      s.components = -1;
      s.closed_simple = false;
      why << "level " << rat_str(p) << ": " << e.what() << "; ";
    }
    if (s.components != 1 || !s.closed_simple) cert.levels_ok = false;
    cert.per_level.push_back(s);
  }
  if (!cert.levels_ok) why << "level set not a single simple closed polygon; ";

  // monotone transversal: 1-plateau, strictly decreasing transition, 0-tail
  cert.monotone_ok = false;
  try {
    PLFunction1 r = f.restrict_to_segment(center, transversal_end);
    const auto& ys = r.values();
    size_t n = ys.size();
    bool ok = ys.front() == 1 && ys.back() == 0;
    size_t last_one = 0, first_zero = n - 1;
    for (size_t i = 0; i < n; ++i)
      if (ys[i] == 1) last_one = i;
    for (size_t i = n; i-- > 0;)
      if (ys[i] == 0) first_zero = i;
    if (last_one >= first_zero) ok = false;
    for (size_t i = 0; i < last_one && ok; ++i)
      if (ys[i] != 1) ok = false;
    for (size_t i = first_zero; i + 1 < n && ok; ++i)
      if (ys[i] != 0) ok = false;
    for (size_t i = last_one; i < first_zero && ok; ++i)
      if (ys[i + 1] >= ys[i]) ok = false;
    cert.monotone_ok = ok;
  } catch (const std::exception& e) {
    why << "transversal: " << e.what() << "; ";
  }
  if (!cert.monotone_ok) why << "transversal not strictly monotone; ";

  cert.pass = cert.range_ok && cert.plateau_ok && cert.boundary_ok &&
              cert.levels_ok && cert.monotone_ok;
  cert.detail = why.str();
  return cert;
}

// The radial model of Definition-style bumps on the closed unit disc:
// 1 for r < 1/3, 2 - 3r on [1/3, 2/3], 0 beyond.
inline double model_bump(double x, double y) {
  double r = std::sqrt(x * x + y * y);
  if (r < 1.0 / 3.0) return 1.0;
  if (r <= 2.0 / 3.0) return 2.0 - 3.0 * r;
  return 0.0;
}

// h(x): the radializing conjugacy evaluated at x with f(x) = p in (0,1):
// radius (2-p)/3, angle a full turn times the normalized arc length of x
// along its level polygon measured from the transversal intersection.
// (The source formula reads e^{i l_p(x)/l(p)}, which does not close the
// circle; a full-turn normalization is used here.)
inline std::pair<double, double> radialize(const PLFunction2& f,
                                           const BumpCertificate& cert,
                                           const Pt2& x) {
  Rat p = f.eval(x);
  if (p <= 0 || p >= 1)
    throw PlateauError("radialize: point lies on a plateau (f(x) in {0,1})");
  auto polys = level_set(f, p);
  const LevelPolygon* mine = nullptr;
  long long edge = -1;
  for (const auto& poly : polys) {
    long long e = poly.find_edge(x);
    if (e >= 0) {
      mine = &poly;
      edge = e;
      break;
    }
  }
  if (!mine) throw GeometryError("radialize: point not on its own level set");

  // transversal hits this level exactly once (monotone transversal)
  PLFunction1 r = f.restrict_to_segment(cert.center, cert.transversal_end);
  // restrict to the strictly decreasing part and solve for value p
  const auto& ts = r.breakpoints();
  const auto& ys = r.values();
  Rat thit(0);
  bool found = false;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    Rat y0 = ys[i], y1 = ys[i + 1];
    if ((y0 >= p && p >= y1) && y0 != y1) {
      Rat t = ts[i] + (y0 - p) / (y0 - y1) * (ts[i + 1] - ts[i]);
      thit = t;
      found = true;
      break;
    }
  }
  if (!found) throw GeometryError("radialize: transversal misses the level");
  Pt2 origin = cert.center + (cert.transversal_end - cert.center) * thit;
  long long oedge = mine->find_edge(origin);
  if (oedge < 0) throw GeometryError("radialize: transversal origin off the level polygon");

  double s_x = mine->arc_length_from_start(static_cast<size_t>(edge), x);
  double s_o = mine->arc_length_from_start(static_cast<size_t>(oedge), origin);
  double s = s_x - s_o;
  if (s < 0) s += mine->total_len;
  double theta = 2.0 * M_PI * s / mine->total_len;
  double radius = to_double(Rat(2 - p) / 3);
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

}  // namespace plfiber
