#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "plfiber/errors.hpp"
#include "plfiber/pl2.hpp"

namespace plfiber {

// Closed simple polygon f^{-1}(p), oriented as the boundary of f^{-1}([p,1])
// (the superlevel region lies on the left). Arc lengths are floating
// approximations of exact edge data.
struct LevelPolygon {
  Rat level;
  std::vector<Pt2> verts;      // closed: verts.front() follows verts.back()
  std::vector<double> cumlen;  // cumlen[i] = arc length from verts[0] to verts[i]
  double total_len = 0.0;

  size_t size() const { return verts.size(); }

  // Arc length from verts[0] to a point x lying on edge (verts[i], verts[i+1]).
  double arc_length_from_start(size_t edge, const Pt2& x) const {
    const Pt2& a = verts[edge];
    double du = to_double(x.u - a.u), dv = to_double(x.v - a.v);
    return cumlen[edge] + std::sqrt(du * du + dv * dv);
  }

  // Locate a point on the polygon; returns edge index or -1.
  long long find_edge(const Pt2& x) const {
    for (size_t i = 0; i < verts.size(); ++i) {
      const Pt2& a = verts[i];
      const Pt2& b = verts[(i + 1) % verts.size()];
      if (on_segment(a, b, x)) return static_cast<long long>(i);
    }
    return -1;
  }

  // Total signed turning in full turns; +1 for a ccw simple closed polygon.
  double turning_number() const {
    double total = 0.0;
    size_t n = verts.size();
    for (size_t i = 0; i < n; ++i) {
      const Pt2& a = verts[i];
      const Pt2& b = verts[(i + 1) % n];
      const Pt2& c = verts[(i + 2) % n];
      double x1 = to_double(b.u - a.u), y1 = to_double(b.v - a.v);
      double x2 = to_double(c.u - b.u), y2 = to_double(c.v - b.v);
      total += std::atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2);
    }
    return total / (2.0 * M_PI);
  }

  bool is_simple() const {
    size_t n = verts.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
        const Pt2& a = verts[i];
        const Pt2& b = verts[(i + 1) % n];
        const Pt2& c = verts[j];
        const Pt2& d = verts[(j + 1) % n];
        if (adjacent) {
          // successive edges may only meet at the shared endpoint
          const Pt2& shared = (j == i + 1) ? b : a;
          const Pt2& tip1 = (j == i + 1) ? a : b;
          const Pt2& tip2 = (j == i + 1) ? d : c;
          if (on_segment(c, d, tip1) && !(tip1 == shared)) return false;
          if (on_segment(a, b, tip2) && !(tip2 == shared)) return false;
          continue;
        }
        if (segments_intersect(a, b, c, d)) return false;
      }
    }
    return true;
  }
};

namespace detail {
struct SegKey {
  Pt2 p;
  bool operator<(const SegKey& o) const { return p < o.p; }
};
}  // namespace detail

// Trace f^{-1}(p) for p strictly between 0 and 1: each cell contributes the
// segment where its functional equals p, oriented with f >= p on the left;
// segments chain into closed polygons.
inline std::vector<LevelPolygon> level_set(const PLFunction2& f, const Rat& p) {
  if (!(p > 0 && p < 1)) throw DomainError("level_set: level must lie in (0,1)");
  struct OSeg {
    Pt2 a, b;
  };
  std::vector<OSeg> segs;
  for (const auto& c : f.cells()) {
    if (c.f.is_constant()) {
      if (c.f.c == p)
        throw DegenerateLevelError("level set contains a full 2-cell");
      continue;
    }
    AffineFunc h(c.f.a, c.f.b, c.f.c - p);
    // clip the line h = 0 to the convex cell: intersect the cell with both
    // half-planes and keep the common boundary segment
    Polygon upper = clip_halfplane(c.poly, h);
    if (upper.empty()) continue;
    // collect vertices of the cell's boundary lying on h = 0
    std::vector<Pt2> pts;
    size_t n = c.poly.size();
    for (size_t i = 0; i < n; ++i) {
      const Pt2& a = c.poly[i];
      const Pt2& b = c.poly[(i + 1) % n];
      Rat ha = h.eval(a), hb = h.eval(b);
      if (ha == 0) pts.push_back(a);
      if ((ha > 0 && hb < 0) || (ha < 0 && hb > 0)) {
        Rat t = ha / (ha - hb);
        pts.push_back(a + (b - a) * t);
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) continue;
    if (pts.size() > 2) throw GeometryError("level line meets cell in >2 points");
    // orient: travel direction = gradient rotated clockwise, so f >= p on left
    Pt2 d(c.f.b, -c.f.a);
    Pt2 e = pts[1] - pts[0];
    if (dot(d, e) > 0)
      segs.push_back({pts[0], pts[1]});
    else
      segs.push_back({pts[1], pts[0]});
  }
  // dedupe segments contributed twice (level along a shared cell edge)
  std::map<std::pair<detail::SegKey, detail::SegKey>, size_t> seen;
  std::vector<OSeg> uniq;
  for (auto& s : segs) {
    auto key = std::make_pair(detail::SegKey{s.a}, detail::SegKey{s.b});
    if (seen.count(key)) continue;
    seen[key] = 1;
    uniq.push_back(s);
  }
  // chain by start point
  std::map<detail::SegKey, std::vector<size_t>> by_start;
  for (size_t i = 0; i < uniq.size(); ++i) by_start[{uniq[i].a}].push_back(i);
  for (auto& [k, v] : by_start)
    if (v.size() != 1)
      throw DegenerateLevelError("non-manifold level set at a vertex");
  std::vector<bool> used(uniq.size(), false);
  std::vector<LevelPolygon> out;
  for (size_t i = 0; i < uniq.size(); ++i) {
    if (used[i]) continue;
    LevelPolygon poly;
    poly.level = p;
    size_t cur = i;
    while (!used[cur]) {
      used[cur] = true;
      poly.verts.push_back(uniq[cur].a);
      auto it = by_start.find({uniq[cur].b});
      if (it == by_start.end())
        throw DegenerateLevelError("level set fails to close up");
      cur = it->second.front();
    }
    if (!(uniq[cur].a == poly.verts.front()) || cur != i)
      throw DegenerateLevelError("level set chain is not a closed loop");
    // drop duplicate and collinear chain vertices without reorienting
    {
      Polygon q;
      for (auto& pt : poly.verts)
        if (q.empty() || !(q.back() == pt)) q.push_back(pt);
      while (q.size() > 1 && q.front() == q.back()) q.pop_back();
      Polygon r;
      size_t n = q.size();
      for (size_t k = 0; k < n; ++k) {
        const Pt2& prev = q[(k + n - 1) % n];
        const Pt2& cur = q[k];
        const Pt2& next = q[(k + 1) % n];
        if (orient(prev, cur, next) != 0) r.push_back(cur);
      }
      if (r.size() >= 3) poly.verts = r;
    }
    poly.cumlen.resize(poly.verts.size());
    double acc = 0.0;
    for (size_t k = 0; k < poly.verts.size(); ++k) {
      poly.cumlen[k] = acc;
      const Pt2& a = poly.verts[k];
      const Pt2& b = poly.verts[(k + 1) % poly.verts.size()];
      double du = to_double(b.u - a.u), dv = to_double(b.v - a.v);
      acc += std::sqrt(du * du + dv * dv);
    }
    poly.total_len = acc;
    out.push_back(std::move(poly));
  }
  return out;
}

}  // namespace plfiber
