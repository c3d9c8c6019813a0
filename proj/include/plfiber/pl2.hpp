#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "plfiber/errors.hpp"
#include "plfiber/pl1.hpp"
#include "plfiber/rational.hpp"

namespace plfiber {

struct AffineFunc {
  Rat a, b, c;  // a*u + b*v + c
  AffineFunc() : a(0), b(0), c(0) {}
  AffineFunc(Rat aa, Rat bb, Rat cc) : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)) {}
  static AffineFunc constant(const Rat& k) { return AffineFunc(Rat(0), Rat(0), k); }
  Rat eval(const Pt2& p) const { return a * p.u + b * p.v + c; }
  bool is_constant() const { return a == 0 && b == 0; }
  bool operator==(const AffineFunc& o) const { return a == o.a && b == o.b && c == o.c; }
  AffineFunc operator-(const AffineFunc& o) const {
    return AffineFunc(a - o.a, b - o.b, c - o.c);
  }
};

using Polygon = std::vector<Pt2>;

inline Rat polygon_area2(const Polygon& p) {
  Rat s(0);
  for (size_t i = 0; i < p.size(); ++i) {
    const Pt2& x = p[i];
    const Pt2& y = p[(i + 1) % p.size()];
    s += cross(x, y);
  }
  return s;
}

inline Polygon normalize_polygon(Polygon p) {
  // remove exact duplicates
  Polygon q;
  for (auto& pt : p)
    if (q.empty() || !(q.back() == pt)) q.push_back(pt);
  while (q.size() > 1 && q.front() == q.back()) q.pop_back();
  // drop collinear middle vertices
  Polygon r;
  size_t n = q.size();
  if (n < 3) return {};
  for (size_t i = 0; i < n; ++i) {
    const Pt2& prev = q[(i + n - 1) % n];
    const Pt2& cur = q[i];
    const Pt2& next = q[(i + 1) % n];
    if (orient(prev, cur, next) != 0) r.push_back(cur);
  }
  if (r.size() < 3) return {};
  if (polygon_area2(r) < 0) std::reverse(r.begin(), r.end());
  return r;
}

inline bool point_in_convex(const Polygon& poly, const Pt2& p) {
  for (size_t i = 0; i < poly.size(); ++i) {
    if (orient(poly[i], poly[(i + 1) % poly.size()], p) < 0) return false;
  }
  return true;
}

// Sutherland-Hodgman clip of a convex polygon against the half-plane h >= 0.
inline Polygon clip_halfplane(const Polygon& poly, const AffineFunc& h) {
  Polygon out;
  size_t n = poly.size();
  if (n == 0) return out;
  std::vector<Rat> val(n);
  for (size_t i = 0; i < n; ++i) val[i] = h.eval(poly[i]);
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    if (val[i] >= 0) out.push_back(poly[i]);
    if ((val[i] > 0 && val[j] < 0) || (val[i] < 0 && val[j] > 0)) {
      Rat t = val[i] / (val[i] - val[j]);
      out.push_back(poly[i] + (poly[j] - poly[i]) * t);
    }
  }
  return normalize_polygon(std::move(out));
}

inline Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  Polygon cur = subject;
  size_t n = clip.size();
  for (size_t i = 0; i < n && !cur.empty(); ++i) {
    const Pt2& a = clip[i];
    const Pt2& b = clip[(i + 1) % n];
    // half-plane left of edge a->b
    AffineFunc h(a.v - b.v, b.u - a.u, cross(a, b));
    cur = clip_halfplane(cur, h);
  }
  return cur;
}

struct Cell {
  Polygon poly;  // convex, ccw
  AffineFunc f;
};

// Invertible affine map x -> M x + t of the plane.
struct AffineMap2 {
  Rat m00{1}, m01{0}, m10{0}, m11{1}, tu{0}, tv{0};

  static AffineMap2 identity() { return {}; }
  static AffineMap2 translation(const Rat& du, const Rat& dv) {
    AffineMap2 m;
    m.tu = du;
    m.tv = dv;
    return m;
  }
  static AffineMap2 scaling(const Rat& su, const Rat& sv) {
    AffineMap2 m;
    m.m00 = su;
    m.m11 = sv;
    return m;
  }
  // Unique affine map sending (a0,a1,a2) to (b0,b1,b2).
  static AffineMap2 from_triangles(const Pt2& a0, const Pt2& a1, const Pt2& a2,
                                   const Pt2& b0, const Pt2& b1, const Pt2& b2) {
    Pt2 e1 = a1 - a0, e2 = a2 - a0;
    Rat det = cross(e1, e2);
    if (det == 0) throw GeometryError("degenerate source triangle");
    Pt2 f1 = b1 - b0, f2 = b2 - b0;
    // M * e1 = f1, M * e2 = f2
    AffineMap2 m;
    m.m00 = (f1.u * e2.v - f2.u * e1.v) / det;
    m.m01 = (f2.u * e1.u - f1.u * e2.u) / det;
    m.m10 = (f1.v * e2.v - f2.v * e1.v) / det;
    m.m11 = (f2.v * e1.u - f1.v * e2.u) / det;
    Pt2 ma0(m.m00 * a0.u + m.m01 * a0.v, m.m10 * a0.u + m.m11 * a0.v);
    m.tu = b0.u - ma0.u;
    m.tv = b0.v - ma0.v;
    return m;
  }

  Pt2 apply(const Pt2& p) const {
    return Pt2(m00 * p.u + m01 * p.v + tu, m10 * p.u + m11 * p.v + tv);
  }
  Rat det() const { return m00 * m11 - m01 * m10; }
  AffineMap2 inverse() const {
    Rat d = det();
    if (d == 0) throw GeometryError("singular affine map");
    AffineMap2 inv;
    inv.m00 = m11 / d;
    inv.m01 = -m01 / d;
    inv.m10 = -m10 / d;
    inv.m11 = m00 / d;
    inv.tu = -(inv.m00 * tu + inv.m01 * tv);
    inv.tv = -(inv.m10 * tu + inv.m11 * tv);
    return inv;
  }
  // this o other
  AffineMap2 compose(const AffineMap2& o) const {
    AffineMap2 r;
    r.m00 = m00 * o.m00 + m01 * o.m10;
    r.m01 = m00 * o.m01 + m01 * o.m11;
    r.m10 = m10 * o.m00 + m11 * o.m10;
    r.m11 = m10 * o.m01 + m11 * o.m11;
    Pt2 t = apply(Pt2(o.tu, o.tv));
    r.tu = t.u;
    r.tv = t.v;
    return r;
  }
};

// f(M^{-1} y) as an affine functional, for functional f and map M.
inline AffineFunc push_functional(const AffineFunc& f, const AffineMap2& M) {
  AffineMap2 inv = M.inverse();
  return AffineFunc(f.a * inv.m00 + f.b * inv.m10, f.a * inv.m01 + f.b * inv.m11,
                    f.a * inv.tu + f.b * inv.tv + f.c);
}

// Exact piecewise-affine function on a polygonal cell complex covering a
// rectangular chart. Cells have disjoint interiors; adjacent functionals
// agree on shared edges.
class PLFunction2 {
 public:
  PLFunction2() = default;
  PLFunction2(Rect chart, std::vector<Cell> cells)
      : chart_(std::move(chart)), cells_(std::move(cells)) {
    for (auto& c : cells_) {
      c.poly = normalize_polygon(c.poly);
      if (c.poly.empty()) throw GeometryError("degenerate cell polygon");
    }
  }

  const Rect& chart() const { return chart_; }
  const std::vector<Cell>& cells() const { return cells_; }

  Rat eval(const Pt2& x) const {
    bool found = false;
    Rat value(0);
    for (const auto& c : cells_) {
      if (point_in_convex(c.poly, x)) {
        Rat v = c.f.eval(x);
        if (!found) {
          value = v;
          found = true;
        } else if (v != value) {
          throw ContinuityError("adjacent cell functionals disagree at (" +
                                rat_str(x.u) + ", " + rat_str(x.v) + ")");
        }
      }
    }
    if (!found) throw DomainError("point outside PLFunction2 domain");
    return value;
  }

  Rat operator()(const Pt2& x) const { return eval(x); }

  Rat min_value() const {
    Rat m = cells_.front().f.eval(cells_.front().poly.front());
    for (const auto& c : cells_)
      for (const auto& p : c.poly) m = rat_min(m, c.f.eval(p));
    return m;
  }
  Rat max_value() const {
    Rat m = cells_.front().f.eval(cells_.front().poly.front());
    for (const auto& c : cells_)
      for (const auto& p : c.poly) m = rat_max(m, c.f.eval(p));
    return m;
  }

  // Structural validation: pairwise disjoint interiors, edge agreement at
  // endpoints and midpoints, and total area equal to the chart area.
  void validate() const {
    Rat total(0);
    for (const auto& c : cells_) total += polygon_area2(c.poly);
    Rat chart_area2 = 2 * (chart_.uhi - chart_.ulo) * (chart_.vhi - chart_.vlo);
    if (total != chart_area2)
      throw GeometryError("cell areas do not tile the chart: " + rat_str(total) +
                          " vs " + rat_str(chart_area2));
    for (size_t i = 0; i < cells_.size(); ++i) {
      for (size_t j = i + 1; j < cells_.size(); ++j) {
        Polygon inter = clip_convex(cells_[i].poly, cells_[j].poly);
        if (!inter.empty() && polygon_area2(inter) > 0)
          throw GeometryError("cells with overlapping interiors");
      }
    }
    // Edge agreement: any vertex of one cell lying on an edge of another must
    // have agreeing values; with convex cells and midpoint checks this pins
    // shared-edge agreement exactly.
    for (size_t i = 0; i < cells_.size(); ++i) {
      for (size_t j = 0; j < cells_.size(); ++j) {
        if (i == j) continue;
        const auto& ci = cells_[i];
        const auto& cj = cells_[j];
        size_t n = cj.poly.size();
        for (const auto& p : ci.poly) {
          for (size_t e = 0; e < n; ++e) {
            const Pt2& a = cj.poly[e];
            const Pt2& b = cj.poly[(e + 1) % n];
            if (on_segment(a, b, p)) {
              if (ci.f.eval(p) != cj.f.eval(p))
                throw ContinuityError("cell functionals disagree at shared vertex");
              Pt2 mid1((a.u + p.u) / 2, (a.v + p.v) / 2);
              if (on_segment(a, b, mid1) && point_in_convex(ci.poly, mid1) &&
                  ci.f.eval(mid1) != cj.f.eval(mid1))
                throw ContinuityError("cell functionals disagree at edge midpoint");
            }
          }
        }
      }
    }
  }

  // Restriction to the segment p0 -> p1, as a PLFunction1 in t on [0,1].
  PLFunction1 restrict_to_segment(const Pt2& p0, const Pt2& p1) const {
    struct Span {
      Rat t0, t1;
      Rat v0, v1;
    };
    std::vector<Span> spans;
    Pt2 d = p1 - p0;
    for (const auto& c : cells_) {
      // Clip t-range [0,1] by each edge half-plane.
      Rat tlo(0), thi(1);
      bool empty = false;
      size_t n = c.poly.size();
      for (size_t i = 0; i < n && !empty; ++i) {
        const Pt2& a = c.poly[i];
        const Pt2& b = c.poly[(i + 1) % n];
        AffineFunc h(a.v - b.v, b.u - a.u, cross(a, b));
        Rat h0 = h.eval(p0);
        Rat hd = h.a * d.u + h.b * d.v;  // h(p(t)) = h0 + t*hd
        if (hd == 0) {
          if (h0 < 0) empty = true;
        } else if (hd > 0) {
          Rat t = -h0 / hd;
          if (t > tlo) tlo = t;
        } else {
          Rat t = -h0 / hd;
          if (t < thi) thi = t;
        }
      }
      if (empty || tlo >= thi) continue;
      Pt2 q0 = p0 + d * tlo, q1 = p0 + d * thi;
      spans.push_back({tlo, thi, c.f.eval(q0), c.f.eval(q1)});
    }
    if (spans.empty()) throw DomainError("segment misses PLFunction2 domain");
    std::vector<Rat> ts;
    for (auto& s : spans) {
      ts.push_back(s.t0);
      ts.push_back(s.t1);
    }
    ts.push_back(Rat(0));
    ts.push_back(Rat(1));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<std::pair<Rat, Rat>> pts;
    for (size_t i = 0; i < ts.size(); ++i) {
      const Rat& t = ts[i];
      std::optional<Rat> val;
      for (auto& s : spans) {
        if (s.t0 <= t && t <= s.t1) {
          Rat u = (s.t1 == s.t0) ? Rat(0) : (t - s.t0) / (s.t1 - s.t0);
          Rat v = s.v0 + u * (s.v1 - s.v0);
          if (!val)
            val = v;
          else if (*val != v)
            throw ContinuityError("segment restriction sees disagreeing cells");
        }
      }
      if (!val) throw DomainError("segment leaves PLFunction2 domain");
      pts.emplace_back(t, *val);
      // also verify interior consistency of each gap with a midpoint probe
      if (i + 1 < ts.size()) {
        Rat mid = (ts[i] + ts[i + 1]) / 2;
        bool covered = false;
        for (auto& s : spans)
          if (s.t0 <= mid && mid <= s.t1) covered = true;
        if (!covered) throw DomainError("segment leaves PLFunction2 domain");
      }
    }
    return PLFunction1::from_samples(std::move(pts));
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "pl2 " << rat_str(chart_.ulo) << " " << rat_str(chart_.uhi) << " "
       << rat_str(chart_.vlo) << " " << rat_str(chart_.vhi) << " " << cells_.size()
       << "\n";
    for (const auto& c : cells_) {
      os << "cell " << c.poly.size();
      for (const auto& p : c.poly) os << " " << rat_str(p.u) << " " << rat_str(p.v);
      os << " " << rat_str(c.f.a) << " " << rat_str(c.f.b) << " " << rat_str(c.f.c)
         << "\n";
    }
    return os.str();
  }

  static PLFunction2 from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    is >> tag;
    if (tag != "pl2") throw DomainError("bad pl2 header");
    std::string a, b, c, d;
    size_t ncells;
    is >> a >> b >> c >> d >> ncells;
    Rect chart{rat_parse(a), rat_parse(b), rat_parse(c), rat_parse(d)};
    std::vector<Cell> cells;
    cells.reserve(ncells);
    for (size_t i = 0; i < ncells; ++i) {
      std::string ctag;
      size_t nv;
      if (!(is >> ctag >> nv) || ctag != "cell") throw DomainError("bad cell line");
      Cell cell;
      for (size_t k = 0; k < nv; ++k) {
        std::string su, sv;
        if (!(is >> su >> sv)) throw DomainError("truncated cell line");
        cell.poly.emplace_back(rat_parse(su), rat_parse(sv));
      }
      std::string sa, sb, sc;
      if (!(is >> sa >> sb >> sc)) throw DomainError("truncated cell functional");
      cell.f = AffineFunc(rat_parse(sa), rat_parse(sb), rat_parse(sc));
      cells.push_back(std::move(cell));
    }
    return PLFunction2(chart, std::move(cells));
  }

 private:
  Rect chart_{};
  std::vector<Cell> cells_;
};

enum class CombineOp { Add, Min, Max };

// Overlay two complexes over the same chart and combine values cellwise.
// Add computes sa*f + sb*g; Min/Max split cells along f = g crossings.
inline PLFunction2 combine(const PLFunction2& f, const PLFunction2& g, CombineOp op,
                           const Rat& sa = Rat(1), const Rat& sb = Rat(1)) {
  std::vector<Cell> out;
  for (const auto& cf : f.cells()) {
    for (const auto& cg : g.cells()) {
      Polygon inter = clip_convex(cf.poly, cg.poly);
      if (inter.empty() || polygon_area2(inter) == 0) continue;
      if (op == CombineOp::Add) {
        out.push_back({inter, AffineFunc(sa * cf.f.a + sb * cg.f.a,
                                         sa * cf.f.b + sb * cg.f.b,
                                         sa * cf.f.c + sb * cg.f.c)});
        continue;
      }
      AffineFunc diff = cf.f - cg.f;
      auto emit = [&](Polygon poly, const AffineFunc& fun) {
        poly = normalize_polygon(std::move(poly));
        if (!poly.empty() && polygon_area2(poly) > 0) out.push_back({std::move(poly), fun});
      };
      if (diff.is_constant()) {
        bool take_f = (op == CombineOp::Max) == (diff.c >= 0);
        emit(inter, take_f ? cf.f : cg.f);
      } else {
        Polygon fge = clip_halfplane(inter, diff);
        Polygon gge = clip_halfplane(inter, AffineFunc(-diff.a, -diff.b, -diff.c));
        if (op == CombineOp::Max) {
          emit(fge, cf.f);
          emit(gge, cg.f);
        } else {
          emit(fge, cg.f);
          emit(gge, cf.f);
        }
      }
    }
  }
  return PLFunction2(f.chart(), std::move(out));
}

// prof o f, refining cells along the level lines of f at prof breakpoints.
inline PLFunction2 compose_profile(const PLFunction2& f, const PLFunction1& prof) {
  std::vector<Cell> out;
  const auto& brks = prof.breakpoints();
  for (const auto& c : f.cells()) {
    std::vector<Polygon> pieces{c.poly};
    if (!c.f.is_constant()) {
      for (size_t bi = 1; bi + 1 < brks.size(); ++bi) {
        AffineFunc cut(c.f.a, c.f.b, c.f.c - brks[bi]);
        std::vector<Polygon> next;
        for (auto& piece : pieces) {
          Polygon lo = clip_halfplane(piece, AffineFunc(-cut.a, -cut.b, -cut.c));
          Polygon hi = clip_halfplane(piece, cut);
          if (!lo.empty() && polygon_area2(lo) > 0) next.push_back(std::move(lo));
          if (!hi.empty() && polygon_area2(hi) > 0) next.push_back(std::move(hi));
        }
        pieces = std::move(next);
      }
    }
    for (auto& piece : pieces) {
      // evaluate f at an interior point to find the active profile piece
      Pt2 inside(0, 0);
      Rat w(0);
      for (auto& p : piece) {
        inside.u += p.u;
        inside.v += p.v;
        w += 1;
      }
      inside.u /= w;
      inside.v /= w;
      Rat y = c.f.eval(inside);
      if (y < prof.lo() || y > prof.hi())
        throw DomainError("compose_profile: cell value outside profile domain");
      // affine form of prof on the piece containing y
      const auto& xs = prof.breakpoints();
      const auto& ys = prof.values();
      size_t lo = 0, hi = xs.size() - 1;
      while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (xs[mid] <= y) lo = mid; else hi = mid;
      }
      Rat slope = (ys[lo + 1] - ys[lo]) / (xs[lo + 1] - xs[lo]);
      Rat icept = ys[lo] - slope * xs[lo];
      out.push_back({std::move(piece),
                     AffineFunc(slope * c.f.a, slope * c.f.b, slope * c.f.c + icept)});
    }
  }
  return PLFunction2(f.chart(), std::move(out));
}

// Pullback of f through the map (u,v) -> (G(u), v) for increasing G: returns
// f o (G, id) as an explicit complex on G's domain x the chart v-range.
inline PLFunction2 pullback_u(const PLFunction2& f, const PLFunction1& G) {
  if (!G.strictly_increasing()) throw DomainError("pullback_u needs increasing G");
  std::vector<Cell> out;
  const auto& xs = G.breakpoints();
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat s = G.slope(i);
    Rat t = G.values()[i] - s * xs[i];
    // map (u,v) -> (s*u + t, v); preimage of cell poly: u' = (u - t)/s
    for (const auto& c : f.cells()) {
      Polygon pre;
      pre.reserve(c.poly.size());
      for (const auto& p : c.poly) pre.emplace_back((p.u - t) / s, p.v);
      pre = normalize_polygon(std::move(pre));
      if (pre.empty()) continue;
      // clip to the strip xs[i] <= u <= xs[i+1]
      pre = clip_halfplane(pre, AffineFunc(Rat(1), Rat(0), -xs[i]));
      pre = clip_halfplane(pre, AffineFunc(Rat(-1), Rat(0), xs[i + 1]));
      if (pre.empty() || polygon_area2(pre) == 0) continue;
      out.push_back({std::move(pre),
                     AffineFunc(c.f.a * s, c.f.b, c.f.a * t + c.f.c)});
    }
  }
  Rect chart{G.lo(), G.hi(), f.chart().vlo, f.chart().vhi};
  return PLFunction2(chart, std::move(out));
}

inline PLFunction2 scale_values(const PLFunction2& f, const Rat& s) {
  std::vector<Cell> cells = f.cells();
  for (auto& c : cells) {
    c.f.a *= s;
    c.f.b *= s;
    c.f.c *= s;
  }
  return PLFunction2(f.chart(), std::move(cells));
}

inline PLFunction2 add_constant(const PLFunction2& f, const Rat& k) {
  std::vector<Cell> cells = f.cells();
  for (auto& c : cells) c.f.c += k;
  return PLFunction2(f.chart(), std::move(cells));
}

// Image of f under an invertible affine map of the plane.
inline PLFunction2 affine_image(const PLFunction2& f, const AffineMap2& M,
                                const Rect& new_chart) {
  std::vector<Cell> cells;
  cells.reserve(f.cells().size());
  for (const auto& c : f.cells()) {
    Polygon poly;
    poly.reserve(c.poly.size());
    for (const auto& p : c.poly) poly.push_back(M.apply(p));
    cells.push_back({std::move(poly), push_functional(c.f, M)});
  }
  return PLFunction2(new_chart, std::move(cells));
}

// Extend f by zero from its rectangular chart to a larger chart; f must
// vanish on its own chart boundary.
inline PLFunction2 extend_by_zero(const PLFunction2& f, const Rect& big) {
  const Rect& r = f.chart();
  if (!(big.ulo <= r.ulo && r.uhi <= big.uhi && big.vlo <= r.vlo && r.vhi <= big.vhi))
    throw GeometryError("extend_by_zero: chart does not contain f's chart");
  std::vector<Cell> cells = f.cells();
  auto frame = [&](Rat ulo, Rat uhi, Rat vlo, Rat vhi) {
    if (ulo < uhi && vlo < vhi)
      cells.push_back({{{ulo, vlo}, {uhi, vlo}, {uhi, vhi}, {ulo, vhi}},
                       AffineFunc::constant(Rat(0))});
  };
  frame(big.ulo, r.ulo, big.vlo, big.vhi);
  frame(r.uhi, big.uhi, big.vlo, big.vhi);
  frame(r.ulo, r.uhi, big.vlo, r.vlo);
  frame(r.ulo, r.uhi, r.vhi, big.vhi);
  return PLFunction2(big, std::move(cells));
}

// The bump phi on [-3,3]^2: 1 on [-1,1]^2, 0 outside [-2,2]^2, affine on the
// four trapezoids between those squares cut out by the diagonals, with the
// zero frame split into four outer trapezoids (nine cell groups).
inline PLFunction2 make_phi() {
  std::vector<Cell> cells;
  auto C = AffineFunc::constant;
  cells.push_back({{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, C(Rat(1))});
  // transitions: 2 - max(|u|,|v|) on each diagonal sector
  cells.push_back({{{1, -1}, {2, -2}, {2, 2}, {1, 1}}, AffineFunc(rat(-1), rat(0), rat(2))});
  cells.push_back({{{1, 1}, {2, 2}, {-2, 2}, {-1, 1}}, AffineFunc(rat(0), rat(-1), rat(2))});
  cells.push_back({{{-1, 1}, {-2, 2}, {-2, -2}, {-1, -1}}, AffineFunc(rat(1), rat(0), rat(2))});
  cells.push_back({{{-1, -1}, {-2, -2}, {2, -2}, {1, -1}}, AffineFunc(rat(0), rat(1), rat(2))});
  // outer frame, still cut by the diagonals
  cells.push_back({{{2, -2}, {3, -3}, {3, 3}, {2, 2}}, C(Rat(0))});
  cells.push_back({{{2, 2}, {3, 3}, {-3, 3}, {-2, 2}}, C(Rat(0))});
  cells.push_back({{{-2, 2}, {-3, 3}, {-3, -3}, {-2, -2}}, C(Rat(0))});
  cells.push_back({{{-2, -2}, {-3, -3}, {3, -3}, {2, -2}}, C(Rat(0))});
  return PLFunction2(Rect{rat(-3), rat(3), rat(-3), rat(3)}, std::move(cells));
}

// max(0, 1 - max(|u|,|v|)) on [-1,1]^2; level-set test fixture.
inline PLFunction2 make_pyramid() {
  std::vector<Cell> cells;
  cells.push_back({{{1, -1}, {1, 1}, {0, 0}}, AffineFunc(rat(-1), rat(0), rat(1))});
  cells.push_back({{{1, 1}, {-1, 1}, {0, 0}}, AffineFunc(rat(0), rat(-1), rat(1))});
  cells.push_back({{{-1, 1}, {-1, -1}, {0, 0}}, AffineFunc(rat(1), rat(0), rat(1))});
  cells.push_back({{{-1, -1}, {1, -1}, {0, 0}}, AffineFunc(rat(0), rat(1), rat(1))});
  return PLFunction2(Rect{rat(-1), rat(1), rat(-1), rat(1)}, std::move(cells));
}

inline Rat eval2(const PLFunction2& f, const Pt2& x) { return f.eval(x); }

}  // namespace plfiber
