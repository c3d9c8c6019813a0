#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "plfiber/bump.hpp"
#include "plfiber/fan.hpp"
#include "plfiber/ribbon.hpp"

namespace plfiber {

// Chart coordinates:
//   face  f: the square [-3,3]^2; the face's n sides are the perimeter arcs
//            [j/n,(j+1)/n]; collar gauge sigma = ||x||_inf / 3.
//   strip e: across a in [-5/8,5/8] (edge at a = 0, N_delta at |a| = 1/2),
//            along b in [3/16,13/16] (vertices at b = 0 and 1, so the strip
//            holds the U_e box |a| < 1/2, |b-1/2| < 1/4 with margins).
//   pad   v: the square [-5/2,5/2]^2 around the vertex; arms 0,1,2 leave in
//            the +u, +v, -u directions and reach the strip at arm length
//            ell = 16 b-hat / 3.
// The quoted U_e coordinates are x = 2 delta a, y = 4 (b - 1/2).

enum class ChartKind { Face, Strip, Pad };

struct ChartId {
  ChartKind kind;
  int index = 0;
  bool operator<(const ChartId& o) const {
    if (kind != o.kind) return kind < o.kind;
    return index < o.index;
  }
  bool operator==(const ChartId& o) const { return kind == o.kind && index == o.index; }
};

inline std::string chart_name(const ChartId& c) {
  switch (c.kind) {
    case ChartKind::Face: return "face" + std::to_string(c.index);
    case ChartKind::Strip: return "strip" + std::to_string(c.index);
    default: return "pad" + std::to_string(c.index);
  }
}

// A surface point with coordinates in every chart that holds it.
struct MultiPt {
  std::map<ChartId, Pt2> coords;
  const Pt2* in(const ChartId& c) const {
    auto it = coords.find(c);
    return it == coords.end() ? nullptr : &it->second;
  }
};

namespace cover_detail {

inline PLFunction1 clamp_profile(const Rat& lo_in, const Rat& hi_in, const Rat& dom_lo,
                                 const Rat& dom_hi) {
  // 0 up to lo_in, affine to 1 at hi_in, 1 beyond; domain [dom_lo, dom_hi]
  std::vector<std::pair<Rat, Rat>> pts;
  if (dom_lo < lo_in) pts.emplace_back(dom_lo, Rat(0));
  pts.emplace_back(lo_in, Rat(0));
  pts.emplace_back(hi_in, Rat(1));
  if (dom_hi > hi_in) pts.emplace_back(dom_hi, Rat(1));
  return PLFunction1::from_samples(std::move(pts));
}

// |coord| as a two-cell complex on a rectangle.
inline PLFunction2 abs_coord_complex(const Rect& r, bool use_u) {
  std::vector<Cell> cells;
  if (use_u) {
    cells.push_back({{{r.ulo, r.vlo}, {0, r.vlo}, {0, r.vhi}, {r.ulo, r.vhi}},
                     AffineFunc(rat(-1), rat(0), rat(0))});
    cells.push_back({{{0, r.vlo}, {r.uhi, r.vlo}, {r.uhi, r.vhi}, {0, r.vhi}},
                     AffineFunc(rat(1), rat(0), rat(0))});
  } else {
    cells.push_back({{{r.ulo, r.vlo}, {r.uhi, r.vlo}, {r.uhi, 0}, {r.ulo, 0}},
                     AffineFunc(rat(0), rat(-1), rat(0))});
    cells.push_back({{{r.ulo, 0}, {r.uhi, 0}, {r.uhi, r.vhi}, {r.ulo, r.vhi}},
                     AffineFunc(rat(0), rat(1), rat(0))});
  }
  return PLFunction2(r, std::move(cells));
}

inline PLFunction2 linear_complex(const Rect& r, const AffineFunc& f) {
  std::vector<Cell> cells{{{{r.ulo, r.vlo}, {r.uhi, r.vlo}, {r.uhi, r.vhi}, {r.ulo, r.vhi}},
                           f}};
  return PLFunction2(r, std::move(cells));
}

inline PLFunction2 sup_norm_complex(const Rect& r) {
  // max(|u|,|v|) cut by the diagonals
  std::vector<Cell> cells;
  Rat R = r.uhi;  // assumes symmetric square
  cells.push_back({{{R, -R}, {R, R}, {0, 0}}, AffineFunc(rat(1), rat(0), rat(0))});
  cells.push_back({{{R, R}, {-R, R}, {0, 0}}, AffineFunc(rat(0), rat(1), rat(0))});
  cells.push_back({{{-R, R}, {-R, -R}, {0, 0}}, AffineFunc(rat(-1), rat(0), rat(0))});
  cells.push_back({{{-R, -R}, {R, -R}, {0, 0}}, AffineFunc(rat(0), rat(-1), rat(0))});
  return PLFunction2(r, std::move(cells));
}

}  // namespace cover_detail

// lambda_1 on a face chart: 1 on ||x||_inf <= 2, affine ramp to 0 at 5/2,
// 0 out to the boundary. Level sets are squares parallel to the sides.
inline PLFunction2 face_lambda1_complex() {
  Rect r{rat(-3), rat(3), rat(-3), rat(3)};
  PLFunction2 sup = cover_detail::sup_norm_complex(r);
  PLFunction1 prof = PLFunction1::from_samples(
      {{rat(0), rat(1)}, {rat(2), rat(1)}, {rat(5, 2), rat(0)}, {rat(3), rat(0)}});
  return compose_profile(sup, prof);
}

inline Rect strip_rect() { return Rect{rat(-5, 8), rat(5, 8), rat(3, 16), rat(13, 16)}; }

inline PLFunction2 strip_lambda1_complex() {
  Rect r = strip_rect();
  PLFunction2 absa = cover_detail::abs_coord_complex(r, true);
  PLFunction1 prof = PLFunction1::from_samples(
      {{rat(0), rat(0)}, {rat(1, 4), rat(0)}, {rat(1, 2), rat(1)}, {rat(5, 8), rat(1)}});
  return compose_profile(absa, prof);
}

inline PLFunction2 strip_g_complex() {
  return add_constant(scale_values(strip_lambda1_complex(), rat(-1)), rat(1));
}

inline PLFunction2 strip_M_complex() {
  Rect r = strip_rect();
  PLFunction2 b = cover_detail::linear_complex(r, AffineFunc(rat(0), rat(1), rat(0)));
  PLFunction1 prof = PLFunction1::from_samples({{rat(3, 16), rat(0)},
                                                {rat(1, 4), rat(0)},
                                                {rat(3, 8), rat(1)},
                                                {rat(5, 8), rat(1)},
                                                {rat(3, 4), rat(0)},
                                                {rat(13, 16), rat(0)}});
  return compose_profile(b, prof);
}

inline PLFunction2 strip_lambda2_complex() {
  return combine(strip_g_complex(), strip_M_complex(), CombineOp::Min);
}

inline PLFunction2 strip_lambda3_complex() {
  PLFunction2 sum = combine(strip_lambda1_complex(), strip_lambda2_complex(),
                            CombineOp::Add);
  return add_constant(scale_values(sum, rat(-1)), rat(1));
}

inline Rect pad_rect() { return Rect{rat(-5, 2), rat(5, 2), rat(-5, 2), rat(5, 2)}; }

// Collar coordinate of the T-shaped tripod: distance (sup-metric flavoured)
// to the three legs +u, +v, -u.
inline PLFunction2 pad_d_complex() {
  Rect r = pad_rect();
  PLFunction2 absu = cover_detail::abs_coord_complex(r, true);
  PLFunction2 absv = cover_detail::abs_coord_complex(r, false);
  PLFunction2 negu = cover_detail::linear_complex(r, AffineFunc(rat(-1), rat(0), rat(0)));
  PLFunction2 posu = cover_detail::linear_complex(r, AffineFunc(rat(1), rat(0), rat(0)));
  PLFunction2 negv = cover_detail::linear_complex(r, AffineFunc(rat(0), rat(-1), rat(0)));
  PLFunction2 leg0 = combine(absv, negu, CombineOp::Max);
  PLFunction2 leg1 = combine(absu, negv, CombineOp::Max);
  PLFunction2 leg2 = combine(absv, posu, CombineOp::Max);
  return combine(combine(leg0, leg1, CombineOp::Min), leg2, CombineOp::Min);
}

inline PLFunction2 pad_lambda1_complex() {
  PLFunction1 prof = PLFunction1::from_samples(
      {{rat(0), rat(0)}, {rat(1, 2), rat(0)}, {rat(1), rat(1)}, {rat(4), rat(1)}});
  return compose_profile(pad_d_complex(), prof);
}

// Sum of the three arm tapers: clamp((3 ell - 4)/2) with ell the arm length.
inline PLFunction2 pad_M_complex() {
  Rect r = pad_rect();
  PLFunction1 prof = PLFunction1::from_samples(
      {{rat(-4), rat(0)}, {rat(4, 3), rat(0)}, {rat(2), rat(1)}, {rat(4), rat(1)}});
  PLFunction2 m0 = compose_profile(
      cover_detail::linear_complex(r, AffineFunc(rat(1), rat(0), rat(0))), prof);
  PLFunction2 m1 = compose_profile(
      cover_detail::linear_complex(r, AffineFunc(rat(0), rat(1), rat(0))), prof);
  PLFunction2 m2 = compose_profile(
      cover_detail::linear_complex(r, AffineFunc(rat(-1), rat(0), rat(0))), prof);
  return combine(combine(m0, m1, CombineOp::Add), m2, CombineOp::Add);
}

inline PLFunction2 pad_lambda2_complex() {
  PLFunction2 g = add_constant(scale_values(pad_lambda1_complex(), rat(-1)), rat(1));
  return combine(g, pad_M_complex(), CombineOp::Min);
}

inline PLFunction2 pad_lambda3_complex() {
  PLFunction2 sum = combine(pad_lambda1_complex(), pad_lambda2_complex(),
                            CombineOp::Add);
  return add_constant(scale_values(sum, rat(-1)), rat(1));
}

// Shared immutable template complexes.
struct CoverTemplates {
  PLFunction2 face_l1 = face_lambda1_complex();
  PLFunction2 strip_l1 = strip_lambda1_complex();
  PLFunction2 strip_l2 = strip_lambda2_complex();
  PLFunction2 strip_l3 = strip_lambda3_complex();
  PLFunction2 pad_l1 = pad_lambda1_complex();
  PLFunction2 pad_l2 = pad_lambda2_complex();
  PLFunction2 pad_l3 = pad_lambda3_complex();

  static const CoverTemplates& get() {
    static CoverTemplates t;
    return t;
  }
};

// The three-set cover of the ribbon-graph surface with its subordinate
// partition, realized chartwise. Components: one per face (O1), one per
// edge (O2, the U_e boxes), one per vertex (O3, the tripod pads).
class CoverPartition {
 public:
  CoverPartition(RibbonGraph graph, Rat delta)
      : g_(std::move(graph)), delta_(std::move(delta)) {
    if (!(delta_ > 0 && delta_ < rat(1, 4)))
      throw GeometryError("build_cover requires 0 < delta < 1/4");
    if (!g_.connected()) throw GeometryError("surface must be connected");
    build_side_tables();
  }

  const RibbonGraph& graph() const { return g_; }
  const Rat& delta() const { return delta_; }

  int face_sides(int f) const { return static_cast<int>(g_.faces()[f].size()); }

  // ---- chart geometry ----------------------------------------------------

  static Rect face_chart() { return Rect{rat(-3), rat(3), rat(-3), rat(3)}; }
  static Rect strip_chart() { return strip_rect(); }
  static Rect pad_chart() { return pad_rect(); }

  // Map a strip point to the face chart on one side (+1: a > 0, -1: a < 0).
  // Side +1 carries the face of the edge's first half-edge.
  Pt2 strip_to_face(int e, int side, const Pt2& ab) const {
    const SideInfo& si = side_info(e, side);
    Rat sigma = 1 - 2 * rat_abs(ab.u) / 3;
    Rat t = arc_time(si, ab.v);
    Pt2 p = square_perimeter_point(t, rat(3));
    return Pt2(p.u * sigma, p.v * sigma);
  }

  // Which face lies on the given side of the strip.
  int face_on_side(int e, int side) const { return side_info(e, side).face; }

  // Map a strip point near one end (end 0: b near 3/16; end 1: b near 13/16)
  // to that vertex's pad chart. Defined for arm length ell in [1, 5/2].
  Pt2 strip_to_pad(int e, int end, const Pt2& ab) const {
    auto [h_here, vtx, arm] = end_info(e, end);
    Rat bhat = (end == 0) ? ab.v : (1 - ab.v);
    Rat ell = 16 * bhat / 3;
    Rat w = 2 * ab.u * (end == 0 ? Rat(1) : Rat(-1));
    return arm_to_pad(arm, ell, w);
  }

  std::optional<Pt2> pad_from_strip(int e, int end, const Pt2& ab) const {
    Rat bhat = (end == 0) ? ab.v : (1 - ab.v);
    Rat ell = 16 * bhat / 3;
    if (ell > rat(5, 2)) return std::nullopt;
    if (rat_abs(2 * ab.u) > ell) return std::nullopt;  // outside this arm's cone
    return strip_to_pad(e, end, ab);
  }

  int vertex_at_end(int e, int end) const { return std::get<1>(end_info(e, end)); }

  // ---- multi-chart points -------------------------------------------------

  MultiPt strip_point(int e, const Pt2& ab) const {
    MultiPt p;
    p.coords[{ChartKind::Strip, e}] = ab;
    if (ab.u != 0) {
      int side = ab.u > 0 ? +1 : -1;
      p.coords[{ChartKind::Face, face_on_side(e, side)}] = strip_to_face(e, side, ab);
    } else {
      // on the edge: both faces see the point on their boundary; skip
    }
    for (int end = 0; end < 2; ++end) {
      if (auto q = pad_from_strip(e, end, ab))
        p.coords[{ChartKind::Pad, vertex_at_end(e, end)}] = *q;
    }
    return p;
  }

  MultiPt face_point(int f, const Pt2& xy) const {
    MultiPt p;
    p.coords[{ChartKind::Face, f}] = xy;
    Rat sup = rat_max(rat_abs(xy.u), rat_abs(xy.v));
    if (sup > 2 && sup < 3) {
      // collar band: locate the arc and convert into the strip if possible
      Rat sigma = sup / 3;
      Pt2 bdry(xy.u / sigma, xy.v / sigma);
      Rat t = square_perimeter_frac(bdry, rat(3));
      int n = face_sides(f);
      Rat scaled = t * n;
      BigInt fl = rat_floor(scaled);
      int j = static_cast<int>(fl.convert_to<long long>()) % n;
      Rat within = scaled - Rat(fl);
      const FaceArc& arc = face_arcs_[f][j];
      Rat b = arc.forward ? within : 1 - within;
      Rat a = (Rat(1) - sigma) * Rat(3, 2) * (arc.side > 0 ? 1 : -1);
      Pt2 ab(a, b);
      Rect sr = strip_chart();
      if (b >= sr.vlo && b <= sr.vhi && rat_abs(a) <= sr.uhi &&
          rat_abs(a) <= 8 * b / 3 && rat_abs(a) <= 8 * (1 - b) / 3) {
        MultiPt sp = strip_point(arc.edge, ab);
        for (auto& [cid, q] : sp.coords) p.coords.insert({cid, q});
      }
    }
    return p;
  }

  MultiPt pad_point(int v, const Pt2& uv) const {
    MultiPt p;
    p.coords[{ChartKind::Pad, v}] = uv;
    // convert into strips along each arm where the cone condition holds
    for (int arm = 0; arm < 3; ++arm) {
      auto [ell, w] = pad_to_arm(arm, uv);
      if (ell >= 1 && ell <= rat(5, 2) && rat_abs(w) <= rat_min(ell, rat(5, 4))) {
        int h = g_.rotation(v)[arm];
        int e = g_.edge_of(h);
        bool first = (g_.edge(e).first == h);
        int end = first ? 0 : 1;
        Rat bhat = 3 * ell / 16;
        Rat b = (end == 0) ? bhat : 1 - bhat;
        Rat a = w / 2 * (end == 0 ? Rat(1) : Rat(-1));
        Rect sr = strip_chart();
        if (b >= sr.vlo && b <= sr.vhi && rat_abs(a) <= sr.uhi) {
          MultiPt sp = strip_point(e, Pt2(a, b));
          for (auto& [cid, q] : sp.coords) p.coords.insert({cid, q});
        }
      }
    }
    return p;
  }

  // ---- partition values ----------------------------------------------------

  Rat lambda(int i, const MultiPt& p) const {
    const auto& T = CoverTemplates::get();
    // prefer the chart that owns the formula for lambda_i
    for (auto& [cid, xy] : p.coords) {
      if (cid.kind == ChartKind::Strip)
        return (i == 1 ? T.strip_l1 : i == 2 ? T.strip_l2 : T.strip_l3).eval(xy);
    }
    for (auto& [cid, xy] : p.coords) {
      if (cid.kind == ChartKind::Pad)
        return (i == 1 ? T.pad_l1 : i == 2 ? T.pad_l2 : T.pad_l3).eval(xy);
    }
    for (auto& [cid, xy] : p.coords) {
      if (cid.kind == ChartKind::Face)
        return i == 1 ? T.face_l1.eval(xy) : Rat(0);
    }
    throw DomainError("point carries no chart coordinates");
  }

  // All chart views of lambda_i at p; used by the overlap-consistency check.
  std::vector<std::pair<ChartId, Rat>> lambda_views(int i, const MultiPt& p) const {
    const auto& T = CoverTemplates::get();
    std::vector<std::pair<ChartId, Rat>> out;
    for (auto& [cid, xy] : p.coords) {
      switch (cid.kind) {
        case ChartKind::Strip:
          out.push_back({cid, (i == 1   ? T.strip_l1
                               : i == 2 ? T.strip_l2
                                        : T.strip_l3)
                                  .eval(xy)});
          break;
        case ChartKind::Pad:
          out.push_back({cid, (i == 1   ? T.pad_l1
                               : i == 2 ? T.pad_l2
                                        : T.pad_l3)
                                  .eval(xy)});
          break;
        case ChartKind::Face:
          if (i == 1) {
            out.push_back({cid, T.face_l1.eval(xy)});
          } else {
            // faces carry no lambda_2/lambda_3 structure of their own; only
            // report zero where the point is visibly outside the collar
            Rat sup = rat_max(rat_abs(xy.u), rat_abs(xy.v));
            if (sup <= 2) out.push_back({cid, Rat(0)});
          }
          break;
      }
    }
    return out;
  }

  // O_i membership (the open cover sets), chart-dispatched.
  bool in_cover_set(int i, const MultiPt& p) const {
    if (const Pt2* xy = first_of(p, ChartKind::Strip)) {
      Rat absa = rat_abs(xy->u);
      Rat db = rat_abs(xy->v - rat(1, 2));
      if (i == 1) return absa > rat(1, 4);
      if (i == 2) return absa < rat(1, 2) && db < rat(1, 4);
      return absa < rat(1, 2) && db > rat(1, 8);  // N_delta minus X
    }
    if (const Pt2* xy = first_of(p, ChartKind::Pad)) {
      const auto& T = CoverTemplates::get();
      Rat d = pad_d(*xy);
      if (i == 1) return d > rat(1, 2);
      if (i == 2) {
        // inside some U_e: arm length past the U_e start and inside the collar
        return T.pad_l2.eval(*xy) > 0 || pad_in_Ue(*xy);
      }
      return d < 1 && !pad_in_X(*xy);
    }
    if (const Pt2* xy = first_of(p, ChartKind::Face)) {
      Rat sup = rat_max(rat_abs(xy->u), rat_abs(xy->v));
      if (i == 1) return sup < rat(5, 2);
      return false;  // deep face territory meets neither O2 nor O3
    }
    throw DomainError("point carries no chart coordinates");
  }

  // ---- components -----------------------------------------------------------

  struct Component {
    int cover_set;  // 1, 2, 3
    ChartId chart;
    Pt2 center;
    Pt2 transversal_end;
    const PLFunction2* bump;  // restriction of lambda_i in chart coordinates
  };

  std::vector<Component> components() const {
    const auto& T = CoverTemplates::get();
    std::vector<Component> out;
    for (int f = 0; f < g_.num_faces(); ++f)
      out.push_back({1, {ChartKind::Face, f}, Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)),
                     &T.face_l1});
    for (int e = 0; e < g_.num_edges(); ++e)
      out.push_back({2, {ChartKind::Strip, e}, Pt2(rat(0), rat(1, 2)),
                     Pt2(rat(5, 8), rat(1, 2)), &T.strip_l2});
    for (int v = 0; v < g_.num_vertices(); ++v)
      out.push_back({3, {ChartKind::Pad, v}, Pt2(rat(0), rat(0)),
                     Pt2(rat(5, 2), rat(0)), &T.pad_l3});
    return out;
  }

  MultiPt component_center(const Component& c) const {
    switch (c.chart.kind) {
      case ChartKind::Face: return face_point(c.chart.index, c.center);
      case ChartKind::Strip: return strip_point(c.chart.index, c.center);
      default: return pad_point(c.chart.index, c.center);
    }
  }

  // The quoted U_e coordinates of a strip point.
  Pt2 ue_coordinates(const Pt2& ab) const {
    return Pt2(2 * delta_ * ab.u, 4 * (ab.v - rat(1, 2)));
  }

 private:
  struct SideInfo {
    int face = -1;
    int arc = 0;      // position in the face cycle
    bool forward = true;  // b increases along the arc parameter
  };
  struct FaceArc {
    int edge;
    int side;  // +1 or -1
    bool forward;
  };

  static const Pt2* first_of(const MultiPt& p, ChartKind k) {
    for (auto& [cid, xy] : p.coords)
      if (cid.kind == k) return &xy;
    return nullptr;
  }

  static Rat pad_d(const Pt2& x) {
    Rat leg0 = rat_max(rat_abs(x.v), -x.u);
    Rat leg1 = rat_max(rat_abs(x.u), -x.v);
    Rat leg2 = rat_max(rat_abs(x.v), x.u);
    return rat_min(rat_min(leg0, leg1), leg2);
  }

  static bool pad_in_Ue(const Pt2& x) {
    // arm length beyond 4/3 within the collar corresponds to |y_Ue| < 1
    auto ell_of = [&](int arm) {
      if (arm == 0) return x.u;
      if (arm == 1) return x.v;
      return -x.u;
    };
    auto w_of = [&](int arm) { return arm == 1 ? x.u : x.v; };
    for (int arm = 0; arm < 3; ++arm)
      if (ell_of(arm) > rat(4, 3) && rat_abs(w_of(arm)) < 1) return true;
    return false;
  }

  static bool pad_in_X(const Pt2& x) {
    // X starts at arm length 2 (the X wall); the pad ends there, so only
    // the walls themselves qualify
    auto ell_of = [&](int arm) {
      if (arm == 0) return x.u;
      if (arm == 1) return x.v;
      return -x.u;
    };
    auto w_of = [&](int arm) { return arm == 1 ? x.u : x.v; };
    for (int arm = 0; arm < 3; ++arm)
      if (ell_of(arm) >= 2 && rat_abs(w_of(arm)) < 1) return true;
    return false;
  }

  static Pt2 arm_to_pad(int arm, const Rat& ell, const Rat& w) {
    switch (arm) {
      case 0: return Pt2(ell, w);
      case 1: return Pt2(-w, ell);
      default: return Pt2(-ell, -w);
    }
  }

  static std::pair<Rat, Rat> pad_to_arm(int arm, const Pt2& uv) {
    switch (arm) {
      case 0: return {uv.u, uv.v};
      case 1: return {uv.v, -uv.u};
      default: return {-uv.u, -uv.v};
    }
  }

  void build_side_tables() {
    side_.assign(g_.num_edges() * 2, SideInfo{});
    face_arcs_.assign(g_.num_faces(), {});
    for (int f = 0; f < g_.num_faces(); ++f)
      face_arcs_[f].resize(g_.faces()[f].size());
    for (int e = 0; e < g_.num_edges(); ++e) {
      auto [h0, h1] = g_.edge(e);
      // side +1 (a > 0): the face whose cycle contains h0
      set_side(e, +1, h0);
      set_side(e, -1, h1);
    }
  }

  void set_side(int e, int side, int h) {
    int f = g_.face_of(h);
    int arc = g_.index_in_face(h);
    bool h_is_first = (g_.edge(e).first == h);
    // b runs along the first half-edge's direction; the arc parameter runs
    // along h's direction
    SideInfo si;
    si.face = f;
    si.arc = arc;
    si.forward = h_is_first;
    side_[e * 2 + (side > 0 ? 0 : 1)] = si;
    face_arcs_[f][arc] = FaceArc{e, side, si.forward};
  }

  const SideInfo& side_info(int e, int side) const {
    return side_[e * 2 + (side > 0 ? 0 : 1)];
  }

  Rat arc_time(const SideInfo& si, const Rat& b) const {
    int n = static_cast<int>(face_arcs_[si.face].size());
    Rat within = si.forward ? b : 1 - b;
    return (Rat(si.arc) + within) / n;
  }

  // (half-edge at this end, vertex, arm slot)
  std::tuple<int, int, int> end_info(int e, int end) const {
    auto [h0, h1] = g_.edge(e);
    int h = (end == 0) ? h0 : h1;
    int v = g_.vertex_of(h);
    const auto& rot = g_.rotation(v);
    int arm = 0;
    for (int s = 0; s < 3; ++s)
      if (rot[s] == h) arm = s;
    return {h, v, arm};
  }

  RibbonGraph g_;
  Rat delta_;
  std::vector<SideInfo> side_;
  std::vector<std::vector<FaceArc>> face_arcs_;
};

inline CoverPartition build_cover(RibbonGraph g, const Rat& delta) {
  return CoverPartition(std::move(g), delta);
}

struct PartitionReport {
  int samples_checked = 0;
  int sum_failures = 0;
  int overlap_failures = 0;
  int subordination_failures = 0;
  std::vector<std::pair<std::string, bool>> component_certs;
  bool pass = false;

  std::string to_text() const {
    std::ostringstream os;
    os << "samples: " << samples_checked << "\n"
       << "sum_failures: " << sum_failures << "\n"
       << "overlap_failures: " << overlap_failures << "\n"
       << "subordination_failures: " << subordination_failures << "\n";
    for (auto& [name, ok] : component_certs)
      os << "component " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
    os << "overall: " << (pass ? "pass" : "FAIL") << "\n";
    return os.str();
  }
};

// Rational sample points for one chart of the cover, filtered to the chart
// domains (strips keep their corner trim).
inline std::vector<MultiPt> chart_samples(const CoverPartition& cp, const ChartId& cid,
                                          int per_side) {
  std::vector<MultiPt> out;
  if (cid.kind == ChartKind::Face) {
    for (int i = 1; i < per_side; ++i)
      for (int j = 1; j < per_side; ++j) {
        Pt2 xy(rat(-3) + Rat(6 * i, per_side), rat(-3) + Rat(6 * j, per_side));
        Rat sup = rat_max(rat_abs(xy.u), rat_abs(xy.v));
        if (sup >= 3) continue;
        MultiPt p = cp.face_point(cid.index, xy);
        // keep points that are either deep or convertible into a strip
        if (sup <= 2 || p.coords.size() > 1) out.push_back(std::move(p));
      }
  } else if (cid.kind == ChartKind::Strip) {
    Rect r = CoverPartition::strip_chart();
    for (int i = 1; i < per_side; ++i)
      for (int j = 1; j < per_side; ++j) {
        Pt2 ab(r.ulo + Rat(i) * (r.uhi - r.ulo) / per_side,
               r.vlo + Rat(j) * (r.vhi - r.vlo) / per_side);
        if (rat_abs(ab.u) > 8 * ab.v / 3) continue;
        if (rat_abs(ab.u) > 8 * (1 - ab.v) / 3) continue;
        out.push_back(cp.strip_point(cid.index, ab));
      }
  } else {
    Rect r = CoverPartition::pad_chart();
    for (int i = 1; i < per_side; ++i)
      for (int j = 1; j < per_side; ++j) {
        Pt2 uv(r.ulo + Rat(i) * (r.uhi - r.ulo) / per_side,
               r.vlo + Rat(j) * (r.vhi - r.vlo) / per_side);
        out.push_back(cp.pad_point(cid.index, uv));
      }
  }
  return out;
}

inline std::vector<ChartId> all_charts(const CoverPartition& cp) {
  std::vector<ChartId> ids;
  for (int f = 0; f < cp.graph().num_faces(); ++f) ids.push_back({ChartKind::Face, f});
  for (int e = 0; e < cp.graph().num_edges(); ++e) ids.push_back({ChartKind::Strip, e});
  for (int v = 0; v < cp.graph().num_vertices(); ++v) ids.push_back({ChartKind::Pad, v});
  return ids;
}

// Checks: (i) lambda_1+lambda_2+lambda_3 = 1 exactly at every sample,
// including agreement of all chart views on overlaps; (ii) subordination
// (lambda_i vanishes outside O_i); (iii) each component restriction passes
// the bump certificate in its chart.
inline PartitionReport verify_partition(const CoverPartition& cp, int per_side = 33) {
  PartitionReport rep;
  for (const auto& cid : all_charts(cp)) {
    for (const auto& p : chart_samples(cp, cid, per_side)) {
      ++rep.samples_checked;
      Rat sum(0);
      for (int i = 1; i <= 3; ++i) {
        auto views = cp.lambda_views(i, p);
        if (!views.empty()) {
          for (size_t k = 1; k < views.size(); ++k)
            if (views[k].second != views[0].second) ++rep.overlap_failures;
        }
        Rat li = cp.lambda(i, p);
        sum += li;
        if (li != 0 && !cp.in_cover_set(i, p)) ++rep.subordination_failures;
      }
      if (sum != 1) ++rep.sum_failures;
    }
  }
  for (const auto& comp : cp.components()) {
    auto cert = verify_bump(*comp.bump, comp.center, comp.transversal_end);
    rep.component_certs.push_back({chart_name(comp.chart), cert.pass});
  }
  bool certs_ok = true;
  for (auto& [_, ok] : rep.component_certs) certs_ok = certs_ok && ok;
  rep.pass = rep.sum_failures == 0 && rep.overlap_failures == 0 &&
             rep.subordination_failures == 0 && certs_ok;
  return rep;
}

// Marked base points for exceptional fibers, one per component, each lying
// in exactly one cover set (component centers).
struct ExceptionalPlacement {
  struct Mark {
    long p, q;
    int component;  // index into CoverPartition::components()
  };
  std::vector<Mark> marks;
};

inline ExceptionalPlacement place_exceptional(
    const CoverPartition& cp, const std::vector<std::tuple<long, long, int>>& requests) {
  auto comps = cp.components();
  ExceptionalPlacement out;
  std::vector<bool> used(comps.size(), false);
  for (auto& [p, q, comp_idx] : requests) {
    if (comp_idx < 0 || comp_idx >= static_cast<int>(comps.size()))
      throw PlacementError("no such component");
    if (used[comp_idx])
      throw PlacementError("component already holds an exceptional fiber");
    const auto& comp = comps[comp_idx];
    FiberedChart fc(p, q);  // validates gcd
    MultiPt center = cp.component_center(comp);
    // the center must lie in exactly one cover set, with lambda = 1 there
    int sets = 0;
    for (int i = 1; i <= 3; ++i)
      if (cp.in_cover_set(i, center)) ++sets;
    if (sets != 1) throw PlacementError("center lies in more than one cover set");
    if (cp.lambda(comp.cover_set, center) != 1)
      throw PlacementError("lambda is not 1 at the component center");
    if (q > 1) {
      if (comp.chart.kind == ChartKind::Face) {
        int n = cp.face_sides(comp.chart.index);
        if (n % q != 0)
          throw PlacementError("face side count " + std::to_string(n) +
                               " is not divisible by q = " + std::to_string(q));
      } else if (comp.chart.kind == ChartKind::Strip) {
        if (q != 2)
          throw PlacementError("edge components support only q = 2 exceptional fibers");
      } else {
        throw PlacementError("pad components do not hold exceptional fibers (q > 1)");
      }
    }
    used[comp_idx] = true;
    out.marks.push_back({p, q, comp_idx});
  }
  return out;
}

// Placement by location: the point must sit at lambda_i = 1 for exactly one
// set i; otherwise the one-set-only rule is violated.
inline int locate_exceptional(const CoverPartition& cp, const MultiPt& x) {
  int found = -1;
  auto comps = cp.components();
  int insets = 0;
  for (int i = 1; i <= 3; ++i)
    if (cp.in_cover_set(i, x)) ++insets;
  if (insets != 1)
    throw PlacementError("point is contained in " + std::to_string(insets) +
                         " cover sets, not exactly one");
  for (size_t c = 0; c < comps.size(); ++c) {
    const Pt2* xy = x.in(comps[c].chart);
    if (!xy) continue;
    if (cp.lambda(comps[c].cover_set, x) == 1 &&
        cp.in_cover_set(comps[c].cover_set, x))
      found = static_cast<int>(c);
  }
  if (found < 0) throw PlacementError("no component has lambda = 1 at the point");
  return found;
}

}  // namespace plfiber
