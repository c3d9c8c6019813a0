#pragma once

#include <algorithm>
#include <vector>

#include "plfiber/errors.hpp"
#include "plfiber/pl2.hpp"

namespace plfiber {

// Piecewise-affine homeomorphism given by convex source pieces with one
// affine map each; pieces agree on shared boundaries.
class CellwiseAffineMap {
 public:
  struct Piece {
    Polygon src;
    AffineMap2 map;
  };

  CellwiseAffineMap() = default;
  explicit CellwiseAffineMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    for (auto& p : pieces_) {
      p.src = normalize_polygon(p.src);
      if (p.src.empty()) throw GeometryError("degenerate map piece");
    }
  }

  static CellwiseAffineMap identity(const Polygon& domain) {
    return CellwiseAffineMap({{domain, AffineMap2::identity()}});
  }

  const std::vector<Piece>& pieces() const { return pieces_; }

  Pt2 apply(const Pt2& x) const {
    bool found = false;
    Pt2 out;
    for (const auto& p : pieces_) {
      if (point_in_convex(p.src, x)) {
        Pt2 y = p.map.apply(x);
        if (!found) {
          out = y;
          found = true;
        } else if (!(y == out)) {
          throw ContinuityError("cellwise map pieces disagree on shared boundary");
        }
      }
    }
    if (!found) throw DomainError("point outside cellwise map domain");
    return out;
  }

  Pt2 apply_inverse(const Pt2& y) const {
    bool found = false;
    Pt2 out;
    for (const auto& p : pieces_) {
      Pt2 x = p.map.inverse().apply(y);
      if (point_in_convex(p.src, x)) {
        if (!found) {
          out = x;
          found = true;
        } else if (!(x == out)) {
          throw ContinuityError("cellwise map inverse is not single-valued");
        }
      }
    }
    if (!found) throw DomainError("point outside cellwise map image");
    return out;
  }

  CellwiseAffineMap inverse() const {
    std::vector<Piece> inv;
    inv.reserve(pieces_.size());
    for (const auto& p : pieces_) {
      Polygon img;
      img.reserve(p.src.size());
      for (const auto& q : p.src) img.push_back(p.map.apply(q));
      inv.push_back({normalize_polygon(img), p.map.inverse()});
    }
    return CellwiseAffineMap(std::move(inv));
  }

 private:
  std::vector<Piece> pieces_;
};

// Pullback f o m as an explicit complex: each piece maps affinely, so cells
// of f pull back to convex cells.
inline PLFunction2 pullback_through(const PLFunction2& f, const CellwiseAffineMap& m,
                                    const Rect& chart) {
  std::vector<Cell> out;
  for (const auto& piece : m.pieces()) {
    for (const auto& c : f.cells()) {
      AffineMap2 inv = piece.map.inverse();
      Polygon pre;
      pre.reserve(c.poly.size());
      for (const auto& p : c.poly) pre.push_back(inv.apply(p));
      Polygon clipped = clip_convex(normalize_polygon(pre), piece.src);
      if (clipped.empty() || polygon_area2(clipped) == 0) continue;
      out.push_back({std::move(clipped), push_functional(c.f, inv)});
    }
  }
  return PLFunction2(chart, std::move(out));
}

// Point on the boundary of [-R,R]^2 at counterclockwise perimeter fraction
// t in [0,1), measured from the corner (R,-R).
inline Pt2 square_perimeter_point(Rat t, const Rat& R) {
  t -= Rat(rat_floor(t));
  Rat s = t * 8 * R;  // arc length along the perimeter
  if (s <= 2 * R) return Pt2(R, -R + s);
  s -= 2 * R;
  if (s <= 2 * R) return Pt2(R - s, R);
  s -= 2 * R;
  if (s <= 2 * R) return Pt2(-R, R - s);
  s -= 2 * R;
  return Pt2(-R + s, -R);
}

// Perimeter fraction of a boundary point of [-R,R]^2.
inline Rat square_perimeter_frac(const Pt2& p, const Rat& R) {
  if (p.u == R && p.v < R) return (p.v + R) / (8 * R);
  if (p.v == R && p.u > -R) return (2 * R + (R - p.u)) / (8 * R);
  if (p.u == -R && p.v > -R) return (4 * R + (R - p.v)) / (8 * R);
  if (p.v == -R && p.u < R) return (6 * R + (p.u + R)) / (8 * R);
  throw DomainError("point not on square boundary");
}

// Exact piecewise-linear homeomorphism of [-R,R]^2 of order q realizing the
// rotation by p/q of the boundary fan over n equally spaced perimeter points
// (q must divide n). Fixes the center, preserves the sup-norm gauge levels,
// and cyclically shifts the n boundary arcs by p*n/q positions.
inline CellwiseAffineMap fan_rotation(int n, int q, int p, const Rat& R) {
  if (q < 1 || n % q != 0) throw DomainError("fan_rotation requires q | n");
  Rat shift = Rat(p) * Rat(n / q) / Rat(n);  // p/q as a perimeter fraction
  // Breakpoint fractions: the n fan points, plus every backward shift of the
  // corners so each refined arc and its image stay within single sides.
  std::vector<Rat> fr;
  for (int j = 0; j < n; ++j) fr.push_back(Rat(j) / n);
  for (int c = 0; c < 4; ++c)
    for (int k = 0; k < q; ++k) {
      Rat t = Rat(c) / 4 - Rat(k) * shift;
      t -= Rat(rat_floor(t));
      fr.push_back(t);
    }
  std::sort(fr.begin(), fr.end());
  fr.erase(std::unique(fr.begin(), fr.end()), fr.end());
  std::vector<CellwiseAffineMap::Piece> pieces;
  Pt2 origin(rat(0), rat(0));
  for (size_t i = 0; i < fr.size(); ++i) {
    Rat t0 = fr[i];
    Rat t1 = (i + 1 < fr.size()) ? fr[i + 1] : Rat(1);
    Pt2 a = square_perimeter_point(t0, R);
    Pt2 b = square_perimeter_point(t1, R);
    Pt2 a2 = square_perimeter_point(t0 + shift, R);
    Pt2 b2 = square_perimeter_point(t1 + shift, R);
    pieces.push_back(
        {{origin, a, b}, AffineMap2::from_triangles(origin, a, b, origin, a2, b2)});
  }
  return CellwiseAffineMap(std::move(pieces));
}

}  // namespace plfiber
