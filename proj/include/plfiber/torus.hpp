#pragma once

#include <memory>
#include <numeric>
#include <sstream>
#include <vector>

#include "plfiber/bump.hpp"
#include "plfiber/errors.hpp"
#include "plfiber/fan.hpp"
#include "plfiber/pl1.hpp"
#include "plfiber/pl2.hpp"

namespace plfiber {

// Local model of a (p,q) standard fibered torus: the solid torus over the
// square chart, fiber coordinate in turns. A regular fiber crosses the chart
// circle q times, so nu-length of a full chart circle is 1/q.
struct FiberedChart {
  long p = 0;
  long q = 1;
  Rect chart{rat(-3), rat(3), rat(-3), rat(3)};

  FiberedChart() = default;
  FiberedChart(long pp, long qq) : p(pp), q(qq) {
    if (q < 1) throw DomainError("fibered chart needs q >= 1");
    if (std::gcd(std::abs(p), q) != 1) throw DomainError("fibered chart needs gcd(p,q)=1");
  }
};

class BaseMapNode;
using BaseMapPtr = std::shared_ptr<const BaseMapNode>;

class BaseMapNode {
 public:
  enum class Kind { Id, UAffine, Cellwise, ClimbPush, Compose, Inverse };
  virtual ~BaseMapNode() = default;
  virtual Kind kind() const = 0;
  virtual Pt2 eval(const Pt2& x) const = 0;
  virtual Pt2 eval_inverse(const Pt2& y) const = 0;
};

class IdNode final : public BaseMapNode {
 public:
  Kind kind() const override { return Kind::Id; }
  Pt2 eval(const Pt2& x) const override { return x; }
  Pt2 eval_inverse(const Pt2& y) const override { return y; }
};

// (u, v) -> (G(u), v) for strictly increasing G.
class UAffineNode final : public BaseMapNode {
 public:
  explicit UAffineNode(PLFunction1 G) : G_(std::move(G)), Ginv_(G_.inverse()) {
    if (!G_.strictly_increasing()) throw DomainError("base map needs increasing G");
  }
  Kind kind() const override { return Kind::UAffine; }
  Pt2 eval(const Pt2& x) const override { return Pt2(G_.eval(x.u), x.v); }
  Pt2 eval_inverse(const Pt2& y) const override { return Pt2(Ginv_.eval(y.u), y.v); }
  const PLFunction1& G() const { return G_; }

 private:
  PLFunction1 G_, Ginv_;
};

class CellwiseNode final : public BaseMapNode {
 public:
  explicit CellwiseNode(CellwiseAffineMap m) : m_(std::move(m)) {}
  Kind kind() const override { return Kind::Cellwise; }
  Pt2 eval(const Pt2& x) const override { return m_.apply(x); }
  Pt2 eval_inverse(const Pt2& y) const override { return m_.apply_inverse(y); }
  const CellwiseAffineMap& map() const { return m_; }

 private:
  CellwiseAffineMap m_;
};

// Per-line climb push: (u,v) -> (Ainv(A(u) + t*H(u,v)), v). A climbs
// strictly on [lo,hi] and the u-support of H lies inside (lo,hi) with
// max(A + H) <= A(hi), so each line maps the climb window into itself and
// the map is the identity wherever H vanishes.
class ClimbPushNode final : public BaseMapNode {
 public:
  ClimbPushNode(PLFunction1 A, std::shared_ptr<const PLFunction2> H, Rat t, Rat lo, Rat hi)
      : A_(std::move(A)), H_(std::move(H)), t_(std::move(t)), lo_(std::move(lo)),
        hi_(std::move(hi)) {
    if (t_ < 0 || t_ > 1) throw DomainError("climb push needs t in [0,1]");
  }
  Kind kind() const override { return Kind::ClimbPush; }

  Pt2 eval(const Pt2& x) const override {
    Rat h = t_ * H_->eval(x);
    if (h == 0) return x;
    if (x.u < lo_ || x.u > hi_)
      throw GeometryError("climb push: active point outside climb window");
    Rat target = A_.eval(x.u) + h;
    return Pt2(solve_climb(target), x.v);
  }

  Pt2 eval_inverse(const Pt2& y) const override {
    if (y.u < lo_ || y.u > hi_) return y;
    // solve A(u) + t*H(u, y.v) = A(y.u) over the climb window
    PLFunction1 hline = H_->restrict_to_segment(Pt2(lo_, y.v), Pt2(hi_, y.v));
    // reparameterize from [0,1] to [lo,hi] and add A
    std::vector<Rat> us;
    for (const auto& s : hline.breakpoints()) us.push_back(lo_ + s * (hi_ - lo_));
    for (const auto& u : A_.breakpoints())
      if (u >= lo_ && u <= hi_) us.push_back(u);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    std::vector<std::pair<Rat, Rat>> pts;
    pts.reserve(us.size());
    for (const auto& u : us) {
      Rat s = (u - lo_) / (hi_ - lo_);
      pts.emplace_back(u, A_.eval(u) + t_ * hline.eval(s));
    }
    PLFunction1 psi = PLFunction1::from_samples(std::move(pts));
    if (!psi.strictly_increasing())
      throw GeometryError("climb push inverse: profile not strictly increasing");
    Rat a = A_.eval(y.u);
    if (a < psi.values().front() || a > psi.values().back()) return y;
    Rat u = psi.solve(a);
    // the map is the identity off supp H; prefer the fixed point when both solve
    if (t_ * H_->eval(Pt2(u, y.v)) == 0) return y;
    return Pt2(u, y.v);
  }

  const PLFunction1& A() const { return A_; }
  const PLFunction2& H() const { return *H_; }
  const Rat& t() const { return t_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }

 private:
  Rat solve_climb(const Rat& target) const {
    // invert A restricted to [lo,hi]
    const auto& xs = A_.breakpoints();
    const auto& ys = A_.values();
    if (target > A_.eval(hi_) || target < A_.eval(lo_))
      throw GeometryError("climb push exceeds its window");
    Rat best_u = lo_;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      Rat x0 = rat_max(xs[i], lo_), x1 = rat_min(xs[i + 1], hi_);
      if (x0 >= x1) continue;
      Rat y0 = A_.eval(x0), y1 = A_.eval(x1);
      if (y0 <= target && target <= y1 && y0 < y1) {
        return x0 + (target - y0) / (y1 - y0) * (x1 - x0);
      }
      if (target == y0) best_u = x0;
      if (target == y1) best_u = x1;
    }
    return best_u;
  }

  PLFunction1 A_;
  std::shared_ptr<const PLFunction2> H_;
  Rat t_, lo_, hi_;
};

class ComposeNode final : public BaseMapNode {
 public:
  ComposeNode(BaseMapPtr g, BaseMapPtr f) : g_(std::move(g)), f_(std::move(f)) {}
  Kind kind() const override { return Kind::Compose; }
  Pt2 eval(const Pt2& x) const override { return g_->eval(f_->eval(x)); }
  Pt2 eval_inverse(const Pt2& y) const override {
    return f_->eval_inverse(g_->eval_inverse(y));
  }
  const BaseMapPtr& g() const { return g_; }
  const BaseMapPtr& f() const { return f_; }

 private:
  BaseMapPtr g_, f_;
};

class InverseNode final : public BaseMapNode {
 public:
  explicit InverseNode(BaseMapPtr f) : f_(std::move(f)) {}
  Kind kind() const override { return Kind::Inverse; }
  Pt2 eval(const Pt2& x) const override { return f_->eval_inverse(x); }
  Pt2 eval_inverse(const Pt2& y) const override { return f_->eval(y); }
  const BaseMapPtr& f() const { return f_; }

 private:
  BaseMapPtr f_;
};

inline BaseMapPtr base_id() {
  static BaseMapPtr id = std::make_shared<IdNode>();
  return id;
}
inline BaseMapPtr base_uaffine(PLFunction1 G) {
  return std::make_shared<UAffineNode>(std::move(G));
}
inline BaseMapPtr base_cellwise(CellwiseAffineMap m) {
  return std::make_shared<CellwiseNode>(std::move(m));
}
inline BaseMapPtr base_compose(BaseMapPtr g, BaseMapPtr f) {
  if (g->kind() == BaseMapNode::Kind::Id) return f;
  if (f->kind() == BaseMapNode::Kind::Id) return g;
  return std::make_shared<ComposeNode>(std::move(g), std::move(f));
}
inline BaseMapPtr base_inverse(BaseMapPtr f) {
  if (f->kind() == BaseMapNode::Kind::Id) return f;
  return std::make_shared<InverseNode>(std::move(f));
}

// Fiber-shift function as a sum of scaled shapes pulled back through base
// maps: tau(x) = sum coeff_i * shape_i(inner_i(x)), in fiber turns.
struct ShiftTerm {
  Rat coeff;
  std::shared_ptr<const PLFunction2> shape;
  BaseMapPtr inner;
};

class ShiftExpr {
 public:
  ShiftExpr() = default;
  explicit ShiftExpr(std::vector<ShiftTerm> terms) : terms_(std::move(terms)) {}

  static ShiftExpr zero() { return ShiftExpr(); }
  static ShiftExpr scaled_shape(Rat coeff, std::shared_ptr<const PLFunction2> shape) {
    std::vector<ShiftTerm> t;
    t.push_back({std::move(coeff), std::move(shape), base_id()});
    return ShiftExpr(std::move(t));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<ShiftTerm>& terms() const { return terms_; }

  Rat eval(const Pt2& x) const {
    Rat s(0);
    for (const auto& t : terms_) s += t.coeff * t.shape->eval(t.inner->eval(x));
    return s;
  }

  ShiftExpr precompose(const BaseMapPtr& m) const {
    std::vector<ShiftTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      out.push_back({t.coeff, t.shape, base_compose(t.inner, m)});
    return ShiftExpr(std::move(out));
  }

  ShiftExpr plus(const ShiftExpr& o) const {
    std::vector<ShiftTerm> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return ShiftExpr(std::move(out));
  }

  ShiftExpr negated() const {
    std::vector<ShiftTerm> out = terms_;
    for (auto& t : out) t.coeff = -t.coeff;
    return ShiftExpr(std::move(out));
  }

  ShiftExpr scaled(const Rat& s) const {
    if (s == 0) return ShiftExpr();
    std::vector<ShiftTerm> out = terms_;
    for (auto& t : out) t.coeff *= s;
    return ShiftExpr(std::move(out));
  }

 private:
  std::vector<ShiftTerm> terms_;
};

// Fiber-chart homeomorphism (x, theta) -> (base(x), theta + tau(x)); theta
// and tau in fiber turns.
struct SkewHomeo {
  FiberedChart chart;
  BaseMapPtr base = base_id();
  ShiftExpr shift;

  std::pair<Pt2, Rat> apply(const Pt2& x, const Rat& theta) const {
    return {base->eval(x), theta + shift.eval(x)};
  }
};

inline SkewHomeo skew_identity(const FiberedChart& chart) {
  return SkewHomeo{chart, base_id(), ShiftExpr::zero()};
}

// g o f: base composes, shift is f.tau + g.tau o f.base.
inline SkewHomeo compose(const SkewHomeo& g, const SkewHomeo& f) {
  if (g.chart.p != f.chart.p || g.chart.q != f.chart.q)
    throw DomainError("composing skew maps over different charts");
  SkewHomeo r;
  r.chart = f.chart;
  r.base = base_compose(g.base, f.base);
  r.shift = f.shift.plus(g.shift.precompose(f.base));
  return r;
}

inline SkewHomeo inverse(const SkewHomeo& f) {
  SkewHomeo r;
  r.chart = f.chart;
  r.base = base_inverse(f.base);
  r.shift = f.shift.precompose(r.base).negated();
  return r;
}

// b^{-1} a^{-1} b a, reading right to left (apply a first).
inline SkewHomeo commutator(const SkewHomeo& a, const SkewHomeo& b) {
  return compose(inverse(b), compose(inverse(a), compose(b, a)));
}

// a(x,s) = (x, s + 2 pi q k shape(x)): in turn units the shift is q*k*shape.
// The default shape is phi.
inline SkewHomeo make_a(const FiberedChart& chart, const Rat& k,
                        std::shared_ptr<const PLFunction2> shape = nullptr) {
  if (!shape) shape = std::make_shared<PLFunction2>(make_phi());
  SkewHomeo r;
  r.chart = chart;
  r.base = base_id();
  r.shift = ShiftExpr::scaled_shape(Rat(chart.q) * k, std::move(shape));
  return r;
}

// b(u, v, theta) = (F(u), v, theta).
inline SkewHomeo make_b(const FiberedChart& chart) {
  SkewHomeo r;
  r.chart = chart;
  r.base = base_uaffine(make_F());
  r.shift = ShiftExpr::zero();
  return r;
}

struct CommutatorBumpReport {
  bool base_identity = false;
  bool dag_matches_complex = false;
  Rat extremal_turns;       // signed extremal shift value, in fiber turns
  PLFunction2 normalized;   // shift divided by its extremal value
  BumpCertificate cert;
  bool pass = false;
};

// Lemma-level certification: the commutator of make_a(chart,k) and
// make_b(chart) has identity base, shift q*k*(phi - phi o F) with extremal
// magnitude |q k| turns (2 pi |q k| in radians), and the normalized shift is
// a standard bump.
inline CommutatorBumpReport certify_commutator_bump(const FiberedChart& chart,
                                                    const Rat& k, int grid = 41) {
  if (k == 0) throw DomainError("certify_commutator_bump requires k != 0");
  SkewHomeo a = make_a(chart, k);
  SkewHomeo b = make_b(chart);
  SkewHomeo com = commutator(a, b);

  CommutatorBumpReport rep;
  PLFunction2 phi = make_phi();
  PLFunction1 F = make_F();
  PLFunction2 shift_complex =
      combine(phi, pullback_u(phi, F), CombineOp::Add, Rat(chart.q) * k,
              -Rat(chart.q) * k);

  rep.base_identity = true;
  rep.dag_matches_complex = true;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      Pt2 x(rat(-3) + Rat(6 * i, grid - 1), rat(-3) + Rat(6 * j, grid - 1));
      if (!(com.base->eval(x) == x)) rep.base_identity = false;
      if (com.shift.eval(x) != shift_complex.eval(x)) rep.dag_matches_complex = false;
    }
  }

  Rat mn = shift_complex.min_value(), mx = shift_complex.max_value();
  rep.extremal_turns = (rat_abs(mn) >= rat_abs(mx)) ? mn : mx;
  if (rep.extremal_turns == 0) throw GeometryError("commutator shift vanishes");
  rep.normalized = scale_values(shift_complex, 1 / rep.extremal_turns);
  rep.cert = verify_bump(rep.normalized, Pt2(rat(-13, 6), rat(0)), Pt2(rat(-3), rat(0)));
  rep.pass = rep.base_identity && rep.dag_matches_complex && rep.cert.pass;
  return rep;
}

// Descent/fiber-compatibility check against the chart's order-q rotation:
// base commutes with rho and the shift is rho-invariant, on a sample grid.
inline bool check_equivariance(const SkewHomeo& f, const CellwiseAffineMap& rho,
                               int grid = 17) {
  const Rect& r = f.chart.chart;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      Pt2 x(r.ulo + Rat(i) * (r.uhi - r.ulo) / grid,
            r.vlo + Rat(j) * (r.vhi - r.vlo) / grid);
      Pt2 rx = rho.apply(x);
      if (!(f.base->eval(rx) == rho.apply(f.base->eval(x)))) return false;
      if (f.shift.eval(rx) != f.shift.eval(x)) return false;
    }
  }
  return true;
}

}  // namespace plfiber
