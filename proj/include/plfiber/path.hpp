#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <vector>

#include "plfiber/torus.hpp"

namespace plfiber {

// One-parameter family t in [0,1] -> SkewHomeo, built structurally so that
// evaluation at rational t is exact.
class HomeoPath {
 public:
  using Ptr = std::shared_ptr<const HomeoPath>;

  virtual ~HomeoPath() = default;
  virtual SkewHomeo at(const Rat& t) const = 0;
  virtual FiberedChart chart() const = 0;

  SkewHomeo start() const { return at(Rat(0)); }
  SkewHomeo end() const { return at(Rat(1)); }
};

namespace paths {

class Constant final : public HomeoPath {
 public:
  explicit Constant(SkewHomeo h) : h_(std::move(h)) {}
  SkewHomeo at(const Rat&) const override { return h_; }
  FiberedChart chart() const override { return h_.chart; }

 private:
  SkewHomeo h_;
};

// t -> (id base, t * shift): the straight path to a pure fiber rotation.
class ScaledShift final : public HomeoPath {
 public:
  explicit ScaledShift(SkewHomeo target) : target_(std::move(target)) {
    if (target_.base->kind() != BaseMapNode::Kind::Id)
      throw DomainError("scaled-shift path needs a pure fiber rotation target");
  }
  SkewHomeo at(const Rat& t) const override {
    SkewHomeo r;
    r.chart = target_.chart;
    r.base = base_id();
    r.shift = target_.shift.scaled(t);
    return r;
  }
  FiberedChart chart() const override { return target_.chart; }

 private:
  SkewHomeo target_;
};

// t -> base map (u,v) -> ((1-t) u + t G(u), v).
class BaseBlend final : public HomeoPath {
 public:
  BaseBlend(FiberedChart chart, PLFunction1 G) : chart_(chart), G_(std::move(G)) {}
  SkewHomeo at(const Rat& t) const override {
    SkewHomeo r;
    r.chart = chart_;
    r.base = (t == 0) ? base_id() : base_uaffine(G_.blend_with_identity(t));
    r.shift = ShiftExpr::zero();
    return r;
  }
  FiberedChart chart() const override { return chart_; }

 private:
  FiberedChart chart_;
  PLFunction1 G_;
};

// t -> climb push with parameter t (identity at t = 0).
class ClimbPushPath final : public HomeoPath {
 public:
  ClimbPushPath(FiberedChart chart, PLFunction1 A, std::shared_ptr<const PLFunction2> H,
                Rat lo, Rat hi)
      : chart_(chart), A_(std::move(A)), H_(std::move(H)), lo_(std::move(lo)),
        hi_(std::move(hi)) {}
  SkewHomeo at(const Rat& t) const override {
    SkewHomeo r;
    r.chart = chart_;
    r.base = (t == 0) ? base_id()
                      : BaseMapPtr(std::make_shared<ClimbPushNode>(A_, H_, t, lo_, hi_));
    r.shift = ShiftExpr::zero();
    return r;
  }
  FiberedChart chart() const override { return chart_; }

 private:
  FiberedChart chart_;
  PLFunction1 A_;
  std::shared_ptr<const PLFunction2> H_;
  Rat lo_, hi_;
};

class Product final : public HomeoPath {
 public:
  Product(Ptr g, Ptr f) : g_(std::move(g)), f_(std::move(f)) {}
  SkewHomeo at(const Rat& t) const override { return compose(g_->at(t), f_->at(t)); }
  FiberedChart chart() const override { return f_->chart(); }

 private:
  Ptr g_, f_;
};

class InversePath final : public HomeoPath {
 public:
  explicit InversePath(Ptr f) : f_(std::move(f)) {}
  SkewHomeo at(const Rat& t) const override { return inverse(f_->at(t)); }
  FiberedChart chart() const override { return f_->chart(); }

 private:
  Ptr f_;
};

// [a(t), b(t)] = b(t)^{-1} a(t)^{-1} b(t) a(t).
class CommutatorPath final : public HomeoPath {
 public:
  CommutatorPath(Ptr a, Ptr b) : a_(std::move(a)), b_(std::move(b)) {}
  SkewHomeo at(const Rat& t) const override {
    SkewHomeo at_ = a_->at(t), bt = b_->at(t);
    return commutator(at_, bt);
  }
  FiberedChart chart() const override { return a_->chart(); }

 private:
  Ptr a_, b_;
};

// Concatenation: segments run in order, each translated by the composite of
// the previous segments' endpoints.
class Concat final : public HomeoPath {
 public:
  explicit Concat(std::vector<Ptr> segs) : segs_(std::move(segs)) {
    if (segs_.empty()) throw DomainError("empty concatenation");
    prefixes_.push_back(skew_identity(segs_[0]->chart()));
    for (const auto& s : segs_)
      prefixes_.push_back(compose(s->end(), prefixes_.back()));
  }
  SkewHomeo at(const Rat& t) const override {
    if (t < 0 || t > 1) throw DomainError("path parameter outside [0,1]");
    size_t m = segs_.size();
    Rat scaled = t * Rat(m);
    BigInt fl = rat_floor(scaled);
    long long i = fl.convert_to<long long>();
    if (i >= (long long)m) i = (long long)m - 1;
    Rat local = scaled - Rat(fl);
    if (i == (long long)m - 1 && t == 1) local = Rat(1);
    return compose(segs_[i]->at(local), prefixes_[i]);
  }
  FiberedChart chart() const override { return segs_[0]->chart(); }

 private:
  std::vector<Ptr> segs_;
  std::vector<SkewHomeo> prefixes_;
};

// p o r for an increasing time reparameterization r with r(0)=0, r(1)=1.
class Reparam final : public HomeoPath {
 public:
  Reparam(Ptr p, PLFunction1 r) : p_(std::move(p)), r_(std::move(r)) {
    if (!r_.strictly_increasing() || r_.values().front() != 0 || r_.values().back() != 1)
      throw DomainError("reparameterization must fix endpoints and increase");
  }
  SkewHomeo at(const Rat& t) const override { return p_->at(r_.eval(t)); }
  FiberedChart chart() const override { return p_->chart(); }

 private:
  Ptr p_;
  PLFunction1 r_;
};

}  // namespace paths

inline HomeoPath::Ptr path_constant(SkewHomeo h) {
  return std::make_shared<paths::Constant>(std::move(h));
}
inline HomeoPath::Ptr path_scaled_shift(SkewHomeo target) {
  return std::make_shared<paths::ScaledShift>(std::move(target));
}
inline HomeoPath::Ptr path_base_blend(const FiberedChart& chart, PLFunction1 G) {
  return std::make_shared<paths::BaseBlend>(chart, std::move(G));
}
inline HomeoPath::Ptr path_climb_push(const FiberedChart& chart, PLFunction1 A,
                                      std::shared_ptr<const PLFunction2> H, Rat lo,
                                      Rat hi) {
  return std::make_shared<paths::ClimbPushPath>(chart, std::move(A), std::move(H),
                                                std::move(lo), std::move(hi));
}
inline HomeoPath::Ptr path_product(HomeoPath::Ptr g, HomeoPath::Ptr f) {
  return std::make_shared<paths::Product>(std::move(g), std::move(f));
}
inline HomeoPath::Ptr path_inverse(HomeoPath::Ptr f) {
  return std::make_shared<paths::InversePath>(std::move(f));
}
inline HomeoPath::Ptr path_commutator(HomeoPath::Ptr a, HomeoPath::Ptr b) {
  return std::make_shared<paths::CommutatorPath>(std::move(a), std::move(b));
}
inline HomeoPath::Ptr path_concat(std::vector<HomeoPath::Ptr> segs) {
  return std::make_shared<paths::Concat>(std::move(segs));
}
inline HomeoPath::Ptr path_reparam(HomeoPath::Ptr p, PLFunction1 r) {
  return std::make_shared<paths::Reparam>(std::move(p), std::move(r));
}

// The natural path to make_a: shift scaled linearly in t.
inline HomeoPath::Ptr make_a_path(const FiberedChart& chart, const Rat& k,
                                  std::shared_ptr<const PLFunction2> shape = nullptr) {
  return path_scaled_shift(make_a(chart, k, std::move(shape)));
}

// The b path: base (1-t) id + t F, a homeomorphism for every t.
inline HomeoPath::Ptr make_b_path(const FiberedChart& chart) {
  return path_base_blend(chart, make_F());
}

// Inclusion of n into the covering group: t -> fiber rotation by n*t turns
// of the regular fibers (chart shift n*q*t turns... on the chart circle a
// regular-fiber full turn is q chart turns).
inline HomeoPath::Ptr rotation_path(const FiberedChart& chart, const Rat& turns) {
  std::vector<Cell> cells{{{{chart.chart.ulo, chart.chart.vlo},
                            {chart.chart.uhi, chart.chart.vlo},
                            {chart.chart.uhi, chart.chart.vhi},
                            {chart.chart.ulo, chart.chart.vhi}},
                           AffineFunc::constant(Rat(1))}};
  auto one = std::make_shared<PLFunction2>(chart.chart, std::move(cells));
  SkewHomeo target;
  target.chart = chart;
  target.base = base_id();
  target.shift = ShiftExpr::scaled_shape(turns * Rat(chart.q), one);
  return path_scaled_shift(std::move(target));
}

struct TraceRecord {
  Pt2 x;
  Rat theta0;
  std::vector<Rat> ts;
  std::vector<Rat> taus;  // unwrapped fiber coordinate, turns, exact
  Rat ell_exact;          // nu-length: (tau_N - tau_0)/q
  double ell = 0.0;
  int depth = 0;

  std::string to_csv() const {
    std::ostringstream os;
    os << "t,theta_turns,theta_radians\n";
    for (size_t i = 0; i < ts.size(); ++i)
      os << to_double(ts[i]) << "," << to_double(taus[i]) << ","
         << 2.0 * M_PI * to_double(taus[i]) << "\n";
    return os.str();
  }
};

// Sample the motion of (x, theta0) under the path, unwrap the fiber
// coordinate (every step must move less than half a turn, refining the grid
// otherwise), and report nu-length ell = (total unwrapped advance)/q.
inline TraceRecord trace_length(const HomeoPath& path, const Pt2& x, const Rat& theta0,
                                int steps = 256, int max_depth = 24) {
  if (steps < 2) throw DomainError("trace_length needs steps >= 2");
  long q = path.chart().q;
  TraceRecord rec;
  rec.x = x;
  rec.theta0 = theta0;
  int depth = 0;
  long long n = steps;
  std::vector<Rat> ts, taus;
  while (true) {
    ts.clear();
    taus.clear();
    bool ok = true;
    Rat prev;
    for (long long i = 0; i <= n; ++i) {
      Rat t(i, n);
      SkewHomeo h = path.at(t);
      auto [y, tau] = h.apply(x, theta0);
      (void)y;
      if (i > 0 && 2 * rat_abs(tau - prev) >= 1) {
        ok = false;
        break;
      }
      ts.push_back(t);
      taus.push_back(tau);
      prev = tau;
    }
    if (ok) break;
    if (++depth > max_depth)
      throw RefinementError("trace refinement exceeded depth limit");
    n *= 2;
  }
  rec.ts = std::move(ts);
  rec.taus = std::move(taus);
  rec.depth = depth;
  rec.ell_exact = (rec.taus.back() - rec.taus.front()) / Rat(q);
  rec.ell = to_double(rec.ell_exact);
  return rec;
}

}  // namespace plfiber
