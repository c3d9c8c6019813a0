#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "plfiber/rational.hpp"

namespace plfiber {

// Continuous piecewise-affine function on a closed interval, stored as
// strictly increasing breakpoints with values. Affine interpolation between
// consecutive breakpoints, so continuity holds by construction.
class PLFunction1 {
 public:
  PLFunction1() = default;

  static PLFunction1 from_samples(std::vector<std::pair<Rat, Rat>> pts) {
    if (pts.size() < 2) throw std::domain_error("PLFunction1 needs >= 2 sample points");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i].first == pts[i + 1].first)
        throw std::domain_error("PLFunction1 duplicate breakpoint");
    PLFunction1 f;
    f.xs_.reserve(pts.size());
    f.ys_.reserve(pts.size());
    for (auto& p : pts) {
      f.xs_.push_back(std::move(p.first));
      f.ys_.push_back(std::move(p.second));
    }
    return f;
  }

  static PLFunction1 constant(const Rat& lo, const Rat& hi, const Rat& c) {
    return from_samples({{lo, c}, {hi, c}});
  }

  static PLFunction1 identity(const Rat& lo, const Rat& hi) {
    return from_samples({{lo, lo}, {hi, hi}});
  }

  const Rat& lo() const { return xs_.front(); }
  const Rat& hi() const { return xs_.back(); }
  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return ys_; }

  Rat operator()(const Rat& x) const { return eval(x); }

  Rat eval(const Rat& x) const {
    size_t i = piece_index(x);
    return value_on_piece(i, x);
  }

  // Slope of the piece strictly containing x; at a breakpoint, the right
  // piece (left piece for x == hi).
  Rat slope_at(const Rat& x) const {
    size_t i = piece_index(x);
    return slope(i);
  }

  Rat slope(size_t piece) const {
    return (ys_[piece + 1] - ys_[piece]) / (xs_[piece + 1] - xs_[piece]);
  }

  size_t piece_count() const { return xs_.size() - 1; }

  bool strictly_increasing() const {
    for (size_t i = 0; i + 1 < ys_.size(); ++i)
      if (ys_[i] >= ys_[i + 1]) return false;
    return true;
  }

  bool nondecreasing() const {
    for (size_t i = 0; i + 1 < ys_.size(); ++i)
      if (ys_[i] > ys_[i + 1]) return false;
    return true;
  }

  Rat min_value() const { return *std::min_element(ys_.begin(), ys_.end()); }
  Rat max_value() const { return *std::max_element(ys_.begin(), ys_.end()); }

  // Inverse of a strictly increasing function.
  PLFunction1 inverse() const {
    if (!strictly_increasing())
      throw std::domain_error("inverse of non-increasing PLFunction1");
    std::vector<std::pair<Rat, Rat>> pts;
    pts.reserve(xs_.size());
    for (size_t i = 0; i < xs_.size(); ++i) pts.emplace_back(ys_[i], xs_[i]);
    return from_samples(std::move(pts));
  }

  // Unique x with f(x) = y, for strictly increasing f.
  Rat solve(const Rat& y) const {
    if (y < ys_.front() || y > ys_.back())
      throw std::domain_error("PLFunction1::solve value out of range");
    size_t lo = 0, hi = ys_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (ys_[mid] <= y) lo = mid; else hi = mid;
    }
    if (ys_[lo] == y) return xs_[lo];
    Rat t = (y - ys_[lo]) / (ys_[lo + 1] - ys_[lo]);
    return xs_[lo] + t * (xs_[lo + 1] - xs_[lo]);
  }

  // f + g on the common domain (domains must match).
  PLFunction1 plus(const PLFunction1& g, const Rat& gscale = Rat(1)) const {
    if (lo() != g.lo() || hi() != g.hi())
      throw std::domain_error("PLFunction1 domain mismatch");
    std::vector<Rat> xs;
    xs.reserve(xs_.size() + g.xs_.size());
    std::merge(xs_.begin(), xs_.end(), g.xs_.begin(), g.xs_.end(), std::back_inserter(xs));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rat, Rat>> pts;
    pts.reserve(xs.size());
    for (auto& x : xs) pts.emplace_back(x, eval(x) + gscale * g.eval(x));
    return from_samples(std::move(pts));
  }

  PLFunction1 scaled(const Rat& s) const {
    PLFunction1 f = *this;
    for (auto& y : f.ys_) y *= s;
    return f;
  }

  // (1-t)*id + t*f, a homeomorphism for increasing f and t in [0,1].
  PLFunction1 blend_with_identity(const Rat& t) const {
    std::vector<std::pair<Rat, Rat>> pts;
    pts.reserve(xs_.size());
    for (size_t i = 0; i < xs_.size(); ++i)
      pts.emplace_back(xs_[i], (Rat(1) - t) * xs_[i] + t * ys_[i]);
    return from_samples(std::move(pts));
  }

  bool operator==(const PLFunction1& o) const { return xs_ == o.xs_ && ys_ == o.ys_; }

  std::string to_text() const {
    std::ostringstream os;
    os << "pl1 " << xs_.size();
    for (size_t i = 0; i < xs_.size(); ++i)
      os << " " << rat_str(xs_[i]) << " " << rat_str(ys_[i]);
    return os.str();
  }

  static PLFunction1 from_text(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    size_t n = 0;
    is >> tag >> n;
    if (tag != "pl1" || n < 2) throw std::domain_error("bad pl1 line");
    std::vector<std::pair<Rat, Rat>> pts;
    pts.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      std::string a, b;
      if (!(is >> a >> b)) throw std::domain_error("truncated pl1 line");
      pts.emplace_back(rat_parse(a), rat_parse(b));
    }
    return from_samples(std::move(pts));
  }

 private:
  size_t piece_index(const Rat& x) const {
    if (x < xs_.front() || x > xs_.back())
      throw std::domain_error("PLFunction1 evaluated outside domain");
    size_t lo = 0, hi = xs_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (xs_[mid] <= x) lo = mid; else hi = mid;
    }
    return lo;
  }

  Rat value_on_piece(size_t i, const Rat& x) const {
    const Rat& x0 = xs_[i];
    const Rat& x1 = xs_[i + 1];
    Rat t = (x - x0) / (x1 - x0);
    return ys_[i] + t * (ys_[i + 1] - ys_[i]);
  }

  std::vector<Rat> xs_;
  std::vector<Rat> ys_;
};

// eval1 per the operation contract; breakpoint consistency is structural.
inline Rat eval1(const PLFunction1& f, const Rat& u) { return f.eval(u); }

// The map F : [-3,3] -> [-3,3] with branches u on [1,3], (u+2)/3 on [-2,1],
// 3(u+2) on [-3,-2]. Continuous, strictly increasing, F(-3)=-3, F(3)=3.
inline PLFunction1 make_F() {
  return PLFunction1::from_samples({{rat(-3), rat(-3)},
                                    {rat(-2), rat(0)},
                                    {rat(1), rat(1)},
                                    {rat(3), rat(3)}});
}

}  // namespace plfiber
