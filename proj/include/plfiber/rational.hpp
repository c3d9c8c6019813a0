#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace plfiber {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long n, long long d = 1) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  return Rat(BigInt(n), BigInt(d));
}

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

inline Rat clamp01(const Rat& r) {
  if (r < 0) return Rat(0);
  if (r > 1) return Rat(1);
  return r;
}

inline BigInt rat_floor(const Rat& r) {
  BigInt q = rat_num(r) / rat_den(r);
  if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

// Nearest integer; ties round toward +infinity.
inline BigInt rat_round(const Rat& r) { return rat_floor(r + Rat(1, 2)); }

inline std::string rat_str(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

inline Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) throw std::domain_error("zero denominator");
    return Rat(n, d);
  } catch (const std::exception&) {
    throw std::domain_error("cannot parse rational: '" + s + "'");
  }
}

struct Pt2 {
  Rat u, v;
  Pt2() : u(0), v(0) {}
  Pt2(Rat uu, Rat vv) : u(std::move(uu)), v(std::move(vv)) {}
  Pt2(long long uu, long long vv) : u(uu), v(vv) {}

  bool operator==(const Pt2& o) const { return u == o.u && v == o.v; }
  bool operator!=(const Pt2& o) const { return !(*this == o); }
  bool operator<(const Pt2& o) const {
    if (u != o.u) return u < o.u;
    return v < o.v;
  }
  Pt2 operator+(const Pt2& o) const { return Pt2(u + o.u, v + o.v); }
  Pt2 operator-(const Pt2& o) const { return Pt2(u - o.u, v - o.v); }
  Pt2 operator*(const Rat& s) const { return Pt2(u * s, v * s); }
};

inline Rat cross(const Pt2& a, const Pt2& b) { return a.u * b.v - a.v * b.u; }
inline Rat dot(const Pt2& a, const Pt2& b) { return a.u * b.u + a.v * b.v; }

// >0 left turn, <0 right turn, 0 collinear
inline Rat orient(const Pt2& a, const Pt2& b, const Pt2& c) {
  return cross(b - a, c - a);
}

inline bool on_segment(const Pt2& a, const Pt2& b, const Pt2& x) {
  if (orient(a, b, x) != 0) return false;
  return rat_min(a.u, b.u) <= x.u && x.u <= rat_max(a.u, b.u) &&
         rat_min(a.v, b.v) <= x.v && x.v <= rat_max(a.v, b.v);
}

// Proper or improper intersection of closed segments.
inline bool segments_intersect(const Pt2& a, const Pt2& b, const Pt2& c, const Pt2& d) {
  Rat o1 = orient(a, b, c), o2 = orient(a, b, d);
  Rat o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
      ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

struct Rect {
  Rat ulo, uhi, vlo, vhi;
  bool contains(const Pt2& p) const {
    return ulo <= p.u && p.u <= uhi && vlo <= p.v && p.v <= vhi;
  }
  bool on_boundary(const Pt2& p) const {
    if (!contains(p)) return false;
    return p.u == ulo || p.u == uhi || p.v == vlo || p.v == vhi;
  }
};

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

}  // namespace plfiber
