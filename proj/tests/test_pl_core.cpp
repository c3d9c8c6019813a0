#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "plfiber/bump.hpp"
#include "plfiber/levelset.hpp"
#include "plfiber/pl1.hpp"
#include "plfiber/pl2.hpp"

using namespace plfiber;

TEST_CASE("make_F matches its defining branches") {
  PLFunction1 F = make_F();
  CHECK(eval1(F, rat(-3)) == rat(-3));
  CHECK(eval1(F, rat(-2)) == rat(0));
  CHECK(eval1(F, rat(0)) == rat(2, 3));
  CHECK(eval1(F, rat(1)) == rat(1));
  CHECK(eval1(F, rat(3)) == rat(3));
  CHECK(F.strictly_increasing());
  // both branches agree at the breakpoint u = -2
  CHECK(eval1(F, rat(-2)) == rat(0));
  // interior branch values
  CHECK(eval1(F, rat(-5, 2)) == rat(-3, 2));  // 3(u+2)
  CHECK(eval1(F, rat(2)) == rat(2));          // u branch
}

TEST_CASE("eval1 identity and domain errors") {
  PLFunction1 id = PLFunction1::identity(rat(-3), rat(3));
  CHECK(eval1(id, rat(1, 2)) == rat(1, 2));
  CHECK_THROWS_AS(eval1(id, rat(4)), std::domain_error);
}

TEST_CASE("PLFunction1 inverse and solve") {
  PLFunction1 F = make_F();
  PLFunction1 Finv = F.inverse();
  CHECK(Finv.eval(rat(2, 3)) == rat(0));
  CHECK(Finv.eval(rat(1)) == rat(1));
  CHECK(F.solve(rat(1, 3)) == rat(-1));
  for (int i = -6; i <= 6; ++i) {
    Rat u = rat(i, 2);
    CHECK(Finv.eval(F.eval(u)) == u);
  }
}

TEST_CASE("PLFunction1 text round-trip is exact") {
  PLFunction1 F = make_F();
  PLFunction1 F2 = PLFunction1::from_text(F.to_text());
  CHECK(F == F2);
}

TEST_CASE("make_phi plateau, support and transition values") {
  PLFunction2 phi = make_phi();
  phi.validate();
  CHECK(eval2(phi, Pt2(rat(0), rat(0))) == rat(1));
  CHECK(eval2(phi, Pt2(rat(5, 2), rat(0))) == rat(0));
  CHECK(eval2(phi, Pt2(rat(3, 2), rat(0))) == rat(1, 2));
  CHECK(eval2(phi, Pt2(rat(-3, 2), rat(0))) == rat(1, 2));
  CHECK(eval2(phi, Pt2(rat(1), rat(1))) == rat(1));
  CHECK(eval2(phi, Pt2(rat(2), rat(2))) == rat(0));
  CHECK(eval2(phi, Pt2(rat(0), rat(-7, 4))) == rat(1, 4));
  CHECK_THROWS_AS(eval2(phi, Pt2(rat(4), rat(0))), DomainError);
}

TEST_CASE("constant function evaluates everywhere") {
  std::vector<Cell> cells{{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, AffineFunc::constant(rat(1))}};
  PLFunction2 one(Rect{rat(-1), rat(1), rat(-1), rat(1)}, std::move(cells));
  CHECK(eval2(one, Pt2(rat(1, 3), rat(-2, 5))) == rat(1));
}

TEST_CASE("malformed complex raises continuity violation on shared edge") {
  std::vector<Cell> cells;
  cells.push_back({{{-1, -1}, {0, -1}, {0, 1}, {-1, 1}}, AffineFunc::constant(rat(0))});
  cells.push_back({{{0, -1}, {1, -1}, {1, 1}, {0, 1}}, AffineFunc::constant(rat(1))});
  PLFunction2 bad(Rect{rat(-1), rat(1), rat(-1), rat(1)}, std::move(cells));
  CHECK_THROWS_AS(bad.eval(Pt2(rat(0), rat(0))), ContinuityError);
  CHECK_THROWS_AS(bad.validate(), ContinuityError);
}

TEST_CASE("PLFunction2 serialization round-trips exactly") {
  PLFunction2 phi = make_phi();
  PLFunction2 phi2 = PLFunction2::from_text(phi.to_text());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rat u = rat((long long)(rng() % 6001) - 3000, 1000);
    Rat v = rat((long long)(rng() % 6001) - 3000, 1000);
    CHECK(phi.eval(Pt2(u, v)) == phi2.eval(Pt2(u, v)));
  }
  CHECK(phi.to_text() == phi2.to_text());
}

TEST_CASE("level_set of phi at 1/2 is the boundary of a square") {
  PLFunction2 phi = make_phi();
  auto polys = level_set(phi, rat(1, 2));
  REQUIRE(polys.size() == 1);
  const auto& poly = polys[0];
  CHECK(poly.is_simple());
  CHECK(poly.verts.size() == 4);
  for (const auto& p : poly.verts)
    CHECK(rat_max(rat_abs(p.u), rat_abs(p.v)) == rat(3, 2));
  CHECK(poly.find_edge(Pt2(rat(3, 2), rat(0))) >= 0);
  CHECK(std::abs(poly.turning_number() - 1.0) < 1e-9);
  CHECK(std::abs(poly.total_len - 12.0) < 1e-9);
}

TEST_CASE("level_set of the pyramid at 1/2") {
  PLFunction2 pyr = make_pyramid();
  auto polys = level_set(pyr, rat(1, 2));
  REQUIRE(polys.size() == 1);
  for (const auto& p : polys[0].verts)
    CHECK(rat_max(rat_abs(p.u), rat_abs(p.v)) == rat(1, 2));
}

TEST_CASE("every phi level in (0,1) has exactly one component") {
  PLFunction2 phi = make_phi();
  for (const auto& p : default_bump_levels()) {
    auto polys = level_set(phi, p);
    CHECK(polys.size() == 1);
    CHECK(std::abs(polys[0].turning_number() - 1.0) < 1e-9);
  }
}

TEST_CASE("level_set rejects out-of-range and degenerate levels") {
  PLFunction2 phi = make_phi();
  CHECK_THROWS_AS(level_set(phi, rat(0)), DomainError);
  CHECK_THROWS_AS(level_set(phi, rat(3, 2)), DomainError);
  std::vector<Cell> cells;
  cells.push_back({{{-1, -1}, {0, -1}, {0, 1}, {-1, 1}}, AffineFunc::constant(rat(1, 2))});
  cells.push_back({{{0, -1}, {1, -1}, {1, 1}, {0, 1}},
                   AffineFunc(rat(-1, 2), rat(0), rat(1, 2))});
  PLFunction2 f(Rect{rat(-1), rat(1), rat(-1), rat(1)}, std::move(cells));
  CHECK_THROWS_AS(level_set(f, rat(1, 2)), DegenerateLevelError);
}

TEST_CASE("verify_bump certifies phi") {
  PLFunction2 phi = make_phi();
  auto cert = verify_bump(phi, Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)));
  INFO(cert.report());
  CHECK(cert.range_ok);
  CHECK(cert.plateau_ok);
  CHECK(cert.boundary_ok);
  CHECK(cert.levels_ok);
  CHECK(cert.monotone_ok);
  CHECK(cert.pass);
}

TEST_CASE("verify_bump fails the constant 0 function") {
  std::vector<Cell> cells{{{{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}, AffineFunc::constant(rat(0))}};
  PLFunction2 zero(Rect{rat(-3), rat(3), rat(-3), rat(3)}, std::move(cells));
  auto cert = verify_bump(zero, Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)));
  CHECK_FALSE(cert.pass);
  CHECK_FALSE(cert.plateau_ok);
}

TEST_CASE("verify_bump fails a two-humped function") {
  PLFunction2 phi = make_phi();
  Rect big{rat(-3), rat(3), rat(-3), rat(3)};
  AffineMap2 shrink = AffineMap2::scaling(rat(1, 4), rat(1, 4));
  AffineMap2 left = AffineMap2::translation(rat(-3, 2), rat(0)).compose(shrink);
  AffineMap2 right = AffineMap2::translation(rat(3, 2), rat(0)).compose(shrink);
  Rect lbox{rat(-9, 4), rat(-3, 4), rat(-3, 4), rat(3, 4)};
  Rect rbox{rat(3, 4), rat(9, 4), rat(-3, 4), rat(3, 4)};
  PLFunction2 f1 = extend_by_zero(affine_image(phi, left, lbox), big);
  PLFunction2 f2 = extend_by_zero(affine_image(phi, right, rbox), big);
  PLFunction2 two = combine(f1, f2, CombineOp::Max);
  CHECK(two.eval(Pt2(rat(-3, 2), rat(0))) == rat(1));
  CHECK(two.eval(Pt2(rat(3, 2), rat(0))) == rat(1));
  CHECK(two.eval(Pt2(rat(0), rat(0))) == rat(0));
  auto polys = level_set(two, rat(1, 2));
  CHECK(polys.size() == 2);
  auto cert = verify_bump(two, Pt2(rat(-3, 2), rat(0)), Pt2(rat(-3), rat(0)));
  CHECK_FALSE(cert.pass);
  CHECK_FALSE(cert.levels_ok);
}

TEST_CASE("radialize sends the transversal to angle zero") {
  PLFunction2 phi = make_phi();
  auto cert = verify_bump(phi, Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)));
  REQUIRE(cert.pass);
  auto [x, y] = radialize(phi, cert, Pt2(rat(3, 2), rat(0)));
  CHECK(std::abs(x - 0.5) < 1e-12);
  CHECK(std::abs(y) < 1e-12);
  for (const auto& p : default_bump_levels()) {
    Rat u = 2 - p;  // transversal hits level p at (2-p, 0)
    auto [rx, ry] = radialize(phi, cert, Pt2(u, rat(0)));
    double want_r = to_double((2 - p) / Rat(3));
    CHECK(std::abs(rx - want_r) < 1e-12);
    CHECK(std::abs(ry) < 1e-12);
  }
}

TEST_CASE("radialize refuses plateau points") {
  PLFunction2 phi = make_phi();
  auto cert = verify_bump(phi, Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)));
  CHECK_THROWS_AS(radialize(phi, cert, Pt2(rat(0), rat(0))), PlateauError);
  CHECK_THROWS_AS(radialize(phi, cert, Pt2(rat(5, 2), rat(0))), PlateauError);
}

TEST_CASE("model_bump composed with radialize reproduces phi") {
  PLFunction2 phi = make_phi();
  auto cert = verify_bump(phi, Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)));
  REQUIRE(cert.pass);
  std::mt19937_64 rng(20240817);
  int checked = 0;
  while (checked < 100) {
    Rat u = rat((long long)(rng() % 8192) - 4096, 2048);
    Rat v = rat((long long)(rng() % 8192) - 4096, 2048);
    if (rat_abs(u) > 3 || rat_abs(v) > 3) continue;
    Pt2 x(u, v);
    Rat val = phi.eval(x);
    if (val <= 0 || val >= 1) continue;
    auto [hx, hy] = radialize(phi, cert, x);
    double err = std::abs(model_bump(hx, hy) - to_double(val));
    CHECK(err < 1e-9);
    ++checked;
  }
}

TEST_CASE("restrict_to_segment matches pointwise evaluation") {
  PLFunction2 phi = make_phi();
  PLFunction1 r = phi.restrict_to_segment(Pt2(rat(0), rat(0)), Pt2(rat(3), rat(0)));
  CHECK(r.eval(rat(0)) == rat(1));
  CHECK(r.eval(rat(1, 2)) == rat(1, 2));  // u = 3/2
  CHECK(r.eval(rat(1)) == rat(0));
  for (int i = 0; i <= 30; ++i) {
    Rat t = rat(i, 30);
    Pt2 p(t * 3, Rat(0));
    CHECK(r.eval(t) == phi.eval(p));
  }
  // a skew segment
  PLFunction1 s = phi.restrict_to_segment(Pt2(rat(0), rat(0)), Pt2(rat(3), rat(2)));
  for (int i = 0; i <= 30; ++i) {
    Rat t = rat(i, 30);
    Pt2 p(t * 3, t * 2);
    CHECK(s.eval(t) == phi.eval(p));
  }
}

TEST_CASE("combine add/min/max agree with pointwise combination") {
  PLFunction2 phi = make_phi();
  PLFunction2 pyr = extend_by_zero(make_pyramid(), Rect{rat(-3), rat(3), rat(-3), rat(3)});
  PLFunction2 sum = combine(phi, pyr, CombineOp::Add);
  PLFunction2 mx = combine(phi, pyr, CombineOp::Max);
  PLFunction2 mn = combine(phi, pyr, CombineOp::Min);
  PLFunction2 diff = combine(phi, pyr, CombineOp::Add, rat(1), rat(-1));
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    Rat u = rat((long long)(rng() % 6001) - 3000, 1000);
    Rat v = rat((long long)(rng() % 6001) - 3000, 1000);
    Pt2 p(u, v);
    Rat a = phi.eval(p), b = pyr.eval(p);
    CHECK(sum.eval(p) == a + b);
    CHECK(mx.eval(p) == rat_max(a, b));
    CHECK(mn.eval(p) == rat_min(a, b));
    CHECK(diff.eval(p) == a - b);
  }
}

TEST_CASE("compose_profile applies a 1d reprofile exactly") {
  PLFunction2 phi = make_phi();
  PLFunction1 flip = PLFunction1::from_samples({{rat(0), rat(1)}, {rat(1), rat(0)}});
  PLFunction2 inv = compose_profile(phi, flip);
  PLFunction1 halfcap =
      PLFunction1::from_samples({{rat(0), rat(0)}, {rat(1, 2), rat(1)}, {rat(1), rat(1)}});
  PLFunction2 capped = compose_profile(phi, halfcap);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Rat u = rat((long long)(rng() % 6001) - 3000, 1000);
    Rat v = rat((long long)(rng() % 6001) - 3000, 1000);
    Pt2 p(u, v);
    Rat a = phi.eval(p);
    CHECK(inv.eval(p) == 1 - a);
    CHECK(capped.eval(p) == rat_min(Rat(1), 2 * a));
  }
}

TEST_CASE("pullback_u computes phi o (F, id) exactly") {
  PLFunction2 phi = make_phi();
  PLFunction1 F = make_F();
  PLFunction2 phiF = pullback_u(phi, F);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    Rat u = rat((long long)(rng() % 6001) - 3000, 1000);
    Rat v = rat((long long)(rng() % 6001) - 3000, 1000);
    Pt2 p(u, v);
    CHECK(phiF.eval(p) == phi.eval(Pt2(F.eval(u), v)));
  }
  phiF.validate();
}
