#include <catch2/catch_amalgamated.hpp>

#include "plfiber/fan.hpp"
#include "plfiber/path.hpp"
#include "plfiber/torus.hpp"

using namespace plfiber;

namespace {

std::vector<Pt2> grid_points(int n) {
  std::vector<Pt2> pts;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      pts.emplace_back(rat(-3) + Rat(6 * i, n), rat(-3) + Rat(6 * j, n));
  return pts;
}

bool pointwise_equal(const SkewHomeo& f, const SkewHomeo& g, int n = 20) {
  for (const auto& x : grid_points(n)) {
    if (!(f.base->eval(x) == g.base->eval(x))) return false;
    if (f.shift.eval(x) != g.shift.eval(x)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("make_a shift values") {
  FiberedChart c1(0, 1);
  SkewHomeo a0 = make_a(c1, rat(0));
  CHECK(pointwise_equal(a0, skew_identity(c1)));

  SkewHomeo a1 = make_a(c1, rat(1));
  CHECK(a1.shift.eval(Pt2(rat(0), rat(0))) == rat(1));  // 2*pi turns once

  FiberedChart c3(1, 3);
  SkewHomeo a3 = make_a(c3, rat(1));
  // 2*pi*3*1*phi(3/2,0) = 3*pi radians = 3/2 turns
  CHECK(a3.shift.eval(Pt2(rat(3, 2), rat(0))) == rat(3, 2));
}

TEST_CASE("make_b evaluates F on the first coordinate") {
  FiberedChart c(0, 1);
  SkewHomeo b = make_b(c);
  CHECK(b.base->eval(Pt2(rat(1), rat(1))) == Pt2(rat(1), rat(1)));
  CHECK(b.base->eval(Pt2(rat(-3), rat(0))) == Pt2(rat(-3), rat(0)));
  CHECK(b.base->eval(Pt2(rat(0), rat(2))) == Pt2(rat(2, 3), rat(2)));
  CHECK(b.shift.is_zero());
}

TEST_CASE("compose and inverse satisfy the group laws pointwise") {
  FiberedChart c(0, 1);
  SkewHomeo a = make_a(c, rat(2, 3));
  SkewHomeo b = make_b(c);
  SkewHomeo id = skew_identity(c);

  CHECK(pointwise_equal(compose(a, id), a));
  CHECK(pointwise_equal(compose(id, a), a));
  CHECK(pointwise_equal(compose(inverse(a), a), id));
  CHECK(pointwise_equal(compose(inverse(b), b), id));
  CHECK(pointwise_equal(compose(b, inverse(b)), id));

  // eight fiber angles ride along exactly
  SkewHomeo ab = compose(a, b);
  for (int k = 0; k < 8; ++k) {
    Rat theta(k, 8);
    auto [y, tau] = ab.apply(Pt2(rat(0), rat(0)), theta);
    CHECK(y == Pt2(rat(2, 3), rat(0)));
    CHECK(tau == theta + rat(2, 3));  // k*phi(2/3,0) = 2/3
  }

  SkewHomeo ba = compose(b, a);
  CHECK(pointwise_equal(inverse(compose(a, b)), compose(inverse(b), inverse(a))));
  CHECK(pointwise_equal(compose(compose(a, b), ba), compose(a, compose(b, ba))));
}

TEST_CASE("inverse of make_b inverts the F branch") {
  FiberedChart c(0, 1);
  SkewHomeo binv = inverse(make_b(c));
  CHECK(binv.base->eval(Pt2(rat(2, 3), rat(0))) == Pt2(rat(0), rat(0)));
  CHECK(pointwise_equal(inverse(make_a(c, rat(5))), make_a(c, rat(-5))));
}

TEST_CASE("commutator of a and b is a pure fiber rotation by the difference") {
  FiberedChart c(0, 1);
  SkewHomeo a = make_a(c, rat(1));
  SkewHomeo b = make_b(c);
  SkewHomeo com = commutator(a, b);
  PLFunction2 phi = make_phi();
  PLFunction1 F = make_F();

  for (const auto& x : grid_points(40)) {
    CHECK(com.base->eval(x) == x);
    Rat want = phi.eval(x) - phi.eval(Pt2(F.eval(x.u), x.v));
    CHECK(com.shift.eval(x) == want);
    // four-fold sequential oracle
    auto [y1, t1] = a.apply(x, Rat(0));
    auto [y2, t2] = b.apply(y1, t1);
    auto [y3, t3] = inverse(a).apply(y2, t2);
    auto [y4, t4] = inverse(b).apply(y3, t3);
    CHECK(y4 == x);
    CHECK(t4 == want);
  }
  CHECK(com.shift.eval(Pt2(rat(5, 2), rat(0))) == rat(0));
  CHECK(pointwise_equal(commutator(a, skew_identity(c)), skew_identity(c)));
}

TEST_CASE("commutator support and boundary behaviour") {
  FiberedChart c(0, 1);
  SkewHomeo a = make_a(c, rat(3));
  SkewHomeo b = make_b(c);
  SkewHomeo com = commutator(a, b);
  // the a-rotation is supported in [-2,2]^2; the commutator reaches out to
  // u = -8/3 where F drags the plateau, but no further
  for (const auto& x : grid_points(24)) {
    CHECK(com.base->eval(x) == x);
    if (rat_max(rat_abs(x.u), rat_abs(x.v)) >= 2) CHECK(a.shift.eval(x) == 0);
    if (rat_max(rat_abs(x.u), rat_abs(x.v)) >= rat(8, 3)) CHECK(com.shift.eval(x) == 0);
  }
  CHECK(com.shift.eval(Pt2(rat(-9, 4), rat(0))) != 0);
  // maps preserve the chart boundary: b fixes the u = +-3 edges pointwise
  // and slides the v = +-3 edges within themselves
  for (int i = -6; i <= 6; ++i) {
    CHECK(b.base->eval(Pt2(rat(3), rat(i, 2))) == Pt2(rat(3), rat(i, 2)));
    CHECK(b.base->eval(Pt2(rat(-3), rat(i, 2))) == Pt2(rat(-3), rat(i, 2)));
    for (const auto& x : {Pt2(rat(i, 2), rat(3)), Pt2(rat(i, 2), rat(-3))}) {
      Pt2 y = b.base->eval(x);
      CHECK(y.v == x.v);
      CHECK(rat_abs(y.u) <= 3);
      CHECK(com.base->eval(x) == x);
      CHECK(com.shift.eval(x) == 0);
    }
  }
}

TEST_CASE("certify_commutator_bump across (q,k) pairs") {
  struct Case {
    long p, q;
    Rat k;
    Rat magnitude;
  };
  std::vector<Case> cases{{0, 1, rat(1), rat(1)},
                          {0, 1, rat(-2), rat(2)},
                          {1, 2, rat(3), rat(6)},
                          {1, 3, rat(1), rat(3)}};
  for (const auto& cs : cases) {
    FiberedChart chart(cs.p, cs.q);
    auto rep = certify_commutator_bump(chart, cs.k);
    INFO("q=" << cs.q << " k=" << rat_str(cs.k) << "\n" << rep.cert.report());
    CHECK(rep.base_identity);
    CHECK(rep.dag_matches_complex);
    CHECK(rat_abs(rep.extremal_turns) == cs.magnitude);
    CHECK(rep.cert.pass);
    CHECK(rep.pass);
  }
  CHECK_THROWS_AS(certify_commutator_bump(FiberedChart(0, 1), rat(0)), DomainError);
}

TEST_CASE("brute-force grid extremal matches the certified extremal") {
  FiberedChart chart(1, 2);
  Rat k = rat(3);
  SkewHomeo com = commutator(make_a(chart, k), make_b(chart));
  Rat best(0);
  for (const auto& x : grid_points(40)) {
    Rat v = rat_abs(com.shift.eval(x));
    best = rat_max(best, v);
  }
  CHECK(best == rat(6));  // |q k| fiber turns = 2 pi |q k| radians
}

TEST_CASE("a and b paths have the declared endpoints") {
  FiberedChart c(0, 1);
  auto ap = make_a_path(c, rat(1));
  auto bp = make_b_path(c);
  CHECK(pointwise_equal(ap->at(rat(0)), skew_identity(c)));
  CHECK(pointwise_equal(ap->at(rat(1)), make_a(c, rat(1))));
  CHECK(pointwise_equal(bp->at(rat(0)), skew_identity(c)));
  CHECK(pointwise_equal(bp->at(rat(1)), make_b(c)));
  // F_{1/2}(0) = 1/3 and F_{1/2}(-3) = -3
  SkewHomeo mid = bp->at(rat(1, 2));
  CHECK(mid.base->eval(Pt2(rat(0), rat(0))) == Pt2(rat(1, 3), rat(0)));
  CHECK(mid.base->eval(Pt2(rat(-3), rat(1))) == Pt2(rat(-3), rat(1)));
}

TEST_CASE("commutator path runs from the identity to the commutator") {
  FiberedChart c(0, 1);
  auto ap = make_a_path(c, rat(2));
  auto bp = make_b_path(c);
  auto cp = path_commutator(ap, bp);
  CHECK(pointwise_equal(cp->at(rat(0)), skew_identity(c)));
  CHECK(pointwise_equal(cp->at(rat(1)),
                        commutator(make_a(c, rat(2)), make_b(c))));
  // outside both supports the trace is constant
  TraceRecord tr = trace_length(*cp, Pt2(rat(5, 2), rat(5, 2)), rat(0), 16);
  CHECK(tr.ell_exact == 0);
  for (const auto& tau : tr.taus) CHECK(tau == 0);
}

TEST_CASE("trace_length of rotation and a paths") {
  FiberedChart c(0, 1);
  SkewHomeo id = skew_identity(c);
  TraceRecord tzero = trace_length(*path_constant(id), Pt2(rat(0), rat(0)), rat(0), 8);
  CHECK(tzero.ell_exact == 0);

  for (int n : {1, -2, 5}) {
    TraceRecord tr =
        trace_length(*rotation_path(c, rat(n)), Pt2(rat(1), rat(1)), rat(0), 256);
    CHECK(tr.ell_exact == rat(n));
  }
  // q = 2: rotation by one fiber turn still has nu-length 1
  FiberedChart c2(1, 2);
  TraceRecord tr2 =
      trace_length(*rotation_path(c2, rat(1)), Pt2(rat(1), rat(1)), rat(0), 256);
  CHECK(tr2.ell_exact == rat(1));

  TraceRecord ta =
      trace_length(*make_a_path(c, rat(1)), Pt2(rat(0), rat(0)), rat(0), 64);
  CHECK(ta.ell_exact == rat(1));
}

TEST_CASE("trace refinement rejects coarse grids and terminates") {
  FiberedChart c(0, 1);
  // rotation by 40 turns: 16 steps move 2.5 turns per step, must refine
  TraceRecord tr =
      trace_length(*rotation_path(c, rat(40)), Pt2(rat(1), rat(1)), rat(0), 16);
  CHECK(tr.ell_exact == rat(40));
  CHECK(tr.depth > 0);
}

TEST_CASE("homotopy invariance of fiber length across path choices") {
  FiberedChart c(0, 1);
  auto ap = make_a_path(c, rat(1));
  auto bp = make_b_path(c);
  auto bconst = path_constant(make_b(c));
  auto c_fixed = path_commutator(ap, bconst);  // [a(t), b]
  auto c_moving = path_commutator(ap, bp);     // [a(t), b(t)]
  for (const auto& x : {Pt2(rat(0), rat(0)), Pt2(rat(-3, 2), rat(1, 2)),
                        Pt2(rat(1, 3), rat(-5, 4))}) {
    TraceRecord t1 = trace_length(*c_fixed, x, rat(0), 64);
    TraceRecord t2 = trace_length(*c_moving, x, rat(0), 64);
    CHECK(t1.ell_exact == t2.ell_exact);
    // reparameterized copy agrees
    PLFunction1 r = PLFunction1::from_samples(
        {{rat(0), rat(0)}, {rat(1, 3), rat(3, 4)}, {rat(1), rat(1)}});
    TraceRecord t3 = trace_length(*path_reparam(c_moving, r), x, rat(0), 64);
    CHECK(t3.ell_exact == t2.ell_exact);
  }
}

TEST_CASE("concatenation endpoints compose in order") {
  FiberedChart c(0, 1);
  auto ap = make_a_path(c, rat(1));
  auto bp = make_b_path(c);
  auto cc = path_concat({ap, bp});
  CHECK(pointwise_equal(cc->at(rat(0)), skew_identity(c)));
  CHECK(pointwise_equal(cc->at(rat(1, 2)), make_a(c, rat(1))));
  CHECK(pointwise_equal(cc->at(rat(1)), compose(make_b(c), make_a(c, rat(1)))));
}

TEST_CASE("fan rotation has exact order q and fixes the gauge") {
  for (auto [n, q, p] : std::vector<std::array<int, 3>>{
           {4, 2, 1}, {6, 3, 1}, {6, 3, 2}, {30, 3, 2}, {10, 5, 2}}) {
    CellwiseAffineMap rho = fan_rotation(n, q, p, rat(3));
    std::vector<Pt2> pts;
    for (int i = -6; i <= 6; i += 2)
      for (int j = -6; j <= 6; j += 2) pts.emplace_back(rat(i, 2), rat(j, 2));
    for (const auto& x : pts) {
      Pt2 y = x;
      for (int t = 0; t < q; ++t) y = rho.apply(y);
      CHECK(y == x);
      // gauge preserved
      Pt2 z = rho.apply(x);
      CHECK(rat_max(rat_abs(z.u), rat_abs(z.v)) == rat_max(rat_abs(x.u), rat_abs(x.v)));
      CHECK(rho.apply_inverse(z) == x);
    }
    // nontrivial for q > 1
    bool moved = false;
    for (const auto& x : pts)
      if (!(rho.apply(x) == x)) moved = true;
    CHECK(moved);
  }
}

TEST_CASE("check_equivariance separates symmetric and asymmetric maps") {
  FiberedChart c2(1, 2);
  CellwiseAffineMap rho2 = fan_rotation(4, 2, 1, rat(3));
  CHECK(check_equivariance(skew_identity(c2), rho2));
  CHECK(check_equivariance(make_a(c2, rat(1)), rho2));  // phi is symmetric under pi
  CHECK_FALSE(check_equivariance(make_b(c2), rho2));

  FiberedChart c3(2, 3);
  CellwiseAffineMap rho3 = fan_rotation(6, 3, 2, rat(3));
  // the fan realization of the order-3 rotation preserves sup-norm levels,
  // so phi is already invariant and make_a descends for every (p,q)
  CHECK(check_equivariance(make_a(c3, rat(1)), rho3));
  // the orbit symmetrization max_j phi o rho^j therefore equals phi
  PLFunction2 phi = make_phi();
  PLFunction2 s1 = pullback_through(phi, rho3, phi.chart());
  PLFunction2 s2 = pullback_through(s1, rho3, phi.chart());
  PLFunction2 sym = combine(combine(phi, s1, CombineOp::Max), s2, CombineOp::Max);
  for (const auto& x : grid_points(16)) CHECK(sym.eval(x) == phi.eval(x));
  // an off-center shape is not invariant and is detected
  AffineMap2 shrink = AffineMap2::translation(rat(3, 2), rat(0))
                          .compose(AffineMap2::scaling(rat(1, 4), rat(1, 4)));
  Rect box{rat(3, 4), rat(9, 4), rat(-3, 4), rat(3, 4)};
  auto off = std::make_shared<PLFunction2>(
      extend_by_zero(affine_image(phi, shrink, box), phi.chart()));
  CHECK_FALSE(check_equivariance(make_a(c3, rat(1), off), rho3));
}

TEST_CASE("climb push realizes a prescribed difference and inverts exactly") {
  FiberedChart c(0, 1);
  auto H = std::make_shared<PLFunction2>(make_phi());
  PLFunction1 A = PLFunction1::from_samples(
      {{rat(-3), rat(0)}, {rat(-5, 2), rat(0)}, {rat(5, 2), rat(10)}, {rat(3), rat(10)}});
  auto push = path_climb_push(c, A, H, rat(-5, 2), rat(5, 2));
  for (const auto& t : {rat(1, 3), rat(1, 2), rat(1)}) {
    SkewHomeo Bt = push->at(t);
    for (const auto& x : grid_points(12)) {
      Pt2 y = Bt.base->eval(x);
      CHECK(y.v == x.v);
      CHECK(A.eval(y.u) - A.eval(x.u) == t * H->eval(x));
      CHECK(Bt.base->eval_inverse(y) == x);
    }
  }
  CHECK(pointwise_equal(push->at(rat(0)), skew_identity(c)));
}
