#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace lagsweep;
using testing_support::Rand;

namespace {

DarbouxPoint dp(double x, double y) { return {Vector{{x}}, Vector{{y}}}; }

ProductCurveLagrangian ellipse_pair() {
  return ProductCurveLagrangian({PlaneCurve::ellipse(1.0, 0.6), PlaneCurve::ellipse(1.3, 0.8)});
}

}  // namespace

TEST(Correspondence, StepFromFoot) {
  const LagrangianGraph c(testing_support::cube1());
  auto p = step_from_foot(c, TangentFrame(Vector{{1.0}}, Vector::Zero(1)));
  EXPECT_EQ(p.a.stacked(), p.foot.stacked());
  EXPECT_EQ(p.b.stacked(), p.foot.stacked());

  p = step_from_foot(c, TangentFrame(Vector{{1.0}}, Vector{{1.0}}));
  EXPECT_EQ(p.a.stacked(), (Vector{{2.0, 9.0}}));
  EXPECT_EQ(p.b.stacked(), (Vector{{0.0, -3.0}}));
  EXPECT_EQ((0.5 * (p.a + p.b)).stacked(), (Vector{{1.0, 3.0}}));
  EXPECT_EQ(p.b.stacked(), tangent_point(c, TangentFrame(Vector{{1.0}}, Vector{{-1.0}})).stacked());
}

TEST(Correspondence, StepInvariantsOnRandomGerms) {
  Rand r(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = r.integer(1, 3);
    const LagrangianGraph g(testing_support::random_germ(r, n, 0.3));
    const auto p = step_from_foot(g, TangentFrame(r.vec(n), r.vec(n)));
    EXPECT_LE((0.5 * (p.a + p.b) - p.foot).max_norm(), 1e-12);
    // b - a = -2 (t, H t) is tangent at the foot
    const DarbouxPoint d = p.b - p.a;
    const Matrix h = g.hessian_at(p.frame.q);
    EXPECT_LE((d.y - h * d.x).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Correspondence, CubeCurvePartners) {
  const LagrangianGraph c(testing_support::cube1());
  const auto rep = correspondents(c, dp(0.0, -3.0), SearchBox::cube(1, 3.0));
  ASSERT_EQ(rep.pairs.size(), 2u);
  EXPECT_LE((rep.pairs[0].b - dp(-2.0, 9.0)).max_norm(), 1e-9);
  EXPECT_LE((rep.pairs[1].b - dp(2.0, 9.0)).max_norm(), 1e-9);
  EXPECT_FALSE(rep.near_critical[0]);
}

TEST(Correspondence, PointOnLHasItselfAsPartner) {
  const LagrangianGraph c(testing_support::cube1());
  const DarbouxPoint a = point_on_graph(c, Vector{{0.5}});
  const auto rep = correspondents(c, a, SearchBox::cube(1, 2.0));
  bool self = false;
  // a double root, resolved only to about sqrt(eps)
  for (const auto& p : rep.pairs) self = self || (p.b - a).max_norm() <= 1e-6;
  EXPECT_TRUE(self);
}

TEST(Correspondence, HyperbolaFamilyTwoPartners) {
  const LagrangianGraph h(testing_support::hyp());
  Rand r(2);
  for (int trial = 0; trial < 10; ++trial) {
    const DarbouxPoint a(r.vec(2, -0.5, 0.5), r.vec(2, -0.5, 0.5));
    const auto rep = correspondents(h, a, SearchBox::cube(2, 6.0, a.x));
    int regular = 0;
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
      if (rep.near_critical[i]) continue;
      ++regular;
      EXPECT_TRUE(conormal_check(h, rep.pairs[i].a, rep.pairs[i].b, 1e-8).ok);
    }
    EXPECT_EQ(regular, 2);
  }
}

TEST(Correspondence, SymplecticAlongABranch) {
  Rand r(3);
  int done = 0;
  while (done < 20) {
    const int n = r.integer(1, 2);
    const LagrangianGraph g(testing_support::random_germ(r, n, 0.2));
    const TangentFrame f(r.vec(n, -0.5, 0.5), r.vec(n, -0.8, 0.8));
    // near the critical set the foot moves fast and central differences lose accuracy
    if (std::abs(det_A(g, f)) < 0.2) continue;
    const DarbouxPoint a = tangent_point(g, f);
    auto b_of = [&](const Vector& v) -> Vector {
      const auto p = track_correspondent(g, DarbouxPoint::from_stacked(v), f.q);
      if (!p) throw std::runtime_error("lost branch");
      return p->b.stacked();
    };
    const Matrix j = fd_jacobian(b_of, a.stacked(), 1e-6);
    EXPECT_LE(is_symplectic(j, 1e-5).defect, 1e-5);
    ++done;
  }
}

TEST(LinearIso, Examples) {
  const auto c = linear_iso(dp(2.0, 9.0), dp(0.0, -3.0));
  EXPECT_DOUBLE_EQ(c.q1[0], 1.0);
  EXPECT_DOUBLE_EQ(c.q2[0], 3.0);
  EXPECT_DOUBLE_EQ(c.p1[0], -6.0);
  EXPECT_DOUBLE_EQ(c.p2[0], 1.0);

  const DarbouxPoint a(Vector{{0.3, 1.0}}, Vector{{-2.0, 0.5}});
  const auto d = linear_iso(a, a);
  EXPECT_EQ(d.p1.norm(), 0.0);
  EXPECT_EQ(d.p2.norm(), 0.0);
  EXPECT_EQ(d.q1, a.x);
  EXPECT_EQ(d.q2, a.y);
  EXPECT_THROW(linear_iso(a, dp(0, 0)), input_error);
}

TEST(LinearIso, MatrixIdentityAndRoundTrip) {
  Rand r(4);
  for (int n = 1; n <= 4; ++n) {
    const Matrix m = linear_iso_matrix(n);
    Matrix omega_t = Matrix::Zero(4 * n, 4 * n);
    omega_t.topRightCorner(2 * n, 2 * n) = Matrix::Identity(2 * n, 2 * n);
    omega_t.bottomLeftCorner(2 * n, 2 * n) = -Matrix::Identity(2 * n, 2 * n);
    Matrix diff = Matrix::Zero(4 * n, 4 * n);
    diff.topLeftCorner(2 * n, 2 * n) = -omega_matrix(n);
    diff.bottomRightCorner(2 * n, 2 * n) = omega_matrix(n);
    EXPECT_LE((m.transpose() * omega_t * m - 0.5 * diff).cwiseAbs().maxCoeff(), 1e-12);

    const DarbouxPoint a(r.vec(n), r.vec(n)), b(r.vec(n), r.vec(n));
    const auto c = linear_iso(a, b);
    Vector stacked(4 * n);
    stacked << a.stacked(), b.stacked();
    Vector image(4 * n);
    image << c.q1, c.q2, c.p1, c.p2;
    EXPECT_LE((m * stacked - image).cwiseAbs().maxCoeff(), 1e-15);
    const auto [a2, b2] = linear_iso_inverse(c);
    EXPECT_LE((a2 - a).max_norm(), 1e-15);
    EXPECT_LE((b2 - b).max_norm(), 1e-15);
  }
}

TEST(Conormal, GraphExamples) {
  const LagrangianGraph c(testing_support::cube1());
  const auto p = step_from_foot(c, TangentFrame(Vector{{1.0}}, Vector{{1.0}}));
  EXPECT_TRUE(conormal_check(c, p.a, p.b, 1e-12).ok);

  const DarbouxPoint off = dp(0.5, 2.0);
  EXPECT_FALSE(conormal_check(c, off, off, 1e-6).ok);

  const auto bad = conormal_check(c, p.a, p.b + dp(0.0, 0.1), 1e-6);
  EXPECT_FALSE(bad.ok);
  EXPECT_NEAR(bad.tangency_defect, 0.05, 1e-12);
  EXPECT_NEAR(bad.midpoint_defect, 0.05, 1e-12);
}

TEST(Conormal, ProductModel) {
  const auto L = ellipse_pair();
  const Vector th{{0.4, 2.2}};
  const DarbouxPoint q = L.point(th);
  const Matrix basis = L.tangent_basis(th);
  const DarbouxPoint v = DarbouxPoint::from_stacked(basis * Vector{{0.7, -0.3}});
  EXPECT_TRUE(conormal_check(L, q + v, q - v, 1e-12).ok);
  EXPECT_TRUE(conormal_check(L, q + v, q - v, 1e-9, th).ok);
  const DarbouxPoint w = DarbouxPoint::from_stacked(omega_matrix(2) * basis.col(0));
  EXPECT_FALSE(conormal_check(L, q + w, q - w, 1e-6, th).ok);
}

TEST(Action, Examples) {
  std::vector<DarbouxPoint> same(5, dp(0.3, -1.0));
  EXPECT_EQ(action(same), 0.0);
  const std::vector<DarbouxPoint> tri{dp(0, 0), dp(1, 0), dp(0, 1)};
  EXPECT_DOUBLE_EQ(action(tri), -1.0);
  EXPECT_THROW(action(std::vector<DarbouxPoint>{dp(0, 0), dp(1, 0)}), input_error);
  EXPECT_THROW(action(std::vector<DarbouxPoint>{dp(0, 0), dp(1, 0), DarbouxPoint::zero(2)}), input_error);
}

TEST(Action, CyclicAndReversal) {
  Rand r(5);
  for (int k = 3; k <= 9; k += 2) {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = r.integer(1, 3);
      std::vector<DarbouxPoint> qs;
      for (int i = 0; i < k; ++i) qs.emplace_back(r.vec(n), r.vec(n));
      const double v = action(qs);
      auto shifted = qs;
      std::rotate(shifted.begin(), shifted.begin() + 1, shifted.end());
      EXPECT_NEAR(action(shifted), v, 1e-12);
      auto rev = qs;
      std::reverse(rev.begin(), rev.end());
      EXPECT_NEAR(action(rev), -v, 1e-12);
    }
  }
}

TEST(Action, ThreePointsIsMinusTwiceSignedArea) {
  Rand r(6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<DarbouxPoint> qs{dp(r(), r()), dp(r(), r()), dp(r(), r())};
    const Vec2 a(qs[0].x[0], qs[0].y[0]), b(qs[1].x[0], qs[1].y[0]), c(qs[2].x[0], qs[2].y[0]);
    EXPECT_NEAR(action(qs), -cross2(b - a, c - a), 1e-14);
  }
}

TEST(Action, GradientMatchesFiniteDifferences) {
  const auto L = ellipse_pair();
  Rand r(7);
  for (int k : {3, 5, 7}) {
    const ProductAction act(L, k);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector th = r.vec(k * 2, 0.0, kTwoPi);
      const Vector fd = fd_jacobian([&](const Vector& v) { return Vector::Constant(1, act.value(v)); }, th).transpose();
      EXPECT_LE((act.gradient(th) - fd).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(Reconstruction, MidpointIdentity) {
  Rand r(8);
  for (int k = 3; k <= 9; k += 2) {
    std::vector<DarbouxPoint> qs;
    for (int i = 0; i < k; ++i) qs.emplace_back(r.vec(2), r.vec(2));
    const auto z = reconstruct_orbit(qs);
    for (int i = 0; i < k; ++i)
      EXPECT_LE((z[i] + z[(i + 1) % k] - 2.0 * qs[i]).max_norm(), 1e-14);
  }
  std::vector<DarbouxPoint> even(4, dp(0, 0));
  EXPECT_THROW(reconstruct_orbit(even), precondition_error);
}

TEST(OrbitSearch, CircleEquilateral) {
  const ProductCurveLagrangian L({PlaneCurve::circle()});
  OrbitSearchOptions opt;
  opt.starts = 40;
  const auto res = find_periodic_orbits(L, 3, opt);
  ASSERT_FALSE(res.orbits.empty());
  for (const auto& o : res.orbits) {
    EXPECT_TRUE(orbit_verify(L, o, 1e-6).ok);
    for (int i = 0; i < 3; ++i)
      EXPECT_NEAR(std::abs(angle_diff(o.angles((i + 1) % 3, 0), o.angles(i, 0))), kTwoPi / 3, 1e-6);
  }
}

TEST(OrbitSearch, EllipsePairTriangles) {
  const auto L = ellipse_pair();
  OrbitSearchOptions opt;
  opt.starts = 60;
  const auto res = find_periodic_orbits(L, 3, opt);
  ASSERT_FALSE(res.orbits.empty()) << res.diagnostic;
  bool any_max = false;
  for (const auto& o : res.orbits) {
    const auto rep = orbit_verify(L, o, 1e-6);
    EXPECT_TRUE(rep.ok) << rep.max_defect;
    EXPECT_GE(o.margin, 1e-6);
    any_max = any_max || o.is_max;
    for (int i = 0; i < 3; ++i)
      EXPECT_LE((o.points[i] + o.points[(i + 1) % 3] - 2.0 * o.midpoints[i]).max_norm(), 1e-14);
    // each projection is fixed by 3-fold planar stepping
    for (int c = 0; c < 2; ++c) {
      const auto& curve = L.curves()[static_cast<std::size_t>(c)];
      const Vec2 z0(o.points[0].x[c], o.points[0].y[c]);
      double best = std::numeric_limits<double>::infinity();
      for (auto br : {Branch::forward, Branch::backward}) {
        Vec2 z = z0;
        for (int s = 0; s < 3; ++s) z = planar_outer_step(curve, z, br).b;
        best = std::min(best, (z - z0).norm());
      }
      EXPECT_LE(best, 1e-6);
    }
  }
  EXPECT_TRUE(any_max);
}

TEST(OrbitSearch, DeterministicAcrossThreads) {
  const auto L = ellipse_pair();
  OrbitSearchOptions a;
  a.starts = 16;
  a.seed = 3;
  OrbitSearchOptions b = a;
  b.threads = 4;
  const auto ra = find_periodic_orbits(L, 3, a), rb = find_periodic_orbits(L, 3, b);
  ASSERT_EQ(ra.orbits.size(), rb.orbits.size());
  for (std::size_t i = 0; i < ra.orbits.size(); ++i) EXPECT_EQ(ra.orbits[i].angles, rb.orbits[i].angles);
}

TEST(OrbitSearch, RejectsEvenK) {
  const auto L = ellipse_pair();
  EXPECT_THROW(find_periodic_orbits(L, 4), precondition_error);
  EXPECT_THROW(find_periodic_orbits(L, 1), precondition_error);
}

TEST(OrbitVerify, BacktrackingAndPerturbation) {
  const ProductCurveLagrangian L({PlaneCurve::ellipse(1.3, 0.8)});
  // q_1 = q_2 padded to three points
  Vector th{{0.5, 0.5, 2.0}};
  const auto back = make_orbit_candidate(L, 3, th, false);
  const auto rb = orbit_verify(L, back, 1e-6);
  EXPECT_TRUE(rb.backtracking);
  EXPECT_FALSE(rb.ok);

  OrbitSearchOptions opt;
  opt.starts = 20;
  const auto res = find_periodic_orbits(L, 3, opt);
  ASSERT_FALSE(res.orbits.empty());
  auto orbit = res.orbits.front();
  ASSERT_TRUE(orbit_verify(L, orbit, 1e-6).ok);
  orbit.points[1].x[0] += 1e-3;
  const auto rp = orbit_verify(L, orbit, 1e-6);
  EXPECT_FALSE(rp.ok);
  EXPECT_NEAR(rp.midpoint_defect, 1e-3, 1e-6);
  EXPECT_GE(rp.max_defect, 1e-3 * 0.99);
  EXPECT_LE(rp.max_defect, 1e-2);
}
