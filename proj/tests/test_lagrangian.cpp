#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace lagsweep;
using testing_support::poly;
using testing_support::Rand;

namespace {

Matrix phi_jacobian(const LagrangianGraph& L, const TangentFrame& f) {
  const Eigen::Index n = L.dim();
  Vector qt(2 * n);
  qt << f.q, f.t;
  return fd_jacobian(
      [&](const Vector& v) { return tangent_point(L, TangentFrame(v.head(n), v.tail(n))).stacked(); }, qt);
}

}  // namespace

TEST(Graph, PointOnGraph) {
  const LagrangianGraph c(testing_support::cube1());
  auto p = point_on_graph(c, Vector{{1.0}});
  EXPECT_DOUBLE_EQ(p.x[0], 1.0);
  EXPECT_DOUBLE_EQ(p.y[0], 3.0);

  const LagrangianGraph c2(testing_support::cubes2());
  p = point_on_graph(c2, Vector{{1.0, 1.0}});
  EXPECT_EQ(p.stacked(), (Vector{{1.0, 1.0, 3.0, 3.0}}));

  p = point_on_graph(LagrangianGraph(testing_support::hyp()), Vector::Zero(2));
  EXPECT_EQ(p.max_norm(), 0.0);
  EXPECT_THROW(point_on_graph(c2, Vector{{1.0}}), input_error);
}

TEST(Graph, TangentPoint) {
  const LagrangianGraph c(testing_support::cube1());
  auto p = tangent_point(c, TangentFrame(Vector{{1.0}}, Vector{{1.0}}));
  EXPECT_DOUBLE_EQ(p.x[0], 2.0);
  EXPECT_DOUBLE_EQ(p.y[0], 9.0);

  const LagrangianGraph c2(testing_support::cubes2());
  p = tangent_point(c2, TangentFrame(Vector{{1.0, 1.0}}, Vector{{1.0, 0.0}}));
  EXPECT_EQ(p.stacked(), (Vector{{2.0, 1.0, 9.0, 3.0}}));

  Rand r(1);
  for (int trial = 0; trial < 10; ++trial) {
    const LagrangianGraph g(testing_support::random_germ(r, 3, 0.2));
    const Vector q = r.vec(3);
    EXPECT_EQ(tangent_point(g, TangentFrame(q, Vector::Zero(3))).stacked(), point_on_graph(g, q).stacked());
  }
  EXPECT_THROW(TangentFrame(Vector::Zero(2), Vector::Zero(1)), input_error);
}

TEST(Graph, MatrixAExamples) {
  const LagrangianGraph c(testing_support::cube1());
  const Matrix a1 = matrix_A(c, TangentFrame(Vector{{0.4}}, Vector{{1.5}}));
  EXPECT_DOUBLE_EQ(a1(0, 0), 9.0);
  EXPECT_DOUBLE_EQ(det_A(c, TangentFrame(Vector{{0.4}}, Vector{{1.5}})), 9.0);

  const LagrangianGraph h(testing_support::hyp());
  const Matrix a2 = matrix_A(h, TangentFrame(Vector{{0.3, 0.1}}, Vector{{1.0, 0.0}}));
  EXPECT_EQ(a2, (Matrix{{0.0, 2.0}, {2.0, 2.0}}));
  EXPECT_DOUBLE_EQ(det_A(h, TangentFrame(Vector{{0.3, 0.1}}, Vector{{1.0, 0.0}})), -4.0);
}

TEST(Graph, HyperbolaFamilyDeterminantClosedForm) {
  const LagrangianGraph h(testing_support::hyp());
  Rand r(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector q = r.vec(2, -3, 3), t = r.vec(2, -2, 2);
    const double expect = -4.0 * (t[0] * t[0] + t[0] * t[1] + t[1] * t[1]);
    EXPECT_NEAR(det_A(h, TangentFrame(q, t)), expect, 1e-10);
    EXPECT_LT(det_A(h, TangentFrame(q, t)), 0.0);
  }
}

TEST(Graph, DeterminantMatchesEigenForLargerSizes) {
  Rand r(3);
  for (int n = 1; n <= 6; ++n) {
    const Matrix m = Matrix::Random(n, n);
    EXPECT_NEAR(determinant(m), m.determinant(), 1e-12);
  }
}

TEST(Graph, MatrixAIsSymmetricAndLinearInT) {
  Rand r(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = r.integer(1, 4);
    const LagrangianGraph g(testing_support::random_germ(r, n, 0.5));
    const Vector q = r.vec(n), t = r.vec(n), s = r.vec(n);
    const double al = r(-2, 2), be = r(-2, 2);
    const Matrix at = matrix_A(g, TangentFrame(q, t));
    EXPECT_EQ(at, at.transpose());
    const Matrix lhs = matrix_A(g, TangentFrame(q, al * t + be * s));
    const Matrix rhs = al * at + be * matrix_A(g, TangentFrame(q, s));
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Graph, TangentPointIsAffineInT) {
  Rand r(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = r.integer(1, 3);
    const LagrangianGraph g(testing_support::random_germ(r, n, 0.5));
    const Vector q = r.vec(n), t = r.vec(n);
    auto at = [&](double lam) { return tangent_point(g, TangentFrame(q, lam * t)).stacked(); };
    const Vector second = at(1.7) - 2.0 * at(0.7) + at(-0.3);
    EXPECT_LE(second.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Graph, JacobianDeterminantEqualsDetAUpToSign) {
  Rand r(6);
  int checked = 0;
  while (checked < 50) {
    const int n = r.integer(1, 3);
    const LagrangianGraph g(testing_support::random_germ(r, n, 0.3));
    const TangentFrame f(r.vec(n), r.vec(n));
    const double da = det_A(g, f);
    if (std::abs(da) < 1e-3) continue;
    const double dj = phi_jacobian(g, f).determinant();
    EXPECT_NEAR(std::abs(dj), std::abs(da), 1e-5 * std::abs(da));
    EXPECT_NEAR(dj, (n % 2 == 0 ? 1.0 : -1.0) * da, 1e-5 * std::abs(da));
    ++checked;
  }
}

TEST(Graph, CriticalSet) {
  const LagrangianGraph h(testing_support::hyp());
  EXPECT_TRUE(in_critical_set(h, TangentFrame(Vector{{0.5, 0.2}}, Vector::Zero(2))));
  EXPECT_FALSE(in_critical_set(h, TangentFrame(Vector{{0.5, 0.2}}, Vector{{1.0, 1.0}})));
  EXPECT_DOUBLE_EQ(det_A(h, TangentFrame(Vector{{0.5, 0.2}}, Vector{{1.0, 1.0}})), -12.0);

  const LagrangianGraph c(testing_support::cube1());
  for (double t : {-3.0, -1e-3, 1e-3, 0.5, 10.0})
    EXPECT_FALSE(in_critical_set(c, TangentFrame(Vector{{0.2}}, Vector{{t}})));

  // det A = 6 t1 * 6 t2 vanishes on the axes
  const LagrangianGraph c2(testing_support::cubes2());
  EXPECT_TRUE(in_critical_set(c2, TangentFrame(Vector{{0.1, 0.1}}, Vector{{2.0, 0.0}})));
}

TEST(Graph, CubicDiagonal) {
  EXPECT_TRUE(has_cubic_diagonal(testing_support::cubes2()));
  EXPECT_FALSE(has_cubic_diagonal(testing_support::hyp()));
  EXPECT_FALSE(has_cubic_diagonal(poly(2, {{{3, 0}, 1.0}})));
}

TEST(Graph, NondegeneracyWitness) {
  const LagrangianGraph c(testing_support::cube1());
  auto w = nondegeneracy_witness(c, Vector{{1.0}}, 0.1, 0);
  ASSERT_TRUE(w.has_value());
  const DarbouxPoint foot = point_on_graph(c, Vector{{1.0}});
  EXPECT_GT(std::abs(omega(w->first - foot, w->second - foot)), 1e-10 * 0.01);
  EXPECT_LE(std::abs(w->first.x[0] - 1.0), 0.1);

  EXPECT_TRUE(nondegeneracy_witness(LagrangianGraph(testing_support::cubes2()), Vector::Zero(2), 0.1, 3));

  const LagrangianGraph quad(poly(2, {{{2, 0}, 1.0}, {{1, 1}, -0.5}, {{0, 2}, 2.0}, {{1, 0}, 0.3}}));
  EXPECT_FALSE(nondegeneracy_witness(quad, Vector{{0.2, -0.4}}, 0.5, 0).has_value());
  EXPECT_THROW(nondegeneracy_witness(c, Vector{{1.0}}, 0.0), input_error);
}

TEST(ProductCurves, PointsAndTangents) {
  const ProductCurveLagrangian L({PlaneCurve::ellipse(1.0, 0.6), PlaneCurve::ellipse(1.3, 0.8)});
  const Vector th{{0.3, 2.0}};
  const DarbouxPoint p = L.point(th);
  EXPECT_NEAR(p.x[0], std::cos(0.3), 1e-15);
  EXPECT_NEAR(p.y[0], 0.6 * std::sin(0.3), 1e-15);
  EXPECT_NEAR(p.x[1], 1.3 * std::cos(2.0), 1e-15);
  EXPECT_NEAR(p.y[1], 0.8 * std::sin(2.0), 1e-15);

  const Matrix b = L.tangent_basis(th);
  const Matrix fd = fd_jacobian([&](const Vector& v) { return L.point(v).stacked(); }, th);
  EXPECT_LE((b - fd).cwiseAbs().maxCoeff(), 1e-9);
  // the product is Lagrangian
  const Matrix om = omega_matrix(2);
  EXPECT_LE((b.transpose() * om * b).cwiseAbs().maxCoeff(), 1e-15);

  const Vector back = L.closest_angles(p);
  EXPECT_NEAR(angle_diff(back[0], th[0]), 0.0, 1e-10);
  EXPECT_NEAR(angle_diff(back[1], th[1]), 0.0, 1e-10);
}

TEST(ProductCurves, RejectsNonConvex) {
  // x = cos t, y = sin t + 0.5 sin 3t has inflections
  EXPECT_THROW(ProductCurveLagrangian(
                   {PlaneCurve::circle(1.0), PlaneCurve::trig({0.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0, 0.0, 0.5})}),
               input_error);
  EXPECT_THROW(ProductCurveLagrangian(std::vector<PlaneCurve>{}), input_error);
}
