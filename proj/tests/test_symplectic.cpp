#include <gtest/gtest.h>

#include "support.hpp"

using namespace lagsweep;
using testing_support::Rand;

namespace {

DarbouxPoint pt(std::initializer_list<double> x, std::initializer_list<double> y) {
  Vector vx(static_cast<Eigen::Index>(x.size())), vy(static_cast<Eigen::Index>(y.size()));
  Eigen::Index i = 0;
  for (double v : x) vx[i++] = v;
  i = 0;
  for (double v : y) vy[i++] = v;
  return {vx, vy};
}

DarbouxPoint random_point(Rand& r, int n) { return {r.vec(n), r.vec(n)}; }

}  // namespace

TEST(Omega, Examples) {
  EXPECT_DOUBLE_EQ(omega(pt({1}, {0}), pt({0}, {1})), 1.0);
  const auto a = pt({0.3, -1.2}, {2.0, 0.7});
  EXPECT_DOUBLE_EQ(omega(a, a), 0.0);

  // basis pairings in n = 2: only omega(e_xi, e_yi) = 1
  std::vector<DarbouxPoint> basis;
  for (int k = 0; k < 4; ++k) {
    DarbouxPoint p = DarbouxPoint::zero(2);
    (k < 2 ? p.x : p.y)[k % 2] = 1.0;
    basis.push_back(p);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect = (j == i + 2) ? 1.0 : (i == j + 2 ? -1.0 : 0.0);
      EXPECT_DOUBLE_EQ(omega(basis[i], basis[j]), expect);
    }
}

TEST(Omega, DimensionMismatch) {
  EXPECT_THROW(omega(DarbouxPoint::zero(1), DarbouxPoint::zero(2)), input_error);
  EXPECT_THROW(DarbouxPoint(Vector::Zero(2), Vector::Zero(3)), input_error);
}

TEST(Omega, BilinearAntisymmetric) {
  Rand r(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = r.integer(1, 5);
    const auto a = random_point(r, n), b = random_point(r, n), c = random_point(r, n);
    const double s = r(-3, 3), u = r(-3, 3);
    EXPECT_NEAR(omega(a, b), -omega(b, a), 1e-14);
    EXPECT_NEAR(omega(s * a + u * b, c), s * omega(a, c) + u * omega(b, c), 1e-12);
    EXPECT_NEAR(omega(a, b), a.stacked().dot(omega_matrix(n) * b.stacked()), 1e-14);
  }
}

TEST(Omega, MatrixSquaresToMinusIdentity) {
  for (int n = 1; n <= 5; ++n) {
    const Matrix om = omega_matrix(n);
    EXPECT_EQ(om * om, -Matrix::Identity(2 * n, 2 * n));
  }
}

TEST(FdJacobian, LinearAndIdentity) {
  Rand r(2);
  const Matrix m = Matrix::Random(3, 4);
  const Matrix j = fd_jacobian([&](const Vector& v) -> Vector { return m * v; }, r.vec(4));
  EXPECT_LE((j - m).cwiseAbs().maxCoeff(), 1e-10);
  const Matrix id = fd_jacobian([](const Vector& v) { return v; }, r.vec(5));
  EXPECT_LE((id - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(fd_jacobian([](const Vector& v) { return v; }, r.vec(2), 0.0), input_error);
}

TEST(FdJacobian, QuadraticMapMatchesAnalytic) {
  Rand r(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = Matrix::Random(3, 3), b = Matrix::Random(3, 3);
    auto f = [&](const Vector& v) -> Vector {
      Vector out(3);
      out << v.dot(a * v), v.dot(b * v), v[0] * v[1] - v[2];
      return out;
    };
    const Vector p = r.vec(3);
    Matrix exact(3, 3);
    exact.row(0) = ((a + a.transpose()) * p).transpose();
    exact.row(1) = ((b + b.transpose()) * p).transpose();
    exact.row(2) << p[1], p[0], -1.0;
    EXPECT_LE((fd_jacobian(f, p, 1e-5) - exact).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(FdJacobian, TangentMapOfCubeCurve) {
  // (q, t) -> (q + t, 3q^2 + 6qt) at (1, 1): det = 6 - 12 = -6
  auto phi = [](const Vector& v) -> Vector {
    return Vector{{v[0] + v[1], 3 * v[0] * v[0] + 6 * v[0] * v[1]}};
  };
  EXPECT_NEAR(fd_jacobian(phi, Vector{{1.0, 1.0}}).determinant(), -6.0, 1e-8);
}

TEST(IsSymplectic, Examples) {
  auto r = is_symplectic(Matrix::Identity(4, 4), 1e-12);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.defect, 0.0);

  Matrix squeeze(2, 2);
  squeeze << 2.0, 0.0, 0.0, 0.5;
  r = is_symplectic(squeeze, 1e-12);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.defect, 0.0);

  r = is_symplectic(2.0 * Matrix::Identity(2, 2), 1e-9);
  EXPECT_FALSE(r.ok);
  EXPECT_DOUBLE_EQ(r.defect, 3.0);

  EXPECT_THROW(is_symplectic(Matrix::Identity(3, 3), 1e-9), input_error);
  EXPECT_THROW(is_symplectic(Matrix::Zero(2, 4), 1e-9), input_error);
}

TEST(IsSymplectic, ShearsAndRotations) {
  Rand r(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = r.integer(1, 4);
    Matrix s = Matrix::Random(n, n);
    s = 0.5 * (s + s.transpose()).eval();
    Matrix shear = Matrix::Identity(2 * n, 2 * n);
    shear.topRightCorner(n, n) = s;
    EXPECT_TRUE(is_symplectic(shear, 1e-12).ok);
    Matrix bad = shear;
    bad(0, 0) += 0.1;
    EXPECT_FALSE(is_symplectic(bad, 1e-6).ok);
  }
}
