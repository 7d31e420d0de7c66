#pragma once

// Linear symplectic algebra in Darboux coordinates (x, y) on R^{2n}.
// Sign convention: omega((x,y), (x',y')) = x.y' - y.x'. Stacked vectors are
// laid out as (x_1..x_n, y_1..y_n).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"

namespace lagsweep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct DarbouxPoint {
  Vector x;
  Vector y;

  DarbouxPoint() = default;
  DarbouxPoint(Vector x_, Vector y_) : x(std::move(x_)), y(std::move(y_)) {
    detail::require_dim(static_cast<std::size_t>(y.size()), static_cast<std::size_t>(x.size()),
                        "DarbouxPoint");
  }

  static DarbouxPoint zero(Eigen::Index n) { return {Vector::Zero(n), Vector::Zero(n)}; }

  static DarbouxPoint from_stacked(const Vector& v) {
    if (v.size() % 2 != 0) throw input_error("DarbouxPoint: stacked vector has odd length");
    const auto n = v.size() / 2;
    return {v.head(n), v.tail(n)};
  }

  Eigen::Index dim() const { return x.size(); }

  Vector stacked() const {
    Vector v(2 * dim());
    v << x, y;
    return v;
  }

  DarbouxPoint& operator+=(const DarbouxPoint& o) {
    check(o);
    x += o.x;
    y += o.y;
    return *this;
  }
  DarbouxPoint& operator-=(const DarbouxPoint& o) {
    check(o);
    x -= o.x;
    y -= o.y;
    return *this;
  }
  DarbouxPoint& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend DarbouxPoint operator+(DarbouxPoint a, const DarbouxPoint& b) { return a += b; }
  friend DarbouxPoint operator-(DarbouxPoint a, const DarbouxPoint& b) { return a -= b; }
  friend DarbouxPoint operator*(double s, DarbouxPoint a) { return a *= s; }
  friend DarbouxPoint operator*(DarbouxPoint a, double s) { return a *= s; }

  // Max-abs entry norm.
  double max_norm() const {
    return dim() == 0 ? 0.0 : std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff());
  }
  double norm() const { return std::sqrt(x.squaredNorm() + y.squaredNorm()); }

 private:
  void check(const DarbouxPoint& o) const {
    detail::require_dim(static_cast<std::size_t>(o.dim()), static_cast<std::size_t>(dim()), "DarbouxPoint");
  }
};

inline double omega(const DarbouxPoint& a, const DarbouxPoint& b) {
  detail::require_dim(static_cast<std::size_t>(b.dim()), static_cast<std::size_t>(a.dim()), "omega");
  return a.x.dot(b.y) - a.y.dot(b.x);
}

// Matrix of omega in the stacked (x, y) basis: omega(a, b) = a^T Omega b.
inline Matrix omega_matrix(Eigen::Index n) {
  Matrix om = Matrix::Zero(2 * n, 2 * n);
  om.topRightCorner(n, n) = Matrix::Identity(n, n);
  om.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return om;
}

inline constexpr double kDefaultFdStep = 1e-5;

// Central-difference Jacobian of a vector map R^m -> R^k.
template <typename Map>
Matrix fd_jacobian(Map&& map, const Vector& point, double step = kDefaultFdStep) {
  if (!(step > 0.0)) throw input_error("fd_jacobian: step must be positive");
  const Eigen::Index m = point.size();
  Matrix jac;
  Vector probe = point;
  for (Eigen::Index j = 0; j < m; ++j) {
    probe[j] = point[j] + step;
    const Vector fp = map(probe);
    probe[j] = point[j] - step;
    const Vector fm = map(probe);
    probe[j] = point[j];
    if (j == 0) jac.resize(fp.size(), m);
    jac.col(j) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

struct SymplecticCheck {
  bool ok = false;
  double defect = 0.0;  // max |J^T Omega J - Omega|
};

inline SymplecticCheck is_symplectic(const Matrix& jac, double tol) {
  if (jac.rows() != jac.cols() || jac.rows() % 2 != 0)
    throw input_error("is_symplectic: matrix must be square of even size");
  const Matrix om = omega_matrix(jac.rows() / 2);
  const double defect =
      jac.rows() == 0 ? 0.0 : (jac.transpose() * om * jac - om).cwiseAbs().maxCoeff();
  return {defect <= tol, defect};
}

}  // namespace lagsweep
