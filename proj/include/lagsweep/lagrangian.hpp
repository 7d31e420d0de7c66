#pragma once

// Lagrangian submanifolds of R^{2n}: graphs p = grad F(q) of a polynomial
// generating function, and products of strictly convex plane curves.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"
#include "lagsweep/plane_curve.hpp"
#include "lagsweep/polynomial.hpp"
#include "lagsweep/random.hpp"
#include "lagsweep/symplectic.hpp"

namespace lagsweep {

// A foot point parameter q on L together with tangent-space coordinates t.
struct TangentFrame {
  Vector q;
  Vector t;

  TangentFrame() = default;
  TangentFrame(Vector q_, Vector t_) : q(std::move(q_)), t(std::move(t_)) {
    detail::require_dim(static_cast<std::size_t>(t.size()), static_cast<std::size_t>(q.size()), "TangentFrame");
  }
};

// Graph of the differential of F. Derivative polynomials up to third order
// are computed once at construction.
class LagrangianGraph {
 public:
  explicit LagrangianGraph(SparsePolynomial f)
      : f_(std::move(f)), grad_(gradient(f_)), hess_(hessian(f_)), third_(third_tensor(f_)) {}

  int dim() const { return f_.nvars(); }
  const SparsePolynomial& F() const { return f_; }
  const std::vector<SparsePolynomial>& grad() const { return grad_; }
  const PolyMatrix& hess() const { return hess_; }
  const PolyTensor3& third() const { return third_; }

  Vector gradient_at(const Vector& q) const { return eval_vector(grad_, check(q)); }
  Matrix hessian_at(const Vector& q) const { return eval_matrix(hess_, check(q)); }

  double max_abs_third(const Vector& q) const {
    double m = 0.0;
    for (const auto& plane : third_)
      for (const auto& row : plane)
        for (const auto& p : row) m = std::max(m, std::abs(p.eval(q)));
    return m;
  }

 private:
  const Vector& check(const Vector& q) const {
    detail::require_dim(static_cast<std::size_t>(q.size()), static_cast<std::size_t>(dim()), "LagrangianGraph");
    return q;
  }

  SparsePolynomial f_;
  std::vector<SparsePolynomial> grad_;
  PolyMatrix hess_;
  PolyTensor3 third_;
};

inline DarbouxPoint point_on_graph(const LagrangianGraph& L, const Vector& q) {
  return {q, L.gradient_at(q)};
}

// The map TL -> R^{2n}, (q, t) -> (q + t, grad F(q) + Hess F(q) t).
inline DarbouxPoint tangent_point(const LagrangianGraph& L, const TangentFrame& f) {
  detail::require_dim(static_cast<std::size_t>(f.q.size()), static_cast<std::size_t>(L.dim()), "tangent_point");
  return {f.q + f.t, L.gradient_at(f.q) + L.hessian_at(f.q) * f.t};
}

// a_ij = sum_k t_k F_{q_i q_j q_k}.
inline Matrix matrix_A(const LagrangianGraph& L, const TangentFrame& f) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(f.q.size()), static_cast<std::size_t>(n), "matrix_A");
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        if (f.t[k] != 0.0) s += f.t[k] * L.third()[i][j][k].eval(f.q);
      a(i, j) = s;
      a(j, i) = s;
    }
  return a;
}

// Closed forms up to 3x3, partial-pivot LU beyond.
inline double determinant(const Matrix& m) {
  switch (m.rows()) {
    case 0: return 1.0;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.partialPivLu().determinant();
  }
}

inline double det_A(const LagrangianGraph& L, const TangentFrame& f) { return determinant(matrix_A(L, f)); }

inline constexpr double kDefaultCriticalTol = 1e-8;

// Membership in the critical set: |det A| small relative to the local scale
// max(1, |t|^n max|F_ijk(q)|), since det A is homogeneous of degree n in t.
inline bool in_critical_set(const LagrangianGraph& L, const TangentFrame& f, double tol = kDefaultCriticalTol) {
  const double scale = std::max(1.0, std::pow(f.t.norm(), L.dim()) * L.max_abs_third(f.q));
  return std::abs(det_A(L, f)) <= tol * scale;
}

// True when every q_i^3 has a nonzero coefficient.
inline bool has_cubic_diagonal(const SparsePolynomial& F) {
  for (int i = 0; i < F.nvars(); ++i) {
    Exponents e(F.nvars(), 0);
    e[i] = 3;
    if (F.coeff(e) == 0.0) return false;
  }
  return true;
}

inline constexpr int kWitnessBudget = 1000;

// Searches for q1, q2 on L within `radius` of the foot q with
// omega(q1 - q, q2 - q) != 0. Failure means L looks like a piece of an affine
// Lagrangian space near q.
inline std::optional<std::pair<DarbouxPoint, DarbouxPoint>> nondegeneracy_witness(const LagrangianGraph& L,
                                                                                   const Vector& q, double radius,
                                                                                   std::uint64_t seed = 0) {
  if (!(radius > 0.0)) throw input_error("nondegeneracy_witness: radius must be positive");
  const DarbouxPoint foot = point_on_graph(L, q);
  detail::Rng rng(seed);
  const int n = L.dim();
  auto draw = [&] {
    Vector u(n);
    do {
      for (int i = 0; i < n; ++i) u[i] = rng.uniform(-radius, radius);
    } while (u.norm() > radius);
    return point_on_graph(L, q + u);
  };
  for (int trial = 0; trial < kWitnessBudget; ++trial) {
    DarbouxPoint a = draw(), b = draw();
    if (std::abs(omega(a - foot, b - foot)) > 1e-10 * radius * radius) return std::make_pair(a, b);
  }
  return std::nullopt;
}

// L = gamma_1 x ... x gamma_n with gamma_i in the i-th (x_i, y_i) plane,
// parameterized by one angle per curve.
class ProductCurveLagrangian {
 public:
  explicit ProductCurveLagrangian(std::vector<PlaneCurve> curves) : curves_(std::move(curves)) {
    if (curves_.empty()) throw input_error("ProductCurveLagrangian: need at least one curve");
    for (const auto& c : curves_) c.validate();
  }

  int dim() const { return static_cast<int>(curves_.size()); }
  const std::vector<PlaneCurve>& curves() const { return curves_; }

  DarbouxPoint point(const Vector& angles) const {
    detail::require_dim(static_cast<std::size_t>(angles.size()), curves_.size(), "ProductCurveLagrangian::point");
    DarbouxPoint p = DarbouxPoint::zero(dim());
    for (int i = 0; i < dim(); ++i) {
      const Vec2 g = curves_[i].point(angles[i]);
      p.x[i] = g.x();
      p.y[i] = g.y();
    }
    return p;
  }

  // Columns are the stacked tangent vectors d/dtheta_i, one per factor.
  Matrix tangent_basis(const Vector& angles) const {
    detail::require_dim(static_cast<std::size_t>(angles.size()), curves_.size(), "ProductCurveLagrangian::tangent_basis");
    const int n = dim();
    Matrix b = Matrix::Zero(2 * n, n);
    for (int i = 0; i < n; ++i) {
      const Vec2 d = curves_[i].tangent(angles[i]);
      b(i, i) = d.x();
      b(n + i, i) = d.y();
    }
    return b;
  }

  // Per-factor closest-point parameters.
  Vector closest_angles(const DarbouxPoint& p) const {
    Vector a(dim());
    for (int i = 0; i < dim(); ++i) a[i] = curves_[i].closest_parameter(Vec2(p.x[i], p.y[i]));
    return a;
  }

 private:
  std::vector<PlaneCurve> curves_;
};

using LagrangianModel = std::variant<LagrangianGraph, ProductCurveLagrangian>;

}  // namespace lagsweep
