#pragma once

// Small dense solvers shared by the root counter and the orbit finders.

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace lagsweep::detail {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Minimum-norm solution of jac * x = rhs, dropping singular values below
// 1e-12 of the largest. Handles exactly singular Jacobians (symmetry
// families, singular roots) without blowing up.
inline Vector pinv_solve(const Matrix& jac, const Vector& rhs) {
  Eigen::JacobiSVD<Matrix> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  return svd.solve(rhs);
}

struct NewtonResult {
  Vector x;
  double residual = 0.0;  // max-abs
  bool converged = false;
  int iterations = 0;
};

// Damped Newton for residual(x) = 0 with Armijo backtracking on 0.5 |r|^2.
// Once the tolerance is met, iteration continues while steps still reduce the
// residual, so singular roots get polished past the tolerance.
template <typename Residual, typename Jacobian>
NewtonResult damped_newton(Residual&& residual, Jacobian&& jacobian, Vector x, double tol, int max_iter,
                           double escape_radius = std::numeric_limits<double>::infinity()) {
  NewtonResult res;
  Vector r = residual(x);
  double merit = 0.5 * r.squaredNorm();
  bool met = false;
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    if (!r.allFinite()) break;
    if (r.lpNorm<Eigen::Infinity>() <= tol) met = true;
    const Vector step = pinv_solve(jacobian(x), -r);
    if (!step.allFinite()) break;
    if (met && step.norm() <= 1e-15 * (1.0 + x.norm())) break;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Vector trial = x + alpha * step;
      const Vector rt = residual(trial);
      const double mt = 0.5 * rt.squaredNorm();
      if (std::isfinite(mt) && mt <= (1.0 - 2e-4 * alpha) * merit) {
        x = trial;
        r = rt;
        merit = mt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted || x.norm() > escape_radius) break;
  }
  res.x = x;
  res.residual = r.allFinite() ? r.lpNorm<Eigen::Infinity>() : std::numeric_limits<double>::infinity();
  res.converged = res.residual <= tol;
  return res;
}

struct AscentResult {
  Vector x;
  double value = 0.0;
  double grad_norm = 0.0;  // max-abs
  int iterations = 0;
};

// BFGS ascent with Armijo backtracking. `value_grad(x, g)` returns f(x) and
// writes the gradient into g.
template <typename ValueGrad>
AscentResult bfgs_maximize(ValueGrad&& value_grad, Vector x, double gtol, int max_iter) {
  const Eigen::Index m = x.size();
  Vector g(m), g_new(m);
  double f = value_grad(x, g);
  Matrix hinv = Matrix::Identity(m, m);
  AscentResult res;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= gtol) break;
    Vector dir = hinv * g;
    double slope = g.dot(dir);
    if (!(slope > 0.0)) {
      hinv.setIdentity();
      dir = g;
      slope = g.squaredNorm();
    }
    double alpha = 1.0;
    bool accepted = false;
    Vector x_new;
    double f_new = f;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = x + alpha * dir;
      f_new = value_grad(x_new, g_new);
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    const Vector s = x_new - x;
    const Vector y = g - g_new;  // gradient of -f changes by -(g_new - g)
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (it == 0) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Matrix id = Matrix::Identity(m, m);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = x_new;
    f = f_new;
    g = g_new;
  }
  res.x = x;
  res.value = f;
  res.grad_norm = g.lpNorm<Eigen::Infinity>();
  res.iterations = it;
  return res;
}

}  // namespace lagsweep::detail
