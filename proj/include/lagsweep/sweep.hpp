#pragma once

// Tangent sweep -> tangent cluster map, its symplecticity check, and the
// local multiplicity of the covering of R^{2n} by the tangent spaces of L.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"
#include "lagsweep/lagrangian.hpp"
#include "lagsweep/optimize.hpp"
#include "lagsweep/parallel.hpp"
#include "lagsweep/polynomial.hpp"
#include "lagsweep/symplectic.hpp"

namespace lagsweep {

// source = phi(q, t), the point of the affine tangent space in place;
// target = psi(q, t), the same point after translating the foot to the origin.
struct SweepSample {
  TangentFrame frame;
  DarbouxPoint source;
  DarbouxPoint target;
};

inline SweepSample sweep_map(const LagrangianGraph& L, const TangentFrame& f) {
  SweepSample s;
  s.frame = f;
  s.source = tangent_point(L, f);
  s.target = DarbouxPoint(f.t, L.hessian_at(f.q) * f.t);
  return s;
}

struct SymplectomorphismOptions {
  double step = kDefaultFdStep;
  double tol = 1e-6;
  double critical_tol = kDefaultCriticalTol;
  // When false the critical-set precondition is skipped; used for
  // degenerate generating functions whose pullbacks are still comparable.
  bool require_regular = true;
};

struct SymplectomorphismReport {
  bool ok = false;
  double defect = 0.0;  // max |Jphi^T Omega Jphi - Jpsi^T Omega Jpsi|
};

// Compares the pullbacks of omega under phi and psi in (q, t) coordinates;
// equality is the statement that psi o phi^{-1} is symplectic, checked
// without inverting phi.
inline SymplectomorphismReport verify_symplectomorphism(const LagrangianGraph& L, const TangentFrame& f,
                                                        const SymplectomorphismOptions& opt = {}) {
  if (opt.require_regular && in_critical_set(L, f, opt.critical_tol))
    throw precondition_error("verify_symplectomorphism: frame lies on the critical set");
  const Eigen::Index n = L.dim();
  Vector qt(2 * n);
  qt << f.q, f.t;
  auto split = [n](const Vector& v) { return TangentFrame(v.head(n), v.tail(n)); };
  const Matrix jphi = fd_jacobian([&](const Vector& v) { return tangent_point(L, split(v)).stacked(); }, qt, opt.step);
  const Matrix jpsi = fd_jacobian([&](const Vector& v) { return sweep_map(L, split(v)).target.stacked(); }, qt, opt.step);
  const Matrix om = omega_matrix(n);
  const double defect = (jphi.transpose() * om * jphi - jpsi.transpose() * om * jpsi).cwiseAbs().maxCoeff();
  return {defect <= opt.tol, defect};
}

// Phi_x(q) = x . grad F - q . grad F + 2F; its gradient at q equals
// grad F(q) + Hess F(q) (x - q), the y-coordinate of the tangent space at q
// evaluated over x.
inline SparsePolynomial critical_function(const LagrangianGraph& L, const Vector& x) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(x.size()), static_cast<std::size_t>(n), "critical_function");
  SparsePolynomial phi = 2.0 * L.F();
  for (int i = 0; i < n; ++i) {
    phi += x[i] * L.grad()[i];
    phi -= SparsePolynomial::monomial(n, i, 1) * L.grad()[i];
  }
  return phi;
}

struct SearchBox {
  Vector lo;
  Vector hi;

  static SearchBox cube(Eigen::Index n, double half_width = 1.0, const Vector& center = Vector()) {
    const Vector c = center.size() == 0 ? Vector::Zero(n) : center;
    return {c.array() - half_width, c.array() + half_width};
  }

  Eigen::Index dim() const { return lo.size(); }
  double diameter() const { return (hi - lo).norm(); }
  bool contains(const Vector& q, double slack = 0.0) const {
    return ((q.array() >= lo.array() - slack) && (q.array() <= hi.array() + slack)).all();
  }
};

struct RootOptions {
  int grid = 16;                 // starts per axis
  double tol = 1e-10;            // absolute residual tolerance
  int max_iter = 60;
  double critical_tol = kDefaultCriticalTol;
  unsigned threads = 1;
};

struct Root {
  Vector q;
  double residual = 0.0;
  double det_a = 0.0;
  bool near_critical = false;
};

struct RootReport {
  std::vector<Root> roots;  // all converged, deduplicated roots
  int count = 0;            // roots off the critical set
  int starts = 0;
  int converged_starts = 0;
  bool all_diverged = false;

  std::vector<Root> flagged_near_critical() const {
    std::vector<Root> out;
    std::copy_if(roots.begin(), roots.end(), std::back_inserter(out), [](const Root& r) { return r.near_critical; });
    return out;
  }
};

namespace detail {

inline bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace detail

// Finds the foot points q in `box` whose tangent space contains `test`, by
// solving grad Phi_x(q) = y from every node of a uniform grid.
inline RootReport count_tangent_spaces(const LagrangianGraph& L, const DarbouxPoint& test, const SearchBox& box,
                                       const RootOptions& opt = {}) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(test.dim()), static_cast<std::size_t>(n), "count_tangent_spaces");
  detail::require_dim(static_cast<std::size_t>(box.dim()), static_cast<std::size_t>(n), "count_tangent_spaces box");
  if (opt.grid < 8) throw input_error("count_tangent_spaces: grid must be at least 8");
  if (!(box.hi.array() > box.lo.array()).all() || !box.lo.allFinite() || !box.hi.allFinite())
    throw input_error("count_tangent_spaces: box must be bounded and non-empty");

  const SparsePolynomial phi = critical_function(L, test.x);
  const std::vector<SparsePolynomial> grad_phi = gradient(phi);
  const PolyMatrix hess_phi = hessian(phi);
  auto residual = [&](const Vector& q) -> Vector { return eval_vector(grad_phi, q) - test.y; };
  auto jacobian = [&](const Vector& q) -> Matrix { return eval_matrix(hess_phi, q); };

  std::size_t starts = 1;
  for (int i = 0; i < n; ++i) starts *= static_cast<std::size_t>(opt.grid);
  const double diam = box.diameter();

  std::vector<detail::NewtonResult> results(starts);
  detail::parallel_for(starts, opt.threads, [&](std::size_t s) {
    Vector q0(n);
    std::size_t rem = s;
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<double>(rem % static_cast<std::size_t>(opt.grid));
      rem /= static_cast<std::size_t>(opt.grid);
      q0[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * (idx + 0.5) / opt.grid;
    }
    results[s] = detail::damped_newton(residual, jacobian, q0, opt.tol, opt.max_iter, 1e6 * (1.0 + diam));
  });

  std::vector<Root> found;
  RootReport report;
  report.starts = static_cast<int>(starts);
  for (const auto& r : results) {
    if (!r.converged) continue;
    ++report.converged_starts;
    if (!box.contains(r.x, 1e-9 * diam)) continue;
    found.push_back(Root{r.x, r.residual});
  }
  report.all_diverged = report.converged_starts == 0;
  std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) { return detail::lex_less(a.q, b.q); });

  const double dedupe = 1e-6 * diam;
  for (auto& cand : found) {
    const bool dup = std::any_of(report.roots.begin(), report.roots.end(),
                                 [&](const Root& k) { return (k.q - cand.q).norm() <= dedupe; });
    if (dup) continue;
    const TangentFrame frame(cand.q, test.x - cand.q);
    cand.det_a = det_A(L, frame);
    cand.near_critical = in_critical_set(L, frame, opt.critical_tol);
    if (!cand.near_critical) ++report.count;
    report.roots.push_back(cand);
  }
  return report;
}

// Alternating sum n! V_n - (n-1)! V_{n-1} + ... + (-1)^n for the simplex cut
// out by the coordinate hyperplanes and the axis intercepts d_i. The
// k-dimensional volume over the coordinate plane spanned by S is
// prod_{i in S} d_i / k!.
inline long long newton_number(const std::vector<int>& intercepts) {
  const auto n = intercepts.size();
  if (n == 0 || n > 20) throw input_error("newton_number: need 1..20 intercepts");
  for (int d : intercepts)
    if (d < 1) throw input_error("newton_number: intercepts must be positive");

  std::vector<double> volume(n + 1, 0.0);  // V_k
  double factorial[21] = {1.0};
  for (std::size_t k = 1; k <= n; ++k) factorial[k] = factorial[k - 1] * static_cast<double>(k);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double prod = 1.0;
    int k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        prod *= intercepts[i];
        ++k;
      }
    volume[static_cast<std::size_t>(k)] += prod / factorial[k];
  }
  double nu = (n % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    nu += sign * factorial[k] * volume[k];
  }
  const auto alternating = static_cast<long long>(std::llround(nu));

  long long closed = 1;
  for (int d : intercepts) closed *= (d - 1);
  if (alternating != closed)
    throw std::logic_error("newton_number: alternating sum " + std::to_string(alternating) +
                           " disagrees with product form " + std::to_string(closed));
  return alternating;
}

// Generic local multiplicity 2^{n-m}, m = number of nonzero components of x.
// Requires F to be a germ at the origin tangent to the q-space (no terms of
// degree 1 or 2) with all q_i^3 present; genericity beyond that is assumed.
inline long long predicted_multiplicity(const LagrangianGraph& L, const Vector& x) {
  const int n = L.dim();
  detail::require_dim(static_cast<std::size_t>(x.size()), static_cast<std::size_t>(n), "predicted_multiplicity");
  if (!has_cubic_diagonal(L.F()))
    throw precondition_error("predicted_multiplicity: F lacks a nonzero q_i^3 term for some i");
  for (const auto& t : L.F().terms())
    if (t.degree() == 1 || t.degree() == 2)
      throw precondition_error("predicted_multiplicity: F has linear or quadratic terms; germ is not normalized");
  std::vector<int> intercepts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) intercepts[static_cast<std::size_t>(i)] = x[i] != 0.0 ? 2 : 3;
  return newton_number(intercepts);
}

}  // namespace lagsweep
