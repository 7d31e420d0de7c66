#pragma once

// The outer billiard correspondence relative to a Lagrangian L: two points
// correspond when they lie on one affine tangent space of L, symmetric about
// its foot point. Includes the linear identification of R^{2n} x R^{2n} with
// T*R^{2n} under which the correspondence is the conormal bundle of L, the
// alternating action on L^k and a multi-start search for its critical points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"
#include "lagsweep/lagrangian.hpp"
#include "lagsweep/optimize.hpp"
#include "lagsweep/parallel.hpp"
#include "lagsweep/planar.hpp"
#include "lagsweep/random.hpp"
#include "lagsweep/sweep.hpp"
#include "lagsweep/symplectic.hpp"

namespace lagsweep {

struct CorrespondencePair {
  DarbouxPoint a;
  DarbouxPoint b;
  DarbouxPoint foot;
  TangentFrame frame;
};

inline CorrespondencePair step_from_foot(const LagrangianGraph& L, const TangentFrame& f) {
  CorrespondencePair p;
  p.frame = f;
  p.foot = point_on_graph(L, f.q);
  p.a = tangent_point(L, f);
  p.b = 2.0 * p.foot - p.a;
  return p;
}

struct CorrespondenceReport {
  std::vector<CorrespondencePair> pairs;
  std::vector<bool> near_critical;  // parallel to pairs
  RootReport roots;
};

// All partners of `a` whose foot lies in `box`. The correspondence is
// multi-valued; each foot found by the tangent-space counter gives one
// partner b = 2 foot - a.
inline CorrespondenceReport correspondents(const LagrangianGraph& L, const DarbouxPoint& a, const SearchBox& box,
                                           const RootOptions& opt = {}) {
  CorrespondenceReport rep;
  rep.roots = count_tangent_spaces(L, a, box, opt);
  for (const auto& r : rep.roots.roots) {
    rep.pairs.push_back(step_from_foot(L, TangentFrame(r.q, a.x - r.q)));
    rep.near_critical.push_back(r.near_critical);
  }
  return rep;
}

// Follows a single branch of the correspondence: Newton on the foot point
// starting from `foot_guess`. The residual is the y-mismatch of the tangent
// space through a at q, whose Jacobian in q is the matrix A(q, x - q).
inline std::optional<CorrespondencePair> track_correspondent(const LagrangianGraph& L, const DarbouxPoint& a,
                                                             const Vector& foot_guess, double tol = 1e-12) {
  auto residual = [&](const Vector& q) -> Vector { return tangent_point(L, TangentFrame(q, a.x - q)).y - a.y; };
  auto jacobian = [&](const Vector& q) -> Matrix { return matrix_A(L, TangentFrame(q, a.x - q)); };
  const auto res = detail::damped_newton(residual, jacobian, foot_guess, tol, 60);
  if (!res.converged) return std::nullopt;
  return step_from_foot(L, TangentFrame(res.x, a.x - res.x));
}

// Cotangent coordinates of a pair (a, abar):
// q1 = (x + xbar)/2, q2 = (y + ybar)/2, p1 = (ybar - y)/2, p2 = (x - xbar)/2.
struct IsoCoords {
  Vector q1, q2, p1, p2;
};

inline IsoCoords linear_iso(const DarbouxPoint& a, const DarbouxPoint& abar) {
  detail::require_dim(static_cast<std::size_t>(abar.dim()), static_cast<std::size_t>(a.dim()), "linear_iso");
  return {0.5 * (a.x + abar.x), 0.5 * (a.y + abar.y), 0.5 * (abar.y - a.y), 0.5 * (a.x - abar.x)};
}

inline std::pair<DarbouxPoint, DarbouxPoint> linear_iso_inverse(const IsoCoords& c) {
  return {DarbouxPoint(c.q1 + c.p2, c.q2 - c.p1), DarbouxPoint(c.q1 - c.p2, c.q2 + c.p1)};
}

// Matrix of linear_iso from stacked (x, y, xbar, ybar) to stacked (q1, q2, p1, p2).
inline Matrix linear_iso_matrix(Eigen::Index n) {
  const Matrix id = Matrix::Identity(n, n);
  Matrix m = Matrix::Zero(4 * n, 4 * n);
  m.block(0, 0, n, n) = 0.5 * id;       // q1 <- x
  m.block(0, 2 * n, n, n) = 0.5 * id;   // q1 <- xbar
  m.block(n, n, n, n) = 0.5 * id;       // q2 <- y
  m.block(n, 3 * n, n, n) = 0.5 * id;   // q2 <- ybar
  m.block(2 * n, n, n, n) = -0.5 * id;  // p1 <- y
  m.block(2 * n, 3 * n, n, n) = 0.5 * id;
  m.block(3 * n, 0, n, n) = 0.5 * id;   // p2 <- x
  m.block(3 * n, 2 * n, n, n) = -0.5 * id;
  return m;
}

struct ConormalReport {
  bool ok = false;
  double midpoint_defect = 0.0;  // distance of (q1, q2) from L, max-abs
  double tangency_defect = 0.0;  // max |p . v| over the tangent basis v
};

// (a, abar) is in the correspondence iff (q1, q2) lies on L and (p1, p2)
// annihilates T_{(q1,q2)} L. For graphs the tangent basis is (e_j, Hess F e_j)
// at q = q1.
inline ConormalReport conormal_check(const LagrangianGraph& L, const DarbouxPoint& a, const DarbouxPoint& abar,
                                     double tol) {
  const IsoCoords c = linear_iso(a, abar);
  ConormalReport r;
  r.midpoint_defect = (c.q2 - L.gradient_at(c.q1)).cwiseAbs().maxCoeff();
  const Matrix h = L.hessian_at(c.q1);
  // column j of the basis is (e_j, h e_j): p . v_j = p1_j + (h^T p2)_j
  r.tangency_defect = (c.p1 + h.transpose() * c.p2).cwiseAbs().maxCoeff();
  r.ok = r.midpoint_defect <= tol && r.tangency_defect <= tol;
  return r;
}

// Product-of-curves version with unit tangents. When `angles` is absent the
// foot is the per-factor closest point to the midpoint.
inline ConormalReport conormal_check(const ProductCurveLagrangian& L, const DarbouxPoint& a, const DarbouxPoint& abar,
                                     double tol, const std::optional<Vector>& angles = std::nullopt) {
  const IsoCoords c = linear_iso(a, abar);
  const DarbouxPoint mid(c.q1, c.q2);
  const Vector th = angles ? *angles : L.closest_angles(mid);
  ConormalReport r;
  r.midpoint_defect = (mid - L.point(th)).max_norm();
  r.tangency_defect = 0.0;
  for (int i = 0; i < L.dim(); ++i) {
    const Vec2 u = L.curves()[static_cast<std::size_t>(i)].tangent(th[i]).normalized();
    r.tangency_defect = std::max(r.tangency_defect, std::abs(c.p1[i] * u.x() + c.p2[i] * u.y()));
  }
  r.ok = r.midpoint_defect <= tol && r.tangency_defect <= tol;
  return r;
}

// sum_{i<j} (-1)^{i+j} omega(q_i, q_j).
inline double action(std::span<const DarbouxPoint> qs) {
  if (qs.size() < 3) throw input_error("action: need at least three points");
  double v = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = i + 1; j < qs.size(); ++j) v += ((i + j) % 2 == 0 ? 1.0 : -1.0) * omega(qs[i], qs[j]);
  return v;
}

// z_1 = q_1 - q_2 + ... + q_k and z_{i+1} = 2 q_i - z_i, which inverts
// z_i + z_{i+1} = 2 q_i for odd k.
inline std::vector<DarbouxPoint> reconstruct_orbit(std::span<const DarbouxPoint> midpoints) {
  const std::size_t k = midpoints.size();
  if (k % 2 == 0) throw precondition_error("reconstruct_orbit: cycle length must be odd");
  std::vector<DarbouxPoint> z(k);
  z[0] = DarbouxPoint::zero(midpoints[0].dim());
  for (std::size_t i = 0; i < k; ++i) z[0] += (i % 2 == 0 ? 1.0 : -1.0) * midpoints[i];
  for (std::size_t i = 0; i + 1 < k; ++i) z[i + 1] = 2.0 * midpoints[i] - z[i];
  return z;
}

// The action restricted to L^k for a product of curves, in angle coordinates
// theta[i * n + c] (orbit index i, curve c).
class ProductAction {
 public:
  ProductAction(const ProductCurveLagrangian& L, int k) : L_(L), k_(k) {}

  int k() const { return k_; }
  int n() const { return L_.dim(); }

  std::vector<DarbouxPoint> midpoints(const Vector& theta) const {
    std::vector<DarbouxPoint> qs;
    qs.reserve(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) qs.push_back(L_.point(theta.segment(i * n(), n())));
    return qs;
  }

  double value(const Vector& theta) const { return action(midpoints(theta)); }

  // dPhi/dtheta_{m,c} = omega(d q_m / d theta_{m,c}, W_m) with
  // W_m = sum_{j>m} s_mj q_j - sum_{i<m} s_im q_i.
  Vector gradient(const Vector& theta) const {
    const auto qs = midpoints(theta);
    Vector g(theta.size());
    for (int m = 0; m < k_; ++m) {
      DarbouxPoint w = DarbouxPoint::zero(n());
      for (int j = 0; j < k_; ++j) {
        if (j == m) continue;
        const double s = ((m + j) % 2 == 0) ? 1.0 : -1.0;
        w += (j > m ? s : -s) * qs[static_cast<std::size_t>(j)];
      }
      const Matrix basis = L_.tangent_basis(theta.segment(m * n(), n()));
      for (int c = 0; c < n(); ++c)
        g[m * n() + c] = omega(DarbouxPoint::from_stacked(basis.col(c)), w);
    }
    return g;
  }

  double value_grad(const Vector& theta, Vector& g) const {
    g = gradient(theta);
    return value(theta);
  }

  Matrix fd_hessian(const Vector& theta, double step = 1e-6) const {
    Matrix h = fd_jacobian([&](const Vector& v) { return gradient(v); }, theta, step);
    return 0.5 * (h + h.transpose());
  }

 private:
  const ProductCurveLagrangian& L_;
  int k_;
};

struct OrbitCandidate {
  int k = 0;
  Matrix angles;                        // k x n, row i = foot parameters of q_i
  std::vector<DarbouxPoint> midpoints;  // q_i on L
  std::vector<DarbouxPoint> points;     // z_i
  double action = 0.0;
  double residual = 0.0;                // max tangency defect of z_{i+1} - z_i at q_i
  double margin = 0.0;                  // min_i |q_i - q_{i+1}|
  double grad_norm = 0.0;
  bool is_max = false;
};

struct OrbitSearchOptions {
  int starts = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double grad_tol = 1e-9;
  double backtrack_tol = 1e-6;
  double dedupe_tol = 1e-5;
  int max_ascent_iter = 2000;
};

struct OrbitSearchResult {
  std::vector<OrbitCandidate> orbits;
  int converged = 0;          // starts reaching the gradient tolerance
  int backtracking = 0;       // converged but rejected as backtracking
  int duplicates = 0;         // merged under the dihedral group
  std::string diagnostic;
};

namespace detail {

inline Vector row_vector(const Matrix& m, Eigen::Index i) { return m.row(i).transpose(); }

// Dihedral image of the k x n angle table: rotation by r, optionally reversed.
inline Matrix dihedral_image(const Matrix& angles, Eigen::Index r, bool reflect) {
  const Eigen::Index k = angles.rows();
  Matrix out(k, angles.cols());
  for (Eigen::Index i = 0; i < k; ++i) out.row(i) = angles.row(reflect ? (r - i + k) % k : (r + i) % k);
  return out;
}

inline double angle_table_distance(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index c = 0; c < a.cols(); ++c) d = std::max(d, std::abs(angle_diff(a(i, c), b(i, c))));
  return d;
}

inline double dihedral_table_distance(const Matrix& a, const Matrix& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int refl = 0; refl < 2; ++refl)
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      best = std::min(best, angle_table_distance(a, dihedral_image(b, r, refl == 1)));
  return best;
}

// Row-by-row lexicographic order on angle tables.
inline bool table_less(const Matrix& a, const Matrix& b) {
  const Matrix ta = a.transpose(), tb = b.transpose();
  return std::lexicographical_compare(ta.data(), ta.data() + ta.size(), tb.data(), tb.data() + tb.size());
}

// Smallest dihedral image under table_less; the deterministic sort key.
inline Matrix canonical_form(const Matrix& angles) {
  Matrix best;
  for (int refl = 0; refl < 2; ++refl)
    for (Eigen::Index r = 0; r < angles.rows(); ++r) {
      Matrix img = dihedral_image(angles, r, refl == 1);
      if (best.size() == 0 || table_less(img, best)) best = std::move(img);
    }
  return best;
}

}  // namespace detail

// Assembles the candidate record for a critical configuration.
inline OrbitCandidate make_orbit_candidate(const ProductCurveLagrangian& L, int k, const Vector& theta,
                                           bool compute_is_max = true) {
  const ProductAction act(L, k);
  const int n = L.dim();
  OrbitCandidate c;
  c.k = k;
  c.angles.resize(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) c.angles(i, j) = wrap_angle(theta[i * n + j]);
  Vector wrapped(k * n);
  for (int i = 0; i < k; ++i) wrapped.segment(i * n, n) = detail::row_vector(c.angles, i);
  c.midpoints = act.midpoints(wrapped);
  c.points = reconstruct_orbit(c.midpoints);
  c.action = act.value(wrapped);
  c.grad_norm = act.gradient(wrapped).lpNorm<Eigen::Infinity>();
  c.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i), un = static_cast<std::size_t>((i + 1) % k);
    c.margin = std::min(c.margin, (c.midpoints[ui] - c.midpoints[un]).norm());
    const auto rep = conormal_check(L, c.points[ui], c.points[un], 0.0, detail::row_vector(c.angles, i));
    c.residual = std::max(c.residual, rep.tangency_defect);
  }
  if (compute_is_max) {
    const Matrix h = act.fd_hessian(wrapped);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    c.is_max = top <= 1e-6 * scale;
  }
  return c;
}

// Critical points of the action on L^k for odd k: seeded multi-start BFGS
// ascent, Newton polish on the gradient, rejection of backtracking
// configurations and deduplication under the dihedral group D_k.
inline OrbitSearchResult find_periodic_orbits(const ProductCurveLagrangian& L, int k,
                                              const OrbitSearchOptions& opt = {}) {
  if (k < 3 || k % 2 == 0) throw precondition_error("find_periodic_orbits: k must be odd and at least 3");
  if (opt.starts < 1) throw input_error("find_periodic_orbits: need at least one start");
  for (const auto& c : L.curves()) c.validate();

  const ProductAction act(L, k);
  const int dim = k * L.dim();
  std::vector<std::optional<OrbitCandidate>> found(static_cast<std::size_t>(opt.starts));
  std::vector<char> converged(found.size(), 0);

  detail::parallel_for(found.size(), opt.threads, [&](std::size_t s) {
    detail::Rng rng(opt.seed, s);
    Vector theta(dim);
    for (int i = 0; i < dim; ++i) theta[i] = rng.uniform(0.0, kTwoPi);
    auto asc = detail::bfgs_maximize([&](const Vector& v, Vector& g) { return act.value_grad(v, g); }, theta,
                                     0.1 * opt.grad_tol, opt.max_ascent_iter);
    Vector x = asc.x;
    if (asc.grad_norm > opt.grad_tol) {
      auto pol = detail::damped_newton([&](const Vector& v) { return act.gradient(v); },
                                       [&](const Vector& v) { return act.fd_hessian(v); }, x, 0.1 * opt.grad_tol, 30);
      x = pol.x;
    }
    if (act.gradient(x).lpNorm<Eigen::Infinity>() > opt.grad_tol) return;
    converged[s] = 1;
    found[s] = make_orbit_candidate(L, k, x);
  });

  OrbitSearchResult res;
  std::vector<OrbitCandidate> survivors;
  for (std::size_t s = 0; s < found.size(); ++s) {
    if (!converged[s]) continue;
    ++res.converged;
    if (found[s]->margin < opt.backtrack_tol) {
      ++res.backtracking;
      continue;
    }
    survivors.push_back(std::move(*found[s]));
  }
  std::vector<Matrix> keys;
  keys.reserve(survivors.size());
  for (const auto& c : survivors) keys.push_back(detail::canonical_form(c.angles));
  std::vector<std::size_t> order(survivors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (survivors[a].action != survivors[b].action) return survivors[a].action > survivors[b].action;
    return detail::table_less(keys[a], keys[b]);
  });
  for (std::size_t idx : order) {
    const bool dup = std::any_of(res.orbits.begin(), res.orbits.end(), [&](const OrbitCandidate& o) {
      return detail::dihedral_table_distance(o.angles, survivors[idx].angles) <= opt.dedupe_tol;
    });
    if (dup) {
      ++res.duplicates;
      continue;
    }
    res.orbits.push_back(std::move(survivors[idx]));
  }
  if (res.orbits.empty())
    res.diagnostic = "no non-backtracking critical points: " + std::to_string(res.converged) + " of " +
                     std::to_string(opt.starts) + " starts converged, " + std::to_string(res.backtracking) +
                     " backtracking";
  return res;
}

struct OrbitReport {
  bool ok = false;
  double midpoint_defect = 0.0;      // max |z_i + z_{i+1} - 2 q_i|
  double conormal_defect = 0.0;      // max over consecutive pairs of conormal_check defects
  std::vector<double> planar_defects;  // per factor, k-fold stepping mismatch
  double margin = 0.0;
  bool backtracking = false;
  double max_defect = 0.0;
};

// Checks an orbit candidate independently of how it was produced: midpoint
// and tangency of each consecutive pair at the recorded feet, the
// no-backtracking margin, and that each planar projection is reproduced by
// the planar outer billiard map (in one consistent direction).
inline OrbitReport orbit_verify(const ProductCurveLagrangian& L, const OrbitCandidate& orbit, double tol,
                                double backtrack_tol = 1e-6) {
  const int k = orbit.k;
  const int n = L.dim();
  if (static_cast<int>(orbit.points.size()) != k || orbit.angles.rows() != k || orbit.angles.cols() != n)
    throw input_error("orbit_verify: orbit record has inconsistent sizes");
  OrbitReport r;
  r.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i), un = static_cast<std::size_t>((i + 1) % k);
    const Vector th = detail::row_vector(orbit.angles, i);
    const DarbouxPoint q = L.point(th);
    const DarbouxPoint qn = L.point(detail::row_vector(orbit.angles, (i + 1) % k));
    r.margin = std::min(r.margin, (q - qn).norm());
    r.midpoint_defect = std::max(r.midpoint_defect, (orbit.points[ui] + orbit.points[un] - 2.0 * q).max_norm());
    const auto cr = conormal_check(L, orbit.points[ui], orbit.points[un], tol, th);
    r.conormal_defect = std::max({r.conormal_defect, cr.midpoint_defect, cr.tangency_defect});
  }
  r.backtracking = r.margin < backtrack_tol;
  for (int c = 0; c < n; ++c) {
    std::vector<Vec2> proj;
    for (int i = 0; i < k; ++i)
      proj.emplace_back(orbit.points[static_cast<std::size_t>(i)].x[c], orbit.points[static_cast<std::size_t>(i)].y[c]);
    const auto& curve = L.curves()[static_cast<std::size_t>(c)];
    r.planar_defects.push_back(std::min(planar_stepping_defect(curve, proj, Branch::forward),
                                        planar_stepping_defect(curve, proj, Branch::backward)));
  }
  r.max_defect = std::max(r.midpoint_defect, r.conormal_defect);
  for (double d : r.planar_defects) r.max_defect = std::max(r.max_defect, d);
  r.ok = !r.backtracking && r.max_defect <= tol;
  return r;
}

}  // namespace lagsweep
