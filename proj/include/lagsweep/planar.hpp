#pragma once

// Planar (n = 1) reference implementations: the outer billiard map about a
// convex curve, its periodic orbits, the tractrix area and the tangent
// sweep / tangent cluster area comparison. These are written directly in
// plane geometry and serve as cross-checks for the Lagrangian code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"
#include "lagsweep/optimize.hpp"
#include "lagsweep/parallel.hpp"
#include "lagsweep/plane_curve.hpp"
#include "lagsweep/random.hpp"

namespace lagsweep {

enum class Branch { forward, backward };

struct PlanarStep {
  Vec2 b;
  double theta = 0.0;     // tangency parameter
  double residual = 0.0;  // sine of the angle between a - gamma and gamma'
};

inline constexpr int kTangencySeeds = 64;

// Image of `a` under the outer billiard map. Forward: gamma(theta) lies ahead
// of a along the orientation, i.e. (a - gamma) . gamma' < 0, and
// b = 2 gamma(theta) - a. Backward is the inverse map.
inline PlanarStep planar_outer_step(const PlaneCurve& curve, const Vec2& a, Branch branch = Branch::forward) {
  if (curve.winding_number(a) != 0) throw domain_error("planar_outer_step: point is inside the curve");
  const double t_close = curve.closest_parameter(a);
  const double scale = std::max(1.0, a.norm());
  if ((curve.point(t_close) - a).norm() <= 1e-12 * scale)
    throw domain_error("planar_outer_step: point lies on the curve");

  auto tangency = [&](double t) { return cross2(a - curve.point(t), curve.tangent(t)); };
  auto normalized = [&](double t) {
    const Vec2 r = a - curve.point(t), d = curve.tangent(t);
    return std::abs(cross2(r, d)) / (r.norm() * d.norm());
  };

  std::optional<PlanarStep> best;
  for (int s = 0; s < kTangencySeeds; ++s) {
    double t = kTwoPi * s / kTangencySeeds;
    for (int it = 0; it < 60; ++it) {
      const double f = tangency(t);
      const double df = cross2(a - curve.point(t), curve.second(t));
      if (df == 0.0) break;
      const double dt = std::clamp(f / df, -0.5, 0.5);
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    t = wrap_angle(t);
    const Vec2 g = curve.point(t);
    const double along = (a - g).dot(curve.tangent(t));
    const bool right_side = branch == Branch::forward ? along < 0.0 : along > 0.0;
    if (!right_side) continue;
    const double res = normalized(t);
    if (!best || res < best->residual) best = PlanarStep{2.0 * g - a, t, res};
  }
  if (!best || !(best->residual <= 1e-10))
    throw domain_error("planar_outer_step: tangency solve did not converge");
  return *best;
}

struct PlanarOrbit {
  std::vector<double> thetas;  // tangency parameters q_1..q_k
  std::vector<Vec2> points;    // orbit points z_1..z_k, z_i + z_{i+1} = 2 gamma(theta_i)
  double action = 0.0;
  double defect = 0.0;         // max |T(z_i) - z_{i+1}| under the consistent branch
  Branch branch = Branch::forward;
};

namespace detail {

// Planar action sum_{i<j} (-1)^{i+j} cross(gamma_i, gamma_j) with its
// analytic gradient and Hessian in the tangency parameters.
struct PlanarAction {
  const PlaneCurve& curve;

  static double sign(std::size_t i, std::size_t j) { return ((i + j) % 2 == 0) ? 1.0 : -1.0; }

  double value(const Vector& th) const {
    const auto k = static_cast<std::size_t>(th.size());
    double v = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        v += sign(i, j) * cross2(curve.point(th[static_cast<Eigen::Index>(i)]), curve.point(th[static_cast<Eigen::Index>(j)]));
    return v;
  }

  // W_m = sum_{j>m} s_mj gamma_j - sum_{i<m} s_im gamma_i, so that
  // dPhi/dtheta_m = cross(gamma'_m, W_m).
  Vec2 partner(const Vector& th, std::size_t m) const {
    const auto k = static_cast<std::size_t>(th.size());
    Vec2 w = Vec2::Zero();
    for (std::size_t j = 0; j < k; ++j) {
      if (j == m) continue;
      const Vec2 g = curve.point(th[static_cast<Eigen::Index>(j)]);
      w += (j > m ? sign(m, j) : -sign(j, m)) * g;
    }
    return w;
  }

  Vector gradient(const Vector& th) const {
    Vector g(th.size());
    for (Eigen::Index m = 0; m < th.size(); ++m)
      g[m] = cross2(curve.tangent(th[m]), partner(th, static_cast<std::size_t>(m)));
    return g;
  }

  Matrix hessian(const Vector& th) const {
    const Eigen::Index k = th.size();
    Matrix h(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      h(i, i) = cross2(curve.second(th[i]), partner(th, static_cast<std::size_t>(i)));
      for (Eigen::Index j = i + 1; j < k; ++j) {
        h(i, j) = sign(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                  cross2(curve.tangent(th[i]), curve.tangent(th[j]));
        h(j, i) = h(i, j);
      }
    }
    return h;
  }
};

// Max wrap-aware distance between two parameter tuples, minimized over the
// dihedral relabelings of the second.
inline double dihedral_distance(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t k = a.size();
  double best = std::numeric_limits<double>::infinity();
  for (int refl = 0; refl < 2; ++refl)
    for (std::size_t r = 0; r < k; ++r) {
      double d = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = refl ? (r + k - i) % k : (r + i) % k;
        d = std::max(d, std::abs(angle_diff(a[i], b[j])));
      }
      best = std::min(best, d);
    }
  return best;
}

}  // namespace detail

// Orbit points from tangency points of an odd-length cycle:
// z_1 = q_1 - q_2 + ... + q_k, z_{i+1} = 2 q_i - z_i.
inline std::vector<Vec2> planar_orbit_points(const PlaneCurve& curve, const std::vector<double>& thetas) {
  const std::size_t k = thetas.size();
  std::vector<Vec2> q(k), z(k);
  for (std::size_t i = 0; i < k; ++i) q[i] = curve.point(thetas[i]);
  z[0] = Vec2::Zero();
  for (std::size_t i = 0; i < k; ++i) z[0] += (i % 2 == 0 ? 1.0 : -1.0) * q[i];
  for (std::size_t i = 0; i + 1 < k; ++i) z[i + 1] = 2.0 * q[i] - z[i];
  return z;
}

// Max mismatch of one application of the outer billiard map along a cyclic
// sequence; +inf if some point is inside or on the curve.
inline double planar_stepping_defect(const PlaneCurve& curve, const std::vector<Vec2>& z, Branch branch) {
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    try {
      const Vec2 next = planar_outer_step(curve, z[i], branch).b;
      d = std::max(d, (next - z[(i + 1) % z.size()]).cwiseAbs().maxCoeff());
    } catch (const domain_error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return d;
}

struct PlanarPeriodicOptions {
  int starts = 64;
  double grad_tol = 1e-10;
  double verify_tol = 1e-8;
  unsigned threads = 1;
};

// k-periodic orbits as critical points of the planar action, found by Newton
// iteration on the gradient from seeded near-regular starting polygons, and
// kept only when k-fold stepping of the map reproduces them.
inline std::vector<PlanarOrbit> find_planar_periodic(const PlaneCurve& curve, int k, std::uint64_t seed,
                                                     const PlanarPeriodicOptions& opt = {}) {
  if (k < 3 || k % 2 == 0) throw precondition_error("find_planar_periodic: k must be odd and at least 3");
  const detail::PlanarAction act{curve};
  std::vector<std::optional<PlanarOrbit>> found(static_cast<std::size_t>(opt.starts));

  detail::parallel_for(found.size(), opt.threads, [&](std::size_t s) {
    detail::Rng rng(seed, s);
    const int max_rot = std::max(1, (k - 1) / 2);
    const int rot = 1 + static_cast<int>(rng.uniform() * max_rot) % max_rot;
    const double dir = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double start = rng.uniform(0.0, kTwoPi);
    Vector th(k);
    for (int i = 0; i < k; ++i)
      th[i] = start + dir * kTwoPi * rot * i / k + rng.uniform(-0.3, 0.3) * kTwoPi / k;

    auto res = detail::damped_newton([&](const Vector& v) { return act.gradient(v); },
                                     [&](const Vector& v) { return act.hessian(v); }, th, opt.grad_tol, 100);
    if (!res.converged) return;
    PlanarOrbit orb;
    for (int i = 0; i < k; ++i) orb.thetas.push_back(wrap_angle(res.x[i]));
    for (int i = 0; i < k; ++i) {
      const Vec2 qa = curve.point(orb.thetas[static_cast<std::size_t>(i)]);
      const Vec2 qb = curve.point(orb.thetas[static_cast<std::size_t>((i + 1) % k)]);
      if ((qa - qb).norm() < 1e-6) return;  // backtracking
    }
    orb.points = planar_orbit_points(curve, orb.thetas);
    const double fwd = planar_stepping_defect(curve, orb.points, Branch::forward);
    const double bwd = planar_stepping_defect(curve, orb.points, Branch::backward);
    orb.branch = fwd <= bwd ? Branch::forward : Branch::backward;
    orb.defect = std::min(fwd, bwd);
    if (!(orb.defect <= opt.verify_tol)) return;
    orb.action = act.value(res.x);
    found[s] = std::move(orb);
  });

  std::vector<PlanarOrbit> out;
  for (auto& f : found) {
    if (!f) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const PlanarOrbit& o) {
      return detail::dihedral_distance(o.thetas, f->thetas) <= 1e-5;
    });
    if (!dup) out.push_back(std::move(*f));
  }
  return out;
}

enum class TractrixSide { both, positive };

inline constexpr double kTractrixHalfLength = 20.0;

// Area between the tractrix (s - tanh s, sech s) and its asymptote, by
// adaptive Simpson quadrature over panels of width `step` on |s| < 20.
inline double tractrix_area(double step, TractrixSide side = TractrixSide::both) {
  if (!(step > 0.0)) throw input_error("tractrix_area: step must be positive");
  // y dx/ds = sech(s) tanh(s)^2
  auto f = [](double s) {
    const double sech = 1.0 / std::cosh(s);
    const double th = std::tanh(s);
    return sech * th * th;
  };
  auto simpson = [&](double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); };
  auto adaptive = [&](auto&& self, double a, double b, double fa, double fm, double fb, double whole, double eps,
                      int depth) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm), right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return self(self, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) + self(self, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  };
  const double lo = side == TractrixSide::both ? -kTractrixHalfLength : 0.0;
  const double hi = kTractrixHalfLength;
  const auto panels = static_cast<long>(std::ceil((hi - lo) / step));
  const double h = (hi - lo) / static_cast<double>(panels);
  double total = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double a = lo + h * static_cast<double>(p), b = a + h;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    total += adaptive(adaptive, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-14 * h, 20);
  }
  return total;
}

// Tangent segments gamma(theta) + s T(theta), T the unit tangent,
// 0 <= s <= length, theta in [theta_min, theta_max].
struct SweepRegion {
  double length = 1.0;
  double theta_min = 0.0;
  double theta_max = kTwoPi;
};

struct MamikonAreas {
  double area_sweep = 0.0;    // union of the segments in place
  double area_cluster = 0.0;  // segments translated to start at the origin
};

namespace detail {

// Tabulated curve used to bracket tangency parameters for many query points.
class CurveTable {
 public:
  explicit CurveTable(const PlaneCurve& c, int samples = kConvexitySamples) : curve_(c) {
    for (int i = 0; i < samples; ++i) {
      const double t = kTwoPi * i / samples;
      theta_.push_back(t);
      point_.push_back(c.point(t));
      tangent_.push_back(c.tangent(t));
    }
  }

  // Parameter theta with p - gamma(theta) parallel to gamma'(theta) and
  // pointing along it (p ahead of the tangency point), if any.
  std::optional<double> ahead_tangency(const Vec2& p) const {
    return solve([&](std::size_t i) { return cross2(tangent_[i], p - point_[i]); },
                 [&](double t) { return cross2(curve_.tangent(t), p - curve_.point(t)); },
                 [&](double t) { return (p - curve_.point(t)).dot(curve_.tangent(t)) > 0.0; });
  }

  // Parameter theta whose tangent direction equals the direction of v.
  std::optional<double> direction(const Vec2& v) const {
    return solve([&](std::size_t i) { return cross2(tangent_[i], v); },
                 [&](double t) { return cross2(curve_.tangent(t), v); },
                 [&](double t) { return curve_.tangent(t).dot(v) > 0.0; });
  }

 private:
  template <typename Sampled, typename Exact, typename Accept>
  std::optional<double> solve(Sampled&& sampled, Exact&& exact, Accept&& accept) const {
    const std::size_t m = theta_.size();
    double prev = sampled(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      const double cur = sampled(i);
      if ((prev <= 0.0 && cur > 0.0) || (prev >= 0.0 && cur < 0.0)) {
        double lo = i == 0 ? theta_[m - 1] - kTwoPi : theta_[i - 1];
        double hi = theta_[i];
        double flo = exact(lo);
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = exact(mid);
          if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
          if (hi - lo < 1e-13) break;
        }
        const double t = wrap_angle(0.5 * (lo + hi));
        if (accept(t)) return t;
      }
      prev = cur;
    }
    return std::nullopt;
  }

  const PlaneCurve& curve_;
  std::vector<double> theta_;
  std::vector<Vec2> point_, tangent_;
};

inline bool in_arc(double t, const SweepRegion& r) {
  if (r.theta_max - r.theta_min >= kTwoPi) return true;
  return wrap_angle(t - r.theta_min) <= r.theta_max - r.theta_min;
}

}  // namespace detail

inline constexpr int kMonteCarloChunks = 64;

// Monte Carlo areas of the tangent sweep and the tangent cluster of the
// given region, each estimated with `samples` uniform points in its own
// bounding box. Samples are split into fixed seeded chunks so the estimate
// does not depend on the thread count.
inline MamikonAreas mamikon_area_check(const PlaneCurve& curve, const SweepRegion& region, long samples,
                                       std::uint64_t seed, unsigned threads = 1) {
  if (samples <= 0) throw input_error("mamikon_area_check: samples must be positive");
  if (region.length < 0.0 || region.theta_max < region.theta_min)
    throw input_error("mamikon_area_check: malformed region");
  MamikonAreas out;
  if (region.length == 0.0 || region.theta_max == region.theta_min) return out;

  const detail::CurveTable table(curve);
  auto unit_tangent = [&](double t) { return curve.tangent(t).normalized(); };

  Eigen::AlignedBox2d sweep_box, cluster_box;
  cluster_box.extend(Vec2::Zero());
  const int box_samples = 4 * kConvexitySamples;
  for (int i = 0; i <= box_samples; ++i) {
    const double t = region.theta_min + (region.theta_max - region.theta_min) * i / box_samples;
    const Vec2 g = curve.point(t), u = unit_tangent(t);
    sweep_box.extend(g);
    sweep_box.extend(g + region.length * u);
    cluster_box.extend(region.length * u);
  }
  auto pad = [](Eigen::AlignedBox2d& b) {
    const Vec2 margin = 0.01 * b.sizes() + Vec2::Constant(1e-9);
    b.min() -= margin;
    b.max() += margin;
  };
  pad(sweep_box);
  pad(cluster_box);

  // Points inside the curve lie left of every tangent line, so no ahead
  // tangency exists for them.
  auto in_sweep = [&](const Vec2& p) {
    const auto t = table.ahead_tangency(p);
    if (!t || !detail::in_arc(*t, region)) return false;
    return (p - curve.point(*t)).norm() <= region.length;
  };
  auto in_cluster = [&](const Vec2& p) {
    if (p.norm() > region.length) return false;
    const auto t = table.direction(p);
    return t && detail::in_arc(*t, region);
  };

  std::vector<long> sweep_hits(kMonteCarloChunks, 0), cluster_hits(kMonteCarloChunks, 0);
  detail::parallel_for(kMonteCarloChunks, threads, [&](std::size_t c) {
    const long begin = samples * static_cast<long>(c) / kMonteCarloChunks;
    const long end = samples * static_cast<long>(c + 1) / kMonteCarloChunks;
    detail::Rng rng(seed, c);
    for (long s = begin; s < end; ++s) {
      const Vec2 ps(rng.uniform(sweep_box.min().x(), sweep_box.max().x()),
                    rng.uniform(sweep_box.min().y(), sweep_box.max().y()));
      const Vec2 pc(rng.uniform(cluster_box.min().x(), cluster_box.max().x()),
                    rng.uniform(cluster_box.min().y(), cluster_box.max().y()));
      if (in_sweep(ps)) ++sweep_hits[c];
      if (in_cluster(pc)) ++cluster_hits[c];
    }
  });
  long hs = 0, hc = 0;
  for (int c = 0; c < kMonteCarloChunks; ++c) {
    hs += sweep_hits[static_cast<std::size_t>(c)];
    hc += cluster_hits[static_cast<std::size_t>(c)];
  }
  out.area_sweep = sweep_box.volume() * static_cast<double>(hs) / static_cast<double>(samples);
  out.area_cluster = cluster_box.volume() * static_cast<double>(hc) / static_cast<double>(samples);
  return out;
}

}  // namespace lagsweep
