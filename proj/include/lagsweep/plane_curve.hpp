#pragma once

// Closed, smooth, counterclockwise plane curves parameterized by an angle
// theta in [0, 2pi): ellipses and trigonometric polynomials.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"

namespace lagsweep {

using Vec2 = Eigen::Vector2d;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr int kConvexitySamples = 720;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Wraps an angle into [0, 2pi).
inline double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// Signed distance between two angles, in (-pi, pi].
inline double angle_diff(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

class PlaneCurve {
 public:
  enum class Kind { ellipse, trig };

  static PlaneCurve ellipse(double a, double b, Vec2 center = Vec2::Zero()) {
    if (!(a > 0.0) || !(b > 0.0)) throw input_error("ellipse: semi-axes must be positive");
    PlaneCurve c;
    c.kind_ = Kind::ellipse;
    c.a_ = a;
    c.b_ = b;
    c.center_ = std::move(center);
    c.validate();
    return c;
  }

  // x(theta) = sum_j cx[j] cos(j theta) + sx[j] sin(j theta), same for y.
  static PlaneCurve trig(std::vector<double> cx, std::vector<double> sx, std::vector<double> cy,
                         std::vector<double> sy) {
    PlaneCurve c;
    c.kind_ = Kind::trig;
    c.cx_ = std::move(cx);
    c.sx_ = std::move(sx);
    c.cy_ = std::move(cy);
    c.sy_ = std::move(sy);
    c.validate();
    return c;
  }

  static PlaneCurve circle(double r = 1.0, Vec2 center = Vec2::Zero()) { return ellipse(r, r, std::move(center)); }

  Kind kind() const { return kind_; }
  double semi_a() const { return a_; }
  double semi_b() const { return b_; }
  const Vec2& center() const { return center_; }
  const std::vector<double>& cx() const { return cx_; }
  const std::vector<double>& sx() const { return sx_; }
  const std::vector<double>& cy() const { return cy_; }
  const std::vector<double>& sy() const { return sy_; }

  // Derivative of the given order (0, 1 or 2) at theta.
  Vec2 eval(double t, int order = 0) const {
    if (kind_ == Kind::ellipse) {
      const double c = std::cos(t), s = std::sin(t);
      switch (order) {
        case 0: return center_ + Vec2(a_ * c, b_ * s);
        case 1: return Vec2(-a_ * s, b_ * c);
        default: return Vec2(-a_ * c, -b_ * s);
      }
    }
    return Vec2(trig_sum(cx_, sx_, t, order), trig_sum(cy_, sy_, t, order));
  }

  Vec2 point(double t) const { return eval(t, 0); }
  Vec2 tangent(double t) const { return eval(t, 1); }
  Vec2 second(double t) const { return eval(t, 2); }

  double signed_curvature(double t) const {
    const Vec2 d1 = tangent(t);
    const double speed = d1.norm();
    return cross2(d1, second(t)) / (speed * speed * speed);
  }

  // Sampled convexity check; throws unless the signed curvature is positive
  // at every sample.
  void validate() const {
    for (int i = 0; i < kConvexitySamples; ++i) {
      const double t = kTwoPi * i / kConvexitySamples;
      const double k = signed_curvature(t);
      if (!(k > 0.0) || !std::isfinite(k))
        throw input_error("PlaneCurve: not strictly convex counterclockwise (curvature " + std::to_string(k) +
                          " at theta=" + std::to_string(t) + ")");
    }
  }

  // Winding number of the curve around p, computed on the sampled polygon.
  int winding_number(const Vec2& p) const {
    double total = 0.0;
    Vec2 prev = point(0.0) - p;
    for (int i = 1; i <= kConvexitySamples; ++i) {
      const Vec2 cur = point(kTwoPi * i / kConvexitySamples) - p;
      total += std::atan2(cross2(prev, cur), prev.dot(cur));
      prev = cur;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
  }

  // Parameter of the closest curve point: sampled seed, then Newton on
  // (p - gamma) . gamma' = 0.
  double closest_parameter(const Vec2& p) const {
    double best_t = 0.0, best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kConvexitySamples; ++i) {
      const double t = kTwoPi * i / kConvexitySamples;
      const double d = (point(t) - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best_t = t;
      }
    }
    double t = best_t;
    for (int it = 0; it < 50; ++it) {
      const Vec2 r = point(t) - p, d1 = tangent(t), d2 = second(t);
      const double g = r.dot(d1);
      const double h = d1.dot(d1) + r.dot(d2);
      if (h <= 0.0) break;
      const double dt = g / h;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    return wrap_angle(t);
  }

 private:
  PlaneCurve() = default;

  static double trig_sum(const std::vector<double>& cs, const std::vector<double>& ss, double t, int order) {
    double v = 0.0;
    const std::size_t m = std::max(cs.size(), ss.size());
    for (std::size_t j = 0; j < m; ++j) {
      const double w = static_cast<double>(j);
      const double c = j < cs.size() ? cs[j] : 0.0;
      const double s = j < ss.size() ? ss[j] : 0.0;
      const double cj = std::cos(w * t), sj = std::sin(w * t);
      switch (order) {
        case 0: v += c * cj + s * sj; break;
        case 1: v += w * (-c * sj + s * cj); break;
        default: v += -w * w * (c * cj + s * sj); break;
      }
    }
    return v;
  }

  Kind kind_ = Kind::ellipse;
  double a_ = 1.0, b_ = 1.0;
  Vec2 center_ = Vec2::Zero();
  std::vector<double> cx_, sx_, cy_, sy_;
};

}  // namespace lagsweep
