#pragma once

// JSON literals for polynomials, curves, models, points and orbit records.
// Parsing is strict: unknown keys and wrong shapes raise input_error.

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lagsweep/billiard.hpp"
#include "lagsweep/error.hpp"
#include "lagsweep/lagrangian.hpp"
#include "lagsweep/plane_curve.hpp"
#include "lagsweep/polynomial.hpp"
#include "lagsweep/symplectic.hpp"

namespace lagsweep::io {

using json = nlohmann::json;

inline void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!j.is_object()) throw input_error(std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw input_error(std::string(where) + ": unknown field '" + key + "'");
  }
}

inline const json& require(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) throw input_error(std::string(where) + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<double> number_array(const json& j, std::string_view where) {
  if (!j.is_array()) throw input_error(std::string(where) + ": expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw input_error(std::string(where) + ": expected numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Vector vector_from_json(const json& j, std::string_view where) { return to_vector(number_array(j, where)); }

inline json vector_to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

// {"nvars": n, "terms": [{"e": [e1..en], "c": coeff}, ...]}
inline SparsePolynomial polynomial_from_json(const json& j) {
  check_keys(j, {"nvars", "terms"}, "polynomial");
  const json& nv = require(j, "nvars", "polynomial");
  if (!nv.is_number_integer() || nv.get<int>() < 1) throw input_error("polynomial: nvars must be a positive integer");
  const int n = nv.get<int>();
  std::vector<Term> terms;
  const json& ts = require(j, "terms", "polynomial");
  if (!ts.is_array()) throw input_error("polynomial: terms must be an array");
  for (const auto& t : ts) {
    check_keys(t, {"e", "c"}, "polynomial term");
    const json& e = require(t, "e", "polynomial term");
    const json& c = require(t, "c", "polynomial term");
    if (!e.is_array() || !c.is_number()) throw input_error("polynomial term: malformed");
    Exponents ex;
    for (const auto& k : e) {
      if (!k.is_number_integer()) throw input_error("polynomial term: exponents must be integers");
      ex.push_back(k.get<int>());
    }
    terms.push_back(Term{std::move(ex), c.get<double>()});
  }
  return SparsePolynomial(n, std::move(terms));
}

inline json polynomial_to_json(const SparsePolynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"e", t.exponents}, {"c", t.coeff}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

// {"kind":"ellipse","a":..,"b":..,"center":[cx,cy]} or
// {"kind":"trig","cx":[..],"sx":[..],"cy":[..],"sy":[..]}
inline PlaneCurve curve_from_json(const json& j) {
  if (!j.is_object()) throw input_error("curve: expected an object");
  const std::string kind = require(j, "kind", "curve").get<std::string>();
  if (kind == "ellipse") {
    check_keys(j, {"kind", "a", "b", "center"}, "ellipse");
    Vec2 center = Vec2::Zero();
    if (j.contains("center")) {
      const auto c = number_array(j.at("center"), "ellipse center");
      if (c.size() != 2) throw input_error("ellipse center: expected two numbers");
      center = Vec2(c[0], c[1]);
    }
    return PlaneCurve::ellipse(require(j, "a", "ellipse").get<double>(), require(j, "b", "ellipse").get<double>(), center);
  }
  if (kind == "trig") {
    check_keys(j, {"kind", "cx", "sx", "cy", "sy"}, "trig curve");
    auto arr = [&](const char* k) { return j.contains(k) ? number_array(j.at(k), k) : std::vector<double>{}; };
    return PlaneCurve::trig(arr("cx"), arr("sx"), arr("cy"), arr("sy"));
  }
  throw input_error("curve: unknown kind '" + kind + "'");
}

inline json curve_to_json(const PlaneCurve& c) {
  if (c.kind() == PlaneCurve::Kind::ellipse)
    return {{"kind", "ellipse"}, {"a", c.semi_a()}, {"b", c.semi_b()}, {"center", {c.center().x(), c.center().y()}}};
  return {{"kind", "trig"}, {"cx", c.cx()}, {"sx", c.sx()}, {"cy", c.cy()}, {"sy", c.sy()}};
}

// {"type":"graph","F":<polynomial>} or {"type":"product","curves":[<curve>...]}
inline LagrangianModel model_from_json(const json& j) {
  if (!j.is_object()) throw input_error("model: expected an object");
  const std::string type = require(j, "type", "model").get<std::string>();
  if (type == "graph") {
    check_keys(j, {"type", "F"}, "graph model");
    return LagrangianGraph(polynomial_from_json(require(j, "F", "graph model")));
  }
  if (type == "product") {
    check_keys(j, {"type", "curves"}, "product model");
    const json& cs = require(j, "curves", "product model");
    if (!cs.is_array()) throw input_error("product model: curves must be an array");
    std::vector<PlaneCurve> curves;
    for (const auto& c : cs) curves.push_back(curve_from_json(c));
    return ProductCurveLagrangian(std::move(curves));
  }
  throw input_error("model: unknown type '" + type + "'");
}

// {"x":[..], "y":[..]}
inline DarbouxPoint point_from_json(const json& j) {
  check_keys(j, {"x", "y"}, "point");
  Vector x = vector_from_json(require(j, "x", "point"), "point x");
  Vector y = vector_from_json(require(j, "y", "point"), "point y");
  if (x.size() != y.size() || x.size() == 0) throw input_error("point: x and y must have equal nonzero length");
  return {std::move(x), std::move(y)};
}

inline json point_to_json(const DarbouxPoint& p) { return {{"x", vector_to_json(p.x)}, {"y", vector_to_json(p.y)}}; }

inline json orbit_to_json(const OrbitCandidate& o) {
  json angles = json::array(), z = json::array();
  for (Eigen::Index i = 0; i < o.angles.rows(); ++i) angles.push_back(vector_to_json(o.angles.row(i).transpose()));
  for (const auto& p : o.points) z.push_back(vector_to_json(p.stacked()));
  return {{"k", o.k}, {"action", o.action}, {"residual", o.residual}, {"is_max", o.is_max},
          {"angles", angles}, {"z", z}};
}

// Inverse of orbit_to_json for a product model; midpoints are recomputed.
inline OrbitCandidate orbit_from_json(const json& j, const ProductCurveLagrangian& L) {
  check_keys(j, {"k", "action", "residual", "is_max", "angles", "z", "margin", "verify"}, "orbit");
  OrbitCandidate o;
  o.k = require(j, "k", "orbit").get<int>();
  o.action = j.value("action", 0.0);
  o.residual = j.value("residual", 0.0);
  o.is_max = j.value("is_max", false);
  const json& angles = require(j, "angles", "orbit");
  const json& z = require(j, "z", "orbit");
  if (!angles.is_array() || !z.is_array() || static_cast<int>(angles.size()) != o.k ||
      static_cast<int>(z.size()) != o.k)
    throw input_error("orbit: angles and z must have k rows");
  o.angles.resize(o.k, L.dim());
  for (int i = 0; i < o.k; ++i) {
    const Vector row = vector_from_json(angles[static_cast<std::size_t>(i)], "orbit angles");
    if (row.size() != L.dim()) throw input_error("orbit: angle row has wrong length");
    o.angles.row(i) = row.transpose();
    o.midpoints.push_back(L.point(row));
    const Vector zi = vector_from_json(z[static_cast<std::size_t>(i)], "orbit z");
    if (zi.size() != 2 * L.dim()) throw input_error("orbit: z row has wrong length");
    o.points.push_back(DarbouxPoint::from_stacked(zi));
  }
  return o;
}

}  // namespace lagsweep::io
