// lagsweep command-line driver. Reads scenario JSON, runs one operation and
// prints JSON (or a CSV projection) to stdout or --out.
//
// exit codes: 0 success, 1 numerical failure, 2 bad input

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lagsweep/lagsweep.hpp"
#include "output.hpp"
#include "suite.hpp"

using namespace lagsweep;
using cli::json;

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  unsigned threads = 1;
  std::string out;
  bool csv = false;
};

struct numerical_failure : std::runtime_error {
  json report;
  numerical_failure(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

json versions() {
  return {{"lagsweep", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION}};
}

json load_scenario(const std::string& path, std::initializer_list<std::string_view> keys) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("scenario is not valid JSON: ") + e.what());
  }
  std::vector<std::string_view> allowed(keys);
  allowed.insert(allowed.end(), {"seed", "tol", "description"});
  if (!j.is_object()) throw input_error("scenario: expected an object");
  for (const auto& [key, _] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw input_error("scenario: unknown field '" + key + "'");
  return j;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw input_error(std::string("scenario: field '") + key + "' has the wrong type");
  }
}

struct Resolved {
  std::uint64_t seed;
  double tol;
};

Resolved resolve(const Flags& f, const json& scenario, double default_tol) {
  Resolved r;
  r.seed = f.seed ? *f.seed : get_or<std::uint64_t>(scenario, "seed", 0);
  r.tol = f.tol ? *f.tol : get_or<double>(scenario, "tol", default_tol);
  if (!(r.tol > 0.0)) throw input_error("tol must be positive");
  return r;
}

json header(const std::string& command, const Resolved& r) {
  return {{"command", command}, {"seed", r.seed}, {"tol", r.tol}, {"versions", versions()}};
}

LagrangianGraph require_graph(const json& scenario) {
  auto model = io::model_from_json(io::require(scenario, "model", "scenario"));
  if (!std::holds_alternative<LagrangianGraph>(model)) throw input_error("this command needs a graph model");
  return std::get<LagrangianGraph>(std::move(model));
}

ProductCurveLagrangian require_product(const json& scenario) {
  auto model = io::model_from_json(io::require(scenario, "model", "scenario"));
  if (!std::holds_alternative<ProductCurveLagrangian>(model)) throw input_error("this command needs a product model");
  return std::get<ProductCurveLagrangian>(std::move(model));
}

// {"lo": [...], "hi": [...]} or {"center": [...], "half_width": h}; default [-1, 1]^n.
SearchBox parse_box(const json& scenario, int n) {
  if (!scenario.contains("box")) return SearchBox::cube(n);
  const json& b = scenario.at("box");
  if (b.contains("lo") || b.contains("hi")) {
    io::check_keys(b, {"lo", "hi"}, "box");
    SearchBox box{io::vector_from_json(io::require(b, "lo", "box"), "box lo"),
                  io::vector_from_json(io::require(b, "hi", "box"), "box hi")};
    if (box.lo.size() != n || box.hi.size() != n) throw input_error("box: wrong dimension");
    return box;
  }
  io::check_keys(b, {"center", "half_width"}, "box");
  const Vector c = b.contains("center") ? io::vector_from_json(b.at("center"), "box center") : Vector::Zero(n);
  if (c.size() != n) throw input_error("box: wrong dimension");
  return SearchBox::cube(n, get_or<double>(b, "half_width", 1.0), c);
}

Vec2 parse_vec2(const json& j, const char* what) {
  const auto v = io::number_array(j, what);
  if (v.size() != 2) throw input_error(std::string(what) + ": expected two numbers");
  return {v[0], v[1]};
}

Branch parse_branch(const json& scenario) {
  const std::string b = get_or<std::string>(scenario, "branch", "forward");
  if (b == "forward") return Branch::forward;
  if (b == "backward") return Branch::backward;
  throw input_error("branch must be 'forward' or 'backward'");
}

json vec_json(const Vector& v) { return io::vector_to_json(v); }
json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

struct Output {
  json doc;
  std::vector<json> rows;  // CSV projection; empty means key,value of scalars
  bool failed = false;
};

// --- commands ---------------------------------------------------------------

Output cmd_sweep_check(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"model", "frames", "radius", "step"});
  const Resolved r = resolve(f, sc, 1e-6);
  const LagrangianGraph L = require_graph(sc);
  const int frames = get_or<int>(sc, "frames", 50);
  const double radius = get_or<double>(sc, "radius", 1.0);
  SymplectomorphismOptions opt;
  opt.step = get_or<double>(sc, "step", kDefaultFdStep);
  opt.tol = r.tol;
  if (frames < 1 || !(radius > 0.0)) throw input_error("frames and radius must be positive");

  detail::Rng rng(r.seed);
  const int n = L.dim();
  Output o;
  o.doc = header("sweep-check", r);
  double worst = 0.0;
  int skipped = 0, done = 0;
  while (done < frames) {
    Vector q(n), t(n);
    for (int i = 0; i < n; ++i) q[i] = rng.uniform(-radius, radius);
    for (int i = 0; i < n; ++i) t[i] = rng.uniform(-radius, radius);
    const TangentFrame fr(q, t);
    if (in_critical_set(L, fr, opt.critical_tol)) {
      if (++skipped > 100 * frames) throw numerical_failure("every sampled frame lies on the critical set", o.doc);
      continue;
    }
    const auto rep = verify_symplectomorphism(L, fr, opt);
    worst = std::max(worst, rep.defect);
    o.rows.push_back({{"q", vec_json(q)}, {"t", vec_json(t)}, {"det_a", det_A(L, fr)}, {"defect", rep.defect}});
    ++done;
  }
  o.doc["frames"] = frames;
  o.doc["skipped_critical"] = skipped;
  o.doc["step"] = opt.step;
  o.doc["max_defect"] = worst;
  o.doc["ok"] = worst <= r.tol;
  o.failed = worst > r.tol;
  return o;
}

Output cmd_multiplicity(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"model", "test", "box", "grid"});
  const Resolved r = resolve(f, sc, 1e-10);
  const LagrangianGraph L = require_graph(sc);
  const DarbouxPoint test = io::point_from_json(io::require(sc, "test", "scenario"));
  if (test.dim() != L.dim()) throw input_error("test point has the wrong dimension");
  RootOptions opt;
  opt.grid = get_or<int>(sc, "grid", 16);
  opt.tol = r.tol;
  opt.threads = f.threads;
  const SearchBox box = parse_box(sc, L.dim());
  const auto rep = count_tangent_spaces(L, test, box, opt);

  Output o;
  o.doc = header("multiplicity", r);
  o.doc["count"] = rep.count;
  json roots = json::array();
  for (const auto& root : rep.roots) {
    json row = {{"q", vec_json(root.q)}, {"residual", root.residual}, {"det_a", root.det_a},
                {"near_critical", root.near_critical}};
    roots.push_back(row);
    o.rows.push_back(row);
  }
  o.doc["roots"] = roots;
  o.doc["flagged_near_critical"] = static_cast<int>(rep.flagged_near_critical().size());
  o.doc["starts"] = rep.starts;
  o.doc["converged_starts"] = rep.converged_starts;
  o.doc["all_diverged"] = rep.all_diverged;
  o.doc["box"] = {{"lo", vec_json(box.lo)}, {"hi", vec_json(box.hi)}};
  o.doc["grid"] = opt.grid;
  try {
    // germ-level count near x, so the box may hold more roots than this
    o.doc["predicted_local"] = predicted_multiplicity(L, test.x);
  } catch (const precondition_error& e) {
    o.doc["predicted_local"] = nullptr;
    o.doc["predicted_note"] = e.what();
  }
  return o;
}

Output cmd_newton_number(const std::string& intercepts, const Flags& f) {
  std::vector<int> d;
  std::stringstream ss(intercepts);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      d.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw input_error("intercepts must be a comma-separated list of integers");
    }
  }
  const Resolved r{f.seed.value_or(0), f.tol.value_or(0.0)};
  Output o;
  o.doc = {{"command", "newton-number"}, {"seed", r.seed}, {"versions", versions()}};
  o.doc["tol"] = nullptr;
  o.doc["intercepts"] = d;
  o.doc["nu"] = newton_number(d);
  long long closed = 1;
  for (int v : d) closed *= v - 1;
  o.doc["product_form"] = closed;
  return o;
}

Output cmd_billiard_step(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"model", "point", "box", "grid"});
  const Resolved r = resolve(f, sc, 1e-10);
  auto model = io::model_from_json(io::require(sc, "model", "scenario"));
  const DarbouxPoint a = io::point_from_json(io::require(sc, "point", "scenario"));
  Output o;
  o.doc = header("billiard-step", r);
  o.doc["point"] = io::point_to_json(a);
  json partners = json::array();

  if (auto* g = std::get_if<LagrangianGraph>(&model)) {
    if (a.dim() != g->dim()) throw input_error("point has the wrong dimension");
    RootOptions opt;
    opt.grid = get_or<int>(sc, "grid", 16);
    opt.tol = r.tol;
    opt.threads = f.threads;
    const auto rep = correspondents(*g, a, parse_box(sc, g->dim()), opt);
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
      const auto& p = rep.pairs[i];
      const auto cc = conormal_check(*g, p.a, p.b, 1e-8);
      json row = {{"b", io::point_to_json(p.b)},   {"foot", io::point_to_json(p.foot)},
                  {"t", vec_json(p.frame.t)},      {"near_critical", static_cast<bool>(rep.near_critical[i])},
                  {"conormal_ok", cc.ok},          {"tangency_defect", cc.tangency_defect}};
      partners.push_back(row);
      o.rows.push_back({{"b", vec_json(p.b.stacked())},
                        {"near_critical", static_cast<bool>(rep.near_critical[i])}});
    }
    o.doc["partners"] = partners;
    o.doc["count"] = rep.roots.count;
    return o;
  }

  const auto& L = std::get<ProductCurveLagrangian>(model);
  if (a.dim() != L.dim()) throw input_error("point has the wrong dimension");
  for (auto br : {Branch::forward, Branch::backward}) {
    DarbouxPoint b = DarbouxPoint::zero(L.dim());
    Vector feet(L.dim());
    for (int c = 0; c < L.dim(); ++c) {
      const auto s = planar_outer_step(L.curves()[static_cast<std::size_t>(c)], Vec2(a.x[c], a.y[c]), br);
      b.x[c] = s.b.x();
      b.y[c] = s.b.y();
      feet[c] = s.theta;
    }
    const auto cc = conormal_check(L, a, b, 1e-8, feet);
    json row = {{"branch", br == Branch::forward ? "forward" : "backward"},
                {"b", io::point_to_json(b)},
                {"foot_angles", vec_json(feet)},
                {"conormal_ok", cc.ok}};
    partners.push_back(row);
    o.rows.push_back({{"branch", row["branch"]}, {"b", vec_json(b.stacked())}, {"foot_angles", vec_json(feet)}});
  }
  o.doc["partners"] = partners;
  return o;
}

Output cmd_orbit_search(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"model", "k", "starts"});
  const Resolved r = resolve(f, sc, 1e-6);
  const ProductCurveLagrangian L = require_product(sc);
  OrbitSearchOptions opt;
  opt.starts = get_or<int>(sc, "starts", 200);
  opt.seed = r.seed;
  opt.threads = f.threads;
  const int k = get_or<int>(sc, "k", 3);
  const auto res = find_periodic_orbits(L, k, opt);

  Output o;
  o.doc = header("orbit-search", r);
  o.doc["k"] = k;
  o.doc["starts"] = opt.starts;
  o.doc["converged"] = res.converged;
  o.doc["backtracking"] = res.backtracking;
  o.doc["duplicates"] = res.duplicates;
  json orbits = json::array();
  bool all_ok = true;
  for (std::size_t idx = 0; idx < res.orbits.size(); ++idx) {
    const auto& orb = res.orbits[idx];
    const auto rep = orbit_verify(L, orb, r.tol);
    all_ok = all_ok && rep.ok;
    json rec = io::orbit_to_json(orb);
    rec["margin"] = orb.margin;
    rec["verify"] = {{"ok", rep.ok},
                     {"max_defect", rep.max_defect},
                     {"midpoint_defect", rep.midpoint_defect},
                     {"conormal_defect", rep.conormal_defect},
                     {"planar_defects", rep.planar_defects}};
    orbits.push_back(rec);
    for (int i = 0; i < orb.k; ++i)
      o.rows.push_back({{"orbit", idx},
                        {"i", i},
                        {"angle", vec_json(orb.angles.row(i).transpose())},
                        {"z", vec_json(orb.points[static_cast<std::size_t>(i)].stacked())},
                        {"action", orb.action},
                        {"is_max", orb.is_max}});
  }
  o.doc["distinct_orbits"] = res.orbits.size();
  o.doc["orbits"] = orbits;
  if (res.orbits.empty()) {
    o.doc["diagnostic"] = res.diagnostic;
    o.failed = true;
  }
  o.failed = o.failed || !all_ok;
  return o;
}

Output cmd_planar_step(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"curve", "point", "branch"});
  const Resolved r = resolve(f, sc, 1e-10);
  const PlaneCurve c = io::curve_from_json(io::require(sc, "curve", "scenario"));
  const Vec2 a = parse_vec2(io::require(sc, "point", "scenario"), "point");
  const Branch br = parse_branch(sc);
  const auto s = planar_outer_step(c, a, br);
  Output o;
  o.doc = header("planar step", r);
  o.doc["point"] = vec2_json(a);
  o.doc["branch"] = br == Branch::forward ? "forward" : "backward";
  o.doc["b"] = vec2_json(s.b);
  o.doc["theta"] = s.theta;
  o.doc["foot"] = vec2_json(c.point(s.theta));
  o.doc["residual"] = s.residual;
  return o;
}

Output cmd_planar_periodic(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"curve", "k", "starts"});
  const Resolved r = resolve(f, sc, 1e-8);
  const PlaneCurve c = io::curve_from_json(io::require(sc, "curve", "scenario"));
  PlanarPeriodicOptions opt;
  opt.starts = get_or<int>(sc, "starts", 64);
  opt.verify_tol = r.tol;
  opt.threads = f.threads;
  const int k = get_or<int>(sc, "k", 3);
  const auto orbits = find_planar_periodic(c, k, r.seed, opt);
  Output o;
  o.doc = header("planar periodic", r);
  o.doc["k"] = k;
  json arr = json::array();
  for (std::size_t idx = 0; idx < orbits.size(); ++idx) {
    const auto& orb = orbits[idx];
    json pts = json::array();
    for (const auto& z : orb.points) pts.push_back(vec2_json(z));
    arr.push_back({{"thetas", orb.thetas},
                   {"points", pts},
                   {"action", orb.action},
                   {"defect", orb.defect},
                   {"branch", orb.branch == Branch::forward ? "forward" : "backward"}});
    for (std::size_t i = 0; i < orb.points.size(); ++i)
      o.rows.push_back({{"orbit", idx}, {"i", i}, {"theta", orb.thetas[i]}, {"z", vec2_json(orb.points[i])}});
  }
  o.doc["orbits"] = arr;
  o.doc["distinct_orbits"] = orbits.size();
  if (orbits.empty()) {
    o.doc["diagnostic"] = "no verified orbits";
    o.failed = true;
  }
  return o;
}

Output cmd_planar_tractrix(double step, bool positive, const Flags& f) {
  const Resolved r{f.seed.value_or(0), f.tol.value_or(1e-4)};
  const double area = tractrix_area(step, positive ? TractrixSide::positive : TractrixSide::both);
  const double target = positive ? std::numbers::pi / 4 : std::numbers::pi / 2;
  Output o;
  o.doc = header("planar tractrix", r);
  o.doc["step"] = step;
  o.doc["area"] = area;
  o.doc["target"] = positive ? "pi/4" : "pi/2";
  o.doc["error"] = std::abs(area - target);
  o.doc["ok"] = std::abs(area - target) <= r.tol;
  o.failed = !(std::abs(area - target) <= r.tol);
  return o;
}

Output cmd_planar_mamikon(const std::string& path, const Flags& f) {
  const json sc = load_scenario(path, {"curve", "length", "theta_min", "theta_max", "samples"});
  const long samples = get_or<long>(sc, "samples", 1000000);
  if (samples <= 0) throw input_error("samples must be positive");
  const Resolved r = resolve(f, sc, 3.0 / std::sqrt(static_cast<double>(samples)));
  const PlaneCurve c = io::curve_from_json(io::require(sc, "curve", "scenario"));
  SweepRegion region;
  region.length = get_or<double>(sc, "length", 1.0);
  region.theta_min = get_or<double>(sc, "theta_min", 0.0);
  region.theta_max = get_or<double>(sc, "theta_max", kTwoPi);
  const auto m = mamikon_area_check(c, region, samples, r.seed, f.threads);
  Output o;
  o.doc = header("planar mamikon", r);
  o.doc["samples"] = samples;
  o.doc["area_sweep"] = m.area_sweep;
  o.doc["area_cluster"] = m.area_cluster;
  const double rel = m.area_cluster > 0 ? std::abs(m.area_sweep - m.area_cluster) / m.area_cluster
                                        : std::abs(m.area_sweep - m.area_cluster);
  o.doc["relative_difference"] = rel;
  o.doc["ok"] = rel <= r.tol;
  o.failed = !(rel <= r.tol);
  return o;
}

Output cmd_verify_suite(const Flags& f) {
  cli::SuiteContext ctx;
  ctx.seed = f.seed.value_or(0);
  ctx.threads = f.threads;
  const auto results = cli::run_suite(ctx);
  Output o;
  o.doc = {{"command", "verify-suite"}, {"seed", ctx.seed}, {"versions", versions()}};
  json checks = json::array();
  int passed = 0;
  for (const auto& c : results) {
    json row = {{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"tolerance", c.tolerance}};
    if (!c.detail.empty()) row["detail"] = c.detail;
    checks.push_back(row);
    o.rows.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"tolerance", c.tolerance}});
    passed += c.pass ? 1 : 0;
  }
  o.doc["checks"] = checks;
  o.doc["passed"] = passed;
  o.doc["failed"] = static_cast<int>(results.size()) - passed;
  o.failed = passed != static_cast<int>(results.size());
  return o;
}

void emit(const Output& o, const Flags& f) {
  std::string text;
  if (f.csv) {
    if (!o.rows.empty()) {
      text = cli::to_csv(o.rows);
    } else {
      std::vector<json> kv;
      for (const auto& [key, val] : o.doc.items())
        if (!val.is_structured()) kv.push_back({{"key", key}, {"value", val}});
      text = cli::to_csv(kv);
    }
  } else {
    text = cli::to_text(o.doc);
  }
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw input_error("cannot write '" + f.out + "'");
  out << text;
}

void emit_error(const std::string& command, const std::string& kind, const std::string& message, const json* extra) {
  json doc = {{"command", command}, {"status", kind}, {"error", message}};
  if (extra) doc["report"] = *extra;
  std::cout << cli::to_text(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian tangent sweeps, tangent-space multiplicity and outer billiards"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", flags.seed, "random seed (overrides the scenario)");
    sub->add_option("--tol", flags.tol, "tolerance (overrides the scenario)");
    sub->add_option("--threads", flags.threads, "worker threads; 0 = hardware concurrency");
    sub->add_option("--out", flags.out, "write output to this file instead of stdout");
    sub->add_flag("--csv", flags.csv, "emit a CSV projection instead of JSON");
  };

  std::string scenario, intercepts;
  double tractrix_step = 1e-3;
  bool tractrix_positive = false;
  std::function<Output()> action;
  std::string command;

  auto with_scenario = [&](const char* name, const char* help, Output (*fn)(const std::string&, const Flags&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", scenario, "scenario JSON file")->required();
    add_common(sub);
    sub->callback([&, fn, name] {
      command = name;
      action = [&, fn] { return fn(scenario, flags); };
    });
    return sub;
  };

  with_scenario("sweep-check", "check the sweep-to-cluster map is symplectic at sampled frames", cmd_sweep_check);
  with_scenario("multiplicity", "count tangent spaces through a test point", cmd_multiplicity);
  with_scenario("billiard-step", "partners of a point under the outer billiard correspondence", cmd_billiard_step);
  with_scenario("orbit-search", "search and verify odd-period orbits on a product of curves", cmd_orbit_search);

  CLI::App* nn = app.add_subcommand("newton-number", "alternating-sum Newton number for axis intercepts");
  nn->add_option("--intercepts", intercepts, "comma-separated positive integers, e.g. 3,3")->required();
  add_common(nn);
  nn->callback([&] {
    command = "newton-number";
    action = [&] { return cmd_newton_number(intercepts, flags); };
  });

  CLI::App* planar = app.add_subcommand("planar", "planar reference computations");
  planar->require_subcommand(1);
  auto planar_sub = [&](const char* name, const char* help, Output (*fn)(const std::string&, const Flags&)) {
    CLI::App* sub = planar->add_subcommand(name, help);
    sub->add_option("scenario", scenario, "scenario JSON file")->required();
    add_common(sub);
    sub->callback([&, fn, name] {
      command = std::string("planar ") + name;
      action = [&, fn] { return fn(scenario, flags); };
    });
  };
  planar_sub("step", "one step of the planar outer billiard map", cmd_planar_step);
  planar_sub("periodic", "periodic orbits of the planar outer billiard", cmd_planar_periodic);
  planar_sub("mamikon", "Monte Carlo areas of tangent sweep and tangent cluster", cmd_planar_mamikon);
  CLI::App* tr = planar->add_subcommand("tractrix", "area under the tractrix");
  tr->add_option("--step", tractrix_step, "quadrature panel width");
  tr->add_flag("--positive", tractrix_positive, "integrate only s > 0");
  add_common(tr);
  tr->callback([&] {
    command = "planar tractrix";
    action = [&] { return cmd_planar_tractrix(tractrix_step, tractrix_positive, flags); };
  });

  CLI::App* vs = app.add_subcommand("verify-suite", "run the invariant battery");
  add_common(vs);
  vs->callback([&] {
    command = "verify-suite";
    action = [&] { return cmd_verify_suite(flags); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Output o = action();
    emit(o, flags);
    return o.failed ? 1 : 0;
  } catch (const numerical_failure& e) {
    emit_error(command, "numerical_failure", e.what(), &e.report);
    return 1;
  } catch (const input_error& e) {
    emit_error(command, "input_error", e.what(), nullptr);
    return 2;
  } catch (const precondition_error& e) {
    emit_error(command, "input_error", e.what(), nullptr);
    return 2;
  } catch (const std::exception& e) {
    emit_error(command, "numerical_failure", e.what(), nullptr);
    return 1;
  }
}
