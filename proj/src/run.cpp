#include "levelcurv/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/error.hpp"
#include "levelcurv/jet_lab.hpp"

namespace levelcurv {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

template <typename T>
T parse_name(const std::string& name, const std::vector<std::pair<const char*, T>>& table, const char* what) {
  for (const auto& [key, value] : table)
    if (name == key) return value;
  std::string known;
  for (const auto& entry : table) known += std::string(known.empty() ? "" : ", ") + entry.first;
  config_error(std::string("unknown ") + what + " '" + name + "' (expected one of " + known + ")");
}

const std::vector<std::pair<const char*, Command>> kCommands = {
    {"solve", Command::Solve},
    {"curvature", Command::Curvature},
    {"check-theorem", Command::CheckTheorem},
    {"check-corollary", Command::CheckCorollary},
    {"jet-verify", Command::JetVerify},
    {"lemma32", Command::Lemma32},
    {"convergence", Command::Convergence},
};

const std::vector<std::pair<const char*, Verdict>> kVerdicts = {
    {"AllPass", Verdict::AllPass}, {"Violation", Verdict::Violation}, {"NumericalFailure", Verdict::NumericalFailure}};

const std::vector<std::pair<const char*, Geometry>> kGeometries = {
    {"radial", Geometry::Radial}, {"ring2d", Geometry::Ring2D}, {"closed-form", Geometry::ClosedForm}};

const std::vector<std::pair<const char*, EquationKind>> kEquations = {
    {"minimal", EquationKind::MinimalSurface}, {"semilinear", EquationKind::Semilinear}};

const std::vector<std::pair<const char*, JetSource>> kJets = {{"recovered", JetSource::Recovered},
                                                              {"closed-form", JetSource::ClosedForm}};

const std::vector<std::pair<const char*, Region>> kRegions = {
    {"interior", Region::Interior}, {"outer", Region::Outer}, {"inner", Region::Inner}, {"excluded", Region::Excluded}};

const char* const kCorollaryChecks[] = {"ring-bound", "gradient-monotonicity"};

template <typename T>
std::string name_of(T value, const std::vector<std::pair<const char*, T>>& table) {
  for (const auto& [key, v] : table)
    if (v == value) return key;
  return "unknown";
}

// strict accessors

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) == keys.end())
      config_error("unknown key '" + item.key() + "' in " + where);
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) config_error(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) config_error(where + " must be finite");
  return x;
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) config_error(where + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    config_error(where + " is out of range");
  return static_cast<int>(x);
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) config_error(where + " must be a string");
  return v.get<std::string>();
}

Vec2 point2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) config_error(where + " must be [x, y]");
  return {number(v[0], where), number(v[1], where)};
}

template <typename F>
void read_if(const json& obj, const char* key, const std::string& where, F&& f) {
  if (obj.contains(key)) f(obj.at(key), where + "." + key);
}

ConicCurve parse_curve(const json& v, const std::string& where) {
  if (!v.is_object() || !v.contains("type")) config_error(where + " needs a \"type\"");
  const std::string type = text(v.at("type"), where + ".type");
  Vec2 centre = Vec2::Zero();
  if (type == "circle") {
    allow_keys(v, {"type", "radius", "center"}, where);
    if (!v.contains("radius")) config_error(where + " needs \"radius\"");
    read_if(v, "center", where, [&](const json& c, const std::string& w) { centre = point2(c, w); });
    return ConicCurve::circle(number(v.at("radius"), where + ".radius"), centre);
  }
  if (type == "ellipse") {
    allow_keys(v, {"type", "semi_a", "semi_b", "angle", "center"}, where);
    if (!v.contains("semi_a") || !v.contains("semi_b")) config_error(where + " needs \"semi_a\" and \"semi_b\"");
    double angle = 0.0;
    read_if(v, "angle", where, [&](const json& c, const std::string& w) { angle = number(c, w); });
    read_if(v, "center", where, [&](const json& c, const std::string& w) { centre = point2(c, w); });
    return ConicCurve::ellipse(number(v.at("semi_a"), where + ".semi_a"), number(v.at("semi_b"), where + ".semi_b"),
                               angle, centre);
  }
  config_error(where + ".type must be \"circle\" or \"ellipse\"");
}

json curve_json(const ConicCurve& c) {
  json j;
  if (c.is_circle() && c.angle == 0.0) {
    j["type"] = "circle";
    j["radius"] = c.semi_a;
  } else {
    j["type"] = "ellipse";
    j["semi_a"] = c.semi_a;
    j["semi_b"] = c.semi_b;
    j["angle"] = c.angle;
  }
  j["center"] = json::array({c.centre.x(), c.centre.y()});
  return j;
}

ProblemConfig parse_problem(const json& p) {
  const std::string where = "problem";
  if (!p.is_object()) config_error("problem must be an object");
  ProblemConfig cfg;
  if (p.contains("geometry")) cfg.geometry = parse_name(text(p.at("geometry"), "problem.geometry"), kGeometries, "geometry");

  auto common = [&](const json& obj) {
    read_if(obj, "equation", where,
            [&](const json& v, const std::string& w) { cfg.equation = parse_name(text(v, w), kEquations, "equation"); });
    read_if(obj, "rhs", where, [&](const json& v, const std::string& w) { cfg.rhs = text(v, w); });
  };
  auto radial_keys = [&](const json& obj) {
    read_if(obj, "n", where, [&](const json& v, const std::string& w) { cfg.n = integer(v, w); });
    read_if(obj, "a", where, [&](const json& v, const std::string& w) { cfg.a = number(v, w); });
    read_if(obj, "b", where, [&](const json& v, const std::string& w) { cfg.b = number(v, w); });
    read_if(obj, "u_a", where, [&](const json& v, const std::string& w) { cfg.u_a = number(v, w); });
    read_if(obj, "u_b", where, [&](const json& v, const std::string& w) { cfg.u_b = number(v, w); });
    read_if(obj, "samples", where, [&](const json& v, const std::string& w) { cfg.samples = integer(v, w); });
  };

  switch (cfg.geometry) {
    case Geometry::Radial:
      allow_keys(p, {"geometry", "equation", "rhs", "n", "a", "b", "u_a", "u_b", "samples", "jets"}, where);
      common(p);
      radial_keys(p);
      read_if(p, "jets", where,
              [&](const json& v, const std::string& w) { cfg.jets = parse_name(text(v, w), kJets, "jet source"); });
      break;
    case Geometry::ClosedForm:
      allow_keys(p, {"geometry", "field", "n", "a", "b", "u_a", "u_b", "samples", "flux"}, where);
      radial_keys(p);
      if (!p.contains("field")) config_error("closed-form problems need \"field\"");
      cfg.field = text(p.at("field"), "problem.field");
      if (cfg.field == "catenoid") {
        cfg.equation = EquationKind::MinimalSurface;
        if (p.contains("u_a") || p.contains("u_b")) config_error("catenoid fields take \"flux\", not boundary values");
        read_if(p, "flux", where, [&](const json& v, const std::string& w) { cfg.flux = number(v, w); });
      } else if (cfg.field == "harmonic-ring") {
        cfg.equation = EquationKind::Semilinear;
        if (p.contains("flux")) config_error("harmonic-ring fields take \"u_a\" and \"u_b\", not \"flux\"");
      } else {
        config_error("problem.field must be \"catenoid\" or \"harmonic-ring\"");
      }
      cfg.jets = JetSource::ClosedForm;
      break;
    case Geometry::Ring2D:
      allow_keys(p,
                 {"geometry", "equation", "rhs", "outer", "inner", "pole", "grid", "outer_data", "inner_data", "solver"},
                 where);
      common(p);
      read_if(p, "outer", where, [&](const json& v, const std::string& w) { cfg.outer = parse_curve(v, w); });
      read_if(p, "inner", where, [&](const json& v, const std::string& w) { cfg.inner = parse_curve(v, w); });
      cfg.pole = cfg.inner.centre;
      read_if(p, "pole", where, [&](const json& v, const std::string& w) { cfg.pole = point2(v, w); });
      read_if(p, "grid", where, [&](const json& v, const std::string& w) {
        if (!v.is_array() || v.size() != 2) config_error(w + " must be [ns, nt]");
        cfg.ns = integer(v[0], w);
        cfg.nt = integer(v[1], w);
      });
      read_if(p, "outer_data", where, [&](const json& v, const std::string& w) { cfg.outer_data = text(v, w); });
      read_if(p, "inner_data", where, [&](const json& v, const std::string& w) { cfg.inner_data = text(v, w); });
      read_if(p, "solver", where, [&](const json& s, const std::string& w) {
        allow_keys(s, {"tol", "max_iter", "picard_steps"}, w);
        read_if(s, "tol", w, [&](const json& v, const std::string& ww) { cfg.solver.tol = number(v, ww); });
        read_if(s, "max_iter", w, [&](const json& v, const std::string& ww) { cfg.solver.max_iter = integer(v, ww); });
        read_if(s, "picard_steps", w,
                [&](const json& v, const std::string& ww) { cfg.solver.picard_steps = integer(v, ww); });
      });
      break;
  }
  if (cfg.equation == EquationKind::Semilinear) SemilinearRHS::parse(cfg.rhs);
  return cfg;
}

json problem_json(const ProblemConfig& p) {
  json j;
  j["geometry"] = name_of(p.geometry, kGeometries);
  switch (p.geometry) {
    case Geometry::ClosedForm:
      j["field"] = p.field;
      j["n"] = p.n;
      j["a"] = p.a;
      j["b"] = p.b;
      if (p.field == "catenoid") {
        j["flux"] = p.flux;
      } else {
        j["u_a"] = p.u_a;
        j["u_b"] = p.u_b;
      }
      j["samples"] = p.samples;
      break;
    case Geometry::Radial:
      j["equation"] = name_of(p.equation, kEquations);
      if (p.equation == EquationKind::Semilinear) j["rhs"] = p.rhs;
      j["n"] = p.n;
      j["a"] = p.a;
      j["b"] = p.b;
      j["u_a"] = p.u_a;
      j["u_b"] = p.u_b;
      j["samples"] = p.samples;
      j["jets"] = name_of(p.jets, kJets);
      break;
    case Geometry::Ring2D:
      j["equation"] = name_of(p.equation, kEquations);
      if (p.equation == EquationKind::Semilinear) j["rhs"] = p.rhs;
      j["outer"] = curve_json(p.outer);
      j["inner"] = curve_json(p.inner);
      j["pole"] = json::array({p.pole.x(), p.pole.y()});
      j["grid"] = json::array({p.ns, p.nt});
      j["outer_data"] = p.outer_data;
      j["inner_data"] = p.inner_data;
      j["solver"] = {{"tol", p.solver.tol}, {"max_iter", p.solver.max_iter}, {"picard_steps", p.solver.picard_steps}};
      break;
  }
  return j;
}

bool uses_problem(Command c) {
  return c == Command::Solve || c == Command::Curvature || c == Command::CheckTheorem || c == Command::CheckCorollary;
}

bool uses_checks(Command c) { return c == Command::CheckTheorem || c == Command::CheckCorollary; }

int default_instances(Command c) { return c == Command::Lemma32 ? 200 : 100; }

// JSON writing

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_num(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    config_error("bad number '" + s + "' in report");
  }
  return v.get<double>();
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Vec read_vec(const json& a) {
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_num(a[i]);
  return v;
}

json extremum_json(const Extremum& e) {
  return {{"value", num(e.value)}, {"region", name_of(e.region, kRegions)}, {"location", vec_json(e.location)}};
}

Extremum read_extremum(const json& j) {
  Extremum e;
  e.value = read_num(j.at("value"));
  e.region = parse_name(j.at("region").get<std::string>(), kRegions, "region");
  e.location = read_vec(j.at("location"));
  return e;
}

json check_json(const CheckReport& r) {
  json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["tolerance"] = num(r.tolerance);
  j["grid_h"] = num(r.grid_h);
  json comps = json::array();
  for (const auto& c : r.comparisons)
    comps.push_back({{"label", c.label},
                     {"pass", c.pass},
                     {"margin", num(c.margin)},
                     {"interior", extremum_json(c.interior)},
                     {"boundary", extremum_json(c.boundary)}});
  j["comparisons"] = comps;
  j["notes"] = r.notes;
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
  j["metrics"] = metrics;
  return j;
}

CheckReport read_check(const json& j) {
  CheckReport r;
  r.name = j.at("name").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  r.tolerance = read_num(j.at("tolerance"));
  r.grid_h = read_num(j.at("grid_h"));
  for (const auto& c : j.at("comparisons")) {
    Comparison cmp;
    cmp.label = c.at("label").get<std::string>();
    cmp.pass = c.at("pass").get<bool>();
    cmp.margin = read_num(c.at("margin"));
    cmp.interior = read_extremum(c.at("interior"));
    cmp.boundary = read_extremum(c.at("boundary"));
    r.comparisons.push_back(cmp);
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& item : j.at("metrics").items()) r.metrics[item.key()] = read_num(item.value());
  return r;
}

json bound_json(const CorollaryBound& b) {
  return {{"pass", b.pass},
          {"min_k_interior", num(b.min_k_interior)},
          {"min_k_boundary", num(b.min_k_boundary)},
          {"grad_min_outer", num(b.grad_min_outer)},
          {"grad_max_inner", num(b.grad_max_inner)},
          {"bound_value", num(b.bound_value)},
          {"tolerance", num(b.tolerance)},
          {"notes", b.notes}};
}

CorollaryBound read_bound(const json& j) {
  CorollaryBound b;
  b.pass = j.at("pass").get<bool>();
  b.min_k_interior = read_num(j.at("min_k_interior"));
  b.min_k_boundary = read_num(j.at("min_k_boundary"));
  b.grad_min_outer = read_num(j.at("grad_min_outer"));
  b.grad_max_inner = read_num(j.at("grad_max_inner"));
  b.bound_value = read_num(j.at("bound_value"));
  b.tolerance = read_num(j.at("tolerance"));
  b.notes = j.at("notes").get<std::vector<std::string>>();
  return b;
}

void write_json(std::string& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(item.key()).dump() + ": ";
        write_json(out, item.value(), indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write_json(out, e, indent + 2);
      }
      out += flat ? "]" : "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

// pipeline

struct Stage {
  RunReport& report;
  void fail(const Error& e) {
    report.verdict = Verdict::NumericalFailure;
    if (report.detail.empty()) report.detail = e.what();
  }
};

bool is_config_kind(ErrorKind k) {
  return k == ErrorKind::ConfigError || k == ErrorKind::InvalidInstance || k == ErrorKind::UnsupportedDimension;
}

std::optional<SemilinearRHS> rhs_of(const ProblemConfig& p) {
  if (p.equation == EquationKind::Semilinear) return SemilinearRHS::parse(p.rhs);
  return std::nullopt;
}

/// Solves or samples the problem; fills solver metadata, the solution and,
/// when `sample` is set, the sampled field.
void build_problem(const ProblemConfig& p, bool sample, RunReport& report) {
  SolverInfo info;
  info.geometry = name_of(p.geometry, kGeometries);
  info.equation = to_string(p.equation);
  info.rhs = p.equation == EquationKind::Semilinear ? p.rhs : "";
  info.n = p.n;

  if (p.geometry == Geometry::ClosedForm) {
    std::unique_ptr<ClosedFormField> field;
    if (p.field == "catenoid") {
      field = std::make_unique<RadialMinimalField>(p.n, p.flux);
      info.flux = p.flux;
    } else {
      field = std::make_unique<HarmonicRingField>(p.n, p.a, p.b, p.u_a, p.u_b);
    }
    info.boundary = field->name();
    info.nodes = p.samples;
    info.h = (p.b - p.a) / (p.samples - 1);
    report.solver = info;
    if (sample) report.sampled = sample_radial_field(*field, p.a, p.b, p.samples, p.equation, rhs_of(p));
    return;
  }

  if (p.geometry == Geometry::Radial) {
    RadialSolution sol = p.equation == EquationKind::MinimalSurface
                             ? solve_minimal_radial(p.n, p.a, p.b, p.u_a, p.u_b, p.samples)
                             : solve_semilinear_radial(p.n, p.a, p.b, p.u_a, p.u_b, *rhs_of(p), p.samples);
    std::ostringstream bd;
    bd.precision(17);
    bd << "u(" << p.a << ") = " << p.u_a << ", u(" << p.b << ") = " << p.u_b;
    info.boundary = bd.str();
    info.nodes = static_cast<int>(sol.r.size());
    info.h = sol.h;
    info.iterations = sol.iterations;
    info.residual_norm = sol.residual_norm;
    if (p.equation == EquationKind::MinimalSurface) info.flux = sol.flux;
    report.solver = info;
    if (sample) report.sampled = sample_field(sol, p.jets);
    report.solution = std::move(sol);
    return;
  }

  const RingDomain2D domain(p.outer, p.inner, p.pole, p.ns, p.nt);
  const BoundaryData data = named_boundary_data(p.outer_data, p.inner_data, domain);
  GridSolution sol = p.equation == EquationKind::MinimalSurface
                         ? solve_minimal_ring2d(domain, data, p.solver)
                         : solve_semilinear_ring2d(domain, data, *rhs_of(p), p.solver);
  info.boundary = p.outer_data + " / " + p.inner_data;
  info.nodes = static_cast<int>(sol.u.size());
  info.h = sol.h;
  info.iterations = sol.newton_iterations;
  info.picard_iterations = sol.picard_iterations;
  info.residual_norm = sol.residual_norm;
  report.solver = info;
  if (sample) report.sampled = sample_field(sol);
  report.solution = std::move(sol);
}

CurvatureSummary summarize(const SampledField& field) {
  CurvatureSummary s;
  s.min_k = s.min_grad = std::numeric_limits<double>::infinity();
  s.max_k = s.max_grad = -std::numeric_limits<double>::infinity();
  for (const auto& x : field.samples) {
    if (x.region == Region::Excluded) continue;
    ++s.samples;
    if (x.region == Region::Interior) ++s.interior_samples;
    if (x.convexity == Convexity::StrictlyConvex) ++s.strictly_convex;
    const double g = std::sqrt(x.grad_sq);
    s.min_k = std::min(s.min_k, x.gauss);
    s.max_k = std::max(s.max_k, x.gauss);
    s.min_grad = std::min(s.min_grad, g);
    s.max_grad = std::max(s.max_grad, g);
  }
  return s;
}

CheckOptions check_options(const RunConfig& c) {
  CheckOptions o;
  o.tolerance = c.tolerances.absolute;
  o.c_tol = c.tolerances.c_tol;
  return o;
}

template <typename F>
void record(RunReport& report, const std::string& label, F&& body) {
  CheckRecord rec;
  rec.label = label;
  try {
    body(rec);
  } catch (const Error& e) {
    rec.check.reset();
    rec.bound.reset();
    rec.error_kind = std::string(to_string(e.kind()));
    rec.error = e.what();
  }
  report.records.push_back(std::move(rec));
}

CheckReport residual_report(const std::string& name, double residual, double threshold, int instances) {
  CheckReport r;
  r.name = name;
  r.tolerance = threshold;
  r.pass = residual < threshold;
  r.metrics["max_residual"] = residual;
  r.metrics["instances"] = instances;
  return r;
}

void run_jet_verify(const RunConfig& c, RunReport& report) {
  const int count = c.instances > 0 ? c.instances : default_instances(c.command);
  for (int n : c.dims) {
    const std::string suffix = "-n" + std::to_string(n);
    record(report, "codazzi" + suffix, [&](CheckRecord& rec) {
      double worst = 0.0;
      for (int k = 0; k < count; ++k) {
        const TestField t = random_test_jet(c.seed + static_cast<std::uint64_t>(k), n);
        worst = std::max(worst, codazzi_residual(t.field, t.point));
      }
      rec.check = residual_report("codazzi" + suffix, worst, 1e-9, count);
    });
    record(report, "phi-gradient" + suffix, [&](CheckRecord& rec) {
      double worst = 0.0;
      for (int k = 0; k < count; ++k) {
        const TestField t = random_test_jet(c.seed + static_cast<std::uint64_t>(k), n, true);
        worst = std::max(worst, phi_gradient_identity_residual(t.field, t.point, TestFunctionSpec::minimal_theta(-0.5)));
      }
      rec.check = residual_report("phi-gradient" + suffix, worst, 1e-8, count);
    });
    record(report, "uiia" + suffix, [&](CheckRecord& rec) {
      double worst = 0.0;
      for (int k = 0; k < count; ++k) {
        const TestField t = random_test_jet(c.seed + static_cast<std::uint64_t>(k), n);
        worst = std::max(worst, uiia_residual(t.field, t.point));
      }
      rec.check = residual_report("uiia" + suffix, worst, 1e-9, count);
    });
  }
  record(report, "master-catenoid-2d", [&](CheckRecord& rec) {
    const double r = minimal_master_identity_residual(RadialMinimalField(2, 1.0, -1.0), Eigen::Vector2d(2.0, 0.5), -0.5);
    rec.check = residual_report("master-catenoid-2d", r, 1e-10, 1);
  });
  record(report, "master-scherk", [&](CheckRecord& rec) {
    const double r = minimal_master_identity_residual(ScherkField(1.0), Eigen::Vector2d(0.3, 0.7), -0.5);
    rec.check = residual_report("master-scherk", r, 1e-6, 1);
  });
  record(report, "master-radial-3d", [&](CheckRecord& rec) {
    const double r = minimal_master_identity_residual(RadialMinimalField(3, 1.0), Eigen::Vector3d(2.5, 0.4, 0.3), 0.0);
    rec.check = residual_report("master-radial-3d", r, 1e-6, 1);
  });
}

void run_lemma32(const RunConfig& c, RunReport& report) {
  const int count = c.instances > 0 ? c.instances : default_instances(c.command);
  record(report, "quadratic-bound", [&](CheckRecord& rec) {
    double excess = -std::numeric_limits<double>::infinity();
    int grid = 0;
    for (int k = 0; k < count; ++k) {
      const QuadraticBoundInstance inst = random_quadratic_instance(c.seed + static_cast<std::uint64_t>(k));
      const QuadraticMaximum m = maximize_quadratic_form(inst);
      excess = std::max(excess, m.value - lemma_quadratic_bound(inst).bound);
      grid += m.grid_search ? 1 : 0;
    }
    CheckReport r;
    r.name = "quadratic-bound";
    r.tolerance = 1e-9;
    r.pass = excess <= 1e-9;
    r.metrics["max_excess"] = excess;
    r.metrics["instances"] = count;
    r.metrics["grid_searches"] = grid;
    rec.check = r;
  });
  record(report, "quadratic-bound-witnesses", [&](CheckRecord& rec) {
    CheckReport r;
    r.name = "quadratic-bound-witnesses";
    r.tolerance = 1e-12;
    const QuadraticBoundInstance a{0.0, 1.0, Vec::Ones(1), Vec::Ones(1)};
    const QuadraticBoundInstance b{1.0, 1.0, Vec::Ones(1), Vec::Ones(1)};
    r.metrics["gap_lambda0"] = std::abs(maximize_quadratic_form(a).value - lemma_quadratic_bound(a).bound);
    r.metrics["gap_lambda1"] = std::abs(maximize_quadratic_form(b).value - lemma_quadratic_bound(b).bound);
    r.pass = r.metrics["gap_lambda0"] <= 1e-12 && r.metrics["gap_lambda1"] <= 1e-12;
    rec.check = r;
  });
}

void run_checks(const RunConfig& c, RunReport& report) {
  const SampledField& field = *report.sampled;
  const CheckOptions opts = check_options(c);
  for (const auto& chk : c.checks) {
    std::string label = chk.name;
    if (chk.theta) label += " theta=" + format_double(*chk.theta);
    record(report, label, [&](CheckRecord& rec) {
      if (c.command == Command::CheckTheorem) {
        rec.check = check_theorem(parse_theorem_case(chk.name), field, chk.theta, opts);
      } else if (chk.name == "gradient-monotonicity") {
        rec.check = check_gradient_monotonicity(field, opts);
      } else {
        BoundOptions b;
        b.fraction = c.tolerances.bound_fraction;
        b.tolerance = c.tolerances.absolute;
        rec.bound = field.equation == EquationKind::Semilinear ? corollary_bound_poisson(field, b)
                                                               : corollary_bound_minimal(field, b);
      }
    });
  }
}

void run_convergence(const RunConfig& c, RunReport& report) {
  report.convergence = convergence_study(parse_study_problem(c.study), c.grids);
  if (!c.min_order) return;
  record(report, "convergence-order", [&](CheckRecord& rec) {
    CheckReport r;
    r.name = "convergence-order";
    r.tolerance = 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& row : report.convergence)
      if (row.order) lowest = std::min(lowest, *row.order);
    r.metrics["min_order"] = *c.min_order;
    r.metrics["observed_min_order"] = lowest;
    r.pass = lowest >= *c.min_order;
    if (!std::isfinite(lowest)) r.notes.push_back("no orders: errors vanish or a single grid");
    rec.check = r;
  });
}

void settle_verdict(RunReport& report) {
  if (report.verdict == Verdict::NumericalFailure) return;
  bool failed = false;
  for (const auto& r : report.records) {
    if (!r.error_kind.empty()) {
      report.verdict = Verdict::NumericalFailure;
      if (report.detail.empty()) report.detail = r.label + ": " + r.error;
      return;
    }
    if ((r.check && !r.check->pass) || (r.bound && !r.bound->pass)) failed = true;
  }
  report.verdict = failed ? Verdict::Violation : Verdict::AllPass;
}

bool same_double(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!same_double(a(i), b(i))) return false;
  return true;
}

bool same_extremum(const Extremum& a, const Extremum& b) {
  return same_double(a.value, b.value) && a.region == b.region && same_vec(a.location, b.location);
}

bool same_check(const CheckReport& a, const CheckReport& b) {
  if (a.name != b.name || a.pass != b.pass || !same_double(a.tolerance, b.tolerance) ||
      !same_double(a.grid_h, b.grid_h) || a.notes != b.notes || a.comparisons.size() != b.comparisons.size() ||
      a.metrics.size() != b.metrics.size())
    return false;
  for (std::size_t i = 0; i < a.comparisons.size(); ++i) {
    const auto& x = a.comparisons[i];
    const auto& y = b.comparisons[i];
    if (x.label != y.label || x.pass != y.pass || !same_double(x.margin, y.margin) ||
        !same_extremum(x.interior, y.interior) || !same_extremum(x.boundary, y.boundary))
      return false;
  }
  for (const auto& [k, v] : a.metrics) {
    auto it = b.metrics.find(k);
    if (it == b.metrics.end() || !same_double(v, it->second)) return false;
  }
  return true;
}

bool same_bound(const CorollaryBound& a, const CorollaryBound& b) {
  return a.pass == b.pass && same_double(a.min_k_interior, b.min_k_interior) &&
         same_double(a.min_k_boundary, b.min_k_boundary) && same_double(a.grad_min_outer, b.grad_min_outer) &&
         same_double(a.grad_max_inner, b.grad_max_inner) && same_double(a.bound_value, b.bound_value) &&
         same_double(a.tolerance, b.tolerance) && a.notes == b.notes;
}

template <typename T, typename Eq>
bool same_optional(const std::optional<T>& a, const std::optional<T>& b, Eq eq) {
  if (a.has_value() != b.has_value()) return false;
  return !a || eq(*a, *b);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path);
}

}  // namespace

std::string to_string(Command c) { return name_of(c, kCommands); }
Command parse_command(const std::string& name) { return parse_name(name, kCommands, "command"); }
std::string to_string(Verdict v) { return name_of(v, kVerdicts); }
Verdict parse_verdict(const std::string& name) { return parse_name(name, kVerdicts, "verdict"); }

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::AllPass: return 0;
    case Verdict::Violation: return 1;
    case Verdict::NumericalFailure: return 2;
  }
  return 2;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig default_config(Command command) {
  RunConfig c;
  c.command = command;
  c.output = "levelcurv_" + to_string(command);
  if (command == Command::Convergence) {
    c.study = "laplace-annulus";
    c.grids = {{17, 32}, {33, 64}, {65, 128}};
  }
  if (uses_problem(command)) c.problem = ProblemConfig{};
  if (command == Command::CheckCorollary) c.checks = {{"ring-bound", std::nullopt}};
  return c;
}

RunConfig parse_config(const std::string& json_text, Command command) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  allow_keys(doc,
             {"command", "problem", "checks", "study", "grids", "min_order", "seed", "tolerances", "instances", "dims",
              "output"},
             "config");
  if (doc.contains("command") && parse_command(text(doc.at("command"), "command")) != command)
    config_error("config command '" + doc.at("command").get<std::string>() + "' does not match '" +
                 to_string(command) + "'");

  RunConfig c = default_config(command);
  auto reject_unless = [&](const char* key, bool ok) {
    if (doc.contains(key) && !ok) config_error(std::string("\"") + key + "\" is not used by " + to_string(command));
  };
  reject_unless("problem", uses_problem(command));
  reject_unless("checks", uses_checks(command));
  reject_unless("tolerances", uses_checks(command));
  reject_unless("study", command == Command::Convergence);
  reject_unless("grids", command == Command::Convergence);
  reject_unless("min_order", command == Command::Convergence);
  reject_unless("instances", command == Command::JetVerify || command == Command::Lemma32);
  reject_unless("dims", command == Command::JetVerify);

  if (doc.contains("problem")) c.problem = parse_problem(doc.at("problem"));
  if (doc.contains("checks")) {
    const json& list = doc.at("checks");
    if (!list.is_array()) config_error("checks must be an array");
    c.checks.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "checks[" + std::to_string(i) + "]";
      allow_keys(list[i], {"case", "theta"}, where);
      if (!list[i].contains("case")) config_error(where + " needs \"case\"");
      CheckConfig chk;
      chk.name = text(list[i].at("case"), where + ".case");
      read_if(list[i], "theta", where, [&](const json& v, const std::string& w) { chk.theta = number(v, w); });
      if (command == Command::CheckTheorem) {
        parse_theorem_case(chk.name);
      } else {
        if (std::find(std::begin(kCorollaryChecks), std::end(kCorollaryChecks), chk.name) ==
            std::end(kCorollaryChecks))
          config_error(where + ".case must be \"ring-bound\" or \"gradient-monotonicity\"");
        if (chk.theta) config_error(where + ": theta is not used by " + chk.name);
      }
      c.checks.push_back(chk);
    }
  }
  if (uses_checks(command) && c.checks.empty()) config_error("checks must name at least one case");
  if (doc.contains("study")) {
    c.study = text(doc.at("study"), "study");
    parse_study_problem(c.study);
  }
  if (doc.contains("grids")) {
    const json& list = doc.at("grids");
    if (!list.is_array() || list.empty()) config_error("grids must be a nonempty array of [ns, nt]");
    c.grids.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "grids[" + std::to_string(i) + "]";
      if (!list[i].is_array() || list[i].size() != 2) config_error(where + " must be [ns, nt]");
      c.grids.push_back({integer(list[i][0], where), integer(list[i][1], where)});
    }
  }
  read_if(doc, "min_order", "config", [&](const json& v, const std::string& w) { c.min_order = number(v, w); });
  read_if(doc, "seed", "config", [&](const json& v, const std::string& w) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      config_error(w + " must be a nonnegative integer");
    c.seed = v.get<std::uint64_t>();
  });
  read_if(doc, "tolerances", "config", [&](const json& t, const std::string& w) {
    allow_keys(t, {"absolute", "c_tol", "bound_fraction"}, w);
    read_if(t, "absolute", w, [&](const json& v, const std::string& ww) { c.tolerances.absolute = number(v, ww); });
    read_if(t, "c_tol", w, [&](const json& v, const std::string& ww) { c.tolerances.c_tol = number(v, ww); });
    read_if(t, "bound_fraction", w,
            [&](const json& v, const std::string& ww) { c.tolerances.bound_fraction = number(v, ww); });
  });
  read_if(doc, "instances", "config", [&](const json& v, const std::string& w) {
    c.instances = integer(v, w);
    if (c.instances < 1) config_error(w + " must be positive");
  });
  read_if(doc, "dims", "config", [&](const json& v, const std::string& w) {
    if (!v.is_array() || v.empty()) config_error(w + " must be a nonempty array");
    c.dims.clear();
    for (const auto& d : v) {
      const int n = integer(d, w);
      if (n < 2 || n > 4) config_error(w + " entries must be 2, 3 or 4");
      c.dims.push_back(n);
    }
  });
  read_if(doc, "output", "config", [&](const json& v, const std::string& w) { c.output = text(v, w); });
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  j["seed"] = c.seed;
  j["output"] = c.output;
  if (c.problem) j["problem"] = problem_json(*c.problem);
  if (uses_checks(c.command)) {
    json list = json::array();
    for (const auto& chk : c.checks) {
      json e;
      e["case"] = chk.name;
      if (chk.theta) e["theta"] = *chk.theta;
      list.push_back(e);
    }
    j["checks"] = list;
    json t;
    if (c.tolerances.absolute) t["absolute"] = *c.tolerances.absolute;
    if (c.tolerances.c_tol) t["c_tol"] = *c.tolerances.c_tol;
    t["bound_fraction"] = c.tolerances.bound_fraction;
    j["tolerances"] = t;
  }
  if (c.command == Command::JetVerify || c.command == Command::Lemma32)
    j["instances"] = c.instances > 0 ? c.instances : default_instances(c.command);
  if (c.command == Command::JetVerify) j["dims"] = c.dims;
  if (c.command == Command::Convergence) {
    j["study"] = c.study;
    json grids = json::array();
    for (const auto& g : c.grids) grids.push_back(json::array({g.ns, g.nt}));
    j["grids"] = grids;
    if (c.min_order) j["min_order"] = *c.min_order;
  }
  return j;
}

GridSpec parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) config_error("grid must look like NsxNt, got '" + s + "'");
  auto part = [&](const std::string& p) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size() || v <= 0) config_error("grid must look like NsxNt, got '" + s + "'");
    return v;
  };
  return {part(s.substr(0, x)), part(s.substr(x + 1))};
}

void apply_grid_override(RunConfig& c, const GridSpec& g) {
  if (!c.problem) config_error("--grid needs a command with a problem");
  if (c.problem->geometry == Geometry::Ring2D) {
    c.problem->ns = g.ns;
    c.problem->nt = g.nt;
  } else {
    c.problem->samples = g.ns;
  }
}

RunReport run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config_to_json(config);
  Stage stage{report};
  try {
    switch (config.command) {
      case Command::Solve:
      case Command::Curvature:
      case Command::CheckTheorem:
      case Command::CheckCorollary:
        build_problem(*config.problem, config.command != Command::Solve, report);
        if (config.command == Command::Curvature) report.curvature = summarize(*report.sampled);
        if (uses_checks(config.command)) run_checks(config, report);
        break;
      case Command::JetVerify: run_jet_verify(config, report); break;
      case Command::Lemma32: run_lemma32(config, report); break;
      case Command::Convergence: run_convergence(config, report); break;
    }
  } catch (const Error& e) {
    if (is_config_kind(e.kind())) throw;
    stage.fail(e);
    report.solution.reset();
    report.sampled.reset();
  }
  settle_verdict(report);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["config"] = r.config;
  j["verdict"] = to_string(r.verdict);
  j["detail"] = r.detail;
  if (r.solver) {
    const SolverInfo& s = *r.solver;
    j["solver"] = {{"geometry", s.geometry},
                   {"equation", s.equation},
                   {"rhs", s.rhs},
                   {"boundary", s.boundary},
                   {"n", s.n},
                   {"nodes", s.nodes},
                   {"h", num(s.h)},
                   {"iterations", s.iterations},
                   {"picard_iterations", s.picard_iterations},
                   {"residual_norm", num(s.residual_norm)},
                   {"flux", s.flux ? num(*s.flux) : json(nullptr)}};
  } else {
    j["solver"] = nullptr;
  }
  if (r.curvature) {
    const CurvatureSummary& c = *r.curvature;
    j["curvature"] = {{"samples", c.samples},
                      {"interior_samples", c.interior_samples},
                      {"strictly_convex", c.strictly_convex},
                      {"min_k", num(c.min_k)},
                      {"max_k", num(c.max_k)},
                      {"min_grad", num(c.min_grad)},
                      {"max_grad", num(c.max_grad)}};
  } else {
    j["curvature"] = nullptr;
  }
  json records = json::array();
  for (const auto& rec : r.records) {
    json e;
    e["label"] = rec.label;
    if (rec.check) {
      e["kind"] = "check";
      e["report"] = check_json(*rec.check);
    } else if (rec.bound) {
      e["kind"] = "bound";
      e["bound"] = bound_json(*rec.bound);
    } else {
      e["kind"] = "error";
      e["error"] = {{"kind", rec.error_kind}, {"message", rec.error}};
    }
    records.push_back(e);
  }
  j["records"] = records;
  json conv = json::array();
  for (const auto& row : r.convergence)
    conv.push_back({{"ns", row.grid.ns},
                    {"nt", row.grid.nt},
                    {"h", num(row.h)},
                    {"error", num(row.error)},
                    {"order", row.order ? num(*row.order) : json(nullptr)}});
  j["convergence"] = conv;
  std::string out;
  write_json(out, j, 0);
  out += "\n";
  return out;
}

RunReport parse_report(const std::string& text_in) {
  RunReport r;
  try {
    const json j = json::parse(text_in);
    r.config = j.at("config");
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.detail = j.at("detail").get<std::string>();
    if (!j.at("solver").is_null()) {
      const json& s = j.at("solver");
      SolverInfo info;
      info.geometry = s.at("geometry").get<std::string>();
      info.equation = s.at("equation").get<std::string>();
      info.rhs = s.at("rhs").get<std::string>();
      info.boundary = s.at("boundary").get<std::string>();
      info.n = s.at("n").get<int>();
      info.nodes = s.at("nodes").get<int>();
      info.h = read_num(s.at("h"));
      info.iterations = s.at("iterations").get<int>();
      info.picard_iterations = s.at("picard_iterations").get<int>();
      info.residual_norm = read_num(s.at("residual_norm"));
      if (!s.at("flux").is_null()) info.flux = read_num(s.at("flux"));
      r.solver = info;
    }
    if (!j.at("curvature").is_null()) {
      const json& c = j.at("curvature");
      CurvatureSummary s;
      s.samples = c.at("samples").get<int>();
      s.interior_samples = c.at("interior_samples").get<int>();
      s.strictly_convex = c.at("strictly_convex").get<int>();
      s.min_k = read_num(c.at("min_k"));
      s.max_k = read_num(c.at("max_k"));
      s.min_grad = read_num(c.at("min_grad"));
      s.max_grad = read_num(c.at("max_grad"));
      r.curvature = s;
    }
    for (const auto& e : j.at("records")) {
      CheckRecord rec;
      rec.label = e.at("label").get<std::string>();
      const std::string kind = e.at("kind").get<std::string>();
      if (kind == "check") {
        rec.check = read_check(e.at("report"));
      } else if (kind == "bound") {
        rec.bound = read_bound(e.at("bound"));
      } else {
        rec.error_kind = e.at("error").at("kind").get<std::string>();
        rec.error = e.at("error").at("message").get<std::string>();
      }
      r.records.push_back(std::move(rec));
    }
    for (const auto& row : j.at("convergence")) {
      ConvergenceRow c;
      c.grid = {row.at("ns").get<int>(), row.at("nt").get<int>()};
      c.h = read_num(row.at("h"));
      c.error = read_num(row.at("error"));
      if (!row.at("order").is_null()) c.order = read_num(row.at("order"));
      r.convergence.push_back(c);
    }
  } catch (const json::exception& e) {
    config_error(std::string("malformed report: ") + e.what());
  }
  return r;
}

bool same_report(const RunReport& a, const RunReport& b) {
  if (a.config != b.config || a.verdict != b.verdict || a.detail != b.detail) return false;
  const bool solver = same_optional(a.solver, b.solver, [](const SolverInfo& x, const SolverInfo& y) {
    return x.geometry == y.geometry && x.equation == y.equation && x.rhs == y.rhs && x.boundary == y.boundary &&
           x.n == y.n && x.nodes == y.nodes && same_double(x.h, y.h) && x.iterations == y.iterations &&
           x.picard_iterations == y.picard_iterations && same_double(x.residual_norm, y.residual_norm) &&
           same_optional(x.flux, y.flux, same_double);
  });
  const bool curvature = same_optional(a.curvature, b.curvature, [](const CurvatureSummary& x, const CurvatureSummary& y) {
    return x.samples == y.samples && x.interior_samples == y.interior_samples &&
           x.strictly_convex == y.strictly_convex && same_double(x.min_k, y.min_k) && same_double(x.max_k, y.max_k) &&
           same_double(x.min_grad, y.min_grad) && same_double(x.max_grad, y.max_grad);
  });
  if (!solver || !curvature || a.records.size() != b.records.size() || a.convergence.size() != b.convergence.size())
    return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.label != y.label || x.error_kind != y.error_kind || x.error != y.error ||
        !same_optional(x.check, y.check, same_check) || !same_optional(x.bound, y.bound, same_bound))
      return false;
  }
  for (std::size_t i = 0; i < a.convergence.size(); ++i) {
    const auto& x = a.convergence[i];
    const auto& y = b.convergence[i];
    if (x.grid.ns != y.grid.ns || x.grid.nt != y.grid.nt || !same_double(x.h, y.h) ||
        !same_double(x.error, y.error) || !same_optional(x.order, y.order, same_double))
      return false;
  }
  return true;
}

std::string solution_csv(const RingSolution& sol) {
  std::string out;
  if (const auto* radial = std::get_if<RadialSolution>(&sol)) {
    out = "r,u,u_prime\n";
    for (std::size_t k = 0; k < radial->r.size(); ++k)
      out += format_double(radial->r[k]) + "," + format_double(radial->u[k]) + "," +
             format_double(radial->u_prime[k]) + "\n";
    return out;
  }
  const GridSolution& g = std::get<GridSolution>(sol);
  const RingDomain2D& d = g.domain;
  out = "s,t,x1,x2,u\n";
  for (int i = 0; i < d.ns(); ++i)
    for (int j = 0; j < d.nt(); ++j) {
      const Vec2& x = d.node(i, j);
      out += format_double(d.s(i)) + "," + format_double(d.t(j)) + "," + format_double(x.x()) + "," +
             format_double(x.y()) + "," + format_double(g.at(i, j)) + "\n";
    }
  return out;
}

std::string curvature_csv(const SampledField& field) {
  std::string out;
  for (int k = 0; k < field.n; ++k) out += "x" + std::to_string(k + 1) + ",";
  out += "region,u,grad_norm,K,convexity,flipped\n";
  for (const auto& s : field.samples) {
    for (Eigen::Index k = 0; k < s.x.size(); ++k) out += format_double(s.x(k)) + ",";
    out += name_of(s.region, kRegions) + "," + format_double(s.u) + "," + format_double(std::sqrt(s.grad_sq)) + "," +
           format_double(s.gauss) + "," + to_string(s.convexity) + "," + (s.flipped ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<std::string> emit_report(const RunReport& report, const std::string& prefix) {
  if (prefix.empty()) throw Error(ErrorKind::IoError, "empty output prefix");
  const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + parent.string() + ": " + ec.message());

  std::vector<std::string> written;
  write_file(prefix + ".json", report_to_json(report));
  written.push_back(prefix + ".json");
  if (report.solution) {
    write_file(prefix + "_solution.csv", solution_csv(*report.solution));
    written.push_back(prefix + "_solution.csv");
  }
  if (report.sampled && report.curvature) {
    write_file(prefix + "_curvature.csv", curvature_csv(*report.sampled));
    written.push_back(prefix + "_curvature.csv");
  }
  std::string index;
  for (const auto& p : written) index += std::filesystem::path(p).filename().string() + "\n";
  write_file(prefix + ".index", index);
  written.push_back(prefix + ".index");
  return written;
}

}  // namespace levelcurv
