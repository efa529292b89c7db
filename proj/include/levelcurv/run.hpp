#pragma once

// Configuration, orchestration and reporting for command-line runs. A run
// reads one JSON document, solves or samples the described problem, runs the
// requested checks and produces a report with a total verdict.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelcurv/solvers.hpp"
#include "levelcurv/theorem_harness.hpp"

namespace levelcurv {

enum class Command { Solve, Curvature, CheckTheorem, CheckCorollary, JetVerify, Lemma32, Convergence };
std::string to_string(Command c);
Command parse_command(const std::string& name);

enum class Verdict { AllPass, Violation, NumericalFailure };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& name);
/// 0 all pass, 1 a completed check failed, 2 numerical failure.
int exit_code(Verdict v);

enum class Geometry { Radial, Ring2D, ClosedForm };

struct ProblemConfig {
  Geometry geometry = Geometry::Ring2D;
  EquationKind equation = EquationKind::MinimalSurface;
  std::string rhs = "zero";
  // radial and closed-form
  int n = 2;
  double a = 1.0;
  double b = 2.0;
  double u_a = 1.0;
  double u_b = 0.0;
  int samples = 401;
  JetSource jets = JetSource::Recovered;
  std::string field;  // closed-form: "catenoid" or "harmonic-ring"
  double flux = 1.0;
  // ring2d
  ConicCurve outer = ConicCurve::circle(2.0);
  ConicCurve inner = ConicCurve::circle(1.0);
  Vec2 pole = Vec2::Zero();
  int ns = 65;
  int nt = 128;
  std::string outer_data = "constant:0";
  std::string inner_data = "constant:1";
  SolverOptions solver;
};

struct CheckConfig {
  std::string name;
  std::optional<double> theta;
};

struct ToleranceConfig {
  std::optional<double> absolute;
  std::optional<double> c_tol;
  double bound_fraction = 1e-3;
};

struct RunConfig {
  Command command = Command::Solve;
  std::optional<ProblemConfig> problem;
  std::vector<CheckConfig> checks;
  std::string study;
  std::vector<GridSpec> grids;
  std::optional<double> min_order;
  std::uint64_t seed = 1;
  ToleranceConfig tolerances;
  int instances = 0;  // 0 picks the command default
  std::vector<int> dims{2, 3};
  std::string output;
};

/// Strict parse: unknown keys, wrong types and non-finite numbers raise
/// ConfigError. `command` overrides and must agree with a "command" key.
RunConfig parse_config(const std::string& json_text, Command command);
RunConfig default_config(Command command);
/// Normalised echo of every field the command reads.
nlohmann::ordered_json config_to_json(const RunConfig& config);

/// "65x128" -> {65, 128}.
GridSpec parse_grid(const std::string& text);
/// Ring grids take (ns, nt); radial problems read ns as the sample count.
void apply_grid_override(RunConfig& config, const GridSpec& grid);

struct SolverInfo {
  std::string geometry;
  std::string equation;
  std::string rhs;
  std::string boundary;
  int n = 2;
  int nodes = 0;
  double h = 0.0;
  int iterations = 0;
  int picard_iterations = 0;
  double residual_norm = 0.0;
  std::optional<double> flux;
};

struct CurvatureSummary {
  int samples = 0;
  int interior_samples = 0;
  int strictly_convex = 0;
  double min_k = 0.0;
  double max_k = 0.0;
  double min_grad = 0.0;
  double max_grad = 0.0;
};

struct CheckRecord {
  std::string label;
  std::optional<CheckReport> check;
  std::optional<CorollaryBound> bound;
  std::string error_kind;  // empty unless the check raised
  std::string error;
};

struct RunReport {
  nlohmann::ordered_json config;
  Verdict verdict = Verdict::AllPass;
  std::string detail;
  std::optional<SolverInfo> solver;
  std::optional<CurvatureSummary> curvature;
  std::vector<CheckRecord> records;
  std::vector<ConvergenceRow> convergence;

  // exported fields, not part of the JSON document
  std::optional<RingSolution> solution;
  std::optional<SampledField> sampled;
  double wall_seconds = 0.0;
};

/// Executes the pipeline. Configuration errors (ConfigError, InvalidInstance,
/// UnsupportedDimension raised while building the problem) propagate; every
/// other library error becomes a NumericalFailure in the report.
RunReport run(const RunConfig& config);

/// Stable key order, floats printed with 17 significant digits, non-finite
/// values as the strings "inf", "-inf", "nan".
std::string report_to_json(const RunReport& report);
RunReport parse_report(const std::string& json_text);
/// Field-for-field equality of everything report_to_json writes.
bool same_report(const RunReport& a, const RunReport& b);

/// Writes <prefix>.json, <prefix>_solution.csv and <prefix>_curvature.csv when
/// the report carries those fields, and <prefix>.index listing the artifacts.
/// Returns the written paths. IoError on failure.
std::vector<std::string> emit_report(const RunReport& report, const std::string& prefix);

/// (s, t, x1, x2, u) for grids, (r, u, u_prime) for radial profiles.
std::string solution_csv(const RingSolution& sol);
/// x1..xn, region, u, grad_norm, K, convexity, flipped per sample.
std::string curvature_csv(const SampledField& field);

/// Writes a double with 17 significant digits.
std::string format_double(double v);

}  // namespace levelcurv
