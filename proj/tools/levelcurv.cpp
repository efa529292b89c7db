// levelcurv: solve convex-ring problems, evaluate level-set curvature and
// check boundary-extremum statements. Exit codes: 0 pass, 1 a check failed,
// 2 configuration or numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "levelcurv/error.hpp"
#include "levelcurv/run.hpp"

namespace {

using namespace levelcurv;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_summary(const RunReport& report, const std::vector<std::string>& artifacts) {
  std::printf("verdict: %s\n", to_string(report.verdict).c_str());
  if (!report.detail.empty()) std::printf("detail: %s\n", report.detail.c_str());
  if (report.solver)
    std::printf("solver: %s %s, %d nodes, h = %.3g, residual %.3g, %d iterations\n", report.solver->geometry.c_str(),
                report.solver->equation.c_str(), report.solver->nodes, report.solver->h, report.solver->residual_norm,
                report.solver->iterations);
  if (report.curvature)
    std::printf("curvature: K in [%.6g, %.6g], %d of %d samples strictly convex\n", report.curvature->min_k,
                report.curvature->max_k, report.curvature->strictly_convex, report.curvature->samples);
  for (const auto& rec : report.records) {
    if (rec.check) {
      std::printf("  %-40s %s", rec.label.c_str(), rec.check->pass ? "pass" : "FAIL");
      for (const auto& c : rec.check->comparisons) std::printf("  %s margin %.3e", c.label.c_str(), c.margin);
      if (rec.check->comparisons.empty())
        for (const auto& [k, v] : rec.check->metrics) std::printf("  %s %.3e", k.c_str(), v);
      std::printf("  (tol %.3e)\n", rec.check->tolerance);
    } else if (rec.bound) {
      std::printf("  %-40s %s  min K %.6g  bound %.6g  (tol %.3e)\n", rec.label.c_str(),
                  rec.bound->pass ? "pass" : "FAIL", rec.bound->min_k_interior, rec.bound->bound_value,
                  rec.bound->tolerance);
    } else {
      std::printf("  %-40s %s: %s\n", rec.label.c_str(), rec.error_kind.c_str(), rec.error.c_str());
    }
  }
  for (const auto& row : report.convergence) {
    std::printf("  %5dx%-5d h %.4e  error %.4e", row.grid.ns, row.grid.nt, row.h, row.error);
    if (row.order) std::printf("  order %.3f", *row.order);
    std::printf("\n");
  }
  std::printf("wall time: %.3f s\n", report.wall_seconds);
  for (const auto& a : artifacts) std::printf("wrote %s\n", a.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-set curvature of solutions on convex rings"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out;
  std::string grid;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool quiet = false;
  auto* config_opt = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out", out, "output prefix for the report, CSV exports and index");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomised suites");
  auto* grid_opt = app.add_option("--grid", grid, "grid override NsxNt (radial problems use Ns samples)");
  auto* tol_opt = app.add_option("--tol", tol, "absolute tolerance for boundary and bound checks");
  app.add_flag("--quiet", quiet, "no console summary");

  const char* commands[][2] = {
      {"solve", "solve the configured problem and export the solution"},
      {"curvature", "solve and export level-set curvature at every sample"},
      {"check-theorem", "boundary-extremum checks for weighted curvatures"},
      {"check-corollary", "curvature lower bounds and gradient monotonicity"},
      {"jet-verify", "pointwise identities on random and closed-form jets"},
      {"lemma32", "quadratic bound on random instances"},
      {"convergence", "convergence study against closed forms"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Command command = parse_command(app.get_subcommands().front()->get_name());
    RunConfig config = *config_opt ? parse_config(read_text(config_path), command) : default_config(command);
    if (*out_opt) config.output = out;
    if (*seed_opt) config.seed = seed;
    if (*grid_opt) apply_grid_override(config, parse_grid(grid));
    if (*tol_opt) {
      if (!(tol >= 0.0) || !std::isfinite(tol)) throw Error(ErrorKind::ConfigError, "--tol must be finite and >= 0");
      config.tolerances.absolute = tol;
    }

    const RunReport report = run(config);
    const std::vector<std::string> artifacts = emit_report(report, config.output);
    if (!quiet) print_summary(report, artifacts);
    return exit_code(report.verdict);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
