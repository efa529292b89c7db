#pragma once

// Verdicts on solved fields: boundary extremum checks for the weighted
// curvature psi, the two lower bounds for K on rings, monotonicity of |grad u|
// along grad u, harmonicity of psi on planar minimal graphs, and convergence
// studies against closed forms.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/geometry.hpp"
#include "levelcurv/solvers.hpp"

namespace levelcurv {

enum class Region { Interior, Outer, Inner, Excluded };
std::string to_string(Region r);

/// One evaluation point with the quantities every check needs.
struct FieldSample {
  Vec x;
  Region region = Region::Interior;
  Jet jet;
  double grad_sq = 0.0;
  double gauss = 0.0;  // geometric convention: positive on strictly convex level sets
  bool flipped = false;
  Convexity convexity = Convexity::NonConvex;
  double u = 0.0;
};

/// A field reduced to labelled samples. Interior excludes the two layers
/// nearest each boundary; boundary samples use one-sided recovery.
struct SampledField {
  int n = 2;
  double h = 0.0;
  EquationKind equation = EquationKind::MinimalSurface;
  std::optional<SemilinearRHS> rhs;
  bool closed_form = false;
  int interior_layers = 0;
  std::string description;
  std::vector<FieldSample> samples;
};

enum class JetSource { Recovered, ClosedForm };

SampledField sample_field(const GridSolution& sol);
SampledField sample_field(const RadialSolution& sol, JetSource source = JetSource::Recovered);
SampledField sample_field(const RingSolution& sol, JetSource source = JetSource::Recovered);
/// Radial closed form sampled at `samples` radii a..b along the first axis.
SampledField sample_radial_field(const ClosedFormField& field, double a, double b, int samples,
                                 EquationKind equation, std::optional<SemilinearRHS> rhs = std::nullopt);

struct Extremum {
  double value = 0.0;
  Vec location;
  Region region = Region::Interior;
};

struct Comparison {
  std::string label;
  Extremum interior;
  Extremum boundary;
  double margin = 0.0;  // positive when the claim holds strictly
  bool pass = false;
};

struct CheckReport {
  std::string name;
  std::vector<Comparison> comparisons;
  double tolerance = 0.0;
  bool pass = false;
  double grid_h = 0.0;
  std::vector<std::string> notes;
  std::map<std::string, double> metrics;
};

enum class Which { Min, Max, Both };
std::string to_string(Which w);

struct CheckOptions {
  /// Absolute tolerance; when empty it is c_tol * h^2.
  std::optional<double> tolerance;
  /// Defaults to 50 max |psi|.
  std::optional<double> c_tol;
  /// Geometric orientation (default) or the negated one; verdicts must not depend on it.
  bool flip_convention = false;
};

/// psi at every sample, compared between interior and boundary. Raises
/// HypothesisViolated when a level set is not strictly convex or the gradient
/// vanishes, TooCoarse with fewer than 8 interior layers.
CheckReport check_extremum_on_boundary(const SampledField& field, const TestFunctionSpec& spec, Which which,
                                       const CheckOptions& options = {});

/// The boundary-extremum statements, each with its own hypotheses:
/// minimal-planar: n = 2, psi with theta = -1/2, min and max;
/// minimal-higher: n >= 3, theta = -1/2 or theta >= (n-3)/2, min;
/// poisson-increasing: f = f(u), f_u >= 0, |grad u|^{-2} K, min;
/// poisson-decreasing: f = f(u), f_u <= 0, |grad u|^{n-1} K, min;
/// poisson-convex-source: f = f(x) > 0 with t^3 f convex, |grad u|^{n-1} K, min.
enum class TheoremCase { MinimalPlanar, MinimalHigher, PoissonIncreasing, PoissonDecreasing, PoissonConvexSource };
std::string to_string(TheoremCase c);
TheoremCase parse_theorem_case(const std::string& name);

struct TheoremSetup {
  TestFunctionSpec spec;
  Which which;
  std::vector<std::string> notes;
};

/// Test function and extremum licensed by the case. HypothesisViolated when
/// the field or theta falls outside it (theta strictly between -1/2 and
/// (n-3)/2 is left untested).
TheoremSetup theorem_setup(TheoremCase c, const SampledField& field, std::optional<double> theta = std::nullopt);
CheckReport check_theorem(TheoremCase c, const SampledField& field, std::optional<double> theta = std::nullopt,
                          const CheckOptions& options = {});

struct CorollaryBound {
  double min_k_interior = 0.0;
  double min_k_boundary = 0.0;
  double grad_min_outer = 0.0;
  double grad_max_inner = 0.0;
  double bound_value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
};

/// (grad_min_outer / grad_max_inner)^2 * min_k_boundary.
double poisson_bound_formula(double grad_min_outer, double grad_max_inner, double min_k_boundary);
/// (g0 / g1) sqrt(1 + g0^2) / sqrt(1 + g1^2) * min_k_boundary.
double minimal_bound_formula(double grad_min_outer, double grad_max_inner, double min_k_boundary);

struct BoundOptions {
  /// pass when min_k_interior >= bound_value - fraction * min_k_boundary, unless
  /// an absolute tolerance is given.
  double fraction = 1e-3;
  std::optional<double> tolerance;
  int flag_samples = 1000;
};

/// Lower bound for K on rings with u = 0 outside, u = 1 inside and a
/// nonnegative, non-decreasing f vanishing at 0.
CorollaryBound corollary_bound_poisson(const SampledField& field, const BoundOptions& options = {});
/// Same for minimal graphs in dimension n >= 3.
CorollaryBound corollary_bound_minimal(const SampledField& field, const BoundOptions& options = {});

/// grad(|grad u|^2) . grad u > 0 inside, min |grad u| on the outer boundary,
/// max on the inner one.
CheckReport check_gradient_monotonicity(const SampledField& field, const CheckOptions& options = {});

/// sum F^{ab} psi_ab with F = (1 + |grad u|^2) I - grad u grad u^T and
/// theta = -1/2, for a closed-form planar minimal graph at the given points.
CheckReport check_harmonic_psi_2d(const ClosedFormField& field, const std::vector<Vec>& points,
                                  double threshold = 1e-6);
/// Same quantity for a sequence of refined planar solutions; passes when the
/// residual decreases at order >= min_order between consecutive grids.
CheckReport check_harmonic_psi_2d(const std::vector<GridSolution>& solutions, double min_order = 1.5);

/// Residual of sum F^{ab} psi_ab at one point of a closed-form field (fourth-order
/// differences of psi with step `step`).
double harmonic_psi_residual(const ClosedFormField& field, const Vec& x, double step = 2.5e-3);

struct GridSpec {
  int ns = 0;
  int nt = 0;
};

enum class StudyProblem { LaplaceAnnulus, CatenoidRing, SphereCurvature, ConstantData, RadialCatenoidJet };
std::string to_string(StudyProblem p);
StudyProblem parse_study_problem(const std::string& name);

struct ConvergenceRow {
  GridSpec grid;
  double h = 0.0;
  double error = 0.0;
  std::optional<double> order;
};

/// Max-norm errors against the closed form of each problem; orders from
/// consecutive pairs. RadialCatenoidJet reads ns as the sample count.
std::vector<ConvergenceRow> convergence_study(StudyProblem problem, const std::vector<GridSpec>& grids);

}  // namespace levelcurv
