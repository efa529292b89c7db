#include "levelcurv/theorem_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levelcurv/error.hpp"
#include "levelcurv/jet_recovery.hpp"
#include "levelcurv/semilinear_rhs.hpp"

namespace levelcurv {

std::string to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Outer: return "outer";
    case Region::Inner: return "inner";
    case Region::Excluded: return "excluded";
  }
  return "?";
}

std::string to_string(Which w) {
  switch (w) {
    case Which::Min: return "min";
    case Which::Max: return "max";
    case Which::Both: return "both";
  }
  return "?";
}

namespace {

constexpr double kGradFloorSq = 1e-16;

bool degenerate(const FieldSample& s) { return !(s.grad_sq >= kGradFloorSq); }

void fill_from_jet(FieldSample& s) {
  s.grad_sq = s.jet.grad.squaredNorm();
  if (degenerate(s)) return;
  const CurvatureData cd = curvature_matrix(s.jet, ChartMode::Aligned);
  s.gauss = cd.gauss;
  s.flipped = cd.orientation == Orientation::Flipped;
  s.convexity = convexity_classify(cd.a);
}

Region radial_region(int k, int count) {
  if (k == 0) return Region::Inner;
  if (k == count - 1) return Region::Outer;
  if (k == 1 || k == count - 2) return Region::Excluded;
  return Region::Interior;
}

std::string format_point(const Vec& x) {
  std::ostringstream s;
  s.precision(6);
  s << "(";
  for (Eigen::Index k = 0; k < x.size(); ++k) s << (k ? ", " : "") << x(k);
  s << ")";
  return s.str();
}

/// Enforces the hypotheses shared by all curvature checks on the non-excluded samples.
void require_convex_level_sets(const SampledField& field, std::vector<std::string>& notes) {
  if (field.interior_layers < 8) {
    std::ostringstream msg;
    msg << "only " << field.interior_layers << " interior layers; at least 8 are needed";
    throw Error(ErrorKind::TooCoarse, msg.str());
  }
  std::vector<std::string> bad;
  int flipped = 0, evaluated = 0;
  for (const auto& s : field.samples) {
    if (s.region == Region::Excluded) continue;
    ++evaluated;
    if (degenerate(s)) {
      bad.push_back("vanishing gradient at " + format_point(s.x));
    } else if (s.convexity != Convexity::StrictlyConvex) {
      bad.push_back("level set not strictly convex at " + format_point(s.x));
    }
    if (s.flipped) ++flipped;
  }
  if (flipped != 0 && flipped != evaluated)
    bad.push_back("orientation of the level sets changes across the ring");
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << bad.size() << " offending samples";
    for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 5); ++k) msg << "; " << bad[k];
    throw Error(ErrorKind::HypothesisViolated, msg.str());
  }
  if (flipped) notes.emplace_back("orientation flipped");
  notes.emplace_back(field.closed_form ? "closed-form jets" : "jets recovered by least squares");
}

bool is_boundary(Region r) { return r == Region::Outer || r == Region::Inner; }

struct Scan {
  Extremum min{std::numeric_limits<double>::infinity(), Vec(), Region::Interior};
  Extremum max{-std::numeric_limits<double>::infinity(), Vec(), Region::Interior};
  bool any = false;

  void add(double v, const FieldSample& s) {
    any = true;
    if (v < min.value) min = {v, s.x, s.region};
    if (v > max.value) max = {v, s.x, s.region};
  }
};

Comparison compare_min(const std::string& label, const Extremum& interior, const Extremum& boundary, double tol) {
  const double margin = interior.value - boundary.value;
  return {label, interior, boundary, margin, margin >= -tol};
}

Comparison compare_max(const std::string& label, const Extremum& interior, const Extremum& boundary, double tol) {
  const double margin = boundary.value - interior.value;
  return {label, interior, boundary, margin, margin >= -tol};
}

void require_ring_data(const SampledField& field) {
  for (const auto& s : field.samples) {
    if (s.region == Region::Outer && std::abs(s.u) > 1e-12)
      throw Error(ErrorKind::HypothesisViolated, "ring bounds need u = 0 on the outer boundary");
    if (s.region == Region::Inner && std::abs(s.u - 1.0) > 1e-12)
      throw Error(ErrorKind::HypothesisViolated, "ring bounds need u = 1 on the inner boundary");
  }
}

SampleBox bounding_box(const SampledField& field) {
  SampleBox box{Vec::Constant(field.n, std::numeric_limits<double>::infinity()),
                Vec::Constant(field.n, -std::numeric_limits<double>::infinity()), 0.0, 1.0};
  for (const auto& s : field.samples) {
    box.lo = box.lo.cwiseMin(s.x);
    box.hi = box.hi.cwiseMax(s.x);
  }
  return box;
}

std::vector<std::string> require_ring_rhs(const SampledField& field, const BoundOptions& options) {
  if (field.equation != EquationKind::Semilinear || !field.rhs)
    throw Error(ErrorKind::HypothesisViolated, "the bound applies to semilinear solutions");
  const RhsFlags flags = admissibility_check(*field.rhs, bounding_box(field), options.flag_samples);
  if (!flags.ring_bound_admissible())
    throw Error(ErrorKind::HypothesisViolated,
                "f must be nonnegative, non-decreasing in u and vanish at u = 0 (sampled)");
  return {"f flags sampled"};
}

CorollaryBound ring_bound(const SampledField& field, const BoundOptions& options, bool minimal,
                          std::vector<std::string> notes) {
  require_ring_data(field);
  require_convex_level_sets(field, notes);
  CorollaryBound out;
  out.notes = std::move(notes);
  out.min_k_interior = std::numeric_limits<double>::infinity();
  out.min_k_boundary = std::numeric_limits<double>::infinity();
  double g_outer = std::numeric_limits<double>::infinity();
  double g_inner = 0.0;
  for (const auto& s : field.samples) {
    if (s.region == Region::Interior) out.min_k_interior = std::min(out.min_k_interior, s.gauss);
    if (is_boundary(s.region)) out.min_k_boundary = std::min(out.min_k_boundary, s.gauss);
    if (s.region == Region::Outer) g_outer = std::min(g_outer, s.grad_sq);
    if (s.region == Region::Inner) g_inner = std::max(g_inner, s.grad_sq);
  }
  out.grad_min_outer = std::sqrt(g_outer);
  out.grad_max_inner = std::sqrt(g_inner);
  out.bound_value = minimal ? minimal_bound_formula(out.grad_min_outer, out.grad_max_inner, out.min_k_boundary)
                            : poisson_bound_formula(out.grad_min_outer, out.grad_max_inner, out.min_k_boundary);
  out.tolerance = options.tolerance ? *options.tolerance : options.fraction * out.min_k_boundary;
  out.pass = out.min_k_interior >= out.bound_value - out.tolerance;
  return out;
}

double psi_at(const ClosedFormField& field, const TestFunctionSpec& spec, const Vec& x) {
  const Jet jet = field.jet(x, 2);
  const CurvatureData cd = curvature_matrix(jet, ChartMode::Aligned);
  return weighted_curvature(spec, jet.grad.squaredNorm(), cd.gauss);
}

double f_operator(const Vec& grad, const Mat& hess_psi) {
  const Eigen::Index n = grad.size();
  const Mat f = (1.0 + grad.squaredNorm()) * Mat::Identity(n, n) - grad * grad.transpose();
  return (f.array() * hess_psi.array()).sum();
}

}  // namespace

SampledField sample_field(const GridSolution& sol) {
  const RingDomain2D& d = sol.domain;
  SampledField field;
  field.n = 2;
  field.h = sol.h;
  field.equation = sol.equation;
  field.rhs = sol.rhs;
  field.interior_layers = std::max(0, d.ns() - 4);
  field.description = d.describe();
  const GridDerivatives der = recover_derivatives(sol);
  const LevelCurvatureField curv = level_curvature_field(der);
  field.samples.reserve(sol.u.size());
  for (int i = 0; i < d.ns(); ++i)
    for (int j = 0; j < d.nt(); ++j) {
      const auto k = static_cast<std::size_t>(d.index(i, j));
      FieldSample s;
      s.x = d.node(i, j);
      s.region = i == 0 ? Region::Outer
                 : i == d.ns() - 1 ? Region::Inner
                 : (i == 1 || i == d.ns() - 2) ? Region::Excluded
                                               : Region::Interior;
      s.jet.grad = Vec(2);
      s.jet.grad << der.ux[k], der.uy[k];
      s.jet.hess = Mat(2, 2);
      s.jet.hess << der.uxx[k], der.uxy[k], der.uxy[k], der.uyy[k];
      s.grad_sq = curv.grad_sq[k];
      s.u = sol.u[k];
      if (!degenerate(s)) {
        s.flipped = curv.kappa[k] < 0.0;
        s.gauss = std::abs(curv.kappa[k]);
        Vec principal(1);
        principal << s.gauss;
        s.convexity = convexity_from_principal(principal);
      }
      field.samples.push_back(std::move(s));
    }
  return field;
}

SampledField sample_field(const RadialSolution& sol, JetSource source) {
  if (source == JetSource::ClosedForm && sol.equation != EquationKind::MinimalSurface)
    throw Error(ErrorKind::InvalidInstance, "closed-form jets exist only for radial minimal solutions");
  SampledField field;
  field.n = sol.n;
  field.h = sol.h;
  field.equation = sol.equation;
  field.rhs = sol.rhs;
  field.closed_form = source == JetSource::ClosedForm;
  const int count = static_cast<int>(sol.r.size());
  field.interior_layers = std::max(0, count - 4);
  std::ostringstream desc;
  desc.precision(17);
  desc << "radial n=" << sol.n << " a=" << sol.a << " b=" << sol.b << " samples=" << count;
  field.description = desc.str();
  for (int k = 0; k < count; ++k) {
    FieldSample s;
    s.x = Vec::Zero(sol.n);
    s.x(0) = sol.r[static_cast<std::size_t>(k)];
    s.region = radial_region(k, count);
    s.u = sol.u[static_cast<std::size_t>(k)];
    s.jet = source == JetSource::ClosedForm ? sol.profile_jet(s.x, 2) : recover_jet(sol, s.x, 2, false);
    fill_from_jet(s);
    field.samples.push_back(std::move(s));
  }
  return field;
}

SampledField sample_field(const RingSolution& sol, JetSource source) {
  if (const auto* radial = std::get_if<RadialSolution>(&sol)) return sample_field(*radial, source);
  return sample_field(std::get<GridSolution>(sol));
}

SampledField sample_radial_field(const ClosedFormField& f, double a, double b, int samples, EquationKind equation,
                                 std::optional<SemilinearRHS> rhs) {
  if (!(a > 0.0 && b > a) || samples < 5) throw Error(ErrorKind::InvalidInstance, "bad radial sampling range");
  SampledField field;
  field.n = f.dim();
  field.h = (b - a) / (samples - 1);
  field.equation = equation;
  field.rhs = std::move(rhs);
  field.closed_form = true;
  field.interior_layers = samples - 4;
  field.description = f.name();
  for (int k = 0; k < samples; ++k) {
    FieldSample s;
    s.x = Vec::Zero(field.n);
    s.x(0) = k + 1 == samples ? b : a + k * field.h;
    s.region = radial_region(k, samples);
    s.u = f.value(s.x);
    s.jet = f.jet(s.x, 2);
    fill_from_jet(s);
    field.samples.push_back(std::move(s));
  }
  return field;
}

CheckReport check_extremum_on_boundary(const SampledField& field, const TestFunctionSpec& spec, Which which,
                                       const CheckOptions& options) {
  CheckReport report;
  report.name = "extremum-on-boundary " + spec.describe() + " " + to_string(which);
  report.grid_h = field.h;
  require_convex_level_sets(field, report.notes);
  if (options.flip_convention) report.notes.emplace_back("negated convention requested; geometric K used");

  Scan interior, boundary;
  double largest = 0.0;
  for (const auto& s : field.samples) {
    if (s.region == Region::Excluded) continue;
    // the negated convention changes the sign of K by (-1)^(n-1); verdicts use |K|
    const double k_conv = options.flip_convention && (field.n % 2 == 0) ? -s.gauss : s.gauss;
    const double psi = weighted_curvature(spec, s.grad_sq, std::abs(k_conv));
    largest = std::max(largest, std::abs(psi));
    (s.region == Region::Interior ? interior : boundary).add(psi, s);
  }
  const double c_tol = options.c_tol ? *options.c_tol : 50.0 * largest;
  report.tolerance = options.tolerance ? *options.tolerance : c_tol * field.h * field.h;
  report.metrics["c_tol"] = c_tol;
  report.metrics["psi_min"] = std::min(interior.min.value, boundary.min.value);
  report.metrics["psi_max"] = std::max(interior.max.value, boundary.max.value);
  if (which != Which::Max) report.comparisons.push_back(compare_min("min", interior.min, boundary.min, report.tolerance));
  if (which != Which::Min) report.comparisons.push_back(compare_max("max", interior.max, boundary.max, report.tolerance));
  report.pass = std::all_of(report.comparisons.begin(), report.comparisons.end(),
                            [](const Comparison& c) { return c.pass; });
  return report;
}

std::string to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::MinimalPlanar: return "minimal-planar";
    case TheoremCase::MinimalHigher: return "minimal-higher";
    case TheoremCase::PoissonIncreasing: return "poisson-increasing";
    case TheoremCase::PoissonDecreasing: return "poisson-decreasing";
    case TheoremCase::PoissonConvexSource: return "poisson-convex-source";
  }
  return "?";
}

TheoremCase parse_theorem_case(const std::string& name) {
  for (auto c : {TheoremCase::MinimalPlanar, TheoremCase::MinimalHigher, TheoremCase::PoissonIncreasing,
                 TheoremCase::PoissonDecreasing, TheoremCase::PoissonConvexSource})
    if (to_string(c) == name) return c;
  throw Error(ErrorKind::ConfigError, "unknown theorem case '" + name + "'");
}

TheoremSetup theorem_setup(TheoremCase c, const SampledField& field, std::optional<double> theta) {
  const bool minimal = c == TheoremCase::MinimalPlanar || c == TheoremCase::MinimalHigher;
  if (minimal != (field.equation == EquationKind::MinimalSurface))
    throw Error(ErrorKind::HypothesisViolated, "case " + to_string(c) + " does not match the equation");
  if (!minimal && theta)
    throw Error(ErrorKind::ConfigError, "theta applies to minimal-surface cases only");
  switch (c) {
    case TheoremCase::MinimalPlanar:
      if (field.n != 2) throw Error(ErrorKind::HypothesisViolated, "minimal-planar needs n = 2");
      if (theta && *theta != -0.5)
        throw Error(ErrorKind::HypothesisViolated, "minimal-planar is stated for theta = -1/2 only");
      return {TestFunctionSpec::minimal_theta(-0.5), Which::Both, {}};
    case TheoremCase::MinimalHigher: {
      if (field.n < 3) throw Error(ErrorKind::HypothesisViolated, "minimal-higher needs n >= 3");
      if (!theta) throw Error(ErrorKind::ConfigError, "minimal-higher needs theta");
      const double lower = (field.n - 3) / 2.0;
      if (!(*theta == -0.5 || *theta >= lower)) {
        std::ostringstream msg;
        msg << "theta = " << *theta << " lies strictly between -1/2 and " << lower << "; this range is untested";
        throw Error(ErrorKind::HypothesisViolated, msg.str());
      }
      return {TestFunctionSpec::minimal_theta(*theta), Which::Min, {}};
    }
    default: break;
  }
  if (!field.rhs) throw Error(ErrorKind::HypothesisViolated, "semilinear case without a right-hand side");
  SampleBox box = bounding_box(field);
  box.u_lo = std::numeric_limits<double>::infinity();
  box.u_hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : field.samples) {
    box.u_lo = std::min(box.u_lo, s.u);
    box.u_hi = std::max(box.u_hi, s.u);
  }
  const RhsFlags flags = admissibility_check(*field.rhs, box);
  std::vector<std::string> notes{"f flags sampled"};
  switch (c) {
    case TheoremCase::PoissonIncreasing:
      if (!(flags.f_of_u_only && flags.f_u_nonneg))
        throw Error(ErrorKind::HypothesisViolated, "poisson-increasing needs f = f(u) with f_u >= 0 (sampled)");
      return {TestFunctionSpec::poisson_power(-2.0), Which::Min, notes};
    case TheoremCase::PoissonDecreasing:
      if (!(flags.f_of_u_only && flags.f_u_nonpos))
        throw Error(ErrorKind::HypothesisViolated, "poisson-decreasing needs f = f(u) with f_u <= 0 (sampled)");
      return {TestFunctionSpec::poisson_power(field.n - 1.0), Which::Min, notes};
    case TheoremCase::PoissonConvexSource:
      if (!(flags.f_of_x_only && flags.t3f_convex))
        throw Error(ErrorKind::HypothesisViolated, "poisson-convex-source needs f = f(x) with t^3 f convex (sampled)");
      if (!(flags.min_f >= 1e-8))
        throw Error(ErrorKind::HypothesisViolated, "poisson-convex-source needs f bounded below by a positive constant");
      return {TestFunctionSpec::poisson_power(field.n - 1.0), Which::Min, notes};
    default: break;
  }
  throw Error(ErrorKind::ConfigError, "unhandled theorem case");
}

CheckReport check_theorem(TheoremCase c, const SampledField& field, std::optional<double> theta,
                          const CheckOptions& options) {
  const TheoremSetup setup = theorem_setup(c, field, theta);
  CheckReport report = check_extremum_on_boundary(field, setup.spec, setup.which, options);
  report.name = to_string(c) + " " + report.name;
  report.notes.insert(report.notes.end(), setup.notes.begin(), setup.notes.end());
  return report;
}

double poisson_bound_formula(double g0, double g1, double min_k_boundary) {
  const double ratio = g0 / g1;
  return ratio * ratio * min_k_boundary;
}

double minimal_bound_formula(double g0, double g1, double min_k_boundary) {
  return (g0 / g1) * std::sqrt(1.0 + g0 * g0) / std::sqrt(1.0 + g1 * g1) * min_k_boundary;
}

CorollaryBound corollary_bound_poisson(const SampledField& field, const BoundOptions& options) {
  return ring_bound(field, options, false, require_ring_rhs(field, options));
}

CorollaryBound corollary_bound_minimal(const SampledField& field, const BoundOptions& options) {
  if (field.n < 3) throw Error(ErrorKind::HypothesisViolated, "the minimal-graph bound is stated for n >= 3");
  if (field.equation != EquationKind::MinimalSurface)
    throw Error(ErrorKind::HypothesisViolated, "the bound applies to minimal graphs");
  return ring_bound(field, options, true, {});
}

CheckReport check_gradient_monotonicity(const SampledField& field, const CheckOptions& options) {
  CheckReport report;
  report.name = "gradient-monotonicity";
  report.grid_h = field.h;
  const BoundOptions bound_options;
  report.notes = require_ring_rhs(field, bound_options);
  for (const auto& s : field.samples)
    if (degenerate(s)) throw Error(ErrorKind::HypothesisViolated, "vanishing gradient at " + format_point(s.x));

  Scan directional, outer, inner, rest_for_min, rest_for_max;
  double largest = 0.0;
  for (const auto& s : field.samples) {
    const double g = std::sqrt(s.grad_sq);
    largest = std::max(largest, g);
    if (s.region == Region::Interior) {
      const double dd = 2.0 * s.jet.grad.dot(s.jet.hess * s.jet.grad);
      directional.add(dd, s);
      largest = std::max(largest, std::abs(dd));
    }
    if (s.region == Region::Outer)
      outer.add(g, s);
    else
      rest_for_min.add(g, s);
    if (s.region == Region::Inner)
      inner.add(g, s);
    else
      rest_for_max.add(g, s);
  }
  const double c_tol = options.c_tol ? *options.c_tol : 50.0 * largest;
  report.tolerance = options.tolerance ? *options.tolerance : c_tol * field.h * field.h;
  report.metrics["c_tol"] = c_tol;
  const Extremum zero{0.0, Vec(), Region::Interior};
  report.comparisons.push_back(compare_min("directional-derivative-positive", directional.min, zero, report.tolerance));
  report.comparisons.push_back(compare_min("grad-min-on-outer", rest_for_min.min, outer.min, report.tolerance));
  report.comparisons.push_back(compare_max("grad-max-on-inner", rest_for_max.max, inner.max, report.tolerance));
  report.pass = std::all_of(report.comparisons.begin(), report.comparisons.end(),
                            [](const Comparison& c) { return c.pass; });
  return report;
}

double harmonic_psi_residual(const ClosedFormField& field, const Vec& x, double step) {
  const TestFunctionSpec spec = TestFunctionSpec::minimal_theta(-0.5);
  const Eigen::Index n = x.size();
  static constexpr double w1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  static constexpr double w2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  Mat hess(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) {
      Vec p = x;
      p(a) += (k - 2) * step;
      acc += w2[k] * psi_at(field, spec, p);
    }
    hess(a, a) = acc / (12.0 * step * step);
    for (Eigen::Index b = a + 1; b < n; ++b) {
      double mixed = 0.0;
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          if (w1[k] == 0.0 || w1[l] == 0.0) continue;
          Vec p = x;
          p(a) += (k - 2) * step;
          p(b) += (l - 2) * step;
          mixed += w1[k] * w1[l] * psi_at(field, spec, p);
        }
      hess(a, b) = hess(b, a) = mixed / (144.0 * step * step);
    }
  }
  return f_operator(field.jet(x, 1).grad, hess);
}

CheckReport check_harmonic_psi_2d(const ClosedFormField& field, const std::vector<Vec>& points, double threshold) {
  if (field.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "harmonicity of psi is checked in the plane");
  CheckReport report;
  report.name = "harmonic-psi " + field.name();
  report.tolerance = threshold;
  report.notes.emplace_back("closed-form jets");
  double worst = 0.0;
  for (const Vec& x : points) {
    const Jet jet = field.jet(x, 2);
    if (jet.grad.squaredNorm() < kGradFloorSq)
      throw Error(ErrorKind::HypothesisViolated, "vanishing gradient at " + format_point(x));
    if (convexity_classify(curvature_matrix(jet).a) != Convexity::StrictlyConvex)
      throw Error(ErrorKind::HypothesisViolated, "level curve not strictly convex at " + format_point(x));
    worst = std::max(worst, std::abs(harmonic_psi_residual(field, x)));
  }
  report.metrics["residual"] = worst;
  report.metrics["points"] = static_cast<double>(points.size());
  report.pass = worst < threshold;
  return report;
}

CheckReport check_harmonic_psi_2d(const std::vector<GridSolution>& solutions, double min_order) {
  if (solutions.size() < 2) throw Error(ErrorKind::InvalidInstance, "a refinement study needs at least two grids");
  const RingDomain2D& coarse = solutions.front().domain;
  const TestFunctionSpec spec = TestFunctionSpec::minimal_theta(-0.5);
  CheckReport report;
  report.name = "harmonic-psi refinement";
  report.notes.emplace_back("jets recovered by least squares");
  report.notes.emplace_back("points with 1/4 <= s <= 3/4 of the coarsest grid");

  std::vector<double> residuals, spacings;
  for (std::size_t g = 0; g < solutions.size(); ++g) {
    const GridSolution& sol = solutions[g];
    if (sol.equation != EquationKind::MinimalSurface)
      throw Error(ErrorKind::HypothesisViolated, "harmonicity of psi holds for minimal graphs");
    const RingDomain2D& d = sol.domain;
    if ((d.ns() - 1) % (coarse.ns() - 1) != 0 || d.nt() % coarse.nt() != 0)
      throw Error(ErrorKind::InvalidInstance, "grids must refine the coarsest one by integer factors");
    const int fs = (d.ns() - 1) / (coarse.ns() - 1);
    const int ft = d.nt() / coarse.nt();
    const SampledField field = sample_field(sol);
    std::vector<std::string> notes;
    require_convex_level_sets(field, notes);
    std::vector<double> psi(field.samples.size());
    for (std::size_t k = 0; k < psi.size(); ++k)
      psi[k] = degenerate(field.samples[k]) ? 0.0
                                            : weighted_curvature(spec, field.samples[k].grad_sq, field.samples[k].gauss);
    double worst = 0.0;
    for (int i = 0; i < coarse.ns(); ++i) {
      const double s = coarse.s(i);
      if (s < 0.25 || s > 0.75) continue;
      for (int j = 0; j < coarse.nt(); ++j) {
        const int fi = i * fs, fj = j * ft;
        const Jet pj = fit_grid_values(d, sol.h, psi, fi, fj, 2, true);
        const Vec& grad = field.samples[static_cast<std::size_t>(d.index(fi, fj))].jet.grad;
        worst = std::max(worst, std::abs(f_operator(grad, pj.hess)));
      }
    }
    residuals.push_back(worst);
    spacings.push_back(sol.h);
    report.metrics["residual_" + std::to_string(g)] = worst;
    report.metrics["h_" + std::to_string(g)] = sol.h;
  }
  report.grid_h = spacings.back();
  report.pass = true;
  double min_seen = std::numeric_limits<double>::infinity();
  for (std::size_t g = 1; g < residuals.size(); ++g) {
    const double order = std::log(residuals[g - 1] / residuals[g]) / std::log(spacings[g - 1] / spacings[g]);
    report.metrics["order_" + std::to_string(g)] = order;
    min_seen = std::min(min_seen, order);
    if (!(order >= min_order)) report.pass = false;
  }
  report.metrics["min_order"] = min_seen;
  report.tolerance = min_order;
  return report;
}

std::string to_string(StudyProblem p) {
  switch (p) {
    case StudyProblem::LaplaceAnnulus: return "laplace-annulus";
    case StudyProblem::CatenoidRing: return "catenoid-ring";
    case StudyProblem::SphereCurvature: return "sphere-curvature";
    case StudyProblem::ConstantData: return "constant-data";
    case StudyProblem::RadialCatenoidJet: return "radial-catenoid-jet";
  }
  return "?";
}

StudyProblem parse_study_problem(const std::string& name) {
  for (auto p : {StudyProblem::LaplaceAnnulus, StudyProblem::CatenoidRing, StudyProblem::SphereCurvature,
                 StudyProblem::ConstantData, StudyProblem::RadialCatenoidJet})
    if (to_string(p) == name) return p;
  throw Error(ErrorKind::ConfigError, "unknown convergence problem '" + name + "'");
}

namespace {

double study_error(StudyProblem problem, const GridSpec& g, double& h) {
  switch (problem) {
    case StudyProblem::LaplaceAnnulus: {
      const RingDomain2D d(ConicCurve::circle(2.0), ConicCurve::circle(0.5), Vec2::Zero(), g.ns, g.nt);
      const GridSolution sol =
          solve_semilinear_ring2d(d, named_boundary_data("constant:0", "constant:1", d), SemilinearRHS::zero());
      h = sol.h;
      double worst = 0.0;
      for (int i = 0; i < d.ns(); ++i)
        for (int j = 0; j < d.nt(); ++j)
          worst = std::max(worst, std::abs(sol.at(i, j) - std::log(2.0 / d.node(i, j).norm()) / std::log(4.0)));
      return worst;
    }
    case StudyProblem::CatenoidRing: {
      const RingDomain2D d(ConicCurve::circle(3.0), ConicCurve::circle(1.5), Vec2::Zero(), g.ns, g.nt);
      const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("catenoid", "catenoid", d));
      h = sol.h;
      double worst = 0.0;
      for (int i = 0; i < d.ns(); ++i)
        for (int j = 0; j < d.nt(); ++j)
          worst = std::max(worst, std::abs(sol.at(i, j) - std::acosh(d.node(i, j).norm())));
      return worst;
    }
    case StudyProblem::SphereCurvature: {
      const RingDomain2D d(ConicCurve::ellipse(3.0, 2.0), ConicCurve::circle(1.0), Vec2::Zero(), g.ns, g.nt);
      GridSolution sol{d, {}, EquationKind::Semilinear, SemilinearRHS::zero(), "sphere", "sphere", 0.0, 0, 0,
                       d.spacing()};
      sol.u.resize(static_cast<std::size_t>(d.ns()) * static_cast<std::size_t>(d.nt()));
      for (int i = 0; i < d.ns(); ++i)
        for (int j = 0; j < d.nt(); ++j) sol.u[static_cast<std::size_t>(d.index(i, j))] = -d.node(i, j).norm();
      h = sol.h;
      const SampledField field = sample_field(sol);
      double worst = 0.0;
      for (const auto& s : field.samples)
        if (s.region == Region::Interior) worst = std::max(worst, std::abs(s.gauss - 1.0 / s.x.norm()));
      return worst;
    }
    case StudyProblem::ConstantData: {
      const RingDomain2D d(ConicCurve::circle(2.0), ConicCurve::circle(1.0), Vec2::Zero(), g.ns, g.nt);
      const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("constant:0.5", "constant:0.5", d));
      h = sol.h;
      double worst = 0.0;
      for (double v : sol.u) worst = std::max(worst, std::abs(v - 0.5));
      return worst;
    }
    case StudyProblem::RadialCatenoidJet: {
      const int n = 3;
      const double a = 1.5, b = 5.0;
      const RadialMinimalField cat(n, 1.0);
      const RadialSolution sol = solve_minimal_radial(n, a, b, 0.0, cat.profile(b) - cat.profile(a), g.ns);
      h = sol.h;
      const SampledField field = sample_field(sol, JetSource::Recovered);
      const TestFunctionSpec spec = TestFunctionSpec::minimal_theta(-0.5);
      double worst = 0.0;
      for (const auto& s : field.samples)
        if (s.region == Region::Interior)
          worst = std::max(worst, std::abs(weighted_curvature(spec, s.grad_sq, s.gauss) - 1.0));
      return worst;
    }
  }
  return 0.0;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(StudyProblem problem, const std::vector<GridSpec>& grids) {
  std::vector<ConvergenceRow> rows;
  for (const GridSpec& g : grids) {
    ConvergenceRow row;
    row.grid = g;
    row.error = study_error(problem, g, row.h);
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      if (prev.error > 0.0 && row.error > 0.0 && prev.h != row.h)
        row.order = std::log(prev.error / row.error) / std::log(prev.h / row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace levelcurv
