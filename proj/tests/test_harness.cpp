#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/error.hpp"
#include "levelcurv/theorem_harness.hpp"

using namespace levelcurv;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigError;
}

void check_consistent(const CheckReport& r) {
  bool all = true;
  for (const auto& c : r.comparisons) {
    CHECK(c.pass == (c.margin >= -r.tolerance));
    all = all && c.pass;
  }
  if (!r.comparisons.empty()) CHECK(r.pass == all);
}

RingDomain2D circles(double outer, double inner, int ns, int nt) {
  return RingDomain2D(ConicCurve::circle(outer), ConicCurve::circle(inner), Vec2::Zero(), ns, nt);
}

GridSolution solve_poisson(const RingDomain2D& d, const SemilinearRHS& rhs) {
  return solve_semilinear_ring2d(d, named_boundary_data("constant:0", "constant:1", d), rhs);
}

SampledField harmonic_annulus(int n, double a, double b, int samples = 200) {
  const HarmonicRingField f(n, a, b, 1.0, 0.0);
  return sample_radial_field(f, a, b, samples, EquationKind::Semilinear, SemilinearRHS::zero());
}

}  // namespace

TEST_CASE("catenoid: psi is constant and the check passes with zero margin", "[harness]") {
  for (int n : {2, 3, 4}) {
    const RadialMinimalField cat(n, 1.0);
    const RadialSolution sol = solve_minimal_radial(n, 1.5, 5.0, 0.0, cat.profile(5.0) - cat.profile(1.5), 200);
    const SampledField field = sample_field(sol, JetSource::ClosedForm);
    const CheckReport r =
        check_extremum_on_boundary(field, TestFunctionSpec::minimal_theta(-0.5), Which::Both, {1e-12});
    check_consistent(r);
    CHECK(r.pass);
    for (const auto& c : r.comparisons) CHECK(std::abs(c.margin) < 1e-12);
    CHECK(r.metrics.at("psi_min") == Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("harmonic annulus: boundary minima of the weighted curvatures", "[harness]") {
  // |grad u| = C / r and K = 1 / r, so |grad u|^{-2} K = r / C^2 and |grad u| K = C / r^2
  const double a = 1.0, b = std::exp(1.0);
  const SampledField field = harmonic_annulus(2, a, b);
  const double c = 1.0 / std::log(b / a);
  const CheckReport low = check_theorem(TheoremCase::PoissonIncreasing, field);
  check_consistent(low);
  CHECK(low.pass);
  CHECK(low.comparisons[0].margin > 0.0);
  CHECK(low.comparisons[0].boundary.value == Catch::Approx(a / (c * c)).epsilon(1e-12));
  CHECK(low.comparisons[0].boundary.region == Region::Inner);

  const CheckReport high = check_theorem(TheoremCase::PoissonDecreasing, field);
  check_consistent(high);
  CHECK(high.pass);
  CHECK(high.comparisons[0].boundary.region == Region::Outer);
  CHECK(high.comparisons[0].boundary.value == Catch::Approx(c / (b * b)).epsilon(1e-12));
}

TEST_CASE("theta sweep on three-dimensional radial rings", "[harness]") {
  const RadialSolution sol = solve_minimal_radial(3, 2.0, 4.0, 1.0, 0.0, 401);
  const SampledField field = sample_field(sol, JetSource::ClosedForm);
  for (double theta : {-0.5, 0.0, 0.5, 1.0}) {
    const CheckReport r = check_theorem(TheoremCase::MinimalHigher, field, theta, {1e-6});
    check_consistent(r);
    CHECK(r.pass);
  }
}

TEST_CASE("theorem cases enforce their hypotheses", "[harness]") {
  const RadialSolution sol4 = solve_minimal_radial(4, 2.0, 4.0, 0.5, 0.0, 101);
  const SampledField f4 = sample_field(sol4, JetSource::ClosedForm);
  CHECK(kind_of([&] { check_theorem(TheoremCase::MinimalHigher, f4, 0.25); }) == ErrorKind::HypothesisViolated);
  CHECK_NOTHROW(check_theorem(TheoremCase::MinimalHigher, f4, 0.5));
  CHECK_NOTHROW(check_theorem(TheoremCase::MinimalHigher, f4, -0.5));
  CHECK(kind_of([&] { check_theorem(TheoremCase::MinimalHigher, f4); }) == ErrorKind::ConfigError);
  CHECK(kind_of([&] { check_theorem(TheoremCase::MinimalPlanar, f4); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { check_theorem(TheoremCase::PoissonIncreasing, f4); }) == ErrorKind::HypothesisViolated);

  const SampledField annulus = harmonic_annulus(2, 1.0, 2.0);
  CHECK(kind_of([&] { check_theorem(TheoremCase::PoissonConvexSource, annulus); }) ==
        ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { check_theorem(TheoremCase::MinimalPlanar, annulus); }) == ErrorKind::HypothesisViolated);

  const RingDomain2D d = circles(0.9, 0.4, 20, 64);
  const SampledField lin = sample_field(solve_poisson(d, SemilinearRHS::linear(1.0)));
  CHECK(kind_of([&] { check_theorem(TheoremCase::PoissonDecreasing, lin); }) == ErrorKind::HypothesisViolated);
  CHECK(check_theorem(TheoremCase::PoissonIncreasing, lin).pass);
  CHECK(parse_theorem_case("poisson-convex-source") == TheoremCase::PoissonConvexSource);
  CHECK(kind_of([] { parse_theorem_case("nope"); }) == ErrorKind::ConfigError);
}

TEST_CASE("convex source ring passes the |grad u|^{n-1} K check", "[harness]") {
  const RingDomain2D d = circles(0.9, 0.4, 40, 128);
  const SampledField field = sample_field(solve_poisson(d, SemilinearRHS::inverse_square_shift()));
  const CheckReport r = check_theorem(TheoremCase::PoissonConvexSource, field);
  check_consistent(r);
  CHECK(r.pass);
}

TEST_CASE("non-convex level sets are a hypothesis failure, not a verdict", "[harness]") {
  const RingDomain2D d = circles(2.0, 1.0, 21, 96);
  GridSolution sol{d, {}, EquationKind::MinimalSurface, std::nullopt, "x", "x", 0.0, 0, 0, d.spacing()};
  for (int i = 0; i < d.ns(); ++i)
    for (int j = 0; j < d.nt(); ++j) {
      const Vec2 p = d.node(i, j);
      sol.u.push_back(-p.norm() / (1.0 + 0.3 * std::cos(4.0 * std::atan2(p.y(), p.x()))));
    }
  const SampledField field = sample_field(sol);
  CHECK(kind_of([&] { check_extremum_on_boundary(field, TestFunctionSpec::minimal_theta(-0.5), Which::Min); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("constant solutions have no level-set geometry", "[harness]") {
  const RingDomain2D d = circles(2.0, 1.0, 17, 32);
  const SampledField field = sample_field(solve_minimal_ring2d(d, named_boundary_data("constant:1", "constant:1", d)));
  CHECK(kind_of([&] { check_extremum_on_boundary(field, TestFunctionSpec::minimal_theta(-0.5), Which::Min); }) ==
        ErrorKind::HypothesisViolated);
  const SampledField flat =
      sample_field(solve_semilinear_ring2d(d, named_boundary_data("constant:1", "constant:1", d), SemilinearRHS::zero()));
  CHECK(kind_of([&] { check_gradient_monotonicity(flat); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("coarse fields are refused", "[harness]") {
  const RadialSolution sol = solve_minimal_radial(3, 2.0, 4.0, 1.0, 0.0, 11);
  CHECK(kind_of([&] {
          check_extremum_on_boundary(sample_field(sol, JetSource::ClosedForm), TestFunctionSpec::minimal_theta(0),
                                     Which::Min);
        }) == ErrorKind::TooCoarse);
  const RingDomain2D d = circles(1.0, 0.95, 9, 64);
  CHECK(kind_of([&] { corollary_bound_poisson(sample_field(solve_poisson(d, SemilinearRHS::zero()))); }) ==
        ErrorKind::TooCoarse);
}

TEST_CASE("ring bound for the semilinear equation", "[harness]") {
  const SampledField annulus = harmonic_annulus(2, 1.0, std::exp(1.0));
  const CorollaryBound b = corollary_bound_poisson(annulus);
  CHECK(b.pass);
  CHECK(b.min_k_interior > b.bound_value);
  CHECK(b.bound_value == poisson_bound_formula(b.grad_min_outer, b.grad_max_inner, b.min_k_boundary));
  // closed forms: K = 1/r, |grad u| = 1/r
  CHECK(b.min_k_boundary == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(b.grad_min_outer == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(b.grad_max_inner == Catch::Approx(1.0).epsilon(1e-12));

  const RingDomain2D d = circles(0.9, 0.4, 40, 128);
  const CorollaryBound lin = corollary_bound_poisson(sample_field(solve_poisson(d, SemilinearRHS::linear(1.0))));
  CHECK(lin.pass);
  CHECK(lin.bound_value == poisson_bound_formula(lin.grad_min_outer, lin.grad_max_inner, lin.min_k_boundary));

  const SampledField wrong = sample_field(solve_poisson(d, SemilinearRHS::constant(1.0)));
  CHECK(kind_of([&] { corollary_bound_poisson(wrong); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("ring bound for minimal graphs", "[harness]") {
  for (int n : {3, 4}) {
    const RadialSolution sol = solve_minimal_radial(n, 2.0, 4.0, 1.0, 0.0, 401);
    const CorollaryBound b = corollary_bound_minimal(sample_field(sol, JetSource::ClosedForm), {1e-3, 1e-6});
    CHECK(b.pass);
    CHECK(b.min_k_interior - b.bound_value >= 0.0);
    CHECK(b.bound_value == minimal_bound_formula(b.grad_min_outer, b.grad_max_inner, b.min_k_boundary));
    // the profile is u' = -c / sqrt(r^{2(n-1)} - c^2)
    const double m = n - 1;
    const double c = sol.flux;
    CHECK(b.grad_max_inner == Catch::Approx(c / std::sqrt(std::pow(2.0, 2 * m) - c * c)).epsilon(1e-12));
    CHECK(b.grad_min_outer == Catch::Approx(c / std::sqrt(std::pow(4.0, 2 * m) - c * c)).epsilon(1e-12));
  }
  const RadialSolution planar = solve_minimal_radial(2, 2.0, 4.0, 1.0, 0.0, 101);
  CHECK(kind_of([&] { corollary_bound_minimal(sample_field(planar, JetSource::ClosedForm)); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("gradient grows along the gradient", "[harness]") {
  const SampledField annulus = harmonic_annulus(2, 1.0, 2.0);
  const CheckReport r = check_gradient_monotonicity(annulus);
  check_consistent(r);
  CHECK(r.pass);
  // grad(|grad u|^2) . grad u = 2 C^3 / r^4 with the smallest value at the largest interior radius
  const double c = 1.0 / std::log(2.0);
  const auto& dir = r.comparisons[0];
  const double rmax = dir.interior.location.norm();
  CHECK(dir.interior.value == Catch::Approx(2 * c * c * c / std::pow(rmax, 4)).epsilon(1e-10));

  const RingDomain2D d = circles(0.9, 0.4, 40, 128);
  const CheckReport lin = check_gradient_monotonicity(sample_field(solve_poisson(d, SemilinearRHS::linear(1.0))));
  check_consistent(lin);
  CHECK(lin.pass);
}

TEST_CASE("psi is harmonic on closed-form minimal graphs", "[harness]") {
  std::vector<Vec> cat_points, scherk_points;
  for (double r : {1.5, 2.0, 3.5}) {
    Vec x(2);
    x << r * 0.6, r * 0.8;
    cat_points.push_back(x);
  }
  for (auto [x1, x2] : {std::pair{0.3, 0.7}, {0.2, 0.9}, {-0.4, 0.8}}) {
    Vec x(2);
    x << x1, x2;
    scherk_points.push_back(x);
  }
  const CheckReport cat = check_harmonic_psi_2d(RadialMinimalField(2, 1.0), cat_points);
  CHECK(cat.pass);
  // psi is constant here, so a wide step has no truncation error and little roundoff
  for (const Vec& x : cat_points) CHECK(std::abs(harmonic_psi_residual(RadialMinimalField(2, 1.0), x, 1e-2)) < 1e-10);
  const CheckReport scherk = check_harmonic_psi_2d(ScherkField(1.0), scherk_points);
  CHECK(scherk.pass);
}

TEST_CASE("psi is harmonic on solved rings in the limit", "[harness]") {
  std::vector<GridSolution> sols;
  for (int k : {1, 2, 4}) {
    const RingDomain2D d = circles(4.0, 2.0, 16 * k + 1, 64 * k);
    sols.push_back(solve_minimal_ring2d(d, named_boundary_data("catenoid", "catenoid", d)));
  }
  const CheckReport r = check_harmonic_psi_2d(sols);
  CHECK(r.pass);
  CHECK(r.metrics.at("min_order") >= 1.5);
  CHECK(r.metrics.at("residual_2") < r.metrics.at("residual_0"));
}

TEST_CASE("tolerance scaling: shortfalls shrink at half spacing", "[harness]") {
  std::vector<CheckReport> reports;
  for (int k : {1, 2, 4}) {
    const RingDomain2D d = circles(4.0, 2.0, 32 * k + 1, 64 * k);
    const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("catenoid", "catenoid", d));
    reports.push_back(check_extremum_on_boundary(sample_field(sol), TestFunctionSpec::minimal_theta(-0.5), Which::Both));
  }
  int failing = 0;
  for (std::size_t g = 0; g + 1 < reports.size(); ++g)
    for (std::size_t c = 0; c < reports[g].comparisons.size(); ++c) {
      const double coarse = reports[g].comparisons[c].margin;
      if (coarse >= 0.0) continue;
      ++failing;
      CHECK(-coarse <= reports[g].tolerance);
      CHECK(std::max(0.0, -reports[g + 1].comparisons[c].margin) <= 0.5 * -coarse);
    }
  CHECK(failing >= 2);
}

TEST_CASE("verdicts do not depend on the sign convention", "[harness]") {
  const RingDomain2D d(ConicCurve::ellipse(3.0, 2.0), ConicCurve::circle(1.0), Vec2::Zero(), 33, 128);
  const SampledField field = sample_field(solve_minimal_ring2d(d, named_boundary_data("constant:0", "constant:1", d)));
  CheckOptions flipped;
  flipped.flip_convention = true;
  const CheckReport a = check_extremum_on_boundary(field, TestFunctionSpec::minimal_theta(-0.5), Which::Both);
  const CheckReport b = check_extremum_on_boundary(field, TestFunctionSpec::minimal_theta(-0.5), Which::Both, flipped);
  CHECK(a.pass == b.pass);
  for (std::size_t c = 0; c < a.comparisons.size(); ++c)
    CHECK(std::abs(a.comparisons[c].margin) == std::abs(b.comparisons[c].margin));
}

TEST_CASE("convergence studies", "[harness]") {
  const auto laplace = convergence_study(StudyProblem::LaplaceAnnulus, {{33, 64}, {65, 128}, {129, 256}, {257, 512}});
  for (std::size_t k = 1; k < laplace.size(); ++k) CHECK(*laplace[k].order == Catch::Approx(2.0).margin(0.2));

  const auto sphere =
      convergence_study(StudyProblem::SphereCurvature, {{33, 128}, {65, 256}, {129, 512}, {257, 1024}});
  CHECK(*sphere.back().order == Catch::Approx(2.0).margin(0.3));

  const auto constant = convergence_study(StudyProblem::ConstantData, {{17, 32}, {33, 64}, {65, 128}});
  for (const auto& row : constant) {
    CHECK(row.error == 0.0);
    CHECK_FALSE(row.order.has_value());
  }
  CHECK(parse_study_problem("catenoid-ring") == StudyProblem::CatenoidRing);
}
