#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "levelcurv/error.hpp"
#include "levelcurv/solvers.hpp"

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

double catenoid_integral(int n, double a, double b) {
  const double m = n - 1;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [m](double s) { return 1.0 / std::sqrt(std::pow(s, 2 * m) - 1.0); }, a, b, 12, 1e-13);
}

RingDomain2D circles(double outer, double inner, int ns, int nt) {
  return RingDomain2D(ConicCurve::circle(outer), ConicCurve::circle(inner), Vec2::Zero(), ns, nt);
}

double grid_max_error(const GridSolution& sol, const std::function<double(double)>& exact) {
  double worst = 0.0;
  for (int i = 0; i < sol.domain.ns(); ++i)
    for (int j = 0; j < sol.domain.nt(); ++j)
      worst = std::max(worst, std::abs(sol.at(i, j) - exact(sol.domain.node(i, j).norm())));
  return worst;
}

struct Range {
  double lo = 1e300;
  double hi = -1e300;
};

Range boundary_range(const GridSolution& sol) {
  Range r;
  for (int i : {0, sol.domain.ns() - 1})
    for (int j = 0; j < sol.domain.nt(); ++j) {
      r.lo = std::min(r.lo, sol.at(i, j));
      r.hi = std::max(r.hi, sol.at(i, j));
    }
  return r;
}

Range interior_range(const GridSolution& sol) {
  Range r;
  for (int i = 1; i + 1 < sol.domain.ns(); ++i)
    for (int j = 0; j < sol.domain.nt(); ++j) {
      r.lo = std::min(r.lo, sol.at(i, j));
      r.hi = std::max(r.hi, sol.at(i, j));
    }
  return r;
}

}  // namespace

TEST_CASE("radial minimal: catenoid data recover unit flux", "[solvers][radial]") {
  for (int n : {2, 3, 4}) {
    const double a = 2.0, b = 5.0;
    const double jump = catenoid_integral(n, a, b);
    const RadialSolution sol = solve_minimal_radial(n, a, b, 0.0, jump, 301);
    CHECK(sol.flux == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(sol.residual_norm < 1e-9);
    for (std::size_t k = 0; k < sol.r.size(); k += 25) {
      const double r = sol.r[k];
      CHECK(std::abs(sol.u[k] - catenoid_integral(n, a, r)) < 1e-10);
      CHECK(std::abs(sol.u_prime[k] - 1.0 / std::sqrt(std::pow(r, 2 * (n - 1)) - 1.0)) < 1e-11);
    }
  }
}

TEST_CASE("radial minimal: 2D catenoid against arccosh", "[solvers][radial]") {
  const RadialSolution sol = solve_minimal_radial(2, 2.0, 4.0, std::acosh(2.0), std::acosh(4.0));
  CHECK(std::abs(sol.flux - 1.0) < 1e-12);
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.r.size(); ++k) worst = std::max(worst, std::abs(sol.u[k] - std::acosh(sol.r[k])));
  CHECK(worst < 1e-9);
  CHECK(std::abs(sol.profile_value(3.0) - std::acosh(3.0)) < 1e-12);
}

TEST_CASE("radial minimal: decreasing data flip the sign", "[solvers][radial]") {
  const RadialSolution sol = solve_minimal_radial(3, 2.0, 4.0, 1.0, 0.0);
  CHECK(sol.sign == -1.0);
  CHECK(sol.flux > 0.0);
  CHECK(sol.flux < 8.0);
  CHECK(std::abs(sol.u.back()) < 1e-10);
  for (double up : sol.u_prime) CHECK(up < 0.0);
}

TEST_CASE("radial minimal: equal data give a constant", "[solvers][radial]") {
  const RadialSolution sol = solve_minimal_radial(3, 1.0, 2.0, 0.7, 0.7);
  CHECK(sol.flux == 0.0);
  for (double v : sol.u) CHECK(v == 0.7);
  for (double v : sol.u_prime) CHECK(v == 0.0);
}

TEST_CASE("radial minimal: steep data have no graph solution", "[solvers][radial]") {
  // n = 2, a = 1: the largest jump is arccosh(b)
  CHECK(kind_of([] { solve_minimal_radial(2, 1.0, 3.0, 0.0, std::acosh(3.0) + 0.01); }) == ErrorKind::NoSolution);
  CHECK(kind_of([] { solve_minimal_radial(3, 2.0, 4.0, 0.0, 5.0); }) == ErrorKind::NoSolution);
  CHECK(kind_of([] { solve_minimal_radial(3, 2.0, 1.0, 0.0, 1.0); }) == ErrorKind::InvalidInstance);
  CHECK(kind_of([] { solve_minimal_radial(1, 1.0, 2.0, 0.0, 1.0); }) == ErrorKind::UnsupportedDimension);
}

TEST_CASE("radial semilinear: harmonic profiles", "[solvers][radial]") {
  const double e = std::exp(1.0);
  const RadialSolution s2 = solve_semilinear_radial(2, 1.0, e, 1.0, 0.0, SemilinearRHS::zero());
  for (std::size_t k = 0; k < s2.r.size(); ++k) CHECK(std::abs(s2.u[k] - (1.0 - std::log(s2.r[k]))) < 1e-9);
  CHECK(s2.residual_norm < 1e-10);

  const double a = 1.0, b = 3.0;
  const RadialSolution s3 = solve_semilinear_radial(3, a, b, 1.0, 0.0, SemilinearRHS::zero());
  for (std::size_t k = 0; k < s3.r.size(); ++k) {
    const double exact = (1.0 / s3.r[k] - 1.0 / b) / (1.0 / a - 1.0 / b);
    CHECK(std::abs(s3.u[k] - exact) < 1e-9);
  }
}

TEST_CASE("radial semilinear: linear f against a dense direct solve", "[solvers][radial]") {
  const int n = 2, samples = 129;
  const double a = 1.0, b = 2.0, lambda = 0.3;
  const RadialSolution sol =
      solve_semilinear_radial(n, a, b, 1.0, 0.0, SemilinearRHS::linear(lambda), samples);

  // the same conservative scheme written as a dense linear system
  const double h = (b - a) / (samples - 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(samples, samples);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(samples);
  m(0, 0) = 1.0;
  rhs(0) = 1.0;
  m(samples - 1, samples - 1) = 1.0;
  for (int k = 1; k + 1 < samples; ++k) {
    const double r = a + k * h;
    const double tm = 1.0 / std::log(r / (r - h));
    const double tp = 1.0 / std::log((r + h) / r);
    const double vol = 0.5 * ((r + h / 2) * (r + h / 2) - (r - h / 2) * (r - h / 2));
    m(k, k - 1) = tm;
    m(k, k + 1) = tp;
    m(k, k) = -tm - tp - vol * lambda;
  }
  const Eigen::VectorXd u = m.fullPivLu().solve(rhs);
  for (int k = 0; k < samples; ++k) CHECK(std::abs(sol.u[static_cast<std::size_t>(k)] - u(k)) < 1e-8);

  // and the continuous solution c1 I0(kr) + c2 K0(kr) up to discretisation error
  const double kk = std::sqrt(lambda);
  using boost::math::cyl_bessel_i;
  using boost::math::cyl_bessel_k;
  Eigen::Matrix2d bc;
  bc << cyl_bessel_i(0, kk * a), cyl_bessel_k(0, kk * a), cyl_bessel_i(0, kk * b), cyl_bessel_k(0, kk * b);
  const Eigen::Vector2d c = bc.fullPivLu().solve(Eigen::Vector2d(1.0, 0.0));
  for (int k = 0; k < samples; ++k) {
    const double r = a + k * h;
    const double exact = c(0) * cyl_bessel_i(0, kk * r) + c(1) * cyl_bessel_k(0, kk * r);
    CHECK(std::abs(sol.u[static_cast<std::size_t>(k)] - exact) < 10.0 * h * h);
  }
}

TEST_CASE("radial semilinear: direction-dependent f is rejected", "[solvers][radial]") {
  CHECK(kind_of([] {
          solve_semilinear_radial(2, 1.0, 2.0, 1.0, 0.0, SemilinearRHS::inverse_square_shift());
        }) == ErrorKind::ConfigError);
}

TEST_CASE("ring domain: validation", "[solvers][domain]") {
  CHECK(kind_of([] { circles(1.0, 2.0, 16, 32); }) == ErrorKind::InvalidInstance);
  CHECK(kind_of([] { circles(2.0, 1.0, 3, 32); }) == ErrorKind::InvalidInstance);
  CHECK(kind_of([] {
          RingDomain2D(ConicCurve::circle(2.0), ConicCurve::circle(0.5, Vec2(3.0, 0.0)), Vec2(3.0, 0.0), 16, 32);
        }) == ErrorKind::InvalidInstance);
  const RingDomain2D d = circles(4.0, 2.0, 17, 64);
  CHECK(d.min_gap() == Catch::Approx(2.0).epsilon(1e-12));
  CHECK(d.node(0, 0).x() == Catch::Approx(4.0));
  CHECK(d.node(16, 16).y() == Catch::Approx(2.0));
  const Vec2 st = d.to_computational(Vec2(0.0, -3.0));
  CHECK(st(0) == Catch::Approx(0.5));
  CHECK(st(1) == Catch::Approx(1.5 * std::numbers::pi));
}

TEST_CASE("ring domain: metric maps computational to Cartesian derivatives", "[solvers][domain]") {
  const RingDomain2D d(ConicCurve::ellipse(3.0, 2.0, 0.3, Vec2(0.1, -0.2)), ConicCurve::circle(0.8, Vec2(0.2, 0.1)),
                       Vec2(0.15, 0.0), 9, 32);
  // u = x^3 - 2 x y + y^2, derivatives in (s, t) from the map by central differences
  auto u = [](const Vec2& p) { return p.x() * p.x() * p.x() - 2.0 * p.x() * p.y() + p.y() * p.y(); };
  const double e = 1e-4;
  for (int i = 1; i < 8; i += 3)
    for (int j = 0; j < 32; j += 5) {
      const double s = d.s(i), t = d.t(j);
      auto g = [&](double ds, double dt) { return u(d.map(s + ds, t + dt)); };
      Eigen::Matrix<double, 5, 1> comp;
      comp << (g(e, 0) - g(-e, 0)) / (2 * e), (g(0, e) - g(0, -e)) / (2 * e),
          (g(e, 0) - 2 * g(0, 0) + g(-e, 0)) / (e * e),
          (g(e, e) - g(e, -e) - g(-e, e) + g(-e, -e)) / (4 * e * e), (g(0, e) - 2 * g(0, 0) + g(0, -e)) / (e * e);
      const Eigen::Matrix<double, 5, 1> cart = d.metric(i, j).to_cartesian * comp;
      const Vec2 p = d.node(i, j);
      CHECK(std::abs(cart(0) - (3 * p.x() * p.x() - 2 * p.y())) < 1e-6);
      CHECK(std::abs(cart(1) - (-2 * p.x() + 2 * p.y())) < 1e-6);
      CHECK(std::abs(cart(2) - 6 * p.x()) < 1e-5);
      CHECK(std::abs(cart(3) - (-2.0)) < 1e-5);
      CHECK(std::abs(cart(4) - 2.0) < 1e-5);
    }
}

TEST_CASE("ring2d minimal: concentric catenoid agrees with the radial profile", "[solvers][ring2d]") {
  const RadialSolution radial = solve_minimal_radial(2, 2.0, 4.0, std::acosh(2.0), std::acosh(4.0));
  auto exact = [&](double r) { return radial.profile_value(r); };
  std::vector<double> err, h;
  for (int k : {1, 2}) {
    const RingDomain2D d = circles(4.0, 2.0, 16 * k + 1, 64 * k);
    const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("catenoid", "catenoid", d));
    CHECK(sol.residual_norm < 1e-9);
    CHECK(discrete_residual(sol) < 1e-9);
    err.push_back(grid_max_error(sol, exact));
    h.push_back(sol.h);
  }
  const double c0 = err[0] / (h[0] * h[0]);
  const double c1 = err[1] / (h[1] * h[1]);
  CHECK(err[1] < err[0]);
  CHECK(std::abs(c1 - c0) < 0.25 * c0);
}

TEST_CASE("ring2d minimal: equal constant data need no correction", "[solvers][ring2d]") {
  const RingDomain2D d = circles(3.0, 1.0, 9, 32);
  const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("constant:0.25", "constant:0.25", d));
  CHECK(sol.picard_iterations == 0);
  CHECK(sol.newton_iterations == 0);
  for (double v : sol.u) CHECK(v == 0.25);
}

TEST_CASE("ring2d minimal: circle inside ellipse obeys the maximum principle", "[solvers][ring2d]") {
  const RingDomain2D d(ConicCurve::ellipse(3.0, 2.0), ConicCurve::circle(1.0), Vec2::Zero(), 33, 128);
  const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("constant:0", "constant:1", d));
  CHECK(sol.residual_norm < 1e-9);
  const Range in = interior_range(sol);
  const Range bd = boundary_range(sol);
  CHECK(in.lo >= bd.lo - 1e-12);
  CHECK(in.hi <= bd.hi + 1e-12);
  CHECK(sol.picard_iterations == 5);
}

TEST_CASE("ring2d semilinear: harmonic annulus converges at second order", "[solvers][ring2d]") {
  const double r0 = 2.0, r1 = 0.5;
  auto exact = [&](double r) { return std::log(r0 / r) / std::log(r0 / r1); };
  std::vector<double> err;
  for (int k : {1, 2, 4, 8}) {
    const RingDomain2D d = circles(r0, r1, 8 * k + 1, 32 * k);
    const GridSolution sol = solve_semilinear_ring2d(d, named_boundary_data("constant:0", "constant:1", d),
                                                     SemilinearRHS::zero());
    err.push_back(grid_max_error(sol, exact));
    const Range in = interior_range(sol);
    CHECK(in.hi <= 1.0 + 1e-12);
    CHECK(in.lo >= -1e-12);
  }
  for (std::size_t k = 1; k < err.size(); ++k) CHECK(std::log2(err[k - 1] / err[k]) >= 1.8);
}

TEST_CASE("ring2d semilinear: linear f agrees with the radial solver", "[solvers][ring2d]") {
  const RadialSolution radial = solve_semilinear_radial(2, 0.5, 1.0, 1.0, 0.0, SemilinearRHS::linear(1.0), 4097);
  auto exact = [&](double r) {
    const double pos = (r - radial.a) / radial.h;
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(pos), radial.r.size() - 2);
    const double w = pos - static_cast<double>(k);
    return (1 - w) * radial.u[k] + w * radial.u[k + 1];
  };
  std::vector<double> err;
  for (int k : {1, 2, 4}) {
    const RingDomain2D d = circles(1.0, 0.5, 8 * k + 1, 32 * k);
    const GridSolution sol = solve_semilinear_ring2d(d, named_boundary_data("constant:0", "constant:1", d),
                                                     SemilinearRHS::linear(1.0));
    err.push_back(grid_max_error(sol, exact));
  }
  CHECK(std::log2(err[0] / err[1]) > 1.8);
  CHECK(std::log2(err[1] / err[2]) > 1.8);
}

TEST_CASE("ring2d semilinear: constant data with f = 0 stay constant", "[solvers][ring2d]") {
  const RingDomain2D d = circles(2.0, 1.0, 9, 32);
  const GridSolution sol =
      solve_semilinear_ring2d(d, named_boundary_data("constant:-1.5", "constant:-1.5", d), SemilinearRHS::zero());
  for (double v : sol.u) CHECK(v == -1.5);
  CHECK(sol.newton_iterations == 0);
}

TEST_CASE("ring2d minimal: catenoid error converges at second order", "[solvers][ring2d]") {
  const RadialSolution radial = solve_minimal_radial(2, 1.5, 3.0, std::acosh(1.5), std::acosh(3.0));
  std::vector<double> err;
  for (int k : {1, 2, 4, 8}) {
    const RingDomain2D d = circles(3.0, 1.5, 4 * k + 1, 16 * k);
    const GridSolution sol = solve_minimal_ring2d(d, named_boundary_data("catenoid", "catenoid", d));
    err.push_back(grid_max_error(sol, [](double r) { return std::acosh(r); }));
  }
  for (std::size_t k = 1; k < err.size(); ++k) CHECK(std::log2(err[k - 1] / err[k]) >= 1.8);
  CHECK(radial.flux == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ring2d: identical inputs give bit-identical solutions", "[solvers][ring2d]") {
  const RingDomain2D d(ConicCurve::ellipse(3.0, 2.0, 0.2), ConicCurve::circle(1.0), Vec2::Zero(), 17, 64);
  const auto data = named_boundary_data("constant:0", "constant:1", d);
  const GridSolution a = solve_minimal_ring2d(d, data);
  const GridSolution b = solve_minimal_ring2d(d, data);
  CHECK(a.u == b.u);
  CHECK(a.residual_norm == b.residual_norm);
}

TEST_CASE("ring2d: iteration cap reports non-convergence", "[solvers][ring2d]") {
  const RingDomain2D d = circles(3.0, 1.0, 17, 64);
  SolverOptions opt;
  opt.max_iter = 1;
  opt.picard_steps = 0;
  opt.tol = 1e-14;
  CHECK(kind_of([&] { solve_minimal_ring2d(d, named_boundary_data("constant:0", "constant:3", d), opt); }) ==
        ErrorKind::DidNotConverge);
}

TEST_CASE("boundary data: names and sampled traces", "[solvers][data]") {
  const RingDomain2D d = circles(2.0, 1.0, 9, 16);
  CHECK(kind_of([&] { named_boundary_function("bogus", d); }) == ErrorKind::ConfigError);
  CHECK(kind_of([&] { named_boundary_function("constant:1x", d); }) == ErrorKind::ConfigError);
  CHECK(named_boundary_function("constant:2.5", d)(Vec2(1, 0)) == 2.5);
  CHECK(named_boundary_function("harmonic-annulus", d)(Vec2(0, 1)) == Catch::Approx(1.0));
  const RingDomain2D e(ConicCurve::ellipse(3.0, 2.0), ConicCurve::circle(1.0), Vec2::Zero(), 9, 16);
  CHECK(kind_of([&] { named_boundary_function("harmonic-annulus", e); }) == ErrorKind::ConfigError);

  std::vector<double> outer(16), inner(16);
  for (int j = 0; j < 16; ++j) {
    outer[static_cast<std::size_t>(j)] = std::cos(d.t(j));
    inner[static_cast<std::size_t>(j)] = 1.0;
  }
  const BoundaryData data = sampled_boundary_data(outer, inner, d);
  for (int j = 0; j < 16; ++j) CHECK(data.outer(d.node(0, j)) == Catch::Approx(std::cos(d.t(j))).margin(1e-14));
}

TEST_CASE("admissibility flags", "[solvers][rhs]") {
  SampleBox box{Vec::Constant(2, -0.5), Vec::Constant(2, 0.5), 0.0, 1.0};
  const RhsFlags lin = admissibility_check(SemilinearRHS::linear(1.0), box);
  CHECK(lin.nonnegative);
  CHECK(lin.f_u_nonneg);
  CHECK(lin.f0_zero);
  CHECK(lin.ring_bound_admissible());
  CHECK(lin.f_of_u_only);
  CHECK_FALSE(lin.f_of_x_only);

  const RhsFlags neg = admissibility_check(SemilinearRHS::constant(-1.0), box);
  CHECK_FALSE(neg.nonnegative);
  CHECK_FALSE(neg.ring_bound_admissible());

  const RhsFlags shift = admissibility_check(SemilinearRHS::inverse_square_shift(), box);
  CHECK(shift.t3f_convex);
  CHECK(shift.f_of_x_only);
  CHECK(shift.sampled);

  // f = (2 + x_1)^2 has f^{-1/2} convex, not concave
  const SemilinearRHS sq{"square-shift",
                         [](const Vec& x, double) { return (2.0 + x(0)) * (2.0 + x(0)); },
                         [](const Vec&, double) { return 0.0; }};
  CHECK_FALSE(admissibility_check(sq, box).t3f_convex);

  CHECK(SemilinearRHS::parse("linear:2").f(Vec::Zero(2), 3.0) == 6.0);
  CHECK(kind_of([] { SemilinearRHS::parse("cubic"); }) == ErrorKind::ConfigError);
}
