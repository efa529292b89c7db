#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/error.hpp"
#include "levelcurv/geometry.hpp"
#include "levelcurv/jet_recovery.hpp"

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

GridSolution sampled(const RingDomain2D& d, const std::function<double(const Vec2&)>& u) {
  GridSolution sol{d, {}, EquationKind::MinimalSurface, std::nullopt, "sampled", "sampled", 0.0, 0, 0, d.spacing()};
  sol.u.resize(static_cast<std::size_t>(d.ns()) * static_cast<std::size_t>(d.nt()));
  for (int i = 0; i < d.ns(); ++i)
    for (int j = 0; j < d.nt(); ++j) sol.u[static_cast<std::size_t>(d.index(i, j))] = u(d.node(i, j));
  return sol;
}

RingDomain2D tilted_ring(int ns, int nt) {
  return RingDomain2D(ConicCurve::ellipse(3.0, 2.0, 0.4, Vec2(0.2, 0.1)), ConicCurve::circle(0.7, Vec2(0.1, 0.0)),
                      Vec2(0.1, 0.05), ns, nt);
}

}  // namespace

TEST_CASE("grid recovery reproduces cubics exactly", "[recovery]") {
  const RingDomain2D d = tilted_ring(21, 64);
  auto u = [](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return 0.5 - x + 2 * y + 0.3 * x * x - x * y + 0.7 * y * y + 0.2 * x * x * x - 0.4 * x * x * y + 0.1 * y * y * y;
  };
  const GridSolution sol = sampled(d, u);
  for (int i : {0, 1, 2, 10, 18, 19, 20})
    for (int j : {0, 13, 63}) {
      const Jet jet = recover_jet(sol, i, j, 2, false);
      const double x = d.node(i, j).x(), y = d.node(i, j).y();
      CHECK(std::abs(jet.grad(0) - (-1 + 0.6 * x - y + 0.6 * x * x - 0.8 * x * y)) < 1e-11);
      CHECK(std::abs(jet.grad(1) - (2 - x + 1.4 * y - 0.4 * x * x + 0.3 * y * y)) < 1e-11);
      CHECK(std::abs(jet.hess(0, 0) - (0.6 + 1.2 * x - 0.8 * y)) < 1e-11);
      CHECK(std::abs(jet.hess(0, 1) - (-1 - 0.8 * x)) < 1e-11);
      CHECK(std::abs(jet.hess(1, 1) - (1.4 + 0.6 * y)) < 1e-11);
    }
}

TEST_CASE("order-3 recovery reproduces quartics exactly", "[recovery]") {
  const RingDomain2D d = tilted_ring(25, 96);
  auto u = [](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return x * x * x * y - 0.5 * y * y * y * y + x * x + 0.25 * x * y * y;
  };
  const GridSolution sol = sampled(d, u);
  const Jet jet = recover_jet(sol, 12, 40, 3);
  const double x = d.node(12, 40).x(), y = d.node(12, 40).y();
  REQUIRE(jet.third.has_value());
  const Tensor3& t = *jet.third;
  CHECK(std::abs(t(0, 0, 0) - 6 * y) < 1e-10);
  CHECK(std::abs(t(0, 0, 1) - 6 * x) < 1e-10);
  CHECK(std::abs(t(0, 1, 1) - 0.5) < 1e-10);
  CHECK(std::abs(t(1, 1, 1) - (-12 * y)) < 1e-10);
  CHECK(std::abs(jet.hess(0, 0) - (6 * x * y + 2)) < 1e-10);
  CHECK(t.symmetry_defect() == 0.0);
}

TEST_CASE("recovery at points between nodes", "[recovery]") {
  const RingDomain2D d = tilted_ring(21, 64);
  auto u = [](const Vec2& p) { return p.x() * p.x() * p.y() - 3 * p.y(); };
  const GridSolution sol = sampled(d, u);
  const Vec2 p = d.map(0.47, 1.234);
  const Jet jet = recover_jet(sol, p, 2);
  CHECK(std::abs(jet.grad(0) - 2 * p.x() * p.y()) < 1e-11);
  CHECK(std::abs(jet.grad(1) - (p.x() * p.x() - 3)) < 1e-11);
  CHECK(std::abs(jet.hess(0, 1) - 2 * p.x()) < 1e-11);
  CHECK(kind_of([&] { recover_jet(sol, Vec2(10.0, 0.0), 2); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("strict recovery refuses windows that touch the boundary", "[recovery]") {
  const GridSolution sol = sampled(tilted_ring(21, 64), [](const Vec2& p) { return p.x(); });
  CHECK(kind_of([&] { recover_jet(sol, 1, 0, 2); }) == ErrorKind::TooCloseToBoundary);
  CHECK(kind_of([&] { recover_jet(sol, 19, 0, 2); }) == ErrorKind::TooCloseToBoundary);
  CHECK(kind_of([&] { recover_jet(sol, 2, 0, 3); }) == ErrorKind::TooCloseToBoundary);
  CHECK_NOTHROW(recover_jet(sol, 2, 0, 2));
  CHECK_NOTHROW(recover_jet(sol, 3, 0, 3));
  CHECK(recovery_layers(2) == 2);
  CHECK(recovery_layers(3) == 3);
}

TEST_CASE("sphere field: Hessian error falls at second order", "[recovery]") {
  // u = -|x|: H = -(I - x x^T / r^2) / r
  std::vector<double> err;
  for (int k : {1, 2, 4}) {
    const RingDomain2D d(ConicCurve::ellipse(3.0, 2.0), ConicCurve::circle(1.0), Vec2::Zero(), 16 * k + 1, 64 * k);
    const GridSolution sol = sampled(d, [](const Vec2& p) { return -p.norm(); });
    const Vec2 p = d.map(0.5, 0.7);
    const Jet jet = recover_jet(sol, p, 2);
    const double r = p.norm();
    Mat exact = -(Mat::Identity(2, 2) - p * p.transpose() / (r * r)) / r;
    err.push_back((jet.hess - exact).cwiseAbs().maxCoeff());
  }
  CHECK(std::log2(err[0] / err[1]) > 1.7);
  CHECK(std::log2(err[1] / err[2]) > 1.7);
}

TEST_CASE("radial recovery of the catenoid gradient", "[recovery]") {
  const RadialMinimalField cat(3, 1.0);
  std::vector<double> err;
  for (int samples : {51, 101, 201}) {
    const RadialSolution sol = solve_minimal_radial(3, 1.5, 4.0, 0.0, cat.profile(4.0) - cat.profile(1.5), samples);
    Vec x = Vec::Zero(3);
    x << 1.2, 1.6, 0.0;  // r = 2
    const Jet jet = recover_jet(sol, x, 2);
    err.push_back((jet.grad - cat.jet(x, 1).grad).norm());
    CHECK(kind_of([&] { recover_jet(sol, Vec::Constant(3, 1.5 / std::sqrt(3.0)), 2); }) ==
          ErrorKind::TooCloseToBoundary);
  }
  CHECK(std::log2(err[0] / err[1]) > 1.8);
  CHECK(std::log2(err[1] / err[2]) > 1.8);
}

TEST_CASE("radial recovery reproduces quartic profiles at order 3", "[recovery]") {
  RadialSolution sol;
  sol.n = 2;
  sol.a = 1.0;
  sol.b = 2.0;
  sol.h = 1.0 / 40;
  for (int k = 0; k <= 40; ++k) {
    const double r = 1.0 + k * sol.h;
    sol.r.push_back(r);
    sol.u.push_back(r * r * r * r - 2 * r);
  }
  Vec x(2);
  x << 0.9, 1.2;  // r = 1.5
  const Jet jet = recover_jet(sol, x, 3);
  const Jet exact = radial_jet(x, 4 * 1.5 * 1.5 * 1.5 - 2, 12 * 1.5 * 1.5, 24 * 1.5, 3);
  CHECK((jet.grad - exact.grad).norm() < 1e-10);
  CHECK((jet.hess - exact.hess).norm() < 1e-10);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) CHECK(std::abs((*jet.third)(a, b, c) - (*exact.third)(a, b, c)) < 1e-8);
}

TEST_CASE("batched level curvature matches the curvature matrix", "[recovery]") {
  const RingDomain2D d = tilted_ring(17, 48);
  const GridSolution sol = sampled(d, [](const Vec2& p) { return std::exp(-0.3 * p.x()) - 0.2 * p.y() * p.y() + p.y(); });
  const GridDerivatives der = recover_derivatives(sol);
  const LevelCurvatureField field = level_curvature_field(der);
  for (int i = 0; i < d.ns(); i += 4)
    for (int j = 0; j < d.nt(); j += 7) {
      const auto k = static_cast<std::size_t>(d.index(i, j));
      const Jet jet = recover_jet(sol, i, j, 2, false);
      const CurvatureData cd = curvature_matrix(jet);
      CHECK(field.kappa[k] == Catch::Approx(cd.a_signed(0, 0)).epsilon(1e-12).margin(1e-14));
      CHECK(field.grad_sq[k] == Catch::Approx(jet.grad.squaredNorm()).epsilon(1e-14));
    }
}
