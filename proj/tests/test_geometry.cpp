#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/error.hpp"
#include "levelcurv/geometry.hpp"

using namespace levelcurv;
using Catch::Approx;

namespace {

Jet make_jet(std::initializer_list<double> g, const Mat& h) {
  Jet j;
  j.grad = Vec(static_cast<Eigen::Index>(g.size()));
  Eigen::Index i = 0;
  for (double v : g) j.grad(i++) = v;
  j.hess = h;
  return j;
}

Mat random_rotation(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ();
  return q;
}

// u = -|x| has level spheres; its jet at x.
Jet sphere_jet(const Vec& x) {
  const double r = x.norm();
  const Vec xh = x / r;
  const int n = static_cast<int>(x.size());
  Jet j;
  j.grad = -xh;
  j.hess = -(Mat::Identity(n, n) - xh * xh.transpose()) / r;
  return j;
}

}  // namespace

TEST_CASE("graph curvature matrix", "[geometry]") {
  CHECK(graph_curvature_matrix(Vec::Zero(2), Mat::Identity(2, 2)).isApprox(Mat::Identity(2, 2)));
  CHECK(graph_curvature_matrix(Vec::Zero(2), Mat::Zero(2, 2)).isZero());
  Vec g(1);
  g << 1.0;
  Mat h(1, 1);
  h << 1.0;
  const double plane_curve = 1.0 / std::pow(2.0, 1.5);
  CHECK(graph_curvature_matrix(g, h)(0, 0) == Approx(plane_curve).epsilon(1e-14));
}

TEST_CASE("align frame", "[geometry]") {
  SECTION("already aligned") {
    const LevelSetFrame f = align_frame(make_jet({0, 0, 2}, Mat::Identity(3, 3)));
    CHECK(f.rotation.isApprox(Mat::Identity(3, 3)));
    CHECK(f.aligned.grad(2) == 2.0);
  }
  SECTION("givens") {
    const LevelSetFrame f = align_frame(make_jet({3, 4}, Mat::Zero(2, 2)));
    CHECK((f.rotation.transpose() * f.rotation - Mat::Identity(2, 2)).norm() < 1e-12);
    CHECK(std::abs(f.aligned.grad(0)) < 1e-12);
    CHECK(f.aligned.grad(1) == Approx(5.0).epsilon(1e-14));
    CHECK(((f.rotation * Eigen::Vector2d(3, 4)) - Eigen::Vector2d(0, 5)).norm() < 1e-12);
  }
  SECTION("downward gradient") {
    Mat h(2, 2);
    h << 1.0, 0.5, 0.5, -2.0;
    const LevelSetFrame f = align_frame(make_jet({0, -1}, h));
    CHECK(f.aligned.grad(1) == 1.0);
    CHECK(std::abs(f.aligned.grad(0)) < 1e-12);
    CHECK((f.rotation + Mat::Identity(2, 2)).norm() < 1e-12);
    CHECK((f.aligned.hess - h).norm() < 1e-12);
  }
  SECTION("third derivatives rotate covariantly and stay symmetric") {
    std::mt19937_64 rng(7);
    Jet j = make_jet({0.3, -0.2, 0.9}, Mat::Identity(3, 3));
    Tensor3 t(3);
    std::uniform_real_distribution<double> ud(-1, 1);
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b)
        for (int c = b; c < 3; ++c) {
          const double v = ud(rng);
          t(a, b, c) = t(a, c, b) = t(b, a, c) = t(b, c, a) = t(c, a, b) = t(c, b, a) = v;
        }
    j.third = t;
    const LevelSetFrame f = align_frame(j, true);
    REQUIRE(f.aligned.third.has_value());
    CHECK(f.aligned.third->symmetry_defect() < 1e-14);
    CHECK(std::abs(f.aligned.hess(0, 1)) < 1e-12);
    const Tensor3 back = f.aligned.third->rotated(f.rotation.transpose());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) CHECK(std::abs(back(a, b, c) - t(a, b, c)) < 1e-13);
  }
  SECTION("tiny gradient") {
    CHECK_THROWS_AS(align_frame(make_jet({1e-9, 0}, Mat::Zero(2, 2))), Error);
    try {
      align_frame(make_jet({1e-9, 0}, Mat::Zero(2, 2)));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GradientTooSmall);
    }
  }
}

TEST_CASE("level set normal", "[geometry]") {
  CHECK(level_set_normal(Eigen::Vector3d(0, 0, 2)).isApprox(Eigen::Vector3d(0, 0, 1)));
  CHECK(level_set_normal(Eigen::Vector3d(3, 0, 4)).isApprox(Eigen::Vector3d(0.6, 0, 0.8)));
  CHECK(level_set_normal(Eigen::Vector2d(0, -1)).isApprox(Eigen::Vector2d(0, 1)));
  try {
    level_set_normal(Eigen::Vector2d(1, 0));
    FAIL("expected DegenerateChart");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateChart);
  }
}

TEST_CASE("second fundamental form", "[geometry]") {
  Mat h3 = Mat::Zero(3, 3);
  h3(0, 0) = -1;
  h3(1, 1) = -1;
  const Mat h = second_fundamental_h(make_jet({0, 0, 2}, h3));
  CHECK(h.isApprox(-4.0 * Mat::Identity(2, 2)));

  // u = x^2 + y: level curve y = c - x^2
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 2;
  const Mat h2 = second_fundamental_h(make_jet({0, 1}, p));
  CHECK(h2(0, 0) == 2.0);
  const double b11 = -std::abs(1.0) * h2(0, 0) / (1.0 * 1.0);
  CHECK(b11 == -2.0);
  CHECK(second_fundamental_h(make_jet({0, 0, 1}, Mat::Zero(3, 3))).isZero());
}

TEST_CASE("curvature matrix", "[geometry]") {
  SECTION("sphere, aligned") {
    const double r = 1.7;
    const CurvatureData cd = curvature_matrix(sphere_jet(Eigen::Vector3d(0, 0, -r)));
    CHECK((cd.a - Mat::Identity(2, 2) / r).norm() < 1e-12);
    CHECK(cd.gauss == Approx(1.0 / (r * r)).epsilon(1e-12));
    CHECK(convexity_classify(cd.a) == Convexity::StrictlyConvex);
  }
  SECTION("plane") {
    const CurvatureData cd = curvature_matrix(make_jet({0, 0, 1}, Mat::Zero(3, 3)));
    CHECK(cd.a.isZero());
    CHECK(cd.gauss == 0.0);
    CHECK(convexity_classify(cd.a) == Convexity::Convex);
  }
  SECTION("sphere in rotated raw chart") {
    std::mt19937_64 rng(11);
    const double r = 2.3;
    for (int trial = 0; trial < 20; ++trial) {
      const Mat q = random_rotation(rng, 3);
      const Vec x = q * Eigen::Vector3d(0, 0, -r);
      const Jet j = sphere_jet(x);
      if (std::abs(j.grad(2)) < 1e-3) continue;
      const CurvatureData cd = curvature_matrix(j, ChartMode::Raw);
      CHECK(std::abs(cd.principal(0) - 1.0 / r) < 1e-10);
      CHECK(std::abs(cd.principal(1) - 1.0 / r) < 1e-10);
    }
  }
  SECTION("orientation is recorded") {
    const CurvatureData up = curvature_matrix(sphere_jet(Eigen::Vector3d(0, 0, -2)));
    Jet down = sphere_jet(Eigen::Vector3d(0, 0, -2));
    down.grad = -down.grad;
    down.hess = -down.hess;
    const CurvatureData dn = curvature_matrix(down);
    CHECK(up.orientation != dn.orientation);
    CHECK((up.a - dn.a).norm() < 1e-12);
  }
  SECTION("raw mode needs u_n") {
    try {
      curvature_matrix(make_jet({1, 0}, Mat::Identity(2, 2)), ChartMode::Raw);
      FAIL("expected DegenerateChart");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateChart);
    }
  }
}

TEST_CASE("curvature invariants on random jets", "[geometry][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    Jet j;
    j.grad = Vec(n);
    j.hess = Mat(n, n);
    for (int i = 0; i < n; ++i) j.grad(i) = ud(rng);
    j.grad(n - 1) = std::abs(j.grad(n - 1)) + 0.3;
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) j.hess(i, k) = j.hess(k, i) = ud(rng);

    const CurvatureData cd = curvature_matrix(j);
    CHECK(symmetry_defect(cd.a) < 1e-12);
    const double prod = cd.principal.prod();
    CHECK(std::abs(cd.gauss - prod) <= 1e-10 * std::max(1e-300, std::abs(prod)) + 1e-300);

    // aligned simplification
    const LevelSetFrame f = align_frame(j);
    const Mat expect = -f.aligned.hess.topLeftCorner(n - 1, n - 1) / f.aligned.grad(n - 1);
    CHECK((cd.a_signed - expect).cwiseAbs().maxCoeff() < 1e-12);

    // raw chart and aligned chart agree on the sorted spectrum
    const CurvatureData raw = curvature_matrix(j, ChartMode::Raw);
    CHECK((raw.principal - cd.principal).cwiseAbs().maxCoeff() < 1e-10);

    // rotation invariance
    const Mat q = random_rotation(rng, n);
    const CurvatureData rot = curvature_matrix(rotate_jet(j, q));
    CHECK((rot.principal - cd.principal).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(rot.gauss - cd.gauss) < 1e-10 * std::max(1.0, std::abs(cd.gauss)));
  }
}

TEST_CASE("graph chart consistency", "[geometry][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    Vec vg(m);
    Mat vh(m, m);
    for (int i = 0; i < m; ++i) vg(i) = ud(rng);
    for (int i = 0; i < m; ++i)
      for (int k = i; k < m; ++k) vh(i, k) = vh(k, i) = ud(rng);
    // u = x_n - v(x')
    Jet j;
    j.grad = Vec(m + 1);
    j.grad.head(m) = -vg;
    j.grad(m) = 1.0;
    j.hess = Mat::Zero(m + 1, m + 1);
    j.hess.topLeftCorner(m, m) = -vh;
    const CurvatureData cd = curvature_matrix(j, ChartMode::Raw);
    CHECK((cd.a_signed - graph_curvature_matrix(vg, vh)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("convexity classification", "[geometry]") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 3;
  CHECK(convexity_classify(d) == Convexity::StrictlyConvex);
  CHECK(determinant<double>(d) == 6.0);
  CHECK(symmetric_eigenvalues(d).isApprox(Eigen::Vector2d(2, 3)));
  CHECK(convexity_classify(Mat::Zero(2, 2)) == Convexity::Convex);
  d(0, 0) = 1;
  d(1, 1) = -1;
  CHECK(convexity_classify(d) == Convexity::NonConvex);
}

TEST_CASE("eigenvalues match a library solver", "[geometry][property]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (int n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      Mat a(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) a(i, k) = a(k, i) = ud(rng);
      Eigen::SelfAdjointEigenSolver<Mat> es(a);
      CHECK((symmetric_eigenvalues(a) - es.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("weighted curvature", "[geometry]") {
  const auto mt = TestFunctionSpec::minimal_theta(-0.5);
  CHECK(weighted_curvature(mt, 1.0 / 15.0, 0.25) == Approx(1.0).epsilon(1e-14));
  CHECK(weighted_curvature(TestFunctionSpec::minimal_theta(0), 3.3, 0.7) == 0.7);
  CHECK(weighted_curvature(TestFunctionSpec::poisson_power(-2), 4.0, 3.0) == Approx(0.75).epsilon(1e-15));
  try {
    log_weighted_curvature(mt, 1.0, 0.0);
    FAIL("expected NonpositiveCurvature");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveCurvature);
  }
}

TEST_CASE("rho forms", "[geometry][property]") {
  for (double theta : {-0.5, 0.0, 0.5, 1.0, 2.5})
    for (double t : {1e-3, 0.1, 1.0, 7.0, 300.0}) {
      const auto s = TestFunctionSpec::minimal_theta(theta);
      CHECK(std::abs(s.rho(t) - theta * (std::log(t) - std::log(1.0 + t))) < 1e-14 * std::max(1.0, std::abs(s.rho(t))));
      const auto p = TestFunctionSpec::poisson_power(2.0 * theta);
      CHECK(std::abs(p.rho(t) - theta * std::log(t)) < 1e-14 * std::max(1.0, std::abs(p.rho(t))));
      // rho' and rho'' against central differences
      const double h = 1e-4 * t;
      CHECK(s.rho_prime(t) == Approx((s.rho(t + h) - s.rho(t - h)) / (2 * h)).epsilon(1e-6).margin(1e-9));
      CHECK(s.rho_second(t) ==
            Approx((s.rho_prime(t + h) - s.rho_prime(t - h)) / (2 * h)).epsilon(1e-6).margin(1e-9));
    }
}

TEST_CASE("catenoid oracle", "[geometry]") {
  const CatenoidValues c3 = catenoid_oracle(3, 2.0);
  CHECK(c3.grad_norm_sq == Approx(1.0 / 15.0).epsilon(1e-15));
  CHECK(c3.gauss == 0.25);
  CHECK(std::abs(c3.psi_minus_half - 1.0) < 1e-12);
  const CatenoidValues c2 = catenoid_oracle(2, 2.0);
  CHECK(c2.grad_norm_sq == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c2.gauss == 0.5);
  CHECK(std::abs(c2.psi_minus_half - 1.0) < 1e-12);
  CHECK(std::abs(catenoid_oracle(4, 1e6).psi_minus_half - 1.0) < 1e-12);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k < 200; ++k) {
      const double r = 1.1 + (50.0 - 1.1) * k / 199.0;
      CHECK(std::abs(catenoid_oracle(n, r).psi_minus_half - 1.0) < 1e-12);
    }
  try {
    catenoid_oracle(3, 1.0);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfDomain);
  }
}

TEST_CASE("catenoid jets reproduce the oracle", "[geometry]") {
  for (int n = 2; n <= 4; ++n) {
    const RadialMinimalField cat(n, 1.0);
    Vec x = Vec::Zero(n);
    x(0) = 1.3;
    x(n - 1) = 0.9;
    const double r = x.norm();
    const CatenoidValues ref = catenoid_oracle(n, r);
    const Jet j = cat.jet(x, 3);
    CHECK(j.grad.squaredNorm() == Approx(ref.grad_norm_sq).epsilon(1e-13));
    const CurvatureData cd = curvature_matrix(j);
    CHECK(cd.gauss == Approx(ref.gauss).epsilon(1e-12));
    CHECK(weighted_curvature(TestFunctionSpec::minimal_theta(-0.5), j.grad.squaredNorm(), cd.gauss) ==
          Approx(1.0).epsilon(1e-12));
    // minimal surface equation holds pointwise
    const double t = j.grad.squaredNorm();
    CHECK(std::abs((1 + t) * j.hess.trace() - j.grad.dot(j.hess * j.grad)) < 1e-12);
  }
}
