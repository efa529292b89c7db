#include "levelcurv/geometry.hpp"

#include <cmath>

#include <Eigen/LU>
#include <sstream>

#include "levelcurv/curvature_formulas.hpp"
#include "levelcurv/error.hpp"

namespace levelcurv {

namespace {

void require_gradient(const Vec& grad) {
  const double norm = grad.norm();
  if (!(norm >= kGradientFloor)) {
    std::ostringstream msg;
    msg << "|grad u| = " << norm << " is below the floor " << kGradientFloor;
    throw Error(ErrorKind::GradientTooSmall, msg.str());
  }
}

void require_chart(const Vec& grad) {
  if (grad(grad.size() - 1) == 0.0)
    throw Error(ErrorKind::DegenerateChart, "u_n = 0; align the frame or re-chart");
}

}  // namespace

LevelSetFrame align_frame(const Jet& jet, bool diagonalize_tangential) {
  require_gradient(jet.grad);
  const int n = jet.dim();
  const int last = n - 1;
  Mat q = Mat::Identity(n, n);
  Vec g = jet.grad;
  for (int k = 0; k < last; ++k) {
    const double r = std::hypot(g(k), g(last));
    if (r == 0.0) continue;
    const double c = g(last) / r;
    const double s = g(k) / r;
    // rows k and last of G: [c, -s; s, c] acting on (g_k, g_last)
    Mat gk = Mat::Identity(n, n);
    gk(k, k) = c;
    gk(k, last) = -s;
    gk(last, k) = s;
    gk(last, last) = c;
    q = gk * q;
    g(k) = 0.0;
    g(last) = r;
  }
  if (g(last) < 0.0) {
    // only possible for n == 1, which the library never builds
    q = -q;
    g = -g;
  }

  if (diagonalize_tangential && n > 1) {
    Jet tmp = rotate_jet(jet, q);
    const SymmetricEigen eig = jacobi_eigen(tmp.hess.topLeftCorner(last, last));
    Mat v = eig.vectors;
    if (v.determinant() < 0.0) v.col(0) = -v.col(0);
    Mat p = Mat::Identity(n, n);
    p.topLeftCorner(last, last) = v.transpose();
    q = p * q;
  }

  LevelSetFrame frame{q, rotate_jet(jet, q)};
  frame.aligned.grad.head(last).setZero();
  frame.aligned.grad(last) = jet.grad.norm();
  return frame;
}

Vec level_set_normal(const Vec& grad) {
  require_gradient(grad);
  require_chart(grad);
  const double un = grad(grad.size() - 1);
  return (std::abs(un) / (grad.norm() * un)) * grad;
}

Mat second_fundamental_h(const Jet& jet) {
  require_chart(jet.grad);
  return level_set_h<double>(jet.grad, jet.hess);
}

Mat graph_curvature_matrix(const Vec& v_grad, const Mat& v_hess) {
  return graph_curvature_terms<double>(v_grad, v_hess);
}

Orientation orientation_for(const Mat& a_signed) {
  if (a_signed.size() == 0) return Orientation::AsComputed;
  const Vec ev = symmetric_eigenvalues(a_signed);
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (lo < 0.0 && hi <= 1e-12 * std::abs(lo)) return Orientation::Flipped;
  return Orientation::AsComputed;
}

CurvatureData curvature_matrix(const Jet& jet, ChartMode mode) {
  require_gradient(jet.grad);
  CurvatureData out;
  out.mode = mode;

  const Jet* chart_jet = &jet;
  LevelSetFrame frame;
  if (mode == ChartMode::Aligned) {
    frame = align_frame(jet);
    chart_jet = &frame.aligned;
    out.frame = frame.rotation;
    out.normal = jet.grad / jet.grad.norm();
  } else {
    require_chart(jet.grad);
    out.normal = level_set_normal(jet.grad);
  }

  const CurvatureTerms<double> terms =
      level_set_curvature_terms<double>(chart_jet->grad, chart_jet->hess);
  out.W = terms.W;
  out.h = terms.h;
  out.A = terms.A;
  out.B = terms.B;
  out.C = terms.C;
  out.a_signed = terms.a;
  out.orientation = orientation_for(out.a_signed);
  out.a = out.sign() * out.a_signed;
  out.principal = symmetric_eigenvalues(out.a);
  out.gauss = determinant<double>(out.a);
  return out;
}

std::string to_string(Convexity c) {
  switch (c) {
    case Convexity::StrictlyConvex: return "StrictlyConvex";
    case Convexity::Convex: return "Convex";
    case Convexity::NonConvex: return "NonConvex";
  }
  return "Unknown";
}

Convexity convexity_from_principal(const Vec& k, double tol) {
  const double kmin = k.minCoeff();
  const double kmax = k.maxCoeff();
  const double kabs = k.cwiseAbs().maxCoeff();
  if (kmin > tol * std::max(1.0, kmax)) return Convexity::StrictlyConvex;
  if (kmin >= -tol * std::max(1.0, kabs)) return Convexity::Convex;
  return Convexity::NonConvex;
}

Convexity convexity_classify(const Mat& a, double tol) {
  return convexity_from_principal(symmetric_eigenvalues(a), tol);
}

double TestFunctionSpec::rho(double t) const {
  if (kind_ == Kind::MinimalTheta) return param_ * (std::log(t) - std::log1p(t));
  return 0.5 * param_ * std::log(t);
}

double TestFunctionSpec::rho_prime(double t) const {
  if (kind_ == Kind::MinimalTheta) return param_ / (t * (1.0 + t));
  return 0.5 * param_ / t;
}

double TestFunctionSpec::rho_second(double t) const {
  if (kind_ == Kind::MinimalTheta) return param_ * (1.0 / ((1.0 + t) * (1.0 + t)) - 1.0 / (t * t));
  return -0.5 * param_ / (t * t);
}

double TestFunctionSpec::weight(double t) const {
  if (kind_ == Kind::MinimalTheta) return std::pow(t / (1.0 + t), param_);
  return std::pow(t, 0.5 * param_);
}

std::string TestFunctionSpec::describe() const {
  std::ostringstream s;
  if (kind_ == Kind::MinimalTheta)
    s << "minimal-theta(" << param_ << ")";
  else
    s << "poisson-power(" << param_ << ")";
  return s.str();
}

double weighted_curvature(const TestFunctionSpec& spec, double grad_norm_sq, double gauss) {
  if (!(grad_norm_sq > 0.0))
    throw Error(ErrorKind::GradientTooSmall, "weighted curvature needs |grad u|^2 > 0");
  return spec.weight(grad_norm_sq) * gauss;
}

double log_weighted_curvature(const TestFunctionSpec& spec, double grad_norm_sq, double gauss) {
  if (!(grad_norm_sq > 0.0))
    throw Error(ErrorKind::GradientTooSmall, "log weighted curvature needs |grad u|^2 > 0");
  if (!(gauss > 0.0))
    throw Error(ErrorKind::NonpositiveCurvature, "log K requested with K <= 0");
  return spec.rho(grad_norm_sq) + std::log(gauss);
}

CatenoidValues catenoid_oracle(int n, double r) {
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "catenoid needs n >= 2");
  if (!(r > 1.0)) throw Error(ErrorKind::OutOfDomain, "catenoid profile needs r > 1");
  const double m = n - 1;
  const double denom = std::pow(r, 2.0 * m) - 1.0;
  CatenoidValues v{};
  v.grad_norm_sq = 1.0 / denom;
  v.gauss = std::pow(r, -m);
  v.u_prime = 1.0 / std::sqrt(denom);
  v.psi_minus_half = weighted_curvature(TestFunctionSpec::minimal_theta(-0.5), v.grad_norm_sq, v.gauss);
  return v;
}

}  // namespace levelcurv
