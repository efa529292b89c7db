#include "levelcurv/jet_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "levelcurv/curvature_formulas.hpp"
#include "levelcurv/dual.hpp"
#include "levelcurv/error.hpp"

namespace levelcurv {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double symmetric_uniform(std::mt19937_64& rng) { return 2.0 * unit_uniform(rng) - 1.0; }

const Tensor3& require_third(const Jet& jet) {
  if (!jet.third) throw Error(ErrorKind::InvalidInstance, "jet lacks third derivatives");
  return *jet.third;
}

/// Gradient and Hessian of u as dual numbers carrying their derivative along axis k.
void dual_jet(const Jet& jet, int k, VecT<Dual>& g, MatT<Dual>& h) {
  const int n = jet.dim();
  const Tensor3& t = require_third(jet);
  g.resize(n);
  h.resize(n, n);
  for (int i = 0; i < n; ++i) {
    g(i) = Dual(jet.grad(i), jet.hess(i, k));
    for (int j = 0; j < n; ++j) h(i, j) = Dual(jet.hess(i, j), t(i, j, k));
  }
}

Jet aligned_jet(const PolyField& field, const Vec& point, bool diagonalize = false) {
  return align_frame(field.jet(point, 3), diagonalize).aligned;
}

double asymmetry(const std::vector<Mat>& d, int m) {
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        worst = std::max(worst, std::abs(d[k](i, j) - d[j](i, k)));
        worst = std::max(worst, std::abs(d[k](i, j) - d[i](k, j)));
      }
  return worst;
}

void validate(const QuadraticBoundInstance& inst) {
  if (!(inst.lambda >= 0.0) || !std::isfinite(inst.lambda))
    throw Error(ErrorKind::InvalidInstance, "lambda must be finite and >= 0");
  if (!std::isfinite(inst.mu)) throw Error(ErrorKind::InvalidInstance, "mu must be finite");
  if (inst.b.size() == 0 || inst.b.size() != inst.c.size())
    throw Error(ErrorKind::InvalidInstance, "b and c must be nonempty and of equal length");
  for (Eigen::Index i = 0; i < inst.b.size(); ++i) {
    if (!(inst.b(i) > 0.0) || !std::isfinite(inst.b(i)))
      throw Error(ErrorKind::InvalidInstance, "every b_i must be finite and positive");
    if (!std::isfinite(inst.c(i))) throw Error(ErrorKind::InvalidInstance, "c_i must be finite");
  }
}

}  // namespace

TestField random_test_jet(std::uint64_t seed, int n, bool require_strictly_convex) {
  if (n < 2 || n > 4) {
    std::ostringstream msg;
    msg << "random test fields support n in {2,3,4}, got " << n;
    throw Error(ErrorKind::UnsupportedDimension, msg.str());
  }
  std::mt19937_64 rng(seed);
  const auto monomials = PolyField::monomials(n, PolyField::kMaxDegree);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PolyField f(n);
    for (const auto& alpha : monomials) f.set(alpha, symmetric_uniform(rng));
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = 0.5 * symmetric_uniform(rng);
    const Jet j = f.jet(x, 2);
    if (j.grad.norm() < 0.1) continue;
    const CurvatureData cd = curvature_matrix(j);
    if (std::abs(determinant<double>(cd.a_signed)) < 1e-4) continue;
    if (require_strictly_convex && convexity_classify(cd.a) != Convexity::StrictlyConvex) continue;
    return {std::move(f), std::move(x)};
  }
  throw Error(ErrorKind::ExhaustedResampling, "no admissible random field after 1000 attempts");
}

CurvatureDerivatives curvature_derivatives(const Jet& aligned) {
  const int n = aligned.dim();
  require_third(aligned);
  CurvatureDerivatives out;
  out.a = level_set_curvature_terms<double>(aligned.grad, aligned.hess).a;
  out.sigma1 = out.a.trace();
  VecT<Dual> g;
  MatT<Dual> h;
  for (int k = 0; k < n; ++k) {
    dual_jet(aligned, k, g, h);
    const MatT<Dual> a = level_set_curvature_terms<Dual>(g, h).a;
    out.a_k.push_back(a.unaryExpr([](const Dual& d) { return d.d; }));
  }
  return out;
}

std::vector<Mat> codazzi_closed_form(const Jet& aligned) {
  const int n = aligned.dim();
  const int m = n - 1;
  const Tensor3& t = require_third(aligned);
  const Mat& h = aligned.hess;
  const double un = aligned.grad(m);
  std::vector<Mat> out(static_cast<std::size_t>(m), Mat::Zero(m, m));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out[static_cast<std::size_t>(k)](i, j) =
            -t(i, j, k) / un +
            (h(i, j) * h(k, m) + h(i, k) * h(j, m) + h(j, k) * h(i, m)) / (un * un);
  return out;
}

CodazziReport codazzi_report(const PolyField& field, const Vec& point) {
  const Jet aligned = aligned_jet(field, point);
  const int m = aligned.dim() - 1;
  const std::vector<Mat> closed = codazzi_closed_form(aligned);
  const CurvatureDerivatives diff = curvature_derivatives(aligned);
  CodazziReport r;
  r.closed_form_asymmetry = asymmetry(closed, m);
  r.differentiated_asymmetry = asymmetry(diff.a_k, m);
  for (int k = 0; k < m; ++k)
    r.route_gap = std::max(
        r.route_gap, (closed[static_cast<std::size_t>(k)] - diff.a_k[static_cast<std::size_t>(k)])
                         .cwiseAbs()
                         .maxCoeff());
  return r;
}

double codazzi_residual(const PolyField& field, const Vec& point) {
  return codazzi_report(field, point).residual();
}

double phi_gradient_identity_residual(const PolyField& field, const Vec& point,
                                      const TestFunctionSpec& spec) {
  const Jet aligned = aligned_jet(field, point);
  const int n = aligned.dim();
  const CurvatureDerivatives cd = curvature_derivatives(aligned);
  const double sign = orientation_for(cd.a) == Orientation::Flipped ? -1.0 : 1.0;
  const Mat a = sign * cd.a;
  if (convexity_classify(a) != Convexity::StrictlyConvex)
    throw Error(ErrorKind::NonpositiveCurvature, "curvature matrix is not positive definite");
  const Mat a_inv = a.inverse();
  const double t = aligned.grad.squaredNorm();

  double worst = 0.0;
  VecT<Dual> g;
  MatT<Dual> h;
  for (int alpha = 0; alpha < n; ++alpha) {
    dual_jet(aligned, alpha, g, h);
    const MatT<Dual> ad = Dual(sign) * level_set_curvature_terms<Dual>(g, h).a;
    const Dual logdet = log(determinant<Dual>(ad));
    const Dual td = g.squaredNorm();
    const double lhs = logdet.d + spec.rho_prime(td.v) * td.d;

    double grad_t = 0.0;
    for (int beta = 0; beta < n; ++beta)
      grad_t += 2.0 * aligned.grad(beta) * aligned.hess(beta, alpha);
    const double rhs = (a_inv * (sign * cd.a_k[static_cast<std::size_t>(alpha)])).trace() +
                       spec.rho_prime(t) * grad_t;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double uiia_residual(const PolyField& field, const Vec& point) {
  const Jet aligned = aligned_jet(field, point);
  const int n = aligned.dim();
  const int m = n - 1;
  const CurvatureDerivatives cd = curvature_derivatives(aligned);
  const Tensor3& t = *aligned.third;
  const Mat& h = aligned.hess;
  const double un = aligned.grad(m);
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int al = 0; al < n; ++al) {
      const double rhs = -un * cd.a_k[static_cast<std::size_t>(al)](i, i) +
                         2.0 * h(m, i) * h(i, al) / un - h(m, al) * cd.a(i, i);
      worst = std::max(worst, std::abs(t(i, i, al) - rhs));
    }
  return worst;
}

QuadraticBound lemma_quadratic_bound(const QuadraticBoundInstance& inst) {
  validate(inst);
  const Vec inv_b = inst.b.cwiseInverse();
  const double s_cc = inst.c.cwiseProduct(inst.c).dot(inv_b);
  const double s_c = inst.c.dot(inv_b);
  const double s_1 = inv_b.sum();
  QuadraticBound out;
  out.gamma = s_cc - inst.lambda / (1.0 + inst.lambda * s_1) * s_c * s_c;
  out.bound = 4.0 * inst.mu * inst.mu * out.gamma;
  return out;
}

double quadratic_form_value(const QuadraticBoundInstance& inst, const Vec& x) {
  const double s = x.sum();
  return -inst.b.dot(x.cwiseProduct(x)) - inst.lambda * s * s + 4.0 * inst.mu * inst.c.dot(x);
}

QuadraticBoundInstance random_quadratic_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int m = 1 + std::min(5, static_cast<int>(6.0 * unit_uniform(rng)));
  QuadraticBoundInstance inst;
  inst.lambda = 3.0 * unit_uniform(rng);
  inst.mu = 2.0 * symmetric_uniform(rng);
  inst.b.resize(m);
  inst.c.resize(m);
  for (int i = 0; i < m; ++i) {
    inst.b(i) = 0.1 + 4.9 * unit_uniform(rng);
    inst.c(i) = 3.0 * symmetric_uniform(rng);
  }
  return inst;
}

QuadraticMaximum maximize_quadratic_form(const QuadraticBoundInstance& inst) {
  validate(inst);
  const Eigen::Index m = inst.b.size();
  QuadraticMaximum out;
  const double scale = inst.b.maxCoeff() + inst.lambda * static_cast<double>(m);
  if (inst.b.minCoeff() > 1e-12 * scale) {
    // -grad Q / 2 = (diag(b) + lambda 1 1^T) X - 2 mu c
    Mat sys = inst.b.asDiagonal();
    sys.array() += inst.lambda;
    out.argmax = sys.ldlt().solve(2.0 * inst.mu * inst.c);
    out.value = quadratic_form_value(inst, out.argmax);
    return out;
  }

  out.grid_search = true;
  const int per_axis = std::max(3, static_cast<int>(std::pow(2.0e5, 1.0 / static_cast<double>(m))));
  Vec centre = Vec::Zero(m);
  double half = 10.0;
  out.value = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < 40; ++round) {
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    Vec best = centre;
    while (true) {
      Vec x(m);
      for (Eigen::Index k = 0; k < m; ++k)
        x(k) = std::clamp(centre(k) - half + 2.0 * half * idx[static_cast<std::size_t>(k)] / (per_axis - 1),
                          -10.0, 10.0);
      const double q = quadratic_form_value(inst, x);
      if (q > out.value) {
        out.value = q;
        best = x;
      }
      Eigen::Index k = 0;
      while (k < m && ++idx[static_cast<std::size_t>(k)] == per_axis) idx[static_cast<std::size_t>(k++)] = 0;
      if (k == m) break;
    }
    centre = best;
    half *= 2.0 / (per_axis - 1);
  }
  out.argmax = centre;
  return out;
}

PhiJet phi_first_order(const ClosedFormField& supplier, const Vec& x0, const Mat& r, const Vec& y,
                       const TestFunctionSpec& spec) {
  const Jet jet = rotate_jet(supplier.jet(x0 + r * y, 3), r.transpose());
  const int n = jet.dim();
  if (jet.grad.norm() < kGradientFloor)
    throw Error(ErrorKind::GradientTooSmall, "gradient below floor near the check point");
  if (jet.grad(n - 1) == 0.0) throw Error(ErrorKind::DegenerateChart, "u_n = 0 near the check point");
  const Mat a = level_set_curvature_terms<double>(jet.grad, jet.hess).a;
  const double det = determinant<double>(a);
  if (!(det > 0.0))
    throw Error(ErrorKind::NonpositiveCurvature, "det a <= 0 in the aligned chart");
  const double t = jet.grad.squaredNorm();
  PhiJet out;
  out.phi = spec.rho(t) + std::log(det);
  out.grad_phi.resize(n);
  VecT<Dual> g;
  MatT<Dual> h;
  for (int k = 0; k < n; ++k) {
    dual_jet(jet, k, g, h);
    const Dual logdet = log(determinant<Dual>(level_set_curvature_terms<Dual>(g, h).a));
    const Dual td = g.squaredNorm();
    out.grad_phi(k) = logdet.d + spec.rho_prime(t) * td.d;
  }
  return out;
}

namespace {

Mat phi_hessian(const ClosedFormField& supplier, const Vec& x0, const Mat& r,
                const TestFunctionSpec& spec, double step) {
  static constexpr double kWeights[7] = {-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0};
  const int n = supplier.dim();
  Mat hess = Mat::Zero(n, n);
  for (int beta = 0; beta < n; ++beta) {
    Vec col = Vec::Zero(n);
    for (int s = -3; s <= 3; ++s) {
      if (s == 0) continue;
      Vec y = Vec::Zero(n);
      y(beta) = s * step;
      col += kWeights[s + 3] * phi_first_order(supplier, x0, r, y, spec).grad_phi;
    }
    hess.col(beta) = col / (60.0 * step);
  }
  return 0.5 * (hess + hess.transpose());
}

}  // namespace

MasterIdentityResult minimal_master_identity(const ClosedFormField& supplier, const Vec& point,
                                             double theta, double step) {
  const int n = supplier.dim();
  const int m = n - 1;
  const Jet jet0 = supplier.jet(point, 3);
  if (jet0.grad.norm() < kGradientFloor)
    throw Error(ErrorKind::GradientTooSmall, "gradient below floor at the check point");

  MasterIdentityResult out;
  const double t0 = jet0.grad.squaredNorm();
  out.equation_residual =
      (1.0 + t0) * jet0.hess.trace() - jet0.grad.dot(jet0.hess * jet0.grad);
  if (std::abs(out.equation_residual) > 1e-8) {
    std::ostringstream msg;
    msg << "minimal surface residual " << out.equation_residual << " exceeds 1e-8";
    throw Error(ErrorKind::NotAMinimalJet, msg.str());
  }

  const LevelSetFrame frame = align_frame(jet0, true);
  const Mat r = frame.rotation.transpose();
  const Jet& aj = frame.aligned;
  const TestFunctionSpec spec = TestFunctionSpec::minimal_theta(theta);

  if (step <= 0.0) {
    const double hnorm = aj.hess.norm();
    const double len = hnorm > 0.0 ? std::clamp(aj.grad.norm() / hnorm, 1e-3, 1.0) : 1.0;
    step = 1e-2 * len;
  }
  out.step = step;

  out.curvature = curvature_derivatives(aj);
  const CurvatureDerivatives& cd = out.curvature;
  const Vec diag_a = cd.a.diagonal();
  out.phi = phi_first_order(supplier, point, r, Vec::Zero(n), spec);
  out.phi.hess_phi = phi_hessian(supplier, point, r, spec, step);
  const Mat hess_half = phi_hessian(supplier, point, r, spec, 0.5 * step);

  const double un = aj.grad(m);
  const double un2 = un * un;
  const double tt = un2;
  const double rp = spec.rho_prime(tt);
  const double rpp = spec.rho_second(tt);
  const double dn = static_cast<double>(n);
  const Vec ai = diag_a.cwiseInverse();
  const double s1 = cd.sigma1;
  const Vec uni = aj.hess.row(m).head(m).transpose();
  const Vec& dphi = out.phi.grad_phi;
  auto da = [&](int i, int j, int k) { return cd.a_k[static_cast<std::size_t>(k)](i, j); };

  double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
  for (int i = 0; i < m; ++i) {
    t3 += da(i, i, m);
    for (int j = 0; j < m; ++j) {
      t2 += ai(i) * ai(j) * da(i, j, m) * da(i, j, m);
      t4 += ai(i) * uni(i) * da(j, j, i);
      for (int k = 0; k < m; ++k) t1 += ai(i) * ai(j) * da(i, j, k) * da(i, j, k);
    }
  }
  t1 *= -(1.0 + un2);
  t2 = -t2;
  t3 *= 4.0;
  t4 *= 4.0 / un;
  const double sum_a2 = diag_a.squaredNorm();
  const double sum_uni2 = uni.squaredNorm();
  const double t5 = ((2.0 * rp * un2 - dn - 1.0) + (2.0 * rp * un2 - dn + 1.0) * un2) * sum_a2;
  const double t6 = ((6.0 * rp * un2 + 4.0 * rpp * un2 * un2) +
                     (8.0 * rp * un2 + 4.0 * rpp * un2 * un2 - dn + 3.0) / un2) *
                    sum_uni2;
  const double w = (1.0 + un2) * (1.0 + un2);
  const double t7 = (4.0 * rpp * un2 * un2 * w + 6.0 * rp * un2 * w + 2.0) * s1 * s1;
  const double t8 = -2.0 / un2 * s1 * ai.dot(uni.cwiseProduct(uni));
  const double t9 = -2.0 / un * uni.dot(dphi.head(m)) - 2.0 * s1 * dphi(m);
  out.rhs = t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8 + t9;

  const Mat f = (1.0 + un2) * Mat::Identity(n, n) - aj.grad * aj.grad.transpose();
  out.lhs = f.cwiseProduct(out.phi.hess_phi).sum();
  out.residual = std::abs(out.lhs - out.rhs);
  out.residual_half_step = std::abs(f.cwiseProduct(hess_half).sum() - out.rhs);
  return out;
}

double minimal_master_identity_residual(const ClosedFormField& supplier, const Vec& point,
                                        double theta, double step) {
  return minimal_master_identity(supplier, point, theta, step).residual;
}

}  // namespace levelcurv
