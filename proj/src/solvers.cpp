#include "levelcurv/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/error.hpp"
#include "levelcurv/kernels.hpp"

namespace levelcurv {

std::string to_string(EquationKind e) {
  return e == EquationKind::MinimalSurface ? "minimal-surface" : "semilinear";
}

// ---------------------------------------------------------------- radial

namespace {

double flux_integral(int n, double c, double r0, double r1) {
  if (c == 0.0 || r1 <= r0) return 0.0;
  const double m = n - 1;
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double s) {
    const double d = std::pow(s, 2.0 * m) - c * c;
    return d > 0.0 ? c / std::sqrt(d) : 0.0;
  };
  return integrator.integrate(f, r0, r1, 1e-15);
}

/// Same integral on a short piece away from the throat, where the integrand is smooth.
double flux_piece(int n, double c, double r0, double r1) {
  if (c == 0.0) return 0.0;
  const double m = n - 1;
  auto f = [&](double s) { return c / std::sqrt(std::pow(s, 2.0 * m) - c * c); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, r0, r1, 0);
}

void check_radial_args(int n, double a, double b, int samples) {
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "radial problems need n >= 2");
  if (!(a > 0.0 && b > a) || !std::isfinite(b))
    throw Error(ErrorKind::InvalidInstance, "radial ring needs 0 < a < b");
  if (samples < 5) throw Error(ErrorKind::InvalidInstance, "radial solver needs at least 5 samples");
}

std::vector<double> uniform_radii(double a, double b, int samples) {
  std::vector<double> r(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) r[static_cast<std::size_t>(k)] = a + (b - a) * k / (samples - 1);
  r.back() = b;
  return r;
}

std::vector<double> difference_derivative(const std::vector<double>& r, const std::vector<double>& u) {
  const std::size_t n = u.size();
  const double h = r[1] - r[0];
  std::vector<double> d(n);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (u[k + 1] - u[k - 1]) / (2.0 * h);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return d;
}

}  // namespace

double RadialSolution::profile_prime(double r) const {
  if (equation != EquationKind::MinimalSurface)
    throw Error(ErrorKind::InvalidInstance, "closed-form profile exists only for minimal solutions");
  if (flux == 0.0) return 0.0;
  const double m = n - 1;
  return sign * flux / std::sqrt(std::pow(r, 2.0 * m) - flux * flux);
}

double RadialSolution::profile_value(double r) const {
  if (equation != EquationKind::MinimalSurface)
    throw Error(ErrorKind::InvalidInstance, "closed-form profile exists only for minimal solutions");
  return u_a + sign * flux_integral(n, flux, a, r);
}

Jet RadialSolution::profile_jet(const Vec& x, int order) const {
  if (equation != EquationKind::MinimalSurface)
    throw Error(ErrorKind::InvalidInstance, "closed-form profile exists only for minimal solutions");
  if (flux == 0.0) {
    Jet j;
    j.grad = Vec::Zero(n);
    j.hess = Mat::Zero(n, n);
    if (order >= 3) j.third = Tensor3(n);
    return j;
  }
  return RadialMinimalField(n, flux, sign).jet(x, order);
}

RadialSolution solve_minimal_radial(int n, double a, double b, double u_a, double u_b, int samples) {
  check_radial_args(n, a, b, samples);
  RadialSolution sol;
  sol.n = n;
  sol.a = a;
  sol.b = b;
  sol.u_a = u_a;
  sol.u_b = u_b;
  sol.equation = EquationKind::MinimalSurface;
  sol.r = uniform_radii(a, b, samples);
  sol.h = (b - a) / (samples - 1);

  const double delta = u_b - u_a;
  const double target = std::abs(delta);
  sol.sign = delta < 0.0 ? -1.0 : 1.0;
  const double m = n - 1;
  if (target > 0.0) {
    const double c_max = std::pow(a, m);
    const double i_max = flux_integral(n, c_max, a, b);
    if (!(target < i_max)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "|u_b - u_a| = " << target << " needs flux >= a^(n-1); largest attainable jump is " << i_max;
      throw Error(ErrorKind::NoSolution, msg.str());
    }
    double lo = 0.0;
    double hi = c_max;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double val = flux_integral(n, mid, a, b);
      ++sol.iterations;
      if (val < target)
        lo = mid;
      else
        hi = mid;
      if (std::abs(val - target) <= 1e-14 * std::max(1.0, target)) {
        lo = hi = mid;
        break;
      }
    }
    sol.flux = 0.5 * (lo + hi);
  }

  sol.u.resize(sol.r.size());
  sol.u_prime.resize(sol.r.size());
  double acc = u_a;
  sol.u[0] = u_a;
  for (std::size_t k = 1; k < sol.r.size(); ++k) {
    const double piece = k == 1 ? flux_integral(n, sol.flux, sol.r[0], sol.r[1])
                                : flux_piece(n, sol.flux, sol.r[k - 1], sol.r[k]);
    acc += sol.sign * piece;
    sol.u[k] = acc;
  }
  double worst = std::abs(sol.u.back() - u_b);
  for (std::size_t k = 0; k < sol.r.size(); ++k) {
    const double r = sol.r[k];
    if (sol.flux == 0.0) {
      sol.u_prime[k] = 0.0;
      continue;
    }
    if (k == 0 && sol.flux >= std::pow(r, m)) {
      sol.u_prime[k] = sol.sign * std::numeric_limits<double>::infinity();
      continue;
    }
    const RadialMinimalField field(n, sol.flux, sol.sign);
    const double up = field.profile_prime(r);
    const double upp = field.profile_second(r);
    sol.u_prime[k] = up;
    worst = std::max(worst, std::abs(upp + m * up * (1.0 + up * up) / r));
  }
  sol.residual_norm = worst;
  return sol;
}

RadialSolution solve_semilinear_radial(int n, double a, double b, double u_a, double u_b,
                                       const SemilinearRHS& rhs, int samples, SolverOptions options) {
  check_radial_args(n, a, b, samples);
  RadialSolution sol;
  sol.n = n;
  sol.a = a;
  sol.b = b;
  sol.u_a = u_a;
  sol.u_b = u_b;
  sol.equation = EquationKind::Semilinear;
  sol.rhs = rhs;
  sol.r = uniform_radii(a, b, samples);
  sol.h = (b - a) / (samples - 1);
  const std::size_t nn = sol.r.size();
  const double m = n - 1;

  std::vector<Vec> x(nn, Vec::Zero(n));
  for (std::size_t k = 0; k < nn; ++k) x[k](0) = sol.r[k];

  // transmissibilities between nodes and control-volume measures
  std::vector<double> trans(nn - 1), vol(nn);
  for (std::size_t k = 0; k + 1 < nn; ++k) {
    const double r0 = sol.r[k], r1 = sol.r[k + 1];
    const double inv = n == 2 ? std::log(r1 / r0) : (std::pow(r0, 1.0 - m) - std::pow(r1, 1.0 - m)) / (m - 1.0);
    trans[k] = 1.0 / inv;
  }
  for (std::size_t k = 0; k < nn; ++k) {
    const double lo = k == 0 ? sol.r[0] : 0.5 * (sol.r[k - 1] + sol.r[k]);
    const double hi = k + 1 == nn ? sol.r[nn - 1] : 0.5 * (sol.r[k] + sol.r[k + 1]);
    vol[k] = (std::pow(hi, m + 1.0) - std::pow(lo, m + 1.0)) / (m + 1.0);
  }

  std::vector<double>& u = sol.u;
  u.resize(nn);
  for (std::size_t k = 0; k < nn; ++k) u[k] = u_a + (u_b - u_a) * (sol.r[k] - a) / (b - a);

  // f must not depend on the direction of x
  Vec probe = Vec::Zero(n);
  for (std::size_t k = 0; k < nn; k += std::max<std::size_t>(1, nn / 16)) {
    probe.setZero();
    probe(1) = sol.r[k];
    const double f1 = rhs(x[k], u[k]);
    const double f2 = rhs(probe, u[k]);
    if (std::abs(f1 - f2) > 1e-12 * std::max(1.0, std::abs(f1)))
      throw Error(ErrorKind::ConfigError, "radial solver needs a radially symmetric right-hand side");
  }

  std::vector<double> res(nn, 0.0), lower(nn), diag(nn), upper(nn), rhs_vec(nn);
  auto residual = [&]() {
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < nn; ++k) {
      const double flux = trans[k] * (u[k + 1] - u[k]) - trans[k - 1] * (u[k] - u[k - 1]);
      res[k] = (flux - vol[k] * rhs(x[k], u[k])) / (trans[k] + trans[k - 1]);
      worst = std::max(worst, std::abs(res[k]));
    }
    return worst;
  };

  double norm = residual();
  int it = 0;
  while (norm >= options.tol) {
    if (it >= options.max_iter) {
      std::ostringstream msg;
      msg << "radial Newton stopped after " << it << " steps with residual " << norm;
      throw Error(ErrorKind::DidNotConverge, msg.str());
    }
    // Jacobian of the scaled residual, tridiagonal in the interior unknowns
    for (std::size_t k = 1; k + 1 < nn; ++k) {
      const double s = trans[k] + trans[k - 1];
      lower[k] = trans[k - 1] / s;
      upper[k] = trans[k] / s;
      diag[k] = (-(trans[k] + trans[k - 1]) - vol[k] * rhs.f_u(x[k], u[k])) / s;
      rhs_vec[k] = -res[k];
    }
    // Thomas algorithm over k = 1..nn-2
    for (std::size_t k = 2; k + 1 < nn; ++k) {
      const double w = lower[k] / diag[k - 1];
      diag[k] -= w * upper[k - 1];
      rhs_vec[k] -= w * rhs_vec[k - 1];
    }
    std::vector<double> delta(nn, 0.0);
    for (std::size_t k = nn - 2; k >= 1; --k) {
      const double next = k + 2 < nn ? delta[k + 1] : 0.0;
      delta[k] = (rhs_vec[k] - upper[k] * next) / diag[k];
      if (k == 1) break;
    }
    const std::vector<double> base = u;
    double step = 1.0;
    double trial = norm;
    for (int halving = 0; halving < 30; ++halving) {
      for (std::size_t k = 1; k + 1 < nn; ++k) u[k] = base[k] + step * delta[k];
      trial = residual();
      if (trial < norm || trial < options.tol) break;
      step *= 0.5;
    }
    norm = trial;
    ++it;
  }
  sol.iterations = it;
  sol.residual_norm = norm;
  sol.u_prime = difference_derivative(sol.r, u);
  return sol;
}

// ---------------------------------------------------------------- boundary data

std::function<double(const Vec2&)> named_boundary_function(const std::string& name,
                                                           const RingDomain2D& domain) {
  const Vec2 c = domain.centre();
  if (name == "catenoid")
    return [c](const Vec2& x) {
      const double r = (x - c).norm();
      if (!(r >= 1.0)) throw Error(ErrorKind::OutOfDomain, "catenoid data need |x - c| >= 1");
      return std::acosh(r);
    };
  if (name == "harmonic-annulus") {
    const ConicCurve& o = domain.outer();
    const ConicCurve& in = domain.inner();
    if (!o.is_circle() || !in.is_circle() || (o.centre - c).norm() > 0.0 || (in.centre - c).norm() > 0.0)
      throw Error(ErrorKind::ConfigError, "harmonic-annulus data need concentric circles");
    const double r0 = o.semi_a;
    const double r1 = in.semi_a;
    return [c, r0, r1](const Vec2& x) { return std::log(r0 / (x - c).norm()) / std::log(r0 / r1); };
  }
  const std::string prefix = "constant:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string tail = name.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size() || !std::isfinite(v))
      throw Error(ErrorKind::ConfigError, "bad constant in boundary data '" + name + "'");
    return [v](const Vec2&) { return v; };
  }
  throw Error(ErrorKind::ConfigError, "unknown boundary data '" + name + "'");
}

BoundaryData named_boundary_data(const std::string& outer, const std::string& inner,
                                 const RingDomain2D& domain) {
  return {outer, inner, named_boundary_function(outer, domain), named_boundary_function(inner, domain)};
}

BoundaryData sampled_boundary_data(std::vector<double> outer, std::vector<double> inner,
                                   const RingDomain2D& domain) {
  if (outer.size() < 3 || inner.size() < 3)
    throw Error(ErrorKind::ConfigError, "sampled boundary data need at least 3 values per side");
  auto interp = [domain](std::vector<double> v) {
    return [domain, v = std::move(v)](const Vec2& x) {
      const double t = domain.to_computational(x)(1);
      const double pos = t / (2.0 * std::numbers::pi) * static_cast<double>(v.size());
      const auto k0 = static_cast<std::size_t>(std::floor(pos)) % v.size();
      const std::size_t k1 = (k0 + 1) % v.size();
      const double w = pos - std::floor(pos);
      return (1.0 - w) * v[k0] + w * v[k1];
    };
  };
  return {"sampled", "sampled", interp(std::move(outer)), interp(std::move(inner))};
}

// ---------------------------------------------------------------- grid solver

namespace {

class GridProblem {
 public:
  GridProblem(const RingDomain2D& domain, EquationKind eq, const SemilinearRHS* rhs)
      : d_(domain), eq_(eq), rhs_(rhs), ns_(domain.ns()), nt_(domain.nt()) {
    const std::size_t nt = static_cast<std::size_t>(nt_);
    coef_.resize(static_cast<std::size_t>(ns_) * 25 * nt);
    for (int i = 0; i < ns_; ++i)
      for (int j = 0; j < nt_; ++j) {
        const auto& c = d_.metric(i, j).to_cartesian;
        for (int m = 0; m < 5; ++m)
          for (int l = 0; l < 5; ++l)
            coef_[static_cast<std::size_t>(i) * 25 * nt + static_cast<std::size_t>(m * 5 + l) * nt +
                  static_cast<std::size_t>(j)] = c(m, l);
      }
    const std::size_t total = static_cast<std::size_t>(ns_) * nt;
    for (auto* v : {&ds_, &dt_, &dss_, &dst_, &dtt_, &ux_, &uy_, &uxx_, &uxy_, &uyy_, &res_}) v->assign(total, 0.0);
    steps_ = {1.0 / (2.0 * d_.hs()), 1.0 / (d_.hs() * d_.hs()), 1.0 / (2.0 * d_.ht()),
              1.0 / (d_.ht() * d_.ht()), 1.0 / (4.0 * d_.hs() * d_.ht())};
  }

  int unknowns() const { return (ns_ - 2) * nt_; }
  int unknown(int i, int j) const { return (i - 1) * nt_ + j; }

  /// Fills derivative planes and the residual on interior rows; returns its max-norm.
  double evaluate(const std::vector<double>& u) {
    const std::size_t nt = static_cast<std::size_t>(nt_);
    double worst = 0.0;
    for (int i = 1; i + 1 < ns_; ++i) {
      const std::size_t off = static_cast<std::size_t>(i) * nt;
      const kernels::RowDerivatives rd{ds_.data() + off, dt_.data() + off, dss_.data() + off,
                                       dst_.data() + off, dtt_.data() + off};
      kernels::stencil_row(u.data() + off - nt, u.data() + off, u.data() + off + nt, nt, steps_, rd);
      kernels::to_cartesian_row(coef_.data() + off * 25, rd, nt,
                                {ux_.data() + off, uy_.data() + off, uxx_.data() + off, uxy_.data() + off,
                                 uyy_.data() + off});
      const kernels::CartesianView q{ux_.data() + off, uy_.data() + off, uxx_.data() + off, uxy_.data() + off,
                                     uyy_.data() + off};
      if (eq_ == EquationKind::MinimalSurface) {
        kernels::minimal_operator_row(q, nt, res_.data() + off);
      } else {
        kernels::laplacian_row(q, nt, res_.data() + off);
        for (int j = 0; j < nt_; ++j) {
          const Vec x = d_.node(i, j);
          res_[off + static_cast<std::size_t>(j)] -= rhs_->f(x, u[off + static_cast<std::size_t>(j)]);
        }
      }
      for (std::size_t j = 0; j < nt; ++j) worst = std::max(worst, std::abs(res_[off + j]));
    }
    return worst;
  }

  /// Jacobian of the residual at the last evaluated state. With frozen
  /// coefficients the dependence of the minimal-surface coefficients on the
  /// gradient is dropped (Picard linearisation).
  Eigen::SparseMatrix<double> jacobian(const std::vector<double>& u, bool frozen) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(unknowns()) * 9);
    const std::size_t nt = static_cast<std::size_t>(nt_);
    for (int i = 1; i + 1 < ns_; ++i)
      for (int j = 0; j < nt_; ++j) {
        const std::size_t k = static_cast<std::size_t>(i) * nt + static_cast<std::size_t>(j);
        double p[5];
        double dudiag = 0.0;
        if (eq_ == EquationKind::MinimalSurface) {
          const double ux = ux_[k], uy = uy_[k];
          p[0] = frozen ? 0.0 : 2.0 * ux * uyy_[k] - 2.0 * uy * uxy_[k];
          p[1] = frozen ? 0.0 : 2.0 * uy * uxx_[k] - 2.0 * ux * uxy_[k];
          p[2] = 1.0 + uy * uy;
          p[3] = -2.0 * ux * uy;
          p[4] = 1.0 + ux * ux;
        } else {
          p[0] = p[1] = p[3] = 0.0;
          p[2] = p[4] = 1.0;
          dudiag = -rhs_->f_u(d_.node(i, j), u[k]);
        }
        double w[5] = {0, 0, 0, 0, 0};
        const std::size_t base = static_cast<std::size_t>(i) * 25 * nt + static_cast<std::size_t>(j);
        for (int m = 0; m < 5; ++m)
          for (int l = 0; l < 5; ++l) w[l] += p[m] * coef_[base + static_cast<std::size_t>(m * 5 + l) * nt];

        const int row = unknown(i, j);
        const int jm = (j + nt_ - 1) % nt_;
        const int jp = (j + 1) % nt_;
        auto put = [&](int ii, int jj, double v) {
          if (ii < 1 || ii > ns_ - 2) return;
          trip.emplace_back(row, unknown(ii, jj), v);
        };
        put(i + 1, j, w[0] * steps_.inv_2hs + w[2] * steps_.inv_hs2);
        put(i - 1, j, -w[0] * steps_.inv_2hs + w[2] * steps_.inv_hs2);
        put(i, jp, w[1] * steps_.inv_2ht + w[4] * steps_.inv_ht2);
        put(i, jm, -w[1] * steps_.inv_2ht + w[4] * steps_.inv_ht2);
        put(i, j, -2.0 * w[2] * steps_.inv_hs2 - 2.0 * w[4] * steps_.inv_ht2 + dudiag);
        put(i + 1, jp, w[3] * steps_.inv_4hsht);
        put(i + 1, jm, -w[3] * steps_.inv_4hsht);
        put(i - 1, jp, -w[3] * steps_.inv_4hsht);
        put(i - 1, jm, w[3] * steps_.inv_4hsht);
      }
    Eigen::SparseMatrix<double> jac(unknowns(), unknowns());
    jac.setFromTriplets(trip.begin(), trip.end());
    jac.makeCompressed();
    return jac;
  }

  Eigen::VectorXd residual_vector() const {
    Eigen::VectorXd r(unknowns());
    const std::size_t nt = static_cast<std::size_t>(nt_);
    for (int i = 1; i + 1 < ns_; ++i)
      for (int j = 0; j < nt_; ++j)
        r(unknown(i, j)) = res_[static_cast<std::size_t>(i) * nt + static_cast<std::size_t>(j)];
    return r;
  }

  GridDerivatives derivatives() const { return {ux_, uy_, uxx_, uxy_, uyy_}; }

 private:
  const RingDomain2D& d_;
  EquationKind eq_;
  const SemilinearRHS* rhs_;
  int ns_;
  int nt_;
  kernels::StencilSteps steps_{};
  std::vector<double> coef_;
  std::vector<double> ds_, dt_, dss_, dst_, dtt_, ux_, uy_, uxx_, uxy_, uyy_, res_;
};

GridSolution solve_ring2d(const RingDomain2D& domain, const BoundaryData& data, EquationKind eq,
                          const SemilinearRHS* rhs, SolverOptions options) {
  GridSolution sol{domain, {}, eq, rhs ? std::optional<SemilinearRHS>(*rhs) : std::nullopt,
                   data.outer_name, data.inner_name, 0.0, 0, 0, domain.spacing()};
  const int ns = domain.ns();
  const int nt = domain.nt();
  std::vector<double>& u = sol.u;
  u.assign(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt), 0.0);
  for (int j = 0; j < nt; ++j) {
    const double g0 = data.outer(domain.node(0, j));
    const double g1 = data.inner(domain.node(ns - 1, j));
    if (!std::isfinite(g0) || !std::isfinite(g1))
      throw Error(ErrorKind::ConfigError, "boundary data are not finite");
    for (int i = 0; i < ns; ++i) {
      const double s = domain.s(i);
      u[static_cast<std::size_t>(domain.index(i, j))] = (1.0 - s) * g0 + s * g1;
    }
  }

  GridProblem prob(domain, eq, rhs);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool analysed = false;
  auto solve_step = [&](bool frozen) -> Eigen::VectorXd {
    const Eigen::SparseMatrix<double> jac = prob.jacobian(u, frozen);
    if (!analysed) {
      lu.analyzePattern(jac);
      analysed = true;
    }
    lu.factorize(jac);
    if (lu.info() != Eigen::Success) throw Error(ErrorKind::DidNotConverge, "sparse factorisation failed");
    return lu.solve(-prob.residual_vector());
  };
  auto apply = [&](const std::vector<double>& base, const Eigen::VectorXd& delta, double step) {
    for (int i = 1; i + 1 < ns; ++i)
      for (int j = 0; j < nt; ++j) {
        const auto k = static_cast<std::size_t>(domain.index(i, j));
        u[k] = base[k] + step * delta(prob.unknown(i, j));
      }
  };

  double norm = prob.evaluate(u);
  if (eq == EquationKind::MinimalSurface) {
    for (int it = 0; it < options.picard_steps && norm >= options.tol; ++it) {
      const Eigen::VectorXd delta = solve_step(true);
      const std::vector<double> base = u;
      apply(base, delta, 1.0);
      norm = prob.evaluate(u);
      ++sol.picard_iterations;
    }
  }
  while (norm >= options.tol) {
    if (sol.newton_iterations >= options.max_iter) {
      std::ostringstream msg;
      msg << "Newton stopped after " << sol.newton_iterations << " steps with residual " << norm;
      throw Error(ErrorKind::DidNotConverge, msg.str());
    }
    const Eigen::VectorXd delta = solve_step(false);
    const std::vector<double> base = u;
    double step = 1.0;
    double trial = norm;
    bool accepted = false;
    for (int halving = 0; halving < 20; ++halving) {
      apply(base, delta, step);
      trial = prob.evaluate(u);
      if (std::isfinite(trial) && (trial < norm || trial < options.tol)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++sol.newton_iterations;
    if (!accepted) {
      std::ostringstream msg;
      msg << "Newton step could not reduce the residual " << norm;
      throw Error(ErrorKind::DidNotConverge, msg.str());
    }
    norm = trial;
  }
  sol.residual_norm = norm;
  return sol;
}

}  // namespace

GridSolution solve_minimal_ring2d(const RingDomain2D& domain, const BoundaryData& data, SolverOptions options) {
  return solve_ring2d(domain, data, EquationKind::MinimalSurface, nullptr, options);
}

GridSolution solve_semilinear_ring2d(const RingDomain2D& domain, const BoundaryData& data,
                                     const SemilinearRHS& rhs, SolverOptions options) {
  return solve_ring2d(domain, data, EquationKind::Semilinear, &rhs, options);
}

double discrete_residual(const GridSolution& sol) {
  GridProblem prob(sol.domain, sol.equation, sol.rhs ? &*sol.rhs : nullptr);
  return prob.evaluate(sol.u);
}

GridDerivatives stencil_derivatives(const RingDomain2D& domain, const std::vector<double>& u) {
  GridProblem prob(domain, EquationKind::MinimalSurface, nullptr);
  prob.evaluate(u);
  return prob.derivatives();
}

}  // namespace levelcurv
