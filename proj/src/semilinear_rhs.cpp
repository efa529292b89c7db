#include "levelcurv/semilinear_rhs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "levelcurv/error.hpp"

namespace levelcurv {

namespace {

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, "bad number in right-hand side '" + spec + "'");
  }
  if (used != text.size() || !std::isfinite(v))
    throw Error(ErrorKind::ConfigError, "bad number in right-hand side '" + spec + "'");
  return v;
}

std::string format_name(const char* base, double v) {
  std::ostringstream s;
  s.precision(17);
  s << base << ":" << v;
  return s.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Hessian of g(x, t) = t^3 f(x) at z = (x, t) by fourth-order central differences.
Mat t3f_hessian(const SemilinearRHS& rhs, const Vec& z) {
  const Eigen::Index d = z.size();
  const Eigen::Index nx = d - 1;
  auto g = [&](const Vec& p) {
    const double t = p(nx);
    return t * t * t * rhs.f(p.head(nx), 0.0);
  };
  static constexpr double w1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};  // /12h
  static constexpr double w2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};  // /12h^2
  Mat h(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const double ha = 1e-3 * std::max(1.0, std::abs(z(a)));
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) {
      Vec p = z;
      p(a) += (k - 2) * ha;
      acc += w2[k] * g(p);
    }
    h(a, a) = acc / (12.0 * ha * ha);
    for (Eigen::Index b = a + 1; b < d; ++b) {
      const double hb = 1e-3 * std::max(1.0, std::abs(z(b)));
      double mixed = 0.0;
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          if (w1[k] == 0.0 || w1[l] == 0.0) continue;
          Vec p = z;
          p(a) += (k - 2) * ha;
          p(b) += (l - 2) * hb;
          mixed += w1[k] * w1[l] * g(p);
        }
      h(a, b) = h(b, a) = mixed / (144.0 * ha * hb);
    }
  }
  return h;
}

}  // namespace

SemilinearRHS SemilinearRHS::zero() {
  return {"zero", [](const Vec&, double) { return 0.0; }, [](const Vec&, double) { return 0.0; }};
}

SemilinearRHS SemilinearRHS::constant(double v) {
  return {format_name("constant", v), [v](const Vec&, double) { return v; },
          [](const Vec&, double) { return 0.0; }};
}

SemilinearRHS SemilinearRHS::linear(double lambda) {
  return {format_name("linear", lambda), [lambda](const Vec&, double u) { return lambda * u; },
          [lambda](const Vec&, double) { return lambda; }};
}

SemilinearRHS SemilinearRHS::inverse_square_shift() {
  return {"inverse-square-shift",
          [](const Vec& x, double) {
            const double s = 2.0 + x(0);
            return 1.0 / (s * s);
          },
          [](const Vec&, double) { return 0.0; }};
}

SemilinearRHS SemilinearRHS::parse(const std::string& spec) {
  if (spec == "zero") return zero();
  if (spec == "inverse-square-shift") return inverse_square_shift();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string tail = spec.substr(colon + 1);
    if (head == "constant") return constant(parse_number(tail, spec));
    if (head == "linear") return linear(parse_number(tail, spec));
  }
  throw Error(ErrorKind::ConfigError, "unknown right-hand side '" + spec + "'");
}

RhsFlags admissibility_check(const SemilinearRHS& rhs, const SampleBox& box, int samples,
                             std::uint64_t seed) {
  if (box.lo.size() != box.hi.size() || box.lo.size() == 0)
    throw Error(ErrorKind::ConfigError, "sample box bounds must have equal, nonzero length");
  const Eigen::Index dim = box.lo.size();
  std::mt19937_64 rng(seed);
  auto random_x = [&] {
    Vec x(dim);
    for (Eigen::Index k = 0; k < dim; ++k) x(k) = uniform(rng, box.lo(k), box.hi(k));
    return x;
  };

  RhsFlags flags;
  flags.samples = samples;
  flags.nonnegative = flags.f_of_u_only = flags.f_of_x_only = true;
  flags.f_u_nonneg = flags.f_u_nonpos = flags.f0_zero = true;
  flags.min_f = std::numeric_limits<double>::infinity();
  constexpr double tol = 1e-12;

  for (int k = 0; k < samples; ++k) {
    const Vec x = random_x();
    const Vec x2 = random_x();
    const double u = uniform(rng, box.u_lo, box.u_hi);
    const double u2 = uniform(rng, box.u_lo, box.u_hi);
    const double f = rhs.f(x, u);
    const double fu = rhs.f_u(x, u);
    const double scale = std::max(1.0, std::abs(f));
    flags.min_f = std::min(flags.min_f, f);
    if (f < -tol) flags.nonnegative = false;
    if (fu < -tol) flags.f_u_nonneg = false;
    if (fu > tol) flags.f_u_nonpos = false;
    if (std::abs(rhs.f(x2, u) - f) > tol * scale) flags.f_of_u_only = false;
    if (std::abs(rhs.f(x, u2) - f) > tol * scale) flags.f_of_x_only = false;
    if (std::abs(rhs.f(x, 0.0)) > tol) flags.f0_zero = false;
  }

  flags.t3f_convex = flags.f_of_x_only;
  if (flags.t3f_convex) {
    for (int k = 0; k < samples; ++k) {
      Vec z(dim + 1);
      z.head(dim) = random_x();
      z(dim) = uniform(rng, 0.25, 4.0);
      const Mat h = t3f_hessian(rhs, z);
      const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(h, Eigen::EigenvaluesOnly).eigenvalues();
      const double big = std::max(1.0, ev.cwiseAbs().maxCoeff());
      if (ev(0) < -1e-8 * big) {
        flags.t3f_convex = false;
        break;
      }
    }
  }
  return flags;
}

}  // namespace levelcurv
