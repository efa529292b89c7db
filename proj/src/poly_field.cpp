#include "levelcurv/poly_field.hpp"

#include <cmath>
#include <numeric>

#include "levelcurv/error.hpp"

namespace levelcurv {

namespace {

int total(const PolyField::MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

PolyField::PolyField(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    throw Error(ErrorKind::UnsupportedDimension, "PolyField supports 1..4 variables");
}

int PolyField::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_)
    if (c != 0.0) d = std::max(d, total(alpha));
  return d;
}

void PolyField::set(const MultiIndex& alpha, double coeff) {
  for (int k = dim_; k < kMaxDim; ++k)
    if (alpha[static_cast<std::size_t>(k)] != 0)
      throw Error(ErrorKind::OutOfDomain, "multi-index uses a variable beyond dim");
  if (total(alpha) > kMaxDegree) throw Error(ErrorKind::OutOfDomain, "degree above 4");
  if (coeff == 0.0)
    terms_.erase(alpha);
  else
    terms_[alpha] = coeff;
}

double PolyField::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

PolyField PolyField::derivative(int axis) const {
  PolyField out(dim_);
  const auto ax = static_cast<std::size_t>(axis);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[ax] == 0) continue;
    MultiIndex beta = alpha;
    beta[ax] -= 1;
    out.terms_[beta] += c * alpha[ax];
  }
  return out;
}

double PolyField::partial(const MultiIndex& order, const Vec& x) const {
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = c;
    for (std::size_t k = 0; k < static_cast<std::size_t>(dim_) && term != 0.0; ++k) {
      const int p = alpha[k];
      const int d = order[k];
      if (d > p) {
        term = 0.0;
        break;
      }
      for (int f = 0; f < d; ++f) term *= (p - f);
      term *= ipow(x(static_cast<Eigen::Index>(k)), p - d);
    }
    sum += term;
  }
  return sum;
}

double PolyField::evaluate(const Vec& x) const { return partial(MultiIndex{}, x); }

Jet PolyField::jet(const Vec& x, int order) const {
  Jet j;
  const int n = dim_;
  j.grad.resize(n);
  j.hess.resize(n, n);
  for (int a = 0; a < n; ++a) {
    MultiIndex o{};
    o[static_cast<std::size_t>(a)] += 1;
    j.grad(a) = partial(o, x);
    for (int b = 0; b < n; ++b) {
      MultiIndex o2 = o;
      o2[static_cast<std::size_t>(b)] += 1;
      j.hess(a, b) = partial(o2, x);
    }
  }
  if (order >= 3) {
    Tensor3 t(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          MultiIndex o{};
          o[static_cast<std::size_t>(a)] += 1;
          o[static_cast<std::size_t>(b)] += 1;
          o[static_cast<std::size_t>(c)] += 1;
          t(a, b, c) = partial(o, x);
        }
    j.third = std::move(t);
  }
  return j;
}

std::vector<PolyField::MultiIndex> PolyField::monomials(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex a{};
  // odometer over [0, max_degree]^dim, keeping total degree in range
  while (true) {
    if (total(a) <= max_degree) out.push_back(a);
    int k = dim - 1;
    while (k >= 0) {
      auto kk = static_cast<std::size_t>(k);
      if (a[kk] < max_degree) {
        ++a[kk];
        break;
      }
      a[kk] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace levelcurv
