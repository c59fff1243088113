#include "debias/regularizer.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "debias/errors.hpp"

namespace debias {

namespace {

double sign(double v) {
  return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
}

}  // namespace

RegParams::RegParams(double mu_, double lambda_) : mu(mu_), lambda(lambda_) {
  if (!std::isfinite(mu) || mu < 0.0)
    throw ParameterError(fmt::format("mu must be finite and non-negative, got {}", mu));
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw ParameterError(fmt::format("lambda must be finite and non-negative, got {}", lambda));
}

double RegParams::sqrt_mu() const {
  return std::sqrt(mu);
}

double RegParams::threshold() const {
  return sqrt_mu() + 0.5 * lambda;
}

ProxStrength::ProxStrength(double rho) : rho_(rho) {
  if (!std::isfinite(rho) || !(rho > 1.0))
    throw ParameterError(fmt::format("prox strength rho must exceed 1, got {}", rho));
}

double SubdiffInterval::signed_distance(double v) const noexcept {
  if (v > hi) return v - hi;
  if (v < lo) return v - lo;
  return 0.0;
}

bool SubdiffInterval::contains(double v, double tol) const noexcept {
  return std::abs(signed_distance(v)) <= tol;
}

bool ArgminSet::contains(double x, double tol) const noexcept {
  return x >= lo - tol && x <= hi + tol;
}

double ArgminSet::pick() const noexcept {
  switch (kind) {
    case Kind::singleton:
      return lo;
    case Kind::interval:
    case Kind::zero:
      return 0.0;
  }
  return 0.0;
}

double reg_value(double x, const RegParams& p) {
  const double t = std::abs(x);
  const double root = p.sqrt_mu();
  const double bend = t < root ? t * (2.0 * root - t) : p.mu;
  return bend + p.lambda * t;
}

double reg_value(const Vector& x, const RegParams& p) {
  double total = 0.0;
  for (Index i = 0; i < x.size(); ++i) total += reg_value(x(i), p);
  return total;
}

double reg_value_spectral(const DenseMatrix& x, const RegParams& p) {
  return reg_value(svd(x).sigma, p);
}

double soft_threshold(double y, double t) {
  const double mag = std::abs(y) - t;
  return mag > 0.0 ? sign(y) * mag : 0.0;
}

double prox(double y, const RegParams& p, const ProxStrength& s) {
  const double rho = s.rho();
  const double z = soft_threshold(y, p.lambda / (2.0 * rho));
  const double a = std::abs(z);
  const double root = p.sqrt_mu();
  if (a >= root) return z;
  // On 0 < |x| < √mu the objective is (1/ρ)(2√mu|x| − x²) + (x − z)², whose
  // stationary point is (ρ|z| − √mu)/(ρ − 1); it is positive iff |z| > √mu/ρ.
  if (a * rho >= root) return sign(z) * (rho * a - root) / (rho - 1.0);
  return 0.0;
}

Vector prox(const Vector& y, const RegParams& p, const ProxStrength& s) {
  Vector out(y.size());
  for (Index i = 0; i < y.size(); ++i) out(i) = prox(y(i), p, s);
  return out;
}

DenseMatrix prox_spectral(const DenseMatrix& y, const RegParams& p, const ProxStrength& s) {
  SvdFactors f = svd(y);
  const Vector shrunk = prox(f.sigma, p, s);
  return f.u * shrunk.asDiagonal() * f.vt;
}

ArgminSet separable_argmin_set(double z, const RegParams& p) {
  const double a = std::abs(z);
  const double t = p.threshold();
  ArgminSet set;
  if (a > t) {
    set.kind = ArgminSet::Kind::singleton;
    set.lo = set.hi = z - sign(z) * 0.5 * p.lambda;
  } else if (a == t && p.mu > 0.0) {
    set.kind = ArgminSet::Kind::interval;
    const double end = sign(z) * p.sqrt_mu();
    set.lo = std::min(0.0, end);
    set.hi = std::max(0.0, end);
  } else {
    set.kind = ArgminSet::Kind::zero;
  }
  return set;
}

SubdiffInterval subdiff_g(double x, const RegParams& p) {
  const double root = p.sqrt_mu();
  if (x == 0.0) {
    const double w = 2.0 * root + p.lambda;
    return {-w, w};
  }
  const double v = std::abs(x) >= root ? 2.0 * x + p.lambda * sign(x)
                                       : (2.0 * root + p.lambda) * sign(x);
  return {v, v};
}

}  // namespace debias
