#pragma once

#include "debias/numerics.hpp"

namespace debias {

/// Parameters of the combined regularizer
///
///   r(x) = Σ_i [ mu − max(√mu − |x_i|, 0)² ] + lambda·‖x‖₁,
///
/// the quadratic envelope of mu‖x‖₀ + lambda‖x‖₁. The matrix version applies
/// the same function to the singular values.
struct RegParams {
  double mu = 0.0;
  double lambda = 0.0;

  RegParams() = default;
  /// Throws ParameterError unless both values are finite and non-negative.
  RegParams(double mu, double lambda);

  double sqrt_mu() const;
  /// Magnitude at which the ρ=1 minimizer stops being zero: √mu + lambda/2.
  double threshold() const;
};

/// Strength ρ of prox_{r/ρ}(y) = argmin_x (1/ρ)·r(x) + ‖x − y‖².
/// Only ρ > 1 is supported: the prox objective is convex exactly then.
class ProxStrength {
 public:
  explicit ProxStrength(double rho);
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

/// Closed interval [lo, hi]; a singleton when lo == hi.
struct SubdiffInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool is_singleton() const noexcept { return lo == hi; }
  /// Signed distance from the interval: 0 inside, v − hi above, v − lo below.
  double signed_distance(double v) const noexcept;
  bool contains(double v, double tol = 0.0) const noexcept;
};

/// Solution set of min_x r(x) + (x − z)² for one coordinate.
struct ArgminSet {
  enum class Kind { singleton, interval, zero };

  Kind kind = Kind::zero;
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double tol = 0.0) const noexcept;
  /// Preferred representative: the sparsest element (0 for the tie interval).
  double pick() const noexcept;
};

double reg_value(double x, const RegParams& p);
double reg_value(const Vector& x, const RegParams& p);
/// r applied to the singular values of `x`.
double reg_value_spectral(const DenseMatrix& x, const RegParams& p);

/// sign(y)·max(|y| − t, 0).
double soft_threshold(double y, double t);

double prox(double y, const RegParams& p, const ProxStrength& s);
Vector prox(const Vector& y, const RegParams& p, const ProxStrength& s);
/// U·diag(prox(σ))·Vᵀ with (U, σ, Vᵀ) = svd(y).
DenseMatrix prox_spectral(const DenseMatrix& y, const RegParams& p, const ProxStrength& s);

/// The ρ=1 case, min_x r(x) + (x − z)², which has a set-valued solution at the tie.
ArgminSet separable_argmin_set(double z, const RegParams& p);

/// Subdifferential of g(x) = r(x) + x² at a scalar x.
SubdiffInterval subdiff_g(double x, const RegParams& p);

}  // namespace debias
