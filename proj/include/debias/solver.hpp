#pragma once

#include <vector>

#include "debias/numerics.hpp"
#include "debias/regularizer.hpp"

namespace debias {

/// Data term ‖A·x − b‖² of a sparse recovery problem.
struct VectorProblem {
  DenseMatrix a;
  Vector b;

  VectorProblem() = default;
  /// Throws ParameterError on inconsistent shapes or non-finite entries.
  VectorProblem(DenseMatrix a, Vector b);

  Index rows() const noexcept { return a.rows(); }
  Index cols() const noexcept { return a.cols(); }
};

struct AdmmSettings {
  double rho = 2.0;
  Index max_iters = 2000;
  double primal_tol = 1e-8;
  /// Relative to max(1, |objective|).
  double objective_tol = 1e-10;

  void validate() const;
};

enum class Termination { tolerance, max_iters };

const char* to_string(Termination t);

/// Final ADMM state. `x` is the regularized (prox) copy, `y` the data-fit copy.
template <class T>
struct AdmmResult {
  T x;
  T y;
  double objective = 0.0;
  double primal_residual = 0.0;
  Index iterations = 0;
  Termination terminated_by = Termination::max_iters;
  std::vector<double> objective_trace;
  std::vector<double> residual_trace;

  bool converged() const noexcept { return terminated_by == Termination::tolerance; }
};

using VectorAdmmResult = AdmmResult<Vector>;
using MatrixAdmmResult = AdmmResult<DenseMatrix>;

/// r(x) + ‖A·x − b‖².
double objective_vec(const VectorProblem& prob, const Vector& x, const RegParams& p);

/// Minimum-norm least-squares starting point argmin ‖A·x − b‖².
Vector least_squares_init(const VectorProblem& prob);

/// ADMM on r(x) + ‖A·y − b‖² subject to x = y, with scaled dual η:
///
///   x ← prox_{r/ρ}(y − η)
///   y ← (ρI + AᵀA)⁻¹ (ρ(x + η) + Aᵀb)
///   η ← η + x − y
///
/// starting from y = x0, η = 0. Stops once ‖x − y‖ and the change in y are both
/// within primal_tol and the objective has varied by at most objective_tol
/// (relative) over the last five iterations, or after max_iters.
VectorAdmmResult admm_vector(const VectorProblem& prob, const RegParams& p,
                             const AdmmSettings& s, const Vector& x0);

/// Regularized oracle: argmin over x supported on `support` of
/// lambda‖x‖₁ + ‖A·x − b‖², zero elsewhere. lambda = 0 is plain least squares
/// on the support columns.
Vector oracle_solution(const VectorProblem& prob, const std::vector<Index>& support,
                       double lambda, const AdmmSettings& s = {});

/// Entries with |x_i| > tol.
Index count_nonzero(const Vector& x, double tol = 1e-9);
std::vector<Index> support_of(const Vector& x, double tol = 1e-9);

}  // namespace debias
