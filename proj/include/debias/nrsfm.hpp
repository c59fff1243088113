#pragma once

#include <vector>

#include <Eigen/Core>

#include "debias/solver.hpp"

namespace debias {

using Camera = Eigen::Matrix<double, 2, 3>;

/// Orthographic non-rigid structure from motion: minimize over X (3F×m)
/// the regularizer of σ(X#) plus ‖R·X − M‖²_F, where R is block diagonal with one
/// 2×3 camera per frame.
class NrsfmProblem {
 public:
  /// Validates shapes, camera orthonormality (R_i R_iᵀ = I within `orthonormal_tol`)
  /// and exact zeros off the block diagonal.
  NrsfmProblem(DenseMatrix r, DenseMatrix m, double orthonormal_tol = 1e-8);

  static NrsfmProblem from_cameras(const std::vector<Camera>& cameras, DenseMatrix m,
                                   double orthonormal_tol = 1e-8);

  const DenseMatrix& r() const noexcept { return r_; }
  const DenseMatrix& m() const noexcept { return m_; }
  Index frames() const noexcept { return frames_; }
  Index points() const noexcept { return points_; }
  Camera camera(Index frame) const;

  /// R·X computed block by block.
  DenseMatrix project(const DenseMatrix& x) const;

 private:
  DenseMatrix r_;
  DenseMatrix m_;
  Index frames_ = 0;
  Index points_ = 0;
};

/// X (3F×m, rows X_1; Y_1; Z_1; …) → X# (F×3m, row i = [X_i Y_i Z_i]).
DenseMatrix to_sharp(const DenseMatrix& x, Index frames);
/// Inverse of to_sharp.
DenseMatrix from_sharp(const DenseMatrix& x_sharp, Index frames);

/// r(σ(X#)) + ‖R·X − M‖²_F.
double objective_nrsfm(const NrsfmProblem& prob, const DenseMatrix& x, const RegParams& p);

/// ADMM for the NRSfM objective.
///
/// The x-update is the spectral prox applied to (Y − η) in X# layout; the
/// y-update solves (ρI + RᵀR)Y = ρ(X + η) + RᵀM one 3×3 frame block at a time.
MatrixAdmmResult admm_matrix_nrsfm(const NrsfmProblem& prob, const RegParams& p,
                                   const AdmmSettings& s, const DenseMatrix& x0);

}  // namespace debias
