#pragma once

#include <filesystem>
#include <iosfwd>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace debias {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thin SVD: `u` is rows×k, `sigma` has k entries, `vt` is k×cols, k = min(rows, cols).
///
/// Singular values are non-increasing. Each left singular vector is signed so
/// that its first entry of non-negligible magnitude is positive, which makes the
/// factorization deterministic for a given input.
struct SvdFactors {
  DenseMatrix u;
  Vector sigma;
  DenseMatrix vt;

  DenseMatrix reconstruct() const;
};

bool all_finite(const DenseMatrix& m);

/// Throws ParameterError on non-finite input and NumericError if the
/// iteration does not converge.
SvdFactors svd(const DenseMatrix& m);

/// Number of singular values above `rel_tol * sigma_max`.
Index numerical_rank(const Vector& sigma, double rel_tol = 1e-6);

/// Cholesky factorization of (rho*I + AᵀA) for repeated solves with a fixed A.
class RegularizedLsCache {
 public:
  RegularizedLsCache(const DenseMatrix& a, double rho);

  /// Solves (rho*I + AᵀA) y = c.
  Vector solve(const Vector& c) const;
  /// Column-wise solve for a matrix right-hand side.
  DenseMatrix solve(const DenseMatrix& c) const;

  double rho() const noexcept { return rho_; }
  Index size() const noexcept { return llt_.rows(); }

 private:
  Eigen::LLT<DenseMatrix> llt_;
  double rho_;
};

RegularizedLsCache make_ls_cache(const DenseMatrix& a, double rho);
Vector solve_with_cache(const RegularizedLsCache& cache, const Vector& c);

/// P = I − M(MᵀM)⁻¹Mᵀ, the orthogonal projector onto the complement of
/// range(M). Throws DegenerateGeometryError when M lacks full column rank.
DenseMatrix projection_complement(const DenseMatrix& m);

/// Minimum-norm minimizer of ‖Ax − b‖².
Vector least_squares(const DenseMatrix& a, const Vector& b);

// Plain-text matrix format: a "<rows> <cols>" header line followed by `rows`
// lines of `cols` whitespace-separated decimals.
DenseMatrix parse_matrix(std::istream& in);
void format_matrix(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);

}  // namespace debias
