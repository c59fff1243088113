#include "debias/nrsfm.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include "admm_loop.hpp"
#include "debias/errors.hpp"

namespace debias {

NrsfmProblem::NrsfmProblem(DenseMatrix r, DenseMatrix m, double orthonormal_tol)
    : r_(std::move(r)), m_(std::move(m)) {
  if (r_.rows() % 2 != 0 || r_.cols() != r_.rows() / 2 * 3)
    throw ParameterError(
        fmt::format("NRSfM: camera matrix must be 2F x 3F, got {}x{}", r_.rows(), r_.cols()));
  frames_ = r_.rows() / 2;
  if (m_.rows() != 2 * frames_)
    throw ParameterError(
        fmt::format("NRSfM: measurements have {} rows, expected {}", m_.rows(), 2 * frames_));
  points_ = m_.cols();
  if (!r_.allFinite() || !m_.allFinite()) throw ParameterError("NRSfM: non-finite entries");

  for (Index i = 0; i < r_.rows(); ++i)
    for (Index j = 0; j < r_.cols(); ++j)
      if (i / 2 != j / 3 && r_(i, j) != 0.0)
        throw ParameterError(fmt::format("NRSfM: camera matrix entry ({}, {}) is off the block diagonal", i, j));
  for (Index f = 0; f < frames_; ++f) {
    const Camera c = camera(f);
    const double err = (c * c.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
    if (err > orthonormal_tol)
      throw ParameterError(fmt::format(
          "NRSfM: camera of frame {} is not orthonormal (deviation {:.3g})", f, err));
  }
}

NrsfmProblem NrsfmProblem::from_cameras(const std::vector<Camera>& cameras, DenseMatrix m,
                                        double orthonormal_tol) {
  const auto f = static_cast<Index>(cameras.size());
  DenseMatrix r = DenseMatrix::Zero(2 * f, 3 * f);
  for (Index i = 0; i < f; ++i) r.block<2, 3>(2 * i, 3 * i) = cameras[static_cast<std::size_t>(i)];
  return NrsfmProblem(std::move(r), std::move(m), orthonormal_tol);
}

Camera NrsfmProblem::camera(Index frame) const {
  if (frame < 0 || frame >= frames_)
    throw ParameterError(fmt::format("NRSfM: frame {} out of range [0, {})", frame, frames_));
  return r_.block<2, 3>(2 * frame, 3 * frame);
}

DenseMatrix NrsfmProblem::project(const DenseMatrix& x) const {
  if (x.rows() != 3 * frames_)
    throw ParameterError(fmt::format("NRSfM: X has {} rows, expected {}", x.rows(), 3 * frames_));
  DenseMatrix out(2 * frames_, x.cols());
  for (Index f = 0; f < frames_; ++f)
    out.middleRows(2 * f, 2).noalias() = camera(f) * x.middleRows(3 * f, 3);
  return out;
}

DenseMatrix to_sharp(const DenseMatrix& x, Index frames) {
  if (frames <= 0 || x.rows() != 3 * frames)
    throw ParameterError(fmt::format("to_sharp: X has {} rows, expected 3x{}", x.rows(), frames));
  const Index m = x.cols();
  DenseMatrix out(frames, 3 * m);
  for (Index f = 0; f < frames; ++f)
    for (Index c = 0; c < 3; ++c) out.block(f, c * m, 1, m) = x.row(3 * f + c);
  return out;
}

DenseMatrix from_sharp(const DenseMatrix& x_sharp, Index frames) {
  if (frames <= 0 || x_sharp.rows() != frames || x_sharp.cols() % 3 != 0)
    throw ParameterError(fmt::format("from_sharp: X# is {}x{}, expected {} rows and 3m columns",
                                     x_sharp.rows(), x_sharp.cols(), frames));
  const Index m = x_sharp.cols() / 3;
  DenseMatrix out(3 * frames, m);
  for (Index f = 0; f < frames; ++f)
    for (Index c = 0; c < 3; ++c) out.row(3 * f + c) = x_sharp.block(f, c * m, 1, m);
  return out;
}

double objective_nrsfm(const NrsfmProblem& prob, const DenseMatrix& x, const RegParams& p) {
  return reg_value_spectral(to_sharp(x, prob.frames()), p) +
         (prob.project(x) - prob.m()).squaredNorm();
}

MatrixAdmmResult admm_matrix_nrsfm(const NrsfmProblem& prob, const RegParams& p,
                                   const AdmmSettings& s, const DenseMatrix& x0) {
  s.validate();
  if (p.mu == 0.0 && p.lambda == 0.0)
    throw ParameterError("ADMM needs mu > 0 or lambda > 0");
  const Index frames = prob.frames();
  if (x0.rows() != 3 * frames || x0.cols() != prob.points())
    throw ParameterError(fmt::format("NRSfM ADMM: x0 is {}x{}, expected {}x{}", x0.rows(),
                                     x0.cols(), 3 * frames, prob.points()));
  if (!x0.allFinite()) throw ParameterError("NRSfM ADMM: x0 has non-finite entries");

  const ProxStrength strength(s.rho);
  std::vector<Eigen::LLT<Eigen::Matrix3d>> blocks;
  blocks.reserve(static_cast<std::size_t>(frames));
  DenseMatrix rtm(3 * frames, prob.points());
  for (Index f = 0; f < frames; ++f) {
    const Camera c = prob.camera(f);
    Eigen::Matrix3d lhs = c.transpose() * c;
    lhs.diagonal().array() += s.rho;
    blocks.emplace_back(lhs);
    rtm.middleRows(3 * f, 3).noalias() = c.transpose() * prob.m().middleRows(2 * f, 2);
  }

  return detail::run_admm<DenseMatrix>(
      x0, s,
      [&](const DenseMatrix& c) {
        return from_sharp(prox_spectral(to_sharp(c, frames), p, strength), frames);
      },
      [&](const DenseMatrix& c) {
        DenseMatrix y(c.rows(), c.cols());
        for (Index f = 0; f < frames; ++f)
          y.middleRows(3 * f, 3) = blocks[static_cast<std::size_t>(f)].solve(
              s.rho * c.middleRows(3 * f, 3) + rtm.middleRows(3 * f, 3));
        return y;
      },
      [&](const DenseMatrix& x, const DenseMatrix& y) {
        return reg_value_spectral(to_sharp(x, frames), p) +
               (prob.project(y) - prob.m()).squaredNorm();
      });
}

}  // namespace debias
