#include <cmath>
#include <limits>
#include <random>

#include <Eigen/QR>
#include <fmt/format.h>

#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "parallel.hpp"

namespace debias {

NrsfmInstance gen_nrsfm_instance(Index frames, Index points, Index rank, std::uint64_t seed) {
  if (frames < 1 || points < 1) throw ParameterError("NRSfM instance: dimensions must be positive");
  if (rank < 0 || rank > std::min(frames, 3 * points))
    throw ParameterError(fmt::format("NRSfM instance: rank {} exceeds min(F, 3m) = {}", rank,
                                     std::min(frames, 3 * points)));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto gaussian = [&](Index r, Index c) {
    DenseMatrix out(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) out(i, j) = gauss(rng);
    return out;
  };

  const DenseMatrix c = gaussian(frames, rank);
  const DenseMatrix b = gaussian(rank, 3 * points);
  DenseMatrix x = from_sharp(c * b, frames);

  std::vector<Camera> cameras;
  cameras.reserve(static_cast<std::size_t>(frames));
  for (Index f = 0; f < frames; ++f) {
    const Eigen::Matrix3d g = gaussian(3, 3);
    const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(g).householderQ();
    cameras.push_back(q.topRows<2>());
  }

  DenseMatrix m(2 * frames, points);
  for (Index f = 0; f < frames; ++f)
    m.middleRows(2 * f, 2).noalias() = cameras[static_cast<std::size_t>(f)] * x.middleRows(3 * f, 3);

  return {NrsfmProblem::from_cameras(cameras, std::move(m)), std::move(x), rank};
}

NrsfmMetrics nrsfm_metrics(const NrsfmInstance& inst, const DenseMatrix& x) {
  const NrsfmProblem& prob = inst.problem;
  if (x.rows() != 3 * prob.frames() || x.cols() != prob.points())
    throw ParameterError(fmt::format("NRSfM metrics: X is {}x{}, expected {}x{}", x.rows(),
                                     x.cols(), 3 * prob.frames(), prob.points()));
  NrsfmMetrics out;
  out.datafit = (prob.project(x) - prob.m()).norm();
  if (inst.x_gt) out.gt_distance = (x - *inst.x_gt).norm();
  out.rank = numerical_rank(svd(to_sharp(x, prob.frames())).sigma);
  return out;
}

RegParams nrsfm_method_params(Method m, double sqrt_mu, double lambda) {
  if (!std::isfinite(sqrt_mu) || sqrt_mu < 0.0)
    throw ParameterError(fmt::format("NRSfM: sqrt(mu) must be finite and non-negative, got {}", sqrt_mu));
  switch (m) {
    case Method::envelope:
      return {sqrt_mu * sqrt_mu, 0.0};
    case Method::combined:
      return {sqrt_mu * sqrt_mu, lambda};
    case Method::l1:
      return {0.0, 2.0 * sqrt_mu};
  }
  throw ParameterError("unknown method");
}

std::vector<double> linspace(double lo, double hi, Index count) {
  if (count < 1) throw ParameterError("linspace: count must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ParameterError("linspace: non-finite bounds");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (Index i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<TrialOutcome> run_nrsfm_sweep(const NrsfmInstance& inst,
                                          const NrsfmSweepOptions& opts, Index trial) {
  if (opts.sqrt_mu.empty()) throw ParameterError("NRSfM sweep: no sqrt(mu) values");
  opts.admm.validate();
  const NrsfmProblem& prob = inst.problem;

  std::mt19937_64 rng(opts.init_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseMatrix x0(3 * prob.frames(), prob.points());
  for (Index j = 0; j < x0.cols(); ++j)
    for (Index i = 0; i < x0.rows(); ++i) x0(i, j) = gauss(rng);

  const std::size_t levels = opts.sqrt_mu.size();
  const std::size_t methods = opts.methods.size();
  std::vector<TrialOutcome> out(levels * methods);
  detail::parallel_for(levels * methods, opts.threads, [&](std::size_t task) {
    const double sqrt_mu = opts.sqrt_mu[task / methods];
    const Method method = opts.methods[task % methods];
    const RegParams p = nrsfm_method_params(method, sqrt_mu, opts.lambda);
    const auto res = admm_matrix_nrsfm(prob, p, opts.admm, x0);
    const NrsfmMetrics metrics = nrsfm_metrics(inst, res.x);

    TrialOutcome& o = out[task];
    o.method = method;
    o.noise_norm = sqrt_mu;
    o.trial = trial;
    o.cardinality_or_rank = metrics.rank;
    o.dist_oracle = std::numeric_limits<double>::quiet_NaN();
    o.dist_gt = metrics.gt_distance.value_or(std::numeric_limits<double>::quiet_NaN());
    o.datafit = metrics.datafit;
    o.converged = res.converged();
  });
  sort_outcomes(out);
  return out;
}

}  // namespace debias
