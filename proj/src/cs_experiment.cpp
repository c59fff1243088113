#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "parallel.hpp"

namespace debias {

void CsTrialConfig::validate() const {
  if (p < 1 || n < 1) throw ParameterError("CS config: dimensions must be positive");
  if (sparsity < 0 || sparsity > n)
    throw ParameterError(fmt::format("CS config: sparsity {} exceeds n = {}", sparsity, n));
  if (!(magnitude_lo <= magnitude_hi) || magnitude_lo < 0.0)
    throw ParameterError("CS config: magnitude range must satisfy 0 <= lo <= hi");
  if (!std::isfinite(noise_norm) || noise_norm < 0.0)
    throw ParameterError("CS config: noise norm must be finite and non-negative");
}

CsInstance gen_cs_instance(const CsTrialConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  DenseMatrix a(cfg.p, cfg.n);
  for (Index j = 0; j < cfg.n; ++j) {
    for (Index i = 0; i < cfg.p; ++i) a(i, j) = gauss(rng);
    a.col(j) /= a.col(j).norm();
  }

  std::vector<Index> order(static_cast<std::size_t>(cfg.n));
  for (Index i = 0; i < cfg.n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < cfg.sparsity; ++i) {
    std::uniform_int_distribution<Index> pick(i, cfg.n - 1);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<Index> support(order.begin(), order.begin() + cfg.sparsity);
  std::sort(support.begin(), support.end());

  std::uniform_real_distribution<double> magnitude(cfg.magnitude_lo, cfg.magnitude_hi);
  std::bernoulli_distribution negative(0.5);
  Vector x = Vector::Zero(cfg.n);
  for (Index i : support) x(i) = (negative(rng) ? -1.0 : 1.0) * magnitude(rng);

  Vector noise(cfg.p);
  for (Index i = 0; i < cfg.p; ++i) noise(i) = gauss(rng);
  noise *= cfg.noise_norm > 0.0 ? cfg.noise_norm / noise.norm() : 0.0;

  Vector b = a * x + noise;
  return {VectorProblem(std::move(a), std::move(b)), std::move(x), std::move(support),
          cfg.noise_norm};
}

double l1_lambda(double noise_norm, Index n) {
  const double nn = static_cast<double>(n);
  return 2.0 * std::sqrt(2.0 * std::log(nn)) / std::sqrt(nn) * noise_norm;
}

RegParams cs_method_params(Method m, double noise_norm, Index n) {
  const double l1 = l1_lambda(noise_norm, n);
  switch (m) {
    case Method::envelope:
      return {1.0, 0.0};
    case Method::combined:
      return {1.0, l1 / 6.0};
    case Method::l1:
      return {0.0, l1};
  }
  throw ParameterError("unknown method");
}

TrialOutcome run_cs_trial(const CsInstance& inst, Method m, const Vector& oracle,
                          const AdmmSettings& s) {
  const RegParams params = cs_method_params(m, inst.noise_norm, inst.problem.cols());
  const Vector x0 = least_squares_init(inst.problem);

  Vector x;
  bool converged = true;
  if (params.mu == 0.0 && params.lambda == 0.0) {
    x = x0;
  } else {
    auto res = admm_vector(inst.problem, params, s, x0);
    converged = res.converged();
    x = std::move(res.x);
  }

  TrialOutcome out;
  out.method = m;
  out.noise_norm = inst.noise_norm;
  out.cardinality_or_rank = count_nonzero(x);
  out.dist_oracle = (x - oracle).norm();
  out.dist_gt = (x - inst.x_true).norm();
  out.datafit = (inst.problem.a * x - inst.problem.b).norm();
  out.converged = converged;
  return out;
}

std::vector<TrialOutcome> run_cs_sweep(const CsSweepOptions& opts) {
  if (opts.trials < 1) throw ParameterError("CS sweep: trials must be positive");
  for (double level : opts.noise_levels)
    if (!std::isfinite(level) || level < 0.0)
      throw ParameterError("CS sweep: noise levels must be finite and non-negative");
  opts.admm.validate();

  const std::size_t levels = opts.noise_levels.size();
  const auto trials = static_cast<std::size_t>(opts.trials);
  const std::size_t methods = opts.methods.size();
  std::vector<TrialOutcome> out(levels * trials * methods);

  detail::parallel_for(levels * trials, opts.threads, [&](std::size_t task) {
    const std::size_t level = task / trials;
    const std::size_t trial = task % trials;
    CsTrialConfig cfg = opts.base;
    cfg.noise_norm = opts.noise_levels[level];
    cfg.seed = opts.base_seed + trial;
    const CsInstance inst = gen_cs_instance(cfg);
    const Vector oracle = oracle_solution(inst.problem, inst.support, 0.0, opts.admm);
    for (std::size_t k = 0; k < methods; ++k) {
      TrialOutcome o = run_cs_trial(inst, opts.methods[k], oracle, opts.admm);
      o.trial = static_cast<Index>(trial);
      out[task * methods + k] = o;
    }
  });
  sort_outcomes(out);
  return out;
}

}  // namespace debias
