#include <cmath>
#include <fstream>
#include <random>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "parallel.hpp"
#include "text_scan.hpp"

namespace debias {

namespace {

void check_points(const DenseMatrix& model, const DenseMatrix& target) {
  if (model.rows() != 2 || target.rows() != 2 || model.cols() != target.cols())
    throw ParameterError(fmt::format("registration: point sets must both be 2xN, got {}x{} and {}x{}",
                                     model.rows(), model.cols(), target.rows(), target.cols()));
  if (!model.allFinite() || !target.allFinite())
    throw ParameterError("registration: non-finite point coordinates");
}

Similarity random_similarity(std::mt19937_64& rng) {
  std::normal_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shift(0.0, std::sqrt(5.0));
  Similarity s;
  s.a = unit(rng);
  s.b = unit(rng);
  s.t1 = shift(rng);
  s.t2 = shift(rng);
  return s;
}

}  // namespace

Eigen::Vector2d Similarity::apply(const Eigen::Vector2d& p) const {
  return {a * p(0) - b * p(1) + t1, b * p(0) + a * p(1) + t2};
}

RegistrationInstance gen_registration_instance(std::uint64_t seed, Index points, Index inliers) {
  if (points < 2) throw ParameterError("registration: at least two points are required");
  if (inliers < 0 || inliers > points)
    throw ParameterError(fmt::format("registration: inlier count {} outside [0, {}]", inliers, points));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  RegistrationInstance inst;
  inst.inlier_count = inliers;
  inst.model_points.resize(2, points);
  for (Index i = 0; i < points; ++i) {
    inst.model_points(0, i) = gauss(rng);
    inst.model_points(1, i) = gauss(rng);
  }
  inst.true_transform = random_similarity(rng);
  inst.outlier_transform = random_similarity(rng);

  inst.target_points.resize(2, points);
  for (Index i = 0; i < points; ++i) {
    const Similarity& t = i < inliers ? inst.true_transform : inst.outlier_transform;
    inst.target_points.col(i) = t.apply(inst.model_points.col(i));
    if (i < inliers) inst.inlier_indices.push_back(i);
  }
  return inst;
}

RegistrationProblem build_registration_problem(const DenseMatrix& model_points,
                                               const DenseMatrix& target_points) {
  check_points(model_points, target_points);
  const Index n = model_points.cols();
  DenseMatrix m(2 * n, 4);
  Vector v(2 * n);
  for (Index i = 0; i < n; ++i) {
    const double px = model_points(0, i);
    const double py = model_points(1, i);
    m.row(2 * i) << px, -py, 1.0, 0.0;
    m.row(2 * i + 1) << py, px, 0.0, 1.0;
    v(2 * i) = target_points(0, i);
    v(2 * i + 1) = target_points(1, i);
  }
  DenseMatrix a = projection_complement(m);
  Vector b = a * v;
  return {VectorProblem(std::move(a), std::move(b)), std::move(m), std::move(v)};
}

RegistrationProblem build_registration_problem(const RegistrationInstance& inst) {
  return build_registration_problem(inst.model_points, inst.target_points);
}

Similarity recover_transform(const DenseMatrix& m, const Vector& v, const Vector& x) {
  if (m.cols() != 4 || m.rows() != v.size() || v.size() != x.size())
    throw ParameterError(fmt::format("recover_transform: shapes {}x{}, {}, {} are inconsistent",
                                     m.rows(), m.cols(), v.size(), x.size()));
  Eigen::JacobiSVD<DenseMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  if (numerical_rank(sigma, 1e-10) < 4)
    throw DegenerateGeometryError("recover_transform: point configuration is degenerate");
  const Eigen::Vector4d y = svd.solve(v - x);
  return Similarity::from_params(y);
}

std::vector<bool> classify_outliers(const Vector& x, Index n_points) {
  if (x.size() != 2 * n_points)
    throw ParameterError(fmt::format("classify_outliers: x has length {}, expected {}", x.size(),
                                     2 * n_points));
  std::vector<bool> out(static_cast<std::size_t>(n_points));
  for (Index i = 0; i < n_points; ++i)
    out[static_cast<std::size_t>(i)] = std::abs(x(2 * i)) > 1e-9 || std::abs(x(2 * i + 1)) > 1e-9;
  return out;
}

double inlier_fit(const RegistrationProblem& rp, const Vector& x,
                  const std::vector<Index>& inlier_points) {
  const Vector r = rp.problem.a * x - rp.problem.b - x;
  double sq = 0.0;
  for (Index i : inlier_points) {
    if (i < 0 || 2 * i + 1 >= r.size())
      throw ParameterError(fmt::format("inlier_fit: point index {} out of range", i));
    sq += r(2 * i) * r(2 * i) + r(2 * i + 1) * r(2 * i + 1);
  }
  return std::sqrt(sq);
}

const RegParams& RegistrationMethodParams::of(Method m) const {
  switch (m) {
    case Method::envelope:
      return envelope;
    case Method::combined:
      return combined;
    case Method::l1:
      return l1;
  }
  throw ParameterError("unknown method");
}

std::vector<RegistrationFit> fit_registration(const DenseMatrix& model, const DenseMatrix& target,
                                              const RegistrationMethodParams& params,
                                              const AdmmSettings& s) {
  const RegistrationProblem rp = build_registration_problem(model, target);
  const Vector x0 = least_squares_init(rp.problem);
  std::vector<RegistrationFit> fits;
  for (Method m : kAllMethods) {
    auto res = admm_vector(rp.problem, params.of(m), s, x0);
    RegistrationFit fit{m, res.x, recover_transform(rp.m, rp.v, res.x), 0,
                        (rp.problem.a * res.x - rp.problem.b).norm(), res.converged()};
    for (bool o : classify_outliers(res.x, model.cols())) fit.outliers += o ? 1 : 0;
    fits.push_back(std::move(fit));
  }
  return fits;
}

std::vector<TrialOutcome> run_registration_sweep(const RegistrationOptions& opts) {
  if (opts.instances < 1) throw ParameterError("registration sweep: instances must be positive");
  opts.admm.validate();
  const auto count = static_cast<std::size_t>(opts.instances);
  constexpr std::size_t methods = std::size(kAllMethods);
  std::vector<TrialOutcome> out(count * methods);

  detail::parallel_for(count, opts.threads, [&](std::size_t trial) {
    const RegistrationInstance inst =
        gen_registration_instance(opts.base_seed + trial, opts.points, opts.inliers);
    const RegistrationProblem rp = build_registration_problem(inst);
    const Vector x0 = least_squares_init(rp.problem);
    const Eigen::Vector4d truth = inst.true_transform.params();

    DenseMatrix m_in(2 * inst.inlier_count, 4);
    Vector v_in(2 * inst.inlier_count);
    for (Index k = 0; k < inst.inlier_count; ++k) {
      const Index i = inst.inlier_indices[static_cast<std::size_t>(k)];
      m_in.middleRows(2 * k, 2) = rp.m.middleRows(2 * i, 2);
      v_in.segment(2 * k, 2) = rp.v.segment(2 * i, 2);
    }
    const Eigen::Vector4d oracle =
        inst.inlier_count >= 2 ? Eigen::Vector4d(least_squares(m_in, v_in))
                               : Eigen::Vector4d::Constant(std::nan(""));

    for (std::size_t k = 0; k < methods; ++k) {
      const Method method = kAllMethods[k];
      auto res = admm_vector(rp.problem, opts.params.of(method), opts.admm, x0);
      const Eigen::Vector4d y = recover_transform(rp.m, rp.v, res.x).params();
      Index outliers = 0;
      for (bool o : classify_outliers(res.x, opts.points)) outliers += o ? 1 : 0;

      TrialOutcome& o = out[trial * methods + k];
      o.method = method;
      o.noise_norm = 0.0;
      o.trial = static_cast<Index>(trial);
      o.cardinality_or_rank = outliers;
      o.dist_oracle = (y - oracle).norm();
      o.dist_gt = (y - truth).norm();
      o.datafit = inlier_fit(rp, res.x, inst.inlier_indices);
      o.converged = res.converged();
    }
  });
  sort_outcomes(out);
  return out;
}

std::pair<DenseMatrix, DenseMatrix> read_correspondences(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open correspondence file " + path.string());
  try {
    detail::LineScanner scan(in);
    std::vector<std::string_view> tokens;
    if (!scan.next(tokens) || tokens.size() != 1)
      throw ParseError("header must be '<N>'", scan.line());
    const Index n = detail::parse_count(tokens[0], scan.line());
    DenseMatrix model(2, n);
    DenseMatrix target(2, n);
    for (Index i = 0; i < n; ++i) {
      const auto row = scan.reals(4, fmt::format("correspondence {}", i));
      model.col(i) << row[0], row[1];
      target.col(i) << row[2], row[3];
    }
    scan.expect_end();
    return {std::move(model), std::move(target)};
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

}  // namespace debias
