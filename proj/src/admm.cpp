#include <cmath>

#include <fmt/format.h>

#include "admm_loop.hpp"
#include "debias/errors.hpp"
#include "debias/solver.hpp"

namespace debias {

VectorProblem::VectorProblem(DenseMatrix a_, Vector b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a.rows() != b.size())
    throw ParameterError(
        fmt::format("problem: A has {} rows but b has length {}", a.rows(), b.size()));
  if (!a.allFinite() || !b.allFinite()) throw ParameterError("problem: non-finite entries");
}

void AdmmSettings::validate() const {
  if (!std::isfinite(rho) || !(rho > 1.0))
    throw ParameterError(fmt::format("ADMM rho must exceed 1, got {}", rho));
  if (max_iters < 1) throw ParameterError("ADMM max_iters must be at least 1");
  if (!(primal_tol > 0.0) || !(objective_tol > 0.0))
    throw ParameterError("ADMM tolerances must be positive");
}

const char* to_string(Termination t) {
  return t == Termination::tolerance ? "tolerance" : "max_iters";
}

double objective_vec(const VectorProblem& prob, const Vector& x, const RegParams& p) {
  if (x.size() != prob.cols())
    throw ParameterError(
        fmt::format("objective: x has length {}, expected {}", x.size(), prob.cols()));
  return reg_value(x, p) + (prob.a * x - prob.b).squaredNorm();
}

Vector least_squares_init(const VectorProblem& prob) {
  return least_squares(prob.a, prob.b);
}

VectorAdmmResult admm_vector(const VectorProblem& prob, const RegParams& p,
                             const AdmmSettings& s, const Vector& x0) {
  s.validate();
  if (p.mu == 0.0 && p.lambda == 0.0)
    throw ParameterError("ADMM needs mu > 0 or lambda > 0");
  if (x0.size() != prob.cols())
    throw ParameterError(
        fmt::format("ADMM: x0 has length {}, expected {}", x0.size(), prob.cols()));
  if (!x0.allFinite()) throw ParameterError("ADMM: x0 has non-finite entries");

  const ProxStrength strength(s.rho);
  const RegularizedLsCache cache(prob.a, s.rho);
  const Vector atb = prob.a.transpose() * prob.b;
  return detail::run_admm<Vector>(
      x0, s, [&](const Vector& c) { return prox(c, p, strength); },
      [&](const Vector& c) { return cache.solve(Vector(s.rho * c + atb)); },
      [&](const Vector& x, const Vector& y) {
        return reg_value(x, p) + (prob.a * y - prob.b).squaredNorm();
      });
}

Vector oracle_solution(const VectorProblem& prob, const std::vector<Index>& support,
                       double lambda, const AdmmSettings& s) {
  const Index n = prob.cols();
  for (Index i : support)
    if (i < 0 || i >= n)
      throw ParameterError(fmt::format("oracle: support index {} out of range [0, {})", i, n));
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw ParameterError("oracle: lambda must be finite and non-negative");

  Vector full = Vector::Zero(n);
  if (support.empty()) return full;

  DenseMatrix a_s(prob.rows(), static_cast<Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) a_s.col(static_cast<Index>(j)) = prob.a.col(support[j]);

  Vector restricted = least_squares(a_s, prob.b);
  if (lambda > 0.0) {
    const VectorProblem sub(a_s, prob.b);
    restricted = admm_vector(sub, RegParams(0.0, lambda), s, restricted).x;
  }
  for (std::size_t j = 0; j < support.size(); ++j) full(support[j]) = restricted(static_cast<Index>(j));
  return full;
}

Index count_nonzero(const Vector& x, double tol) {
  Index count = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x(i)) > tol) ++count;
  return count;
}

std::vector<Index> support_of(const Vector& x, double tol) {
  std::vector<Index> s;
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x(i)) > tol) s.push_back(i);
  return s;
}

}  // namespace debias
