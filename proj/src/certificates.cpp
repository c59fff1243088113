#include "debias/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "debias/errors.hpp"

namespace debias {

namespace {

// C(n, k), saturating at cap + 1.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // Exact: result holds C(n - k + i - 1, i - 1) before the update.
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

ForbiddenBand forbidden_band(const RegParams& p, double delta_k) {
  if (!(delta_k >= 0.0) || !(delta_k < 1.0))
    throw ParameterError(fmt::format("delta_k must lie in [0, 1), got {}", delta_k));
  const double root = p.sqrt_mu();
  const double half_lambda = 0.5 * p.lambda;
  return {(1.0 - delta_k) * root + half_lambda, root / (1.0 - delta_k) + half_lambda};
}

StationarityReport stationarity_check(const VectorProblem& prob, const Vector& x,
                                      const RegParams& p, double tol,
                                      std::optional<double> delta_k) {
  if (x.size() != prob.cols())
    throw ParameterError(
        fmt::format("stationarity: x has length {}, expected {}", x.size(), prob.cols()));
  std::optional<ForbiddenBand> band;
  if (delta_k) band = forbidden_band(p, *delta_k);

  StationarityReport rep;
  rep.tolerance = tol;
  rep.delta_k = delta_k;
  rep.z = x - prob.a.transpose() * (prob.a * x) + prob.a.transpose() * prob.b;
  rep.per_coordinate_margin.resize(x.size());
  bool ok = true;
  for (Index i = 0; i < x.size(); ++i) {
    const double m = subdiff_g(x(i), p).signed_distance(2.0 * rep.z(i));
    rep.per_coordinate_margin(i) = m;
    if (std::abs(m) > tol) ok = false;
    if (band) {
      const double a = std::abs(rep.z(i));
      if (a >= band->lo && a <= band->hi) rep.forbidden_band_hits.push_back(i);
    }
  }
  rep.is_stationary = ok;
  return rep;
}

OracleConditions oracle_condition_check(const VectorProblem& prob, const Vector& x_s,
                                        const std::vector<Index>& support, const RegParams& p) {
  const Index n = prob.cols();
  if (x_s.size() != n)
    throw ParameterError(fmt::format("oracle check: x has length {}, expected {}", x_s.size(), n));
  std::vector<bool> in_support(static_cast<std::size_t>(n), false);
  for (Index i : support) {
    if (i < 0 || i >= n) throw ParameterError("oracle check: support index out of range");
    in_support[static_cast<std::size_t>(i)] = true;
  }
  for (Index i = 0; i < n; ++i)
    if (!in_support[static_cast<std::size_t>(i)] && std::abs(x_s(i)) > 1e-9)
      throw ParameterError(fmt::format("oracle check: x is nonzero at index {} outside the support", i));

  const double root = p.sqrt_mu();
  const Vector eps = prob.a * x_s - prob.b;
  const Vector corr = prob.a.transpose() * eps;
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    if (!in_support[static_cast<std::size_t>(i)]) worst = std::max(worst, std::abs(corr(i)));

  OracleConditions c;
  c.noise_margin = root - worst;
  c.noise_ok = worst < root;
  c.magnitude_margin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i)
    if (std::abs(x_s(i)) > 1e-9) c.magnitude_margin = std::min(c.magnitude_margin, std::abs(x_s(i)) - root);
  c.magnitude_ok = c.magnitude_margin >= 0.0;
  return c;
}

double rip_delta_bruteforce(const DenseMatrix& a, Index k, std::uint64_t enumeration_cap) {
  const Index n = a.cols();
  if (k < 0 || k > n)
    throw ParameterError(fmt::format("RIP: sparsity {} must lie in [0, {}]", k, n));
  if (k == 0) return 0.0;
  const auto count = binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                     enumeration_cap);
  if (count > enumeration_cap)
    throw CapacityError(fmt::format(
        "RIP: C({}, {}) supports exceed the enumeration cap {}; use a smaller K or fewer columns",
        n, k, enumeration_cap));

  const DenseMatrix gram = a.transpose() * a;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Index{0});
  DenseMatrix sub(k, k);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig;
  double delta = 0.0;
  while (true) {
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j) sub(i, j) = gram(idx[i], idx[j]);
    eig.compute(sub, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericError("RIP: eigenvalue iteration failed");
    const auto& ev = eig.eigenvalues();
    delta = std::max({delta, std::abs(ev(0) - 1.0), std::abs(ev(k - 1) - 1.0)});

    // Next combination in lexicographic order.
    Index pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (Index j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return delta;
}

bool separation_check(const Vector& x_prime, const Vector& x_double_prime, Index k) {
  if (x_prime.size() != x_double_prime.size())
    throw ParameterError("separation: vectors differ in length");
  Index differing = 0;
  for (Index i = 0; i < x_prime.size(); ++i)
    if (std::abs(x_prime(i) - x_double_prime(i)) > 1e-9) ++differing;
  return differing > k;
}

}  // namespace debias
