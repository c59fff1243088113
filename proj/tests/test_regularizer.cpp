#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "debias/errors.hpp"
#include "debias/regularizer.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace debias;
using namespace debias::testing::oracle;

namespace {

// Singular values of a 2×2 matrix in closed form.
std::pair<double, double> sv2(double a, double b, double c, double d) {
  const double e = (a + d) / 2, f = (a - d) / 2, g = (c + b) / 2, h = (c - b) / 2;
  const double q = std::hypot(e, h), r = std::hypot(f, g);
  return {q + r, std::abs(q - r)};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(RegParams(-1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(RegParams(0.0, -0.1), ParameterError);
  CHECK_THROWS_AS(RegParams(std::nan(""), 0.0), ParameterError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(RegParams(1.0, inf), ParameterError);
  CHECK_NOTHROW(RegParams(0.0, 0.0));
  CHECK_THROWS_AS(ProxStrength{1.0}, ParameterError);
  CHECK_THROWS_AS(ProxStrength{0.5}, ParameterError);
  CHECK_THROWS_AS(ProxStrength{inf}, ParameterError);
  CHECK(RegParams(4.0, 1.0).threshold() == 2.5);
}

TEST_CASE("scalar regularizer values") {
  CHECK(reg_value(0.0, RegParams(3.0, 1.5)) == 0.0);
  CHECK(reg_value(2.0, RegParams(1.0, 0.0)) == 1.0);
  CHECK(reg_value(2.0, RegParams(0.0, 0.7)) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(reg_value(0.5, RegParams(1.0, 0.0)) == doctest::Approx(0.75));
  CHECK(reg_value(-0.5, RegParams(1.0, 0.2)) == doctest::Approx(0.85));
}

TEST_CASE("scalar regularizer stays in [0, mu + lambda|x|]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-6, 6), mu(0, 4), lambda(0, 2);
  for (int i = 0; i < 10000; ++i) {
    const RegParams p(mu(rng), lambda(rng));
    const double v = x(rng);
    const double r = reg_value(v, p);
    CHECK(r >= 0.0);
    CHECK(r <= p.mu + p.lambda * std::abs(v) + 1e-12);
  }
}

TEST_CASE("vector regularizer values and reductions") {
  CHECK(reg_value(testing::vec({2, 3}), RegParams(1, 0)) == 2.0);
  CHECK(reg_value(Vector::Zero(5), RegParams(1, 1)) == 0.0);
  CHECK(reg_value(testing::vec({0, 3}), RegParams(1, 0)) == 1.0);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = testing::gaussian(7, 1, rng) * 2.0;
    CHECK(reg_value(x, RegParams(0.0, 0.7)) == doctest::Approx(0.7 * x.lpNorm<1>()).epsilon(1e-14));
    double envelope = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double gap = std::max(1.5 - std::abs(x(i)), 0.0);
      envelope += 2.25 - gap * gap;
    }
    CHECK(reg_value(x, RegParams(2.25, 0.0)) == doctest::Approx(envelope).epsilon(1e-14));
  }
}

TEST_CASE("matrix regularizer values") {
  CHECK(reg_value_spectral(DenseMatrix::Zero(3, 2), RegParams(1, 1)) == 0.0);
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(reg_value_spectral(d, RegParams(1, 0)) == doctest::Approx(2.0));

  std::mt19937_64 rng(4);
  const DenseMatrix u = testing::random_orthogonal(2, rng);
  const DenseMatrix v = testing::random_orthogonal(2, rng);
  CHECK(reg_value_spectral(u * d * v.transpose(), RegParams(1, 0)) == doctest::Approx(2.0));
  CHECK(reg_value_spectral(u * d * v.transpose(), RegParams(0, 0.5)) == doctest::Approx(2.5));
}

TEST_CASE("soft thresholding") {
  CHECK(soft_threshold(2.0, 0.125) == 1.875);
  CHECK(soft_threshold(0.1, 0.2) == 0.0);
  CHECK(soft_threshold(-1.0, 0.0) == -1.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
}

TEST_CASE("scalar prox fixtures against the grid oracle") {
  const ProxStrength two(2.0);

  SUBCASE("large input passes through after shrinkage") {
    const double x = prox(2.0, RegParams(1, 0.5), two);
    CHECK(x == 1.875);
    CHECK(std::abs(x - grid_prox(2.0, 1, 0.5, 2).arg) <= 1e-4);
  }
  SUBCASE("input at the zero threshold") {
    const double x = prox(0.5, RegParams(1, 0), two);
    const GridMin g = grid_prox(0.5, 1, 0, 2);
    CHECK(std::abs(x - g.arg) <= 1e-4);
    CHECK(x == 0.0);
    CHECK(prox_objective(x, 0.5, 1, 0, 2) <= g.value + 1e-12);
  }
  SUBCASE("middle branch") {
    const double x = prox(0.75, RegParams(1, 0), two);
    CHECK(x == doctest::Approx(0.5));
    CHECK(std::abs(x - grid_prox(0.75, 1, 0, 2).arg) <= 1e-4);
  }
  SUBCASE("small input is zeroed") {
    CHECK(prox(0.3, RegParams(1, 0.5), two) == 0.0);
    CHECK(grid_prox(0.3, 1, 0.5, 2).arg == 0.0);
  }
  SUBCASE("all-zero parameters give the identity") {
    CHECK(prox(1.234, RegParams(0, 0), two) == 1.234);
  }
}

TEST_CASE("scalar prox attains the grid minimum on random cases") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> y(-5, 5), mu(0, 4), lambda(0, 2), rho(1.0, 5.0);
  for (int i = 0; i < 300; ++i) {
    double r = rho(rng);
    if (r <= 1.0) r = 1.5;
    const double yy = y(rng), m = mu(rng), l = lambda(rng);
    const double x = prox(yy, RegParams(m, l), ProxStrength(r));
    const GridMin g = grid_prox(yy, m, l, r, 1e-3);
    CHECK(prox_objective(x, yy, m, l, r) <= g.value + 1e-9);
  }
}

TEST_CASE("prox composes soft thresholding with the envelope prox exactly") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> y(-5, 5), mu(0, 4), lambda(0, 2), rho(1.01, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double yy = y(rng), m = mu(rng), l = lambda(rng), r = rho(rng);
    const ProxStrength s(r);
    CHECK(prox(yy, RegParams(m, l), s) == prox(soft_threshold(yy, l / (2 * r)), RegParams(m, 0), s));
  }
}

TEST_CASE("prox is odd, monotone and continuous") {
  for (const auto& [m, l, r] : {std::tuple{1.0, 0.0, 2.0}, {1.0, 0.5, 2.0}, {2.5, 1.3, 1.1}, {0.0, 1.0, 3.0}}) {
    const RegParams p(m, l);
    const ProxStrength s(r);
    double prev = prox(-6.0, p, s);
    for (int i = -60000; i <= 60000; ++i) {
      const double y = i * 1e-4;
      const double x = prox(y, p, s);
      CHECK(prox(-y, p, s) == -x);
      CHECK(x >= prev);
      // The largest slope of the prox is ρ/(ρ−1), attained on the middle branch.
      CHECK(x - prev <= r / (r - 1.0) * 1e-4 + 1e-12);
      prev = x;
    }
    // Continuity at the branch points.
    const double sq = std::sqrt(m);
    for (double z : {sq, sq / r}) {
      const double y = z + l / (2 * r);
      CHECK(std::abs(prox(y + 1e-12, p, s) - prox(y - 1e-12, p, s)) <= 1e-9);
    }
  }
}

TEST_CASE("vector prox is entrywise") {
  const RegParams p(1, 0);
  const ProxStrength s(2.0);
  CHECK(prox(Vector::Zero(3), p, s) == Vector::Zero(3));
  CHECK(prox(testing::vec({2, 0.5}), p, s) == testing::vec({2, 0}));
  CHECK(prox(testing::vec({-2, 0.5}), p, s) == testing::vec({-2, 0}));
  CHECK(prox(testing::vec({-2, 0.75, -0.75}), p, s).isApprox(testing::vec({-2, 0.5, -0.5})));
}

TEST_CASE("matrix prox acts on singular values") {
  const RegParams p(1, 0);
  const ProxStrength s(2.0);
  CHECK(prox_spectral(DenseMatrix::Zero(2, 3), p, s).norm() == 0.0);

  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 0.5;
  DenseMatrix expected = DenseMatrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  CHECK((prox_spectral(d, p, s) - expected).norm() < 1e-12);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix y = testing::gaussian(4, 3, rng) * 1.5;
    const RegParams q(1.0, 0.5);
    const Vector in = svd(y).sigma;
    const Vector out = svd(prox_spectral(y, q, s)).sigma;
    for (Index i = 0; i < in.size(); ++i) CHECK(out(i) == doctest::Approx(prox(in(i), q, s)).epsilon(1e-10));
  }
}

TEST_CASE("matrix prox is unitarily invariant") {
  std::mt19937_64 rng(10);
  const RegParams p(1.0, 0.5);
  const ProxStrength s(2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix y = testing::gaussian(3, 3, rng) * 1.5;
    const DenseMatrix u = testing::random_orthogonal(3, rng);
    const DenseMatrix v = testing::random_orthogonal(3, rng);
    const DenseMatrix lhs = prox_spectral(u * y * v.transpose(), p, s);
    const DenseMatrix rhs = u * prox_spectral(y, p, s) * v.transpose();
    CHECK((lhs - rhs).norm() < 1e-8);
  }
}

TEST_CASE("matrix prox matches a 4-D grid search") {
  std::mt19937_64 rng(12);
  const double mu = 1.0, lambda = 0.5, rho = 2.0;
  const DenseMatrix y = testing::gaussian(2, 2, rng);
  const DenseMatrix x = prox_spectral(y, RegParams(mu, lambda), ProxStrength(rho));

  auto objective = [&](double a, double b, double c, double d) {
    const auto [s1, s2] = sv2(a, b, c, d);
    const double da = a - y(0, 0), db = b - y(0, 1), dc = c - y(1, 0), dd = d - y(1, 1);
    return (r_term(s1, mu, lambda) + r_term(s2, mu, lambda)) / rho + da * da + db * db + dc * dc + dd * dd;
  };

  const double step = 0.05;
  const int half = 40;
  double best = std::numeric_limits<double>::infinity();
  double arg[4] = {0, 0, 0, 0};
  const double lo[4] = {std::round(y(0, 0) / step) * step, std::round(y(0, 1) / step) * step,
                        std::round(y(1, 0) / step) * step, std::round(y(1, 1) / step) * step};
  for (int i = -half; i <= half; ++i)
    for (int j = -half; j <= half; ++j)
      for (int k = -half; k <= half; ++k)
        for (int l = -half; l <= half; ++l) {
          const double a = lo[0] + i * step, b = lo[1] + j * step, c = lo[2] + k * step, d = lo[3] + l * step;
          const double v = objective(a, b, c, d);
          if (v < best) {
            best = v;
            arg[0] = a, arg[1] = b, arg[2] = c, arg[3] = d;
          }
        }
  CHECK(objective(x(0, 0), x(0, 1), x(1, 0), x(1, 1)) <= best + 1e-12);
  CHECK(std::abs(x(0, 0) - arg[0]) <= step);
  CHECK(std::abs(x(0, 1) - arg[1]) <= step);
  CHECK(std::abs(x(1, 0) - arg[2]) <= step);
  CHECK(std::abs(x(1, 1) - arg[3]) <= step);
}

TEST_CASE("separable minimizer set") {
  const RegParams p(1.0, 0.4);

  const ArgminSet above = separable_argmin_set(2.0, p);
  CHECK(above.kind == ArgminSet::Kind::singleton);
  CHECK(above.lo == doctest::Approx(1.8));
  CHECK(above.pick() == doctest::Approx(1.8));

  const ArgminSet tie = separable_argmin_set(1.2, p);
  CHECK(tie.kind == ArgminSet::Kind::interval);
  CHECK(tie.lo == 0.0);
  CHECK(tie.hi == 1.0);
  CHECK(tie.pick() == 0.0);

  const ArgminSet neg_tie = separable_argmin_set(-1.2, p);
  CHECK(neg_tie.lo == -1.0);
  CHECK(neg_tie.hi == 0.0);

  const ArgminSet below = separable_argmin_set(0.5, p);
  CHECK(below.kind == ArgminSet::Kind::zero);
  CHECK(below.pick() == 0.0);

  CHECK(separable_argmin_set(-2.0, p).lo == doctest::Approx(-1.8));
}

TEST_CASE("separable minimizer set matches brute force") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> z(-5, 5), mu(0.1, 4), lambda(0, 2);
  for (int i = 0; i < 300; ++i) {
    const double zz = z(rng), m = mu(rng), l = lambda(rng);
    const ArgminSet set = separable_argmin_set(zz, RegParams(m, l));
    double best = std::numeric_limits<double>::infinity();
    for (long k = -60000; k <= 60000; ++k) {
      const double x = k * 1e-4;
      best = std::min(best, r_term(x, m, l) + (x - zz) * (x - zz));
    }
    const double picked = set.pick();
    CHECK(r_term(picked, m, l) + (picked - zz) * (picked - zz) <= best + 1e-9);
  }
}

TEST_CASE("subdifferential of g") {
  const SubdiffInterval a = subdiff_g(3.0, RegParams(1, 0));
  CHECK(a.is_singleton());
  CHECK(a.lo == 6.0);

  const SubdiffInterval b = subdiff_g(0.0, RegParams(1, 0.4));
  CHECK(b.lo == doctest::Approx(-2.4));
  CHECK(b.hi == doctest::Approx(2.4));

  const SubdiffInterval c = subdiff_g(0.5, RegParams(1, 0));
  CHECK(c.is_singleton());
  CHECK(c.lo == 2.0);

  CHECK(subdiff_g(-0.5, RegParams(1, 0.4)).lo == doctest::Approx(-2.4));
  CHECK(subdiff_g(1.0, RegParams(1, 0.4)).lo == doctest::Approx(2.4));
  CHECK(subdiff_g(0.0, RegParams(0, 0)).lo == 0.0);
  CHECK(subdiff_g(0.0, RegParams(0, 0)).hi == 0.0);

  CHECK(b.signed_distance(3.0) == doctest::Approx(0.6));
  CHECK(b.signed_distance(-3.0) == doctest::Approx(-0.6));
  CHECK(b.signed_distance(1.0) == 0.0);
}

TEST_CASE("minimizer set and subdifferential agree") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> z(-5, 5), mu(0.1, 4), lambda(0, 2), x(-6, 6);
  for (int i = 0; i < 2000; ++i) {
    const double zz = z(rng);
    const RegParams p(mu(rng), lambda(rng));
    const ArgminSet set = separable_argmin_set(zz, p);
    for (double member : {set.lo, set.hi, 0.5 * (set.lo + set.hi), set.pick()})
      CHECK(subdiff_g(member, p).contains(2.0 * zz, 1e-9));
    for (int k = 0; k < 5; ++k) {
      const double cand = x(rng);
      const bool in_set = set.contains(cand, 1e-9);
      const bool stationary = subdiff_g(cand, p).contains(2.0 * zz, 1e-9);
      CHECK(in_set == stationary);
    }
  }
  // The tie point itself, where the set is an interval.
  const RegParams p(1.0, 0.4);
  const ArgminSet tie = separable_argmin_set(p.threshold(), p);
  for (double cand : {0.0, 0.25, 0.5, 1.0}) CHECK(subdiff_g(cand, p).contains(2.0 * p.threshold(), 1e-12));
  CHECK(tie.kind == ArgminSet::Kind::interval);
}
