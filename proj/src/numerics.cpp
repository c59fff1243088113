#include "debias/numerics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "debias/errors.hpp"
#include "text_scan.hpp"

namespace debias {

using detail::blank;
using detail::parse_count;
using detail::parse_real;
using detail::split_ws;

namespace {

std::string shape(const DenseMatrix& m) {
  return fmt::format("{}x{}", m.rows(), m.cols());
}

}  // namespace

DenseMatrix SvdFactors::reconstruct() const {
  return u * sigma.asDiagonal() * vt;
}

bool all_finite(const DenseMatrix& m) {
  return m.allFinite();
}

SvdFactors svd(const DenseMatrix& m) {
  if (!m.allFinite())
    throw ParameterError("svd: input " + shape(m) + " has non-finite entries");
  const Index k = std::min(m.rows(), m.cols());
  SvdFactors f;
  if (k == 0) {
    f.u = DenseMatrix::Zero(m.rows(), 0);
    f.sigma = Vector::Zero(0);
    f.vt = DenseMatrix::Zero(0, m.cols());
    return f;
  }
  Eigen::JacobiSVD<DenseMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success)
    throw NumericError("svd: iteration did not converge for " + shape(m) + " matrix");
  f.u = solver.matrixU();
  f.sigma = solver.singularValues();
  f.vt = solver.matrixV().transpose();

  // Eigen already sorts in decreasing order; fix the column signs.
  const double scale = f.sigma.size() > 0 ? std::max(f.sigma(0), 1.0) : 1.0;
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < f.u.rows(); ++i) {
      const double v = f.u(i, j);
      if (std::abs(v) > 1e-12 * scale) {
        if (v < 0) {
          f.u.col(j) *= -1.0;
          f.vt.row(j) *= -1.0;
        }
        break;
      }
    }
  }
  return f;
}

Index numerical_rank(const Vector& sigma, double rel_tol) {
  if (sigma.size() == 0) return 0;
  const double top = sigma.maxCoeff();
  if (top <= 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > rel_tol * top) ++r;
  return r;
}

RegularizedLsCache::RegularizedLsCache(const DenseMatrix& a, double rho) : rho_(rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw ParameterError(fmt::format("least-squares cache: rho must be positive, got {}", rho));
  DenseMatrix gram = a.transpose() * a;
  gram.diagonal().array() += rho;
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success)
    throw NumericError("least-squares cache: factorization failed for " + shape(a) + " matrix");
}

Vector RegularizedLsCache::solve(const Vector& c) const {
  if (c.size() != llt_.rows())
    throw ParameterError(fmt::format("least-squares cache: rhs length {} does not match {}",
                                     c.size(), llt_.rows()));
  return llt_.solve(c);
}

DenseMatrix RegularizedLsCache::solve(const DenseMatrix& c) const {
  if (c.rows() != llt_.rows())
    throw ParameterError(fmt::format("least-squares cache: rhs rows {} do not match {}",
                                     c.rows(), llt_.rows()));
  return llt_.solve(c);
}

RegularizedLsCache make_ls_cache(const DenseMatrix& a, double rho) {
  return RegularizedLsCache(a, rho);
}

Vector solve_with_cache(const RegularizedLsCache& cache, const Vector& c) {
  return cache.solve(c);
}

DenseMatrix projection_complement(const DenseMatrix& m) {
  if (m.cols() == 0) return DenseMatrix::Identity(m.rows(), m.rows());
  if (m.cols() > m.rows())
    throw DegenerateGeometryError("projection_complement: " + shape(m) +
                                  " matrix cannot have full column rank");
  const SvdFactors f = svd(m);
  const double top = f.sigma(0);
  const double bottom = f.sigma(f.sigma.size() - 1);
  if (!(top > 0.0) || bottom <= 1e-10 * top)
    throw DegenerateGeometryError("projection_complement: " + shape(m) +
                                  " matrix is rank deficient");
  DenseMatrix p = -f.u * f.u.transpose();
  p.diagonal().array() += 1.0;
  // Exact symmetry; the product above is symmetric only up to rounding.
  return 0.5 * (p + p.transpose());
}

Vector least_squares(const DenseMatrix& a, const Vector& b) {
  if (a.rows() != b.size())
    throw ParameterError(fmt::format("least_squares: A is {} but b has length {}", shape(a),
                                     b.size()));
  if (a.cols() == 0) return Vector::Zero(0);
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod(a);
  return cod.solve(b);
}

DenseMatrix parse_matrix(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  bool have_header = false;
  Index rows = 0;
  Index cols = 0;
  while (!have_header && std::getline(in, text)) {
    ++line_no;
    if (blank(text)) continue;
    const auto tokens = split_ws(text);
    if (tokens.size() != 2) throw ParseError("header must be '<rows> <cols>'", line_no);
    rows = parse_count(tokens[0], line_no);
    cols = parse_count(tokens[1], line_no);
    have_header = true;
  }
  if (!have_header) throw ParseError("missing header", line_no);

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(rows * cols));
  Index row = 0;
  while (row < rows && std::getline(in, text)) {
    ++line_no;
    if (blank(text)) continue;
    const auto tokens = split_ws(text);
    if (static_cast<Index>(tokens.size()) != cols)
      throw ParseError(fmt::format("expected {} entries, found {}", cols, tokens.size()), line_no);
    for (auto t : tokens) values.push_back(parse_real(t, line_no));
    ++row;
  }
  if (row < rows)
    throw ParseError(fmt::format("expected {} rows, found {}", rows, row), line_no);
  while (std::getline(in, text)) {
    ++line_no;
    if (!blank(text)) throw ParseError("trailing data after last row", line_no);
  }

  DenseMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return m;
}

void format_matrix(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << fmt::format("{:.17g}", m(i, j));
    }
    out << '\n';
  }
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file " + path.string(), 0);
  try {
    return parse_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file " + path.string());
  format_matrix(out, m);
  if (!out) throw Error("failed writing matrix file " + path.string());
}

}  // namespace debias
