#include <fstream>

#include <fmt/format.h>

#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "text_scan.hpp"

namespace debias {

namespace {

constexpr double kMocapOrthonormalTol = 1e-6;

DenseMatrix read_block(detail::LineScanner& scan, Index rows, Index cols, std::string_view what) {
  DenseMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto row = scan.reals(static_cast<std::size_t>(cols), fmt::format("{} row {}", what, i));
    for (Index j = 0; j < cols; ++j) out(i, j) = row[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace

NrsfmInstance read_mocap(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open MOCAP file " + path.string());
  try {
    detail::LineScanner scan(in);
    std::vector<std::string_view> tokens;
    if (!scan.next(tokens) || tokens.size() != 3)
      throw ParseError("header must be '<F> <m> <has_gt>'", scan.line());
    const Index frames = detail::parse_count(tokens[0], scan.line());
    const Index points = detail::parse_count(tokens[1], scan.line());
    if (frames < 1 || points < 1) throw ParseError("F and m must be positive", scan.line());
    if (tokens[2] != "0" && tokens[2] != "1") throw ParseError("has_gt must be 0 or 1", scan.line());
    const bool has_gt = tokens[2] == "1";

    std::vector<Camera> cameras;
    for (Index f = 0; f < frames; ++f) {
      const Camera c = read_block(scan, 2, 3, fmt::format("camera {}", f));
      const double err = (c * c.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
      if (err > kMocapOrthonormalTol)
        throw IngestionError(fmt::format("{}: camera of frame {} is not orthonormal (deviation {:.3g})",
                                         path.string(), f, err));
      cameras.push_back(c);
    }
    DenseMatrix m = read_block(scan, 2 * frames, points, "measurements");
    std::optional<DenseMatrix> x_gt;
    if (has_gt) x_gt = read_block(scan, 3 * frames, points, "ground truth");
    scan.expect_end();

    NrsfmInstance inst{NrsfmProblem::from_cameras(cameras, std::move(m), kMocapOrthonormalTol),
                       std::move(x_gt), 0};
    if (inst.x_gt) inst.true_rank = numerical_rank(svd(to_sharp(*inst.x_gt, frames)).sigma);
    return inst;
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

void write_mocap(const std::filesystem::path& path, const NrsfmInstance& inst) {
  const NrsfmProblem& prob = inst.problem;
  std::string text = fmt::format("{} {} {}\n", prob.frames(), prob.points(), inst.x_gt ? 1 : 0);
  auto rows = [&](const DenseMatrix& block) {
    for (Index i = 0; i < block.rows(); ++i) {
      for (Index j = 0; j < block.cols(); ++j)
        text += (j == 0 ? "" : " ") + fmt::format("{:.17g}", block(i, j));
      text += '\n';
    }
  };
  for (Index f = 0; f < prob.frames(); ++f) rows(prob.camera(f));
  rows(prob.m());
  if (inst.x_gt) rows(*inst.x_gt);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write MOCAP file " + path.string());
  out << text;
  if (!out) throw Error("failed writing MOCAP file " + path.string());
}

}  // namespace debias
