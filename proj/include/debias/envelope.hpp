#pragma once

#include <functional>
#include <vector>

namespace debias {

/// A function sampled on a uniform grid symmetric about zero.
struct GridFunction {
  std::vector<double> x;
  std::vector<double> f;

  /// Samples `fn` on [-half_width, half_width]; 0 is always a node.
  static GridFunction sample(double half_width, double step,
                             const std::function<double(double)>& fn);
};

/// Brute-force S_γ transform, S_γ(f)(x) = sup_y −f(y) − (γ/2)(x − y)², with the
/// supremum taken over the grid nodes. O(n²); a reference for tests.
std::vector<double> s_transform_grid(const GridFunction& g, double gamma);

/// Quadratic envelope Q_γ(f) = S_γ(S_γ(f)) on the same grid.
GridFunction quadratic_envelope_grid(const GridFunction& g, double gamma);

}  // namespace debias
