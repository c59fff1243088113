#include "debias/envelope.hpp"

#include <cmath>
#include <limits>

#include "debias/errors.hpp"

namespace debias {

GridFunction GridFunction::sample(double half_width, double step,
                                  const std::function<double(double)>& fn) {
  if (!(step > 0.0) || !(half_width >= 0.0))
    throw ParameterError("grid needs a positive step and non-negative half width");
  const auto half = static_cast<long>(std::floor(half_width / step + 1e-9));
  GridFunction g;
  g.x.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long i = -half; i <= half; ++i) g.x.push_back(static_cast<double>(i) * step);
  g.f.reserve(g.x.size());
  for (double v : g.x) g.f.push_back(fn(v));
  return g;
}

std::vector<double> s_transform_grid(const GridFunction& g, double gamma) {
  if (g.x.empty()) throw ParameterError("s_transform_grid: empty grid");
  if (g.x.size() != g.f.size()) throw ParameterError("s_transform_grid: size mismatch");
  if (!(gamma > 0.0)) throw ParameterError("s_transform_grid: gamma must be positive");
  const double half_gamma = 0.5 * gamma;
  const std::size_t n = g.x.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = g.x[i];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = xi - g.x[j];
      const double v = -g.f[j] - half_gamma * d * d;
      if (v > best) best = v;
    }
    out[i] = best;
  }
  return out;
}

GridFunction quadratic_envelope_grid(const GridFunction& g, double gamma) {
  GridFunction once{g.x, s_transform_grid(g, gamma)};
  return GridFunction{g.x, s_transform_grid(once, gamma)};
}

}  // namespace debias
