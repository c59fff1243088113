#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "debias/solver.hpp"

namespace debias::detail {

inline constexpr std::size_t kPlateauWindow = 5;

inline bool objective_plateau(const std::vector<double>& trace, double tol) {
  if (trace.size() < kPlateauWindow) return false;
  const auto first = trace.end() - static_cast<std::ptrdiff_t>(kPlateauWindow);
  const auto [lo, hi] = std::minmax_element(first, trace.end());
  return *hi - *lo <= tol * std::max(1.0, std::abs(trace.back()));
}

/// Shared ADMM iteration for the vector and matrix problems. `prox_step(c)`
/// returns argmin_x r(x) + ρ‖x − c‖², `y_step(c)` returns the data-fit update
/// for the centre c = x + η, and `objective(x, y)` evaluates r(x) + datafit(y).
template <class T, class Prox, class YStep, class Objective>
AdmmResult<T> run_admm(const T& x0, const AdmmSettings& s, Prox&& prox_step, YStep&& y_step,
                       Objective&& objective) {
  AdmmResult<T> res;
  T x = x0;
  T y = x0;
  T eta = T::Zero(x0.rows(), x0.cols());
  for (Index t = 1; t <= s.max_iters; ++t) {
    x = prox_step(T(y - eta));
    T y_prev = std::move(y);
    y = y_step(T(x + eta));
    eta += x - y;

    const double primal = (x - y).norm();
    const double change = (y - y_prev).norm();
    res.residual_trace.push_back(primal);
    res.objective_trace.push_back(objective(x, y));
    res.iterations = t;
    if (primal <= s.primal_tol && change <= s.primal_tol &&
        objective_plateau(res.objective_trace, s.objective_tol)) {
      res.terminated_by = Termination::tolerance;
      break;
    }
  }
  res.primal_residual = (x - y).norm();
  res.objective = res.objective_trace.empty() ? objective(x, y) : res.objective_trace.back();
  res.x = std::move(x);
  res.y = std::move(y);
  return res;
}

}  // namespace debias::detail
