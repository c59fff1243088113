#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "debias/solver.hpp"

namespace debias {

/// Evidence for the stationarity condition 2z' ∈ ∂g(x') where
/// z' = (I − AᵀA)x' + Aᵀb and g = r + ‖·‖².
struct StationarityReport {
  bool is_stationary = false;
  double tolerance = 0.0;
  Vector z;
  /// Signed distance of 2z'_i from ∂g(x_i); 0 when inside.
  Vector per_coordinate_margin;
  /// Indices with |z'_i| inside [(1−δ)√mu + lambda/2, √mu/(1−δ) + lambda/2].
  std::vector<Index> forbidden_band_hits;
  std::optional<double> delta_k;
};

struct ForbiddenBand {
  double lo;
  double hi;
};

ForbiddenBand forbidden_band(const RegParams& p, double delta_k);

StationarityReport stationarity_check(const VectorProblem& prob, const Vector& x,
                                      const RegParams& p, double tol = 1e-6,
                                      std::optional<double> delta_k = std::nullopt);

/// The two sufficient conditions for the oracle solution x_S to be stationary:
/// no entry with magnitude in (0, √mu), and ‖A_S̄ᵀ(A_S x_S − b)‖∞ < √mu.
struct OracleConditions {
  bool magnitude_ok = false;
  bool noise_ok = false;
  /// √mu − ‖A_S̄ᵀ ε‖∞.
  double noise_margin = 0.0;
  /// min over nonzero entries of |x_i| − √mu; +inf when x_S is zero.
  double magnitude_margin = 0.0;

  bool holds() const noexcept { return magnitude_ok && noise_ok; }
};

OracleConditions oracle_condition_check(const VectorProblem& prob, const Vector& x_s,
                                        const std::vector<Index>& support, const RegParams& p);

/// Exact restricted isometry constant δ_K by enumerating every support of size k.
/// Throws CapacityError when C(cols, k) exceeds `enumeration_cap`.
double rip_delta_bruteforce(const DenseMatrix& a, Index k,
                            std::uint64_t enumeration_cap = 2'000'000);

/// True iff x' and x'' differ (beyond 1e-9) in more than k coordinates.
bool separation_check(const Vector& x_prime, const Vector& x_double_prime, Index k);

}  // namespace debias
