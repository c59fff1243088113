#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "debias/nrsfm.hpp"
#include "debias/solver.hpp"

namespace debias {

/// The three members of the regularizer family compared in every experiment:
/// mu-only (envelope), mu and lambda (combined), lambda-only (ℓ1, or the
/// nuclear norm for matrices).
enum class Method { envelope, combined, l1 };

inline constexpr Method kAllMethods[] = {Method::envelope, Method::combined, Method::l1};

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

/// One solved trial. `noise_norm` carries the swept parameter of the
/// experiment: ‖ε‖ for compressed sensing, √mu for NRSfM, 0 for registration.
/// Quantities with no reference (e.g. no ground truth) are NaN.
struct TrialOutcome {
  Method method = Method::envelope;
  double noise_norm = 0.0;
  Index trial = 0;
  Index cardinality_or_rank = 0;
  double dist_oracle = 0.0;
  double dist_gt = 0.0;
  double datafit = 0.0;
  bool converged = false;

  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

/// Orders by (method, noise_norm, trial).
void sort_outcomes(std::vector<TrialOutcome>& outcomes);

// ---------------------------------------------------------------------------
// Random compressed sensing

struct CsTrialConfig {
  Index p = 100;
  Index n = 200;
  Index sparsity = 10;
  double magnitude_lo = 2.0;
  double magnitude_hi = 4.0;
  double noise_norm = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct CsInstance {
  VectorProblem problem;
  Vector x_true;
  std::vector<Index> support;
  double noise_norm = 0.0;
};

/// A has i.i.d. columns uniform on the unit sphere; x_true has `sparsity`
/// entries with uniform magnitudes and random signs; b = A·x_true + ε with ε a
/// Gaussian direction scaled to exactly `noise_norm`.
CsInstance gen_cs_instance(const CsTrialConfig& cfg);

/// ℓ1 weight 2·√(2 ln n)/√n · ‖ε‖.
double l1_lambda(double noise_norm, Index n);

/// mu = 1, lambda = 0 (envelope); mu = 1, lambda = l1_lambda/6 (combined);
/// mu = 0, lambda = l1_lambda (ℓ1).
RegParams cs_method_params(Method m, double noise_norm, Index n);

/// Solves one instance with one method from the least-squares initialization.
/// When the parameters are all zero the least-squares point itself is returned.
TrialOutcome run_cs_trial(const CsInstance& inst, Method m, const Vector& oracle,
                          const AdmmSettings& s);

struct CsSweepOptions {
  std::vector<double> noise_levels;
  Index trials = 20;
  std::uint64_t base_seed = 0;
  /// Template for every trial; noise_norm and seed are overwritten.
  CsTrialConfig base;
  AdmmSettings admm;
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Trial t of every level uses seed base_seed + t. Output is sorted.
std::vector<TrialOutcome> run_cs_sweep(const CsSweepOptions& opts);

// ---------------------------------------------------------------------------
// Point-set registration with outliers

/// q = [a −b; b a]·p + t.
struct Similarity {
  double a = 1.0;
  double b = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;

  Eigen::Vector4d params() const { return {a, b, t1, t2}; }
  static Similarity from_params(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }
  Eigen::Vector2d apply(const Eigen::Vector2d& p) const;
};

struct RegistrationInstance {
  DenseMatrix model_points;   // 2×N
  DenseMatrix target_points;  // 2×N
  Index inlier_count = 60;
  Similarity true_transform;
  Similarity outlier_transform;
  std::vector<Index> inlier_indices;
};

/// N Gaussian points split into groups of `inliers` and N − `inliers`, each
/// moved by its own random similarity (a, b ~ N(0, 1), t ~ N(0, 5I)). No
/// additive noise.
RegistrationInstance gen_registration_instance(std::uint64_t seed, Index points = 100,
                                               Index inliers = 60);

/// Residual ‖M·y − v + x‖² with y = (a, b, t1, t2) eliminated in closed form:
/// A = I − M(MᵀM)⁻¹Mᵀ, b = A·v.
struct RegistrationProblem {
  VectorProblem problem;
  DenseMatrix m;  // 2N×4
  Vector v;       // 2N
};

RegistrationProblem build_registration_problem(const DenseMatrix& model_points,
                                               const DenseMatrix& target_points);
RegistrationProblem build_registration_problem(const RegistrationInstance& inst);

/// y = (MᵀM)⁻¹Mᵀ(v − x).
Similarity recover_transform(const DenseMatrix& m, const Vector& v, const Vector& x);

/// Point i is an outlier iff x_{2i} or x_{2i+1} is nonzero (|·| > 1e-9).
std::vector<bool> classify_outliers(const Vector& x, Index n_points);

/// Residual of the recovered transform on the given points: ‖(M·y − v)_I‖ with
/// y = recover_transform(m, v, x), computed as A·x − b − x.
double inlier_fit(const RegistrationProblem& rp, const Vector& x,
                  const std::vector<Index>& inlier_points);

struct RegistrationMethodParams {
  RegParams envelope{1.0, 0.0};
  RegParams combined{1.0, 0.5};
  RegParams l1{0.0, 2.0};

  const RegParams& of(Method m) const;
};

struct RegistrationOptions {
  Index instances = 100;
  std::uint64_t base_seed = 0;
  Index points = 100;
  Index inliers = 60;
  RegistrationMethodParams params;
  AdmmSettings admm;
  unsigned threads = 0;
};

/// Per instance and method: least-squares initialization, ADMM, then
/// cardinality = outlier count, datafit = inlier_fit on the true inliers,
/// dist_gt = ‖params − true params‖, dist_oracle = ‖params − inlier-LS params‖.
std::vector<TrialOutcome> run_registration_sweep(const RegistrationOptions& opts);

/// Correspondence file: line 1 "N", then N lines "p_x p_y q_x q_y".
std::pair<DenseMatrix, DenseMatrix> read_correspondences(const std::filesystem::path& path);

struct RegistrationFit {
  Method method;
  Vector x;
  Similarity transform;
  Index outliers = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Robust fit of model → target with each method (no ground truth needed).
std::vector<RegistrationFit> fit_registration(const DenseMatrix& model, const DenseMatrix& target,
                                              const RegistrationMethodParams& params,
                                              const AdmmSettings& s);

// ---------------------------------------------------------------------------
// Non-rigid structure from motion

struct NrsfmInstance {
  NrsfmProblem problem;
  std::optional<DenseMatrix> x_gt;
  Index true_rank = 0;
};

/// X# = C·B with Gaussian C (F×rank) and B (rank×3m); each camera keeps two
/// rows of an orthonormalized Gaussian 3×3 matrix; M = R·X.
NrsfmInstance gen_nrsfm_instance(Index frames, Index points, Index rank, std::uint64_t seed);

struct NrsfmMetrics {
  double datafit = 0.0;
  std::optional<double> gt_distance;
  Index rank = 0;
};

/// datafit = ‖R·X − M‖_F, gt_distance = ‖X − X_gt‖_F (when known),
/// rank = numerical rank of X# (σ_i > 1e-6·σ_1).
NrsfmMetrics nrsfm_metrics(const NrsfmInstance& inst, const DenseMatrix& x);

/// envelope: (mu, 0); combined: (mu, lambda); l1 is the nuclear norm 2√mu‖X#‖*.
RegParams nrsfm_method_params(Method m, double sqrt_mu, double lambda);

struct NrsfmSweepOptions {
  std::vector<double> sqrt_mu;
  double lambda = 5.0;
  AdmmSettings admm{2.0, 5000, 1e-6, 1e-10};
  /// Seed of the Gaussian starting point shared by all methods.
  std::uint64_t init_seed = 0;
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  unsigned threads = 0;
};

/// Evenly spaced √mu values, `count` of them, from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, Index count);

/// Solves every (method, √mu) pair from the same random start. `trial` is
/// copied into the outcomes.
std::vector<TrialOutcome> run_nrsfm_sweep(const NrsfmInstance& inst,
                                          const NrsfmSweepOptions& opts, Index trial = 0);

/// MOCAP text file: "F m has_gt", then F camera blocks (2 lines × 3), then M
/// (2F lines × m), then X_gt (3F lines × m) when has_gt is 1.
NrsfmInstance read_mocap(const std::filesystem::path& path);
void write_mocap(const std::filesystem::path& path, const NrsfmInstance& inst);

}  // namespace debias
