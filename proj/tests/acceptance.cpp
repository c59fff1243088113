// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "debias/certificates.hpp"
#include "debias/envelope.hpp"
#include "debias/experiments.hpp"
#include "debias/regularizer.hpp"
#include "debias/results_io.hpp"
#include "debias/solver.hpp"
#include "oracles.hpp"
#include "property_suites.hpp"
#include "test_support.hpp"

using namespace debias;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0: no limit
  std::function<Verdict()> check;
};

bool close(const Vector& a, const Vector& b, double tol) { return (a - b).norm() <= tol; }

// Sweep outputs kept for the determinism rerun.
struct Recorded {
  std::string cs_csv;
  std::string registration_csv;
  std::string nrsfm_csv;
};
Recorded recorded;

// ---------------------------------------------------------------------------

Verdict two_minima() {
  const auto prob = testing::two_minima_problem();
  const RegParams p(1.0, 0.0);
  const Vector a = testing::vec({2.0, 3.0});
  const Vector b = testing::vec({0.0, 3.0});
  const bool stationary = stationarity_check(prob, a, p, 1e-9).is_stationary &&
                          stationarity_check(prob, b, p, 1e-9).is_stationary;
  const double fa = objective_vec(prob, a, p);
  const double fb = objective_vec(prob, b, p);
  const bool values = std::abs(fa - 2.0) <= 1e-10 && std::abs(fb - 1.64) <= 1e-10;

  const AdmmSettings s = testing::precise_admm();
  const auto from_a = admm_vector(prob, p, s, a);
  const auto from_zero = admm_vector(prob, p, s, Vector::Zero(2));
  const bool basins = from_a.converged() && from_zero.converged() && close(from_a.x, a, 1e-6) &&
                      close(from_zero.x, b, 1e-6);

  const RegParams q(0.7, 0.4);
  const Vector target = testing::vec({0.0, 1.76 / 0.72});
  const auto c1 = admm_vector(prob, q, s, a);
  const auto c2 = admm_vector(prob, q, s, Vector::Zero(2));
  const double err = std::max((c1.x - target).norm(), (c2.x - target).norm());
  const bool single = c1.converged() && c2.converged() && err <= 1e-6;

  return {stationary && values && basins && single,
          fmt::format("stationary {}, f = {:.12g} / {:.12g}, ADMM limits ({:.6g}, {:.6g}) and "
                      "({:.6g}, {:.6g}), combined error {:.2e}",
                      stationary ? "yes" : "no", fa, fb, from_a.x(0), from_a.x(1), from_zero.x(0),
                      from_zero.x(1), err)};
}

Verdict prox_grid() {
  using namespace testing::oracle;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> y_dist(-5.0, 5.0), mu_dist(0.0, 4.0), lambda_dist(0.0, 2.0),
      rho_dist(1.0, 5.0);
  int mismatched = 0;
  int composition_failures = 0;
  double worst = 0.0;
  const int cases = 10000;
  for (int i = 0; i < cases; ++i) {
    const double y = y_dist(rng), mu = mu_dist(rng), lambda = lambda_dist(rng);
    double rho = rho_dist(rng);
    while (!(rho > 1.0)) rho = rho_dist(rng);
    const ProxStrength strength(rho);
    const double x = prox(y, RegParams(mu, lambda), strength);
    const double gap = std::abs(prox_objective(x, y, mu, lambda, rho) - grid_prox(y, mu, lambda, rho).value);
    worst = std::max(worst, gap);
    if (gap > 1e-6) ++mismatched;
    if (x != prox(soft_threshold(y, lambda / (2.0 * rho)), RegParams(mu, 0.0), strength))
      ++composition_failures;
  }
  return {mismatched == 0 && composition_failures == 0,
          fmt::format("{} cases, max objective gap {:.2e}, {} over 1e-6, {} composition mismatches",
                      cases, worst, mismatched, composition_failures)};
}

Verdict envelope_identity() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mu_dist(0.2, 4.0), lambda_dist(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double mu = mu_dist(rng), lambda = lambda_dist(rng);
    // Sampled on [-8, 8], compared on [-5, 5].
    const auto g = GridFunction::sample(
        8.0, 1e-3, [&](double x) { return (x == 0.0 ? 0.0 : mu) + lambda * std::abs(x); });
    const auto q = quadratic_envelope_grid(g, 2.0);
    const RegParams p(mu, lambda);
    for (std::size_t k = 0; k < q.x.size(); ++k)
      if (std::abs(q.x[k]) <= 5.0 + 1e-9) worst = std::max(worst, std::abs(q.f[k] - reg_value(q.x[k], p)));
  }
  return {worst <= 5e-2, fmt::format("20 (mu, lambda) pairs, grid step 1e-3 over [-5, 5], sup error {:.3e}", worst)};
}

Verdict cs_sweep() {
  CsSweepOptions opts;
  for (int i = 0; i <= 10; ++i) opts.noise_levels.push_back(0.5 * i);
  opts.trials = 20;
  const auto out = run_cs_sweep(opts);
  recorded.cs_csv = format_outcomes(out, OutputFormat::csv);

  double env_worst = 0.0;
  std::map<double, double> mean_combined, mean_l1;
  for (const auto& o : out) {
    if (o.method == Method::envelope && o.noise_norm <= 2.0) env_worst = std::max(env_worst, o.dist_oracle);
    if (o.method == Method::combined) mean_combined[o.noise_norm] += o.dist_oracle / opts.trials;
    if (o.method == Method::l1) mean_l1[o.noise_norm] += o.dist_oracle / opts.trials;
  }
  const bool exact = env_worst < 1e-6;

  bool dominance = true;
  std::string worst_level;
  double worst_ratio = 0.0;
  for (const auto& [level, c] : mean_combined) {
    if (level < 1.0) continue;
    const double ratio = c / mean_l1[level];
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_level = fmt::format("{:g}", level);
    }
    if (c > mean_l1[level]) dominance = false;
  }

  CsSweepOptions hist;
  hist.noise_levels = {3.5};
  hist.trials = 50;
  hist.methods = {Method::combined};
  int in_range = 0;
  for (const auto& o : run_cs_sweep(hist))
    if (o.cardinality_or_rank >= 9 && o.cardinality_or_rank <= 11) ++in_range;
  const bool cardinality = in_range >= 40;

  return {exact && cardinality && dominance,
          fmt::format("(a) max envelope distance for |eps| <= 2: {:.2e}; (b) combined cardinality in "
                      "[9, 11]: {}/50; (c) worst combined/l1 mean ratio {:.3f} at |eps| = {}",
                      env_worst, in_range, worst_ratio, worst_level)};
}

Verdict oracle_suite() {
  const auto c = testing::oracle_stationarity_suite(100, 5);
  return {c.checked == 100 && c.violations == 0,
          fmt::format("{} instances verified, {} not stationary", c.checked, c.violations)};
}

Verdict separation() {
  const auto growth = testing::subgradient_growth_suite(10000, 6);
  const auto rip = testing::rip_gradient_bound_suite(1000, 7);
  const auto sep = testing::separation_suite(20, 50, 8);
  const bool ok = growth.checked == 10000 && growth.violations == 0 && rip.checked == 1000 &&
                  rip.violations == 0 && sep.instances == 20 && sep.violations == 0;
  return {ok, fmt::format("growth {}/{} hold; gradient bound {}/{} hold; separation on {} instances: "
                          "{} distinct stationary points, {} within K",
                          growth.checked - growth.violations, growth.checked,
                          rip.checked - rip.violations, rip.checked, sep.instances,
                          sep.distinct_points, sep.violations)};
}

Verdict registration() {
  RegistrationOptions opts;
  const auto out = run_registration_sweep(opts);
  recorded.registration_csv = format_outcomes(out, OutputFormat::csv);

  std::map<Method, double> mean_fit;
  std::map<Method, int> stuck;
  for (const auto& o : out) {
    mean_fit[o.method] += o.datafit / static_cast<double>(opts.instances);
    // Stuck at least squares: essentially every point flagged as an outlier.
    if (o.cardinality_or_rank >= 90) ++stuck[o.method];
  }
  const bool fit = mean_fit[Method::combined] < mean_fit[Method::envelope];
  const bool env_stuck = stuck[Method::envelope] >= 10;
  const bool comb_stuck = stuck[Method::combined] <= 5;
  return {fit && env_stuck && comb_stuck,
          fmt::format("mean inlier fit envelope {:.4g}, combined {:.4g}; stuck envelope {}/100, "
                      "combined {}/100",
                      mean_fit[Method::envelope], mean_fit[Method::combined], stuck[Method::envelope],
                      stuck[Method::combined])};
}

std::vector<TrialOutcome> nrsfm_runs() {
  std::vector<TrialOutcome> all;
  for (int seed = 0; seed < 10; ++seed) {
    const auto inst = gen_nrsfm_instance(20, 15, 3, static_cast<std::uint64_t>(seed));
    NrsfmSweepOptions opts;
    opts.init_seed = 1000 + static_cast<std::uint64_t>(seed);
    for (int i = 1; i <= 10; ++i) opts.sqrt_mu.push_back(10.0 * i);
    const auto out = run_nrsfm_sweep(inst, opts, seed);
    all.insert(all.end(), out.begin(), out.end());
  }
  sort_outcomes(all);
  return all;
}

bool not_worse(double a, double b) { return a <= b * (1.0 + 1e-9) + 1e-12; }

Verdict nrsfm() {
  const auto all = nrsfm_runs();
  recorded.nrsfm_csv = format_outcomes(all, OutputFormat::csv);

  std::map<std::pair<Index, double>, const TrialOutcome*> combined, nuclear;
  for (const auto& o : all) {
    if (o.method == Method::combined) combined[{o.trial, o.noise_norm}] = &o;
    if (o.method == Method::l1) nuclear[{o.trial, o.noise_norm}] = &o;
  }
  int fit_seeds = 0;
  int gt_seeds = 0;
  std::string misses;
  for (Index seed = 0; seed < 10; ++seed) {
    bool fit = true;
    bool gt = true;
    for (int i = 1; i <= 10; ++i) {
      const double s = 10.0 * i;
      const auto* c = combined.at({seed, s});
      const auto* n = nuclear.at({seed, s});
      if (!not_worse(c->datafit, n->datafit)) {
        if (fit) misses += fmt::format(" seed {} at sqrt(mu) {:g} ({:.5g} vs {:.5g});", seed, s, c->datafit, n->datafit);
        fit = false;
      }
      if (!not_worse(c->dist_gt, n->dist_gt)) gt = false;
    }
    fit_seeds += fit;
    gt_seeds += gt;
  }
  return {fit_seeds >= 9 && gt_seeds >= 8,
          fmt::format("combined datafit <= nuclear at every sqrt(mu) in {}/10 seeds, gt distance in "
                      "{}/10 seeds; datafit misses:{}",
                      fit_seeds, gt_seeds, misses.empty() ? " none" : misses)};
}

Verdict determinism() {
  if (recorded.cs_csv.empty() || recorded.registration_csv.empty() || recorded.nrsfm_csv.empty())
    return {false, "earlier sweeps did not record their output"};

  CsSweepOptions cs;
  for (int i = 0; i <= 10; ++i) cs.noise_levels.push_back(0.5 * i);
  cs.trials = 20;
  cs.threads = 2;
  const bool cs_same = format_outcomes(run_cs_sweep(cs), OutputFormat::csv) == recorded.cs_csv;

  RegistrationOptions reg;
  reg.threads = 2;
  const bool reg_same =
      format_outcomes(run_registration_sweep(reg), OutputFormat::csv) == recorded.registration_csv;

  const bool nrsfm_same = format_outcomes(nrsfm_runs(), OutputFormat::csv) == recorded.nrsfm_csv;
  return {cs_same && reg_same && nrsfm_same,
          fmt::format("byte-identical reruns: sparse recovery {}, registration {}, NRSfM {}",
                      cs_same ? "yes" : "no", reg_same ? "yes" : "no", nrsfm_same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "two local minimizers and ADMM basins", 1.0, two_minima},
      {2, "scalar prox against grid search", 30.0, prox_grid},
      {3, "quadratic envelope identity", 60.0, envelope_identity},
      {4, "sparse recovery noise sweep", 300.0, cs_sweep},
      {5, "oracle solution stationarity", 60.0, oracle_suite},
      {6, "subgradient growth, RIP bound and separation", 180.0, separation},
      {7, "registration with outliers", 180.0, registration},
      {8, "NRSfM combined versus nuclear norm", 300.0, nrsfm},
      {9, "determinism of sweeps", 0.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail += fmt::format("; exceeded time limit {:g} s", c.time_limit_s);
    }
    if (!v.pass) ++failures;
    std::cout << fmt::format("{} [{}] {}: {} ({:.2f} s)\n", v.pass ? "PASS" : "FAIL", c.id, c.title,
                             v.detail, secs)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
