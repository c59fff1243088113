#include "debias/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "debias/certificates.hpp"
#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "debias/regularizer.hpp"
#include "debias/results_io.hpp"

namespace debias::cli {

namespace {

using nlohmann::json;

double parse_number(std::string_view token, std::string_view what) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || !std::isfinite(v))
    throw ParameterError(fmt::format("{}: '{}' is not a finite number", what, token));
  return v;
}

void require_finite(double v, std::string_view name) {
  if (!std::isfinite(v)) throw ParameterError(fmt::format("--{} must be finite", name));
}

std::string vector_text(const Vector& x) {
  std::string out = "(";
  for (Index i = 0; i < x.size(); ++i) out += (i == 0 ? "" : ", ") + fmt::format("{:.6g}", x(i) + 0.0);
  return out + ")";
}

json vector_json(const Vector& x) {
  json arr = json::array();
  for (Index i = 0; i < x.size(); ++i) arr.push_back(x(i));
  return arr;
}

Vector as_vector(const DenseMatrix& m, std::string_view what) {
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw ParameterError(fmt::format("{} must be a single row or column, got {}x{}", what, m.rows(),
                                   m.cols()));
}

struct Sink {
  std::string path;
  std::ostream& out;
  std::ostream& err;

  /// Writes the result text and returns the stream for the summary line.
  std::ostream& emit(const std::string& text) {
    if (path.empty()) {
      out << text;
      out.flush();
      return err;
    }
    write_text_file(path, text);
    return out;
  }

  std::string where() const { return path.empty() ? std::string("stdout") : path; }
};

OutputFormat format_of(const std::string& name) {
  auto f = parse_format(name);
  if (!f) throw ParameterError(fmt::format("--format must be csv or json, got '{}'", name));
  return *f;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  if (names.empty()) return {std::begin(kAllMethods), std::end(kAllMethods)};
  std::vector<Method> out;
  for (const auto& n : names) {
    auto m = parse_method(n);
    if (!m) throw ParameterError(fmt::format("unknown method '{}' (envelope, combined, l1)", n));
    out.push_back(*m);
  }
  return out;
}

Vector start_point(const std::string& choice, const VectorProblem& prob) {
  if (choice == "ls") return least_squares_init(prob);
  if (choice == "zero") return Vector::Zero(prob.cols());
  if (choice.rfind("random:", 0) == 0) {
    const std::string seed_text = choice.substr(7);
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (seed_text.empty() || ec != std::errc() || p != seed_text.data() + seed_text.size())
      throw ParameterError(fmt::format("--x0 random:<seed> needs an unsigned integer, got '{}'", seed_text));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x(prob.cols());
    for (Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    return x;
  }
  Vector x = as_vector(read_matrix(choice), "--x0 file");
  if (x.size() != prob.cols())
    throw ParameterError(fmt::format("--x0 file has {} entries, expected {}", x.size(), prob.cols()));
  return x;
}

struct Common {
  std::string out_path;
  std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format = "csv") {
  c.format = default_format;
  sub->add_option("--out", c.out_path, "Output file (stdout when omitted)");
  sub->add_option("--format", c.format, "csv or json")->capture_default_str();
}

struct AdmmFlags {
  AdmmSettings s;
  void add(CLI::App* sub) {
    sub->add_option("--rho", s.rho, "ADMM penalty (> 1)")->capture_default_str();
    sub->add_option("--max-iters", s.max_iters, "ADMM iteration cap")->capture_default_str();
    sub->add_option("--tol", s.primal_tol, "Primal residual tolerance")->capture_default_str();
    sub->add_option("--objective-tol", s.objective_tol, "Relative objective tolerance")
        ->capture_default_str();
  }
  const AdmmSettings& validated() const {
    require_finite(s.rho, "rho");
    require_finite(s.primal_tol, "tol");
    require_finite(s.objective_tol, "objective-tol");
    s.validate();
    return s;
  }
};

// ---------------------------------------------------------------------------

struct ProxTableCmd {
  Common c;
  double mu = 1.0, lambda = 0.0, rho = 2.0, lo = -3.0, hi = 3.0, step = 0.25;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("prox-table", "Tabulate the scalar proximal operator");
    sub->add_option("--mu", mu)->capture_default_str();
    sub->add_option("--lambda", lambda)->capture_default_str();
    sub->add_option("--rho", rho)->capture_default_str();
    sub->add_option("--from", lo)->capture_default_str();
    sub->add_option("--to", hi)->capture_default_str();
    sub->add_option("--step", step)->capture_default_str();
    add_common(sub, c);
  }

  void run(Sink& sink) const {
    for (auto [v, n] : {std::pair{mu, "mu"}, {lambda, "lambda"}, {rho, "rho"}, {lo, "from"},
                        {hi, "to"}, {step, "step"}})
      require_finite(v, n);
    const RegParams p(mu, lambda);
    const ProxStrength s(rho);
    const auto ys = parse_sweep(fmt::format("{:.17g}:{:.17g}:{:.17g}", lo, step, hi));
    std::string text;
    if (format_of(c.format) == OutputFormat::csv) {
      text = "y,soft,prox\n";
      for (double y : ys)
        text += fmt::format("{:.17g},{:.17g},{:.17g}\n", y, soft_threshold(y, p.lambda / (2.0 * rho)),
                            prox(y, p, s));
    } else {
      json arr = json::array();
      for (double y : ys)
        arr.push_back({{"y", y}, {"soft", soft_threshold(y, p.lambda / (2.0 * rho))}, {"prox", prox(y, p, s)}});
      text = arr.dump(2) + "\n";
    }
    sink.emit(text) << fmt::format("prox-table: {} rows (mu={:g}, lambda={:g}, rho={:g}) -> {}\n",
                                   ys.size(), mu, lambda, rho, sink.where());
  }
};

struct SolveCmd {
  Common c;
  AdmmFlags admm;
  std::string matrix, rhs, x0 = "ls";
  double mu = 0.0, lambda = 0.0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("solve", "Minimize r(x) + |Ax - b|^2 with ADMM");
    sub->add_option("--matrix", matrix, "Matrix file for A")->required();
    sub->add_option("--rhs", rhs, "Matrix file for b (one column)")->required();
    sub->add_option("--mu", mu)->required();
    sub->add_option("--lambda", lambda)->required();
    sub->add_option("--x0", x0, "ls, zero, random:<seed> or a matrix file")->capture_default_str();
    admm.add(sub);
    add_common(sub, c, "json");
  }

  void run(Sink& sink) const {
    require_finite(mu, "mu");
    require_finite(lambda, "lambda");
    const RegParams p(mu, lambda);
    const AdmmSettings& s = admm.validated();
    const VectorProblem prob(read_matrix(matrix), as_vector(read_matrix(rhs), "--rhs"));
    const Vector start = start_point(x0, prob);
    const auto res = admm_vector(prob, p, s, start);
    const auto report = stationarity_check(prob, res.x, p, 10.0 * s.primal_tol);

    std::string text;
    if (format_of(c.format) == OutputFormat::csv) {
      text = "index,x,y\n";
      for (Index i = 0; i < res.x.size(); ++i)
        text += fmt::format("{},{:.17g},{:.17g}\n", i, res.x(i), res.y(i));
    } else {
      json j = {{"x", vector_json(res.x)},
                {"y", vector_json(res.y)},
                {"objective", res.objective},
                {"primal_residual", res.primal_residual},
                {"iterations", res.iterations},
                {"terminated_by", to_string(res.terminated_by)},
                {"stationary", report.is_stationary}};
      text = j.dump(2) + "\n";
    }
    sink.emit(text) << fmt::format(
        "solve: x = {}, objective {:.6g}, {} iterations ({}), stationary {} -> {}\n",
        vector_text(res.x), res.objective, res.iterations, to_string(res.terminated_by),
        report.is_stationary ? "yes" : "no", sink.where());
  }
};

struct CsSweepCmd {
  Common c;
  AdmmFlags admm;
  std::string levels = "0:0.5:5";
  Index trials = 20;
  std::uint64_t seed = 0;
  CsTrialConfig base;
  std::vector<std::string> methods;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("cs-sweep", "Random compressed sensing noise sweep");
    sub->add_option("--levels", levels, "Noise norms: start:step:stop or a list")->capture_default_str();
    sub->add_option("--trials", trials, "Trials per noise level")->capture_default_str();
    sub->add_option("--seed", seed, "Trial t uses seed + t")->capture_default_str();
    sub->add_option("--rows", base.p)->capture_default_str();
    sub->add_option("--cols", base.n)->capture_default_str();
    sub->add_option("--sparsity", base.sparsity)->capture_default_str();
    sub->add_option("--methods", methods, "Subset of envelope, combined, l1")->delimiter(',');
    admm.add(sub);
    add_common(sub, c);
  }

  void run(Sink& sink) const {
    CsSweepOptions o;
    o.noise_levels = parse_sweep(levels);
    o.trials = trials;
    o.base_seed = seed;
    o.base = base;
    o.admm = admm.validated();
    o.methods = parse_methods(methods);
    o.threads = threads_from_env();
    o.base.validate();
    const auto outcomes = run_cs_sweep(o);
    Index converged = 0;
    for (const auto& r : outcomes) converged += r.converged ? 1 : 0;
    sink.emit(format_outcomes(outcomes, format_of(c.format)))
        << fmt::format("cs-sweep: {} levels x {} trials x {} methods = {} rows, {} converged -> {}\n",
                       o.noise_levels.size(), trials, o.methods.size(), outcomes.size(), converged,
                       sink.where());
  }
};

struct RegistrationCmd {
  Common c;
  AdmmFlags admm;
  std::string correspondences;
  Index instances = 100, points = 100, inliers = 60;
  std::uint64_t seed = 0;
  std::optional<double> envelope_mu, combined_mu, combined_lambda, l1_lambda;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("registration", "Robust similarity registration");
    sub->add_option("--correspondences", correspondences,
                    "Fit a correspondence file instead of running the synthetic sweep");
    sub->add_option("--instances", instances)->capture_default_str();
    sub->add_option("--points", points)->capture_default_str();
    sub->add_option("--inliers", inliers)->capture_default_str();
    sub->add_option("--seed", seed, "Instance i uses seed + i")->capture_default_str();
    sub->add_option("--envelope-mu", envelope_mu, "Default 1 (synthetic) or 400 (file)");
    sub->add_option("--combined-mu", combined_mu, "Default 1 (synthetic) or 400 (file)");
    sub->add_option("--combined-lambda", combined_lambda, "Default 0.5 (synthetic) or 5 (file)");
    sub->add_option("--l1-lambda", l1_lambda, "Default 2 (synthetic) or 10 (file)");
    admm.add(sub);
    add_common(sub, c);
  }

  RegistrationMethodParams params(bool file) const {
    auto pick = [](const std::optional<double>& v, double dflt, std::string_view name) {
      if (v) require_finite(*v, name);
      return v.value_or(dflt);
    };
    RegistrationMethodParams p;
    p.envelope = RegParams(pick(envelope_mu, file ? 400.0 : 1.0, "envelope-mu"), 0.0);
    p.combined = RegParams(pick(combined_mu, file ? 400.0 : 1.0, "combined-mu"),
                           pick(combined_lambda, file ? 5.0 : 0.5, "combined-lambda"));
    p.l1 = RegParams(0.0, pick(l1_lambda, file ? 10.0 : 2.0, "l1-lambda"));
    return p;
  }

  void run(Sink& sink) const {
    const AdmmSettings& s = admm.validated();
    const OutputFormat fmt_out = format_of(c.format);
    if (!correspondences.empty()) {
      const auto [model, target] = read_correspondences(correspondences);
      const auto fits = fit_registration(model, target, params(true), s);
      std::string text;
      if (fmt_out == OutputFormat::csv) {
        text = "method,a,b,t1,t2,outliers,residual,converged\n";
        for (const auto& f : fits)
          text += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.17g},{}\n", to_string(f.method),
                              f.transform.a, f.transform.b, f.transform.t1, f.transform.t2,
                              f.outliers, f.residual, f.converged ? "true" : "false");
      } else {
        json arr = json::array();
        for (const auto& f : fits)
          arr.push_back({{"method", to_string(f.method)},
                         {"a", f.transform.a},
                         {"b", f.transform.b},
                         {"t1", f.transform.t1},
                         {"t2", f.transform.t2},
                         {"outliers", f.outliers},
                         {"residual", f.residual},
                         {"converged", f.converged}});
        text = arr.dump(2) + "\n";
      }
      std::string summary = fmt::format("registration: {} correspondences;", model.cols());
      for (const auto& f : fits)
        summary += fmt::format(" {} {} outliers;", to_string(f.method), f.outliers);
      sink.emit(text) << summary << " -> " << sink.where() << "\n";
      return;
    }

    RegistrationOptions o;
    o.instances = instances;
    o.base_seed = seed;
    o.points = points;
    o.inliers = inliers;
    o.params = params(false);
    o.admm = s;
    o.threads = threads_from_env();
    const auto outcomes = run_registration_sweep(o);
    double fit[3] = {0.0, 0.0, 0.0};
    for (const auto& r : outcomes) fit[static_cast<int>(r.method)] += r.datafit;
    const double n = static_cast<double>(instances);
    sink.emit(format_outcomes(outcomes, fmt_out)) << fmt::format(
        "registration: {} instances, mean inlier fit envelope {:.4g} combined {:.4g} l1 {:.4g} -> {}\n",
        instances, fit[0] / n, fit[1] / n, fit[2] / n, sink.where());
  }
};

struct NrsfmCmd {
  Common c;
  AdmmFlags admm;
  std::string mocap, sqrt_mu;
  Index frames = 20, points = 15, rank = 3, instances = 1;
  std::uint64_t seed = 0, init_seed = 1000;
  double lambda = 5.0;
  std::vector<std::string> methods;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("nrsfm", "Non-rigid structure from motion sweep over sqrt(mu)");
    sub->add_option("--mocap", mocap, "MOCAP file (synthetic instances when omitted)");
    sub->add_option("--sqrt-mu", sqrt_mu, "start:step:stop or a list (default 50 values in [10, 100])");
    sub->add_option("--lambda", lambda, "lambda of the combined method")->capture_default_str();
    sub->add_option("--frames", frames)->capture_default_str();
    sub->add_option("--points", points)->capture_default_str();
    sub->add_option("--rank", rank)->capture_default_str();
    sub->add_option("--instances", instances, "Synthetic instances, seeds seed + i")->capture_default_str();
    sub->add_option("--seed", seed)->capture_default_str();
    sub->add_option("--init-seed", init_seed, "Instance i starts from init-seed + i")->capture_default_str();
    sub->add_option("--methods", methods, "Subset of envelope, combined, l1")->delimiter(',');
    admm.s = NrsfmSweepOptions{}.admm;
    admm.add(sub);
    add_common(sub, c);
  }

  void run(Sink& sink) const {
    require_finite(lambda, "lambda");
    NrsfmSweepOptions o;
    o.sqrt_mu = sqrt_mu.empty() ? linspace(10.0, 100.0, 50) : parse_sweep(sqrt_mu);
    o.lambda = lambda;
    o.admm = admm.validated();
    o.methods = parse_methods(methods);
    o.threads = threads_from_env();
    if (instances < 1) throw ParameterError("--instances must be positive");

    std::vector<TrialOutcome> outcomes;
    if (!mocap.empty()) {
      const NrsfmInstance inst = read_mocap(mocap);
      o.init_seed = init_seed;
      outcomes = run_nrsfm_sweep(inst, o, 0);
    } else {
      for (Index i = 0; i < instances; ++i) {
        const auto k = static_cast<std::uint64_t>(i);
        const NrsfmInstance inst = gen_nrsfm_instance(frames, points, rank, seed + k);
        o.init_seed = init_seed + k;
        auto part = run_nrsfm_sweep(inst, o, i);
        outcomes.insert(outcomes.end(), part.begin(), part.end());
      }
      sort_outcomes(outcomes);
    }
    sink.emit(format_outcomes(outcomes, format_of(c.format)))
        << fmt::format("nrsfm: {} instance(s) x {} sqrt(mu) values x {} methods = {} rows -> {}\n",
                       mocap.empty() ? instances : 1, o.sqrt_mu.size(), o.methods.size(),
                       outcomes.size(), sink.where());
  }
};

struct CertifyCmd {
  Common c;
  std::string matrix, rhs, x;
  double mu = 0.0, lambda = 0.0, tol = 1e-6;
  std::optional<Index> k;
  std::optional<double> delta;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("certify", "Stationarity certificate for a candidate point");
    sub->add_option("--matrix", matrix)->required();
    sub->add_option("--rhs", rhs)->required();
    sub->add_option("--x", x, "Candidate point (matrix file, one column)")->required();
    sub->add_option("--mu", mu)->required();
    sub->add_option("--lambda", lambda)->required();
    sub->add_option("--tol", tol)->capture_default_str();
    auto* k_opt = sub->add_option("--k", k, "Sparsity level for a brute-force RIP constant");
    sub->add_option("--delta", delta, "Known RIP constant")->excludes(k_opt);
    add_common(sub, c, "json");
  }

  void run(Sink& sink) const {
    require_finite(mu, "mu");
    require_finite(lambda, "lambda");
    require_finite(tol, "tol");
    if (!(tol > 0.0)) throw ParameterError("--tol must be positive");
    const RegParams p(mu, lambda);
    const VectorProblem prob(read_matrix(matrix), as_vector(read_matrix(rhs), "--rhs"));
    const Vector point = as_vector(read_matrix(x), "--x");
    std::optional<double> d = delta;
    if (k) d = rip_delta_bruteforce(prob.a, *k);
    if (d) require_finite(*d, "delta");
    const auto report = stationarity_check(prob, point, p, tol, d);
    std::optional<ForbiddenBand> band;
    if (report.delta_k) band = forbidden_band(p, *report.delta_k);

    std::string text;
    if (format_of(c.format) == OutputFormat::csv) {
      text = "index,x,z,margin,band_hit\n";
      std::vector<bool> hit(static_cast<std::size_t>(point.size()), false);
      for (Index i : report.forbidden_band_hits) hit[static_cast<std::size_t>(i)] = true;
      for (Index i = 0; i < point.size(); ++i)
        text += fmt::format("{},{:.17g},{:.17g},{:.17g},{}\n", i, point(i), report.z(i),
                            report.per_coordinate_margin(i),
                            hit[static_cast<std::size_t>(i)] ? "true" : "false");
    } else {
      json j = {{"is_stationary", report.is_stationary},
                {"tolerance", report.tolerance},
                {"z", vector_json(report.z)},
                {"per_coordinate_margin", vector_json(report.per_coordinate_margin)},
                {"forbidden_band_hits", report.forbidden_band_hits},
                {"delta_k", report.delta_k ? json(*report.delta_k) : json(nullptr)}};
      if (band) j["forbidden_band"] = {{"lo", band->lo}, {"hi", band->hi}};
      else j["forbidden_band"] = nullptr;
      text = j.dump(2) + "\n";
    }
    std::string summary = fmt::format("certify: {} (max margin {:.3g})",
                                      report.is_stationary ? "stationary" : "not stationary",
                                      report.per_coordinate_margin.size() > 0
                                          ? report.per_coordinate_margin.cwiseAbs().maxCoeff()
                                          : 0.0);
    if (report.delta_k)
      summary += fmt::format(", delta_K {:.6g}, {} forbidden-band hit(s)", *report.delta_k,
                             report.forbidden_band_hits.size());
    sink.emit(text) << summary << " -> " << sink.where() << "\n";
  }
};

}  // namespace

std::vector<double> parse_sweep(std::string_view text) {
  if (text.empty()) throw ParameterError("empty sweep specification");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ':') {
        parts.push_back(text.substr(start, i - start));
        start = i + 1;
      }
    }
    if (parts.size() != 3)
      throw ParameterError(fmt::format("sweep '{}' must have the form start:step:stop", text));
    const double lo = parse_number(parts[0], "sweep start");
    const double step = parse_number(parts[1], "sweep step");
    const double hi = parse_number(parts[2], "sweep stop");
    if (!(step > 0.0)) throw ParameterError("sweep step must be positive");
    if (hi < lo) throw ParameterError("sweep stop is below its start");
    const double span = (hi - lo) / step;
    if (span > 1e7) throw ParameterError("sweep has too many points");
    const auto count = static_cast<Index>(std::floor(span + 1e-9)) + 1;
    for (Index i = 0; i < count; ++i) {
      double v = lo + step * static_cast<double>(i);
      if (std::abs(v - hi) <= 1e-9 * std::max(1.0, std::abs(hi))) v = hi;
      out.push_back(v);
    }
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      out.push_back(parse_number(text.substr(start, i - start), "sweep value"));
      start = i + 1;
    }
  }
  return out;
}

unsigned threads_from_env() {
  const char* env = std::getenv("DEBIAS_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view s(env);
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v == 0)
    throw ParameterError(fmt::format("DEBIAS_THREADS must be a positive integer, got '{}'", s));
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse and low-rank recovery with unbiased non-convex regularizers", "debias"};
  app.require_subcommand(1);
  ProxTableCmd prox_table;
  SolveCmd solve;
  CsSweepCmd cs_sweep;
  RegistrationCmd registration;
  NrsfmCmd nrsfm;
  CertifyCmd certify;
  prox_table.add(app);
  solve.add(app);
  cs_sweep.add(app);
  registration.add(app);
  nrsfm.add(app);
  certify.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParameter;
  }

  auto dispatch = [&](const auto& cmd) {
    Sink sink{cmd.c.out_path, out, err};
    cmd.run(sink);
  };

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "prox-table") dispatch(prox_table);
    else if (name == "solve") dispatch(solve);
    else if (name == "cs-sweep") dispatch(cs_sweep);
    else if (name == "registration") dispatch(registration);
    else if (name == "nrsfm") dispatch(nrsfm);
    else if (name == "certify") dispatch(certify);
    return kExitOk;
  } catch (const ParameterError& e) {
    err << "debias: parameter error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const CapacityError& e) {
    err << "debias: parameter error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const ParseError& e) {
    err << "debias: parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const IngestionError& e) {
    err << "debias: ingestion error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "debias: error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("debias");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace debias::cli
