#include "debias/results_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

#include "debias/errors.hpp"

namespace debias {

namespace {

std::string real_csv(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

nlohmann::json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double json_real(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

Method method_or_throw(std::string_view name) {
  auto m = parse_method(name);
  if (!m) throw ParseError(fmt::format("unknown method '{}'", name), 0);
  return *m;
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::envelope:
      return "envelope";
    case Method::combined:
      return "combined";
    case Method::l1:
      return "l1";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (name == to_string(m)) return m;
  return std::nullopt;
}

void sort_outcomes(std::vector<TrialOutcome>& outcomes) {
  std::stable_sort(outcomes.begin(), outcomes.end(), [](const auto& l, const auto& r) {
    return std::tuple(static_cast<int>(l.method), l.noise_norm, l.trial) <
           std::tuple(static_cast<int>(r.method), r.noise_norm, r.trial);
  });
}

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string format_outcomes(const std::vector<TrialOutcome>& outcomes, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string out(kOutcomeCsvHeader);
    out += '\n';
    for (const auto& o : outcomes) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(o.method), real_csv(o.noise_norm),
                         o.trial, o.cardinality_or_rank, real_csv(o.dist_oracle),
                         real_csv(o.dist_gt), real_csv(o.datafit),
                         o.converged ? "true" : "false");
    }
    return out;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& o : outcomes) {
    arr.push_back({{"method", to_string(o.method)},
                   {"noise_norm", real_json(o.noise_norm)},
                   {"trial", o.trial},
                   {"cardinality_or_rank", o.cardinality_or_rank},
                   {"dist_oracle", real_json(o.dist_oracle)},
                   {"dist_gt", real_json(o.dist_gt)},
                   {"datafit", real_json(o.datafit)},
                   {"converged", o.converged}});
  }
  return arr.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing output file " + path.string());
}

void emit_results(const std::vector<TrialOutcome>& outcomes, OutputFormat format,
                  const std::filesystem::path& path) {
  if (outcomes.empty()) throw ParameterError("no outcomes to write");
  write_text_file(path, format_outcomes(outcomes, format));
}

std::vector<TrialOutcome> parse_outcomes_json(std::string_view text) {
  const auto arr = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (arr.is_discarded() || !arr.is_array()) throw ParseError("expected a JSON array", 0);
  std::vector<TrialOutcome> out;
  try {
    for (const auto& j : arr) {
      TrialOutcome o;
      o.method = method_or_throw(j.at("method").get<std::string>());
      o.noise_norm = json_real(j.at("noise_norm"));
      o.trial = j.at("trial").get<Index>();
      o.cardinality_or_rank = j.at("cardinality_or_rank").get<Index>();
      o.dist_oracle = json_real(j.at("dist_oracle"));
      o.dist_gt = json_real(j.at("dist_gt"));
      o.datafit = json_real(j.at("datafit"));
      o.converged = j.at("converged").get<bool>();
      out.push_back(o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  }
  return out;
}

std::vector<TrialOutcome> parse_outcomes_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kOutcomeCsvHeader)
    throw ParseError("missing or unexpected CSV header", 1);
  auto real = [&](const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ParseError("invalid number '" + s + "'", line_no);
    return v;
  };
  auto integer = [&](const std::string& s) {
    Index v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ParseError("invalid integer '" + s + "'", line_no);
    return v;
  };
  std::vector<TrialOutcome> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw ParseError("expected 8 fields", line_no);
    TrialOutcome o;
    o.method = method_or_throw(f[0]);
    o.noise_norm = real(f[1]);
    o.trial = integer(f[2]);
    o.cardinality_or_rank = integer(f[3]);
    o.dist_oracle = real(f[4]);
    o.dist_gt = real(f[5]);
    o.datafit = real(f[6]);
    if (f[7] != "true" && f[7] != "false") throw ParseError("invalid boolean", line_no);
    o.converged = f[7] == "true";
    out.push_back(o);
  }
  return out;
}

}  // namespace debias
