#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "debias/experiments.hpp"

namespace debias {

enum class OutputFormat { csv, json };

std::optional<OutputFormat> parse_format(std::string_view name);

inline constexpr std::string_view kOutcomeCsvHeader =
    "method,noise_norm,trial,cardinality_or_rank,dist_oracle,dist_gt,datafit,converged";

/// CSV with kOutcomeCsvHeader, or a JSON array of objects with the same keys.
/// Reals use 17 significant digits in CSV and shortest round-trip form in JSON;
/// NaN is written as "nan" (CSV) or null (JSON).
std::string format_outcomes(const std::vector<TrialOutcome>& outcomes, OutputFormat format);

/// Throws ParameterError for an empty list (no file is created) and Error when
/// the path cannot be written.
void emit_results(const std::vector<TrialOutcome>& outcomes, OutputFormat format,
                  const std::filesystem::path& path);

std::vector<TrialOutcome> parse_outcomes_json(std::string_view text);
std::vector<TrialOutcome> parse_outcomes_csv(std::string_view text);

/// Writes `text` to `path`, throwing Error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace debias
