#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include <nlohmann/json.hpp>

#include "debias/errors.hpp"
#include "debias/results_io.hpp"
#include "test_support.hpp"

using namespace debias;

namespace {

TrialOutcome sample(Method m, double noise, Index trial) {
  TrialOutcome o;
  o.method = m;
  o.noise_norm = noise;
  o.trial = trial;
  o.cardinality_or_rank = 10;
  o.dist_oracle = 1.0 / 3.0;
  o.dist_gt = 2.5e-9;
  o.datafit = 0.1;
  o.converged = true;
  return o;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("format names") {
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK_FALSE(parse_format("xml").has_value());
}

TEST_CASE("one outcome gives a header and one CSV row") {
  const std::string csv = format_outcomes({sample(Method::combined, 3.5, 4)}, OutputFormat::csv);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind(std::string(kOutcomeCsvHeader) + "\n", 0) == 0);
  const std::string row = csv.substr(kOutcomeCsvHeader.size() + 1);
  CHECK(row == "combined,3.5,4,10,0.33333333333333331,2.5000000000000001e-09,0.10000000000000001,true\n");
}

TEST_CASE("CSV round trip is exact") {
  std::vector<TrialOutcome> v{sample(Method::envelope, 0.0, 0), sample(Method::l1, 5.0, 19)};
  v[1].converged = false;
  v[1].dist_oracle = std::numeric_limits<double>::quiet_NaN();
  const auto back = parse_outcomes_csv(format_outcomes(v, OutputFormat::csv));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == v[0]);
  CHECK(std::isnan(back[1].dist_oracle));
  CHECK_FALSE(back[1].converged);
  CHECK(back[1].method == Method::l1);
  CHECK(back[1].trial == 19);
  CHECK(format_outcomes(back, OutputFormat::csv) == format_outcomes(v, OutputFormat::csv));
}

TEST_CASE("JSON output") {
  std::vector<TrialOutcome> v{sample(Method::envelope, 0.5, 1), sample(Method::combined, 1.0, 2)};
  v[1].dist_gt = std::numeric_limits<double>::quiet_NaN();
  const std::string text = format_outcomes(v, OutputFormat::json);
  const auto doc = nlohmann::json::parse(text);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["method"] == "envelope");
  CHECK(doc[0]["noise_norm"] == 0.5);
  CHECK(doc[0]["dist_oracle"].get<double>() == 1.0 / 3.0);
  CHECK(doc[1]["dist_gt"].is_null());
  CHECK(doc[1]["converged"] == true);

  const auto back = parse_outcomes_json(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == v[0]);
  CHECK(std::isnan(back[1].dist_gt));
  CHECK(back[1].datafit == v[1].datafit);
}

TEST_CASE("malformed results are rejected") {
  CHECK_THROWS_AS(parse_outcomes_json("{}"), ParseError);
  CHECK_THROWS_AS(parse_outcomes_json("[{\"method\": \"x\"}]"), ParseError);
  CHECK_THROWS_AS(parse_outcomes_csv("nope\n"), ParseError);
  const std::string bad_row = std::string(kOutcomeCsvHeader) + "\nenvelope,1,2\n";
  CHECK_THROWS_AS(parse_outcomes_csv(bad_row), ParseError);
}

TEST_CASE("emitting results to files") {
  testing::TempDir dir;
  const std::vector<TrialOutcome> v{sample(Method::l1, 2.0, 3)};

  emit_results(v, OutputFormat::csv, dir.path("out.csv"));
  CHECK(testing::read_file(dir.path("out.csv")) == format_outcomes(v, OutputFormat::csv));
  emit_results(v, OutputFormat::json, dir.path("out.json"));
  CHECK(parse_outcomes_json(testing::read_file(dir.path("out.json"))) == v);

  CHECK_THROWS_AS(emit_results({}, OutputFormat::csv, dir.path("empty.csv")), ParameterError);
  CHECK_FALSE(std::filesystem::exists(dir.path("empty.csv")));
  CHECK_THROWS_AS(emit_results(v, OutputFormat::csv, dir.path("missing/dir/out.csv")), Error);
}

TEST_CASE("formatting is stable") {
  const std::vector<TrialOutcome> v{sample(Method::combined, 1.5, 0), sample(Method::combined, 1.5, 1)};
  CHECK(format_outcomes(v, OutputFormat::csv) == format_outcomes(v, OutputFormat::csv));
  CHECK(format_outcomes(v, OutputFormat::json) == format_outcomes(v, OutputFormat::json));
}
