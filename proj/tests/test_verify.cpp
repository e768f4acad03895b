#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "raabe/verify.hpp"

using namespace raabe;
using namespace raabe::verify;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("format_real is shortest round-trip") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1e-8) == "1e-08");
  CHECK(format_real(0.1 + 0.2) == "0.30000000000000004");
  CHECK(std::stod(format_real(3.141592653589793)) == 3.141592653589793);
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("parse_suite") {
  CHECK(parse_suite("all") == Suite::kAll);
  CHECK(parse_suite("moments") == Suite::kMoments);
  CHECK_FALSE(parse_suite("everything").has_value());
}

TEST_CASE("moments suite passes and serializes") {
  VerifyOptions o;
  o.tol = 1e-10;
  const auto recs = run_suite(Suite::kMoments, o);
  REQUIRE(!recs.empty());
  for (const auto& r : recs) {
    CHECK(r.pass == (r.residual <= r.tol));
    CHECK(r.pass);
    CHECK(r.wall_ms == 0);
  }
  CHECK(std::is_sorted(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.quantity, a.alpha) < std::tie(b.quantity, b.alpha);
  }));
  // log_gamma_moment: 11 orders x 3 pairings
  CHECK(std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.quantity == "log_gamma_moment"; }) == 33);

  const std::string csv = to_csv(recs);
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  CHECK(line == kCsvHeader);
  int rows = 0;
  while (std::getline(ss, line)) {
    CHECK(split(line).size() == 13);
    ++rows;
  }
  CHECK(rows == static_cast<int>(recs.size()));

  const auto j = nlohmann::json::parse(to_json(recs));
  REQUIRE(j.is_array());
  CHECK(j.size() == recs.size());
  const auto& first = j.front();
  std::vector<std::string> keys;
  for (auto it = first.begin(); it != first.end(); ++it) keys.push_back(it.key());
  CHECK(keys.size() == 13);
  CHECK(first.contains("value_a"));
  CHECK(first["residual"].is_string());
  CHECK(first["pass"].is_boolean());

  CHECK(summary_line(recs) == std::to_string(recs.size()) + " records, " + std::to_string(recs.size()) +
                                  " passed, 0 failed");
}

TEST_CASE("value strings round-trip at the stated bits") {
  VerifyOptions o;
  o.bits = 160;
  const auto recs = run_suite(Suite::kMoments, o);
  for (const auto& r : recs) {
    if (r.value_a.rfind("error", 0) == 0) continue;
    const PrecisionContext ctx(160);
    CHECK(BigReal::parse(r.value_a, ctx).to_string() == r.value_a);
  }
}

TEST_CASE("constants suite flags only the D_3 digits") {
  const auto recs = run_suite(Suite::kConstants, VerifyOptions{});
  std::vector<VerificationRecord> failed;
  std::copy_if(recs.begin(), recs.end(), std::back_inserter(failed), [](const auto& r) { return !r.pass; });
  REQUIRE(failed.size() == 1);
  CHECK(failed[0].quantity == "glaisher_printed_digits");
  CHECK(*failed[0].alpha == 3.0);
  CHECK(failed[0].value_b == "0.97955746");
}

TEST_CASE("thread count does not change the output") {
  VerifyOptions a;
  a.threads = 1;
  VerifyOptions b;
  b.threads = 4;
  CHECK(to_csv(run_suite(Suite::kRaabe, a)) == to_csv(run_suite(Suite::kRaabe, b)));
}

TEST_CASE("timing fills wall_ms") {
  VerifyOptions o;
  o.timing = true;
  const auto recs = run_suite(Suite::kBeta, o);
  CHECK(std::any_of(recs.begin(), recs.end(), [](const auto& r) { return r.wall_ms > 0; }));
  CHECK(std::all_of(recs.begin(), recs.end(), [](const auto& r) { return r.pass; }));
}

TEST_CASE("CSV escapes embedded commas") {
  VerificationRecord r;
  r.quantity = "x";
  r.value_a = "error: a, b";
  const std::string csv = to_csv({r});
  CHECK(csv.find("\"error: a, b\"") != std::string::npos);
}
