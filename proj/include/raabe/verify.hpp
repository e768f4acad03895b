#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raabe/raabe_series.hpp"

namespace raabe::verify {

/// One dual-path comparison. pass == (residual <= tol).
struct VerificationRecord {
  std::string quantity;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string method_a;
  std::string method_b;
  std::string value_a;
  std::string value_b;
  double residual = 0;
  double tol = 0;
  bool pass = false;
  long n_terms = 0;
  int bits = 0;
  long wall_ms = 0;
};

enum class Suite { kConstants, kRaabe, kBeta, kMoments, kAll };

std::optional<Suite> parse_suite(std::string_view name);

struct VerifyOptions {
  int bits = 192;
  double tol = 1e-8;
  /// Record wall_ms; otherwise it stays 0 so output is reproducible.
  bool timing = false;
  series::TailMode tail = series::TailMode::kAsymptotic;
  /// 0: hardware concurrency.
  unsigned threads = 0;
};

/// Runs every check of the suite and returns the records sorted by
/// (quantity, alpha, beta, method_a, method_b). Evaluation errors become
/// failing records whose value_a holds the error message.
std::vector<VerificationRecord> run_suite(Suite suite, const VerifyOptions& opts);

void sort_records(std::vector<VerificationRecord>& records);

inline constexpr std::string_view kCsvHeader =
    "quantity,alpha,beta,method_a,method_b,value_a,value_b,residual,tol,pass,n_terms,bits,wall_ms";

std::string to_csv(const std::vector<VerificationRecord>& records);
std::string to_json(const std::vector<VerificationRecord>& records);

/// "N records, P passed, F failed".
std::string summary_line(const std::vector<VerificationRecord>& records);

/// Shortest decimal string that round-trips the double.
std::string format_real(double x);

}  // namespace raabe::verify
