#include "raabe/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "raabe/errors.hpp"
#include "raabe/glaisher.hpp"
#include "raabe/raabe_series.hpp"
#include "raabe/special_fn.hpp"
#include "raabe/verify.hpp"

namespace raabe::cli {

namespace {

using nlohmann::ordered_json;
using verify::format_real;

struct Globals {
  int bits = 192;
  double tol = 1e-8;
  std::string format = "csv";
  std::string out_path;
  bool timing = false;
  std::string tail = "asymptotic";
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ordered_json str_or_null(const std::optional<std::string>& s) { return s ? ordered_json(*s) : ordered_json(nullptr); }

// Rows of string cells; nullopt is an empty CSV cell / JSON null.
using Row = std::vector<std::optional<std::string>>;

std::string render(const std::vector<std::string>& header, const std::vector<Row>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j;
      for (std::size_t i = 0; i < header.size(); ++i) j[header[i]] = str_or_null(row[i]);
      arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
    return os.str();
  }
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].value_or("");
    os << '\n';
  }
  return os.str();
}

std::string cmd_constants(int k_max, const Globals& g) {
  const PrecisionContext ctx(g.bits);
  const auto table = glaisher::GlaisherTable::get(k_max, ctx);
  std::vector<Row> rows;
  for (int k = 0; k <= k_max; ++k) {
    const BigReal& ld = table->log_value(k);
    std::optional<std::string> cross;
    if (k >= 2 && k % 2 == 0) {
      const BigReal v = special::bernoulli_number(k, ctx) * special::zeta(BigReal(k + 1, ctx), ctx).value /
                        (special::zeta(BigReal(k, ctx), ctx).value * 4L);
      cross = v.to_string();
    }
    rows.push_back({std::to_string(k), ld.to_string(), exp(ld).to_string(), cross});
  }
  return render({"k", "log_D", "D", "even_index_zeta"}, rows, g.format);
}

struct RaabeArgs {
  std::string side = "left";
  double alpha = 1;
  std::optional<double> beta;
  std::string method = "glaisher";
  std::string weight = "x";
};

series::Method parse_method(const std::string& m) {
  if (m == "glaisher") return series::Method::kGlaisherSeries;
  if (m == "zeta") return series::Method::kZetaSeries;
  if (m == "integer") return series::Method::kIntegerClosed;
  return series::Method::kReflectionAssembled;
}

std::string cmd_raabe(const RaabeArgs& a, const Globals& g, bool& converged) {
  const PrecisionContext ctx(g.bits);
  series::SeriesOptions opts;
  opts.tail = g.tail == "truncate" ? series::TailMode::kTruncate : series::TailMode::kAsymptotic;
  const series::Method method = parse_method(a.method);
  const bool left = a.side == "left";

  std::string quantity;
  series::SeriesEval r;
  std::optional<std::string> tail_est;
  if (!a.beta) {
    quantity = left ? "raabe_left" : "raabe_right";
    r = left ? series::raabe_left(a.alpha, method, g.tol, ctx, opts)
             : series::raabe_right(a.alpha, method, g.tol, ctx, opts);
    tail_est = format_real(r.tail_est);
  } else {
    if (method != series::Method::kGlaisherSeries) throw Usage("--beta supports --method glaisher only");
    const double b = *a.beta;
    if (a.weight == "x") {
      if (left) {
        quantity = "beta_left";
        r = series::beta_left(a.alpha, b, g.tol, ctx, opts);
        tail_est = format_real(r.tail_est);
      } else {
        quantity = "beta_left_trivial";
        r.value = series::beta_left_trivial(a.alpha, b, ctx, g.tol);
        r.bits_used = g.bits;
        r.conjectural = b < 1;
      }
    } else {
      quantity = left ? "beta_right_first" : "beta_right_second";
      r = series::beta_right(a.alpha, b, left ? series::BetaIdentity::kFirst : series::BetaIdentity::kSecond, g.tol,
                             ctx, opts);
      tail_est = format_real(r.tail_est);
    }
  }
  converged = r.converged;
  const Row row{quantity,
                format_real(a.alpha),
                a.beta ? std::optional<std::string>(format_real(*a.beta)) : std::nullopt,
                std::string(series::to_string(r.method)),
                r.value.rounded(ctx).to_string(),
                std::to_string(r.n_terms),
                tail_est,
                std::to_string(r.bits_used),
                r.converged ? "true" : "false",
                r.conjectural ? "true" : "false"};
  return render({"quantity", "alpha", "beta", "method", "value", "n_terms", "tail_est", "bits", "converged",
                 "conjectural"},
                {row}, g.format);
}

std::string cmd_probe(double alpha, double beta, long n, const Globals& g) {
  const PrecisionContext ctx(g.bits);
  const series::ProbeReport p = series::conjecture_probe(alpha, beta, n, ctx);
  const std::string note = p.finite ? "finite sum: C(alpha-1,n) vanishes for n > alpha-1" : "";
  std::ostringstream os;
  if (g.format == "json") {
    ordered_json j;
    j["alpha"] = format_real(alpha);
    j["beta"] = format_real(beta);
    j["N"] = n;
    j["decay_exponent"] = format_real(p.decay_exponent);
    j["monotone"] = p.monotone;
    j["finite"] = p.finite;
    j["last_decade_growth"] = format_real(p.last_decade_growth);
    if (!note.empty()) j["note"] = note;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
      rows.push_back({{"n", static_cast<long>(i)},
                      {"term", p.terms[i].to_string()},
                      {"partial_sum", p.partial_sums[i].to_string()}});
    }
    j["terms"] = std::move(rows);
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# alpha=" << format_real(alpha) << '\n'
     << "# beta=" << format_real(beta) << '\n'
     << "# N=" << n << '\n'
     << "# decay_exponent=" << format_real(p.decay_exponent) << '\n'
     << "# monotone=" << (p.monotone ? "true" : "false") << '\n'
     << "# finite=" << (p.finite ? "true" : "false") << '\n'
     << "# last_decade_growth=" << format_real(p.last_decade_growth) << '\n';
  if (!note.empty()) os << "# note=" << note << '\n';
  os << "n,term,partial_sum\n";
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    os << i << ',' << p.terms[i].to_string() << ',' << p.partial_sums[i].to_string() << '\n';
  }
  return os.str();
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.out_path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw Usage("cannot open --out " + g.out_path);
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemann-Liouville integrals of log Gamma: constants, series, verification"};
  app.name("raabe");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--bits", g.bits, "working precision in bits")->check(CLI::Range(53, 1 << 20));
  app.add_option("--tol", g.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "output file (default stdout)");
  app.add_flag("--timing", g.timing, "record wall_ms in verify output");
  app.add_option("--tail", g.tail, "series remainder handling")->check(CLI::IsMember({"asymptotic", "truncate"}));

  int k_max = 3;
  auto* constants = app.add_subcommand("constants", "table of generalized Glaisher constants");
  constants->add_option("--kmax", k_max, "largest k")->check(CLI::Range(0, 400));

  RaabeArgs ra;
  auto* raabe = app.add_subcommand("raabe", "single Riemann-Liouville evaluation");
  raabe->add_option("--side", ra.side)->check(CLI::IsMember({"left", "right"}));
  raabe->add_option("--alpha", ra.alpha)->required()->check(CLI::PositiveNumber);
  raabe->add_option("--beta", ra.beta, "power weight exponent")->check(CLI::PositiveNumber);
  raabe->add_option("--method", ra.method)->check(CLI::IsMember({"glaisher", "zeta", "integer", "reflection"}));
  raabe->add_option("--weight", ra.weight, "x: x^(beta-1), 1-x: (1-x)^(beta-1)")
      ->check(CLI::IsMember({"x", "1-x"}));

  std::string suite_name = "all";
  unsigned threads = 0;
  auto* verify_cmd = app.add_subcommand("verify", "dual-path verification sweep");
  verify_cmd->add_option("--suite", suite_name)->check(CLI::IsMember({"constants", "raabe", "beta", "moments", "all"}));
  verify_cmd->add_option("--threads", threads, "worker threads (0: all cores)");

  double p_alpha = 0.5;
  double p_beta = 0.5;
  long p_n = 2000;
  auto* probe = app.add_subcommand("probe", "partial sums of the beta series for beta in (0,1)");
  probe->add_option("--alpha", p_alpha)->required()->check(CLI::PositiveNumber);
  probe->add_option("--beta", p_beta)->required();
  probe->add_option("--N", p_n)->check(CLI::Range(1L, 1000000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (constants->parsed()) {
      emit(cmd_constants(k_max, g), g, out);
      return kOk;
    }
    if (raabe->parsed()) {
      bool converged = true;
      emit(cmd_raabe(ra, g, converged), g, out);
      if (!converged) {
        err << "error: series did not reach --tol within the term cap\n";
        return kNoConvergence;
      }
      return kOk;
    }
    if (verify_cmd->parsed()) {
      verify::VerifyOptions o;
      o.bits = g.bits;
      o.tol = g.tol;
      o.timing = g.timing;
      o.tail = g.tail == "truncate" ? series::TailMode::kTruncate : series::TailMode::kAsymptotic;
      o.threads = threads;
      const auto records = verify::run_suite(*verify::parse_suite(suite_name), o);
      emit(g.format == "json" ? verify::to_json(records) : verify::to_csv(records), g, out);
      err << verify::summary_line(records) << '\n';
      const bool ok = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
      return ok ? kOk : kVerificationFailed;
    }
    if (probe->parsed()) {
      if (!(p_beta > 0 && p_beta < 1)) throw Usage("--beta must lie in (0,1)");
      emit(cmd_probe(p_alpha, p_beta, p_n, g), g, out);
      return kOk;
    }
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PrecisionError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const MethodError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace raabe::cli
