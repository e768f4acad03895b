#include "raabe/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "raabe/glaisher.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::verify {

namespace {

using series::BetaIdentity;
using series::ClosedOrQuad;
using series::Method;
using series::MomentMethod;
using series::SeriesEval;
using series::SeriesOptions;
using quad::Side;

using Records = std::vector<VerificationRecord>;
using Job = std::function<Records()>;

constexpr double kPi = std::numbers::pi;

struct Params {
  std::optional<double> alpha;
  std::optional<double> beta;
};

VerificationRecord compare(std::string quantity, Params p, std::string method_a, std::string method_b,
                           const BigReal& a, const BigReal& b, double tol, PrecisionContext ctx, long n_terms = 0,
                           int bits = 0) {
  VerificationRecord r;
  r.quantity = std::move(quantity);
  r.alpha = p.alpha;
  r.beta = p.beta;
  r.method_a = std::move(method_a);
  r.method_b = std::move(method_b);
  r.value_a = a.rounded(ctx).to_string();
  r.value_b = b.rounded(ctx).to_string();
  r.residual = abs(a - b).to_double();
  r.tol = tol;
  r.pass = r.residual <= tol;
  r.n_terms = n_terms;
  r.bits = bits > 0 ? bits : ctx.bits;
  return r;
}

VerificationRecord compare(std::string quantity, Params p, std::string method_a, std::string method_b,
                           const SeriesEval& a, const BigReal& b, double tol, PrecisionContext ctx) {
  VerificationRecord r =
      compare(std::move(quantity), p, std::move(method_a), std::move(method_b), a.value, b, tol, ctx, a.n_terms,
              a.bits_used);
  if (!a.converged) r.pass = false;
  return r;
}

struct Env {
  PrecisionContext ctx;
  double tol;
  double series_tol;
  double quad_tol;
  SeriesOptions opts;
  double wp_tol;  // relative working-precision tolerance
};

Env make_env(const VerifyOptions& o) {
  Env e{PrecisionContext(o.bits), o.tol, o.tol / 16, 0, SeriesOptions{}, std::ldexp(1.0, -o.bits + 16)};
  e.quad_tol = std::max(o.tol / 64, std::ldexp(1.0, -o.bits + 24));
  e.opts.tail = o.tail;
  return e;
}

std::string method_name(Method m) { return std::string(series::to_string(m)); }

BigReal quad_value(Side side, double alpha, double p, double q, const Env& e) {
  return quad::rl_eval(side, alpha, p, q, e.ctx, e.quad_tol).value;
}

// --- constants -----------------------------------------------------------------

struct Printed {
  int k;
  const char* digits;
};

void add_constant_jobs(std::vector<Job>& jobs, const Env& e) {
  jobs.push_back([e] {
    Records out;
    for (Printed p : {Printed{1, "1.2824271291"}, Printed{2, "1.03091675"}, Printed{3, "0.97955746"}}) {
      const std::string s(p.digits);
      const int places = static_cast<int>(s.size() - s.find('.') - 1);
      const BigReal d = exp(glaisher::log_glaisher(p.k, e.ctx));
      out.push_back(compare("glaisher_printed_digits", {double(p.k), {}}, "ADAMCHIK", "PRINTED", d,
                            BigReal::parse(s, e.ctx), std::pow(10.0, -places), e.ctx));
    }
    const std::string g = "0.577215664901532";
    out.push_back(compare("euler_gamma_printed_digits", {}, "BRENT_MCMILLAN", "PRINTED", special::euler_gamma(e.ctx),
                          BigReal::parse(g, e.ctx), 1e-15, e.ctx));
    out.push_back(compare("glaisher_d0", {0.0, {}}, "ADAMCHIK", "SQRT_2PI", exp(glaisher::log_glaisher(0, e.ctx)),
                          sqrt(const_pi(e.ctx) * 2L), e.tol, e.ctx));
    return out;
  });

  jobs.push_back([e] {
    Records out;
    constexpr long kLimitN = 200000;
    const auto limits = glaisher::log_glaisher_limits(12, kLimitN, e.ctx);
    for (int k = 0; k <= 12; ++k) {
      out.push_back(compare("glaisher_limit", {double(k), {}}, "ADAMCHIK", "LIMIT_N200000",
                            glaisher::log_glaisher(k, e.ctx), limits[static_cast<std::size_t>(k)], 1e-4, e.ctx));
    }
    return out;
  });

  jobs.push_back([e] {
    Records out;
    for (int m = 1; m <= 6; ++m) {
      const BigReal lhs = glaisher::log_glaisher(2 * m, e.ctx);
      const BigReal rhs = special::bernoulli_number(2 * m, e.ctx) * special::zeta(BigReal(2 * m + 1, e.ctx), e.ctx).value /
                          (special::zeta(BigReal(2 * m, e.ctx), e.ctx).value * 4L);
      out.push_back(compare("glaisher_even_index", {double(2 * m), {}}, "ADAMCHIK", "BERNOULLI_ZETA", lhs, rhs,
                            e.wp_tol * std::max(1.0, std::abs(rhs.to_double())), e.ctx));
    }
    for (int k = 0; k <= 20; ++k) {
      const BigReal z = special::zeta(BigReal(-k, e.ctx), e.ctx).value;
      const BigReal b = -special::bernoulli_number(k + 1, e.ctx) / static_cast<long>(k + 1);
      out.push_back(compare("zeta_negative_integer", {double(-k), {}}, "ZETA", "BERNOULLI", z, b,
                            e.wp_tol * std::max(1.0, std::abs(b.to_double())), e.ctx));
    }
    return out;
  });
}

// --- raabe ---------------------------------------------------------------------

constexpr std::array<double, 5> kAlphaGrid = {0.5, 0.75, 1.5, 2.5, kPi};

void add_raabe_jobs(std::vector<Job>& jobs, const Env& e) {
  jobs.push_back([e] {
    Records out;
    const BigReal half = special::log_2pi(e.ctx) / 2L;
    for (Method m : {Method::kGlaisherSeries, Method::kZetaSeries, Method::kIntegerClosed}) {
      out.push_back(compare("raabe_left_base", {1.0, {}}, method_name(m), "HALF_LOG_2PI",
                            series::raabe_left(1.0, m, e.series_tol, e.ctx, e.opts), half, e.tol, e.ctx));
    }
    for (Method m : {Method::kGlaisherSeries, Method::kZetaSeries, Method::kIntegerClosed,
                     Method::kReflectionAssembled}) {
      out.push_back(compare("raabe_right_base", {1.0, {}}, method_name(m), "HALF_LOG_2PI",
                            series::raabe_right(1.0, m, e.series_tol, e.ctx, e.opts), half, e.tol, e.ctx));
    }
    return out;
  });

  for (double a : kAlphaGrid) {
    jobs.push_back([e, a] {
      Records out;
      const SeriesEval lg = series::raabe_left(a, Method::kGlaisherSeries, e.series_tol, e.ctx, e.opts);
      const SeriesEval lz = series::raabe_left(a, Method::kZetaSeries, e.series_tol, e.ctx, e.opts);
      const BigReal lq = quad_value(Side::kLeftAt1, a, 0, 0, e);
      out.push_back(compare("raabe_left", {a, {}}, "GLAISHER_SERIES", "QUADRATURE", lg, lq, e.tol, e.ctx));
      out.push_back(compare("raabe_left", {a, {}}, "ZETA_SERIES", "QUADRATURE", lz, lq, e.tol, e.ctx));
      out.push_back(compare("raabe_left", {a, {}}, "GLAISHER_SERIES", "ZETA_SERIES", lg, lz.value, e.tol, e.ctx));

      const SeriesEval rg = series::raabe_right(a, Method::kGlaisherSeries, e.series_tol, e.ctx, e.opts);
      const SeriesEval rr = series::raabe_right(a, Method::kReflectionAssembled, e.series_tol, e.ctx, e.opts);
      const BigReal rq = quad_value(Side::kRightAt0, a, 0, 0, e);
      out.push_back(compare("raabe_right", {a, {}}, "GLAISHER_SERIES", "QUADRATURE", rg, rq, e.tol, e.ctx));
      out.push_back(compare("raabe_right", {a, {}}, "REFLECTION_ASSEMBLED", "QUADRATURE", rr, rq, e.tol, e.ctx));

      // series left + quadrature right against the reflection formula
      const PrecisionContext w = e.ctx.widened(16);
      const BigReal aw(a, w);
      const BigReal ls =
          quad::tanh_sinh(quad::WeightedIntegrand(aw - 1L, BigReal(w), quad::Kernel::kLogSinPi), e.quad_tol, w).value;
      const BigReal assembled =
          (log(const_pi(w)) - aw * ls) * exp(-special::log_gamma(aw + 1L, w));
      out.push_back(compare("reflection_sum", {a, {}}, "LEFT_SERIES+RIGHT_QUADRATURE", "LOG_SINE", lg.value + rq,
                            assembled, e.tol, e.ctx, lg.n_terms, lg.bits_used));
      return out;
    });
  }

  for (int m = 1; m <= 8; ++m) {
    jobs.push_back([e, m] {
      Records out;
      const double a = m;
      const SeriesEval li = series::raabe_left(a, Method::kIntegerClosed, e.series_tol, e.ctx, e.opts);
      const SeriesEval lg = series::raabe_left(a, Method::kGlaisherSeries, e.series_tol, e.ctx, e.opts);
      out.push_back(compare("raabe_left_integer", {a, {}}, "INTEGER_CLOSED", "QUADRATURE", li,
                            quad_value(Side::kLeftAt1, a, 0, 0, e), e.tol, e.ctx));
      out.push_back(compare("raabe_left_integer", {a, {}}, "GLAISHER_SERIES", "INTEGER_CLOSED", lg, li.value, e.tol,
                            e.ctx));
      const SeriesEval ri = series::raabe_right(a, Method::kIntegerClosed, e.series_tol, e.ctx, e.opts);
      const SeriesEval rg = series::raabe_right(a, Method::kGlaisherSeries, e.series_tol, e.ctx, e.opts);
      out.push_back(compare("raabe_right_integer", {a, {}}, "INTEGER_CLOSED", "QUADRATURE", ri,
                            quad_value(Side::kRightAt0, a, 0, 0, e), e.tol, e.ctx));
      out.push_back(compare("raabe_right_integer", {a, {}}, "GLAISHER_SERIES", "INTEGER_CLOSED", rg, ri.value,
                            e.tol, e.ctx));
      return out;
    });
  }
}

// --- beta ----------------------------------------------------------------------

constexpr std::array<double, 4> kBetaGrid = {1.0, 1.5, 2.0, 3.0};

struct Triple {
  double alpha;
  double beta;
  double gamma;
};

void add_beta_jobs(std::vector<Job>& jobs, const Env& e) {
  for (double a : kBetaGrid) {
    for (double b : kBetaGrid) {
      jobs.push_back([e, a, b] {
        Records out;
        const Params p{a, b};
        out.push_back(compare("beta_left", p, "GLAISHER_SERIES", "QUADRATURE",
                              series::beta_left(a, b, e.series_tol, e.ctx, e.opts),
                              quad_value(Side::kLeftAt1, a, b - 1, 0, e), e.tol, e.ctx));
        out.push_back(compare("beta_left_trivial", p, "RIGHT_SERIES", "QUADRATURE",
                              series::beta_left_trivial(a, b, e.ctx, e.series_tol),
                              quad_value(Side::kRightAt0, a, b - 1, 0, e), e.tol, e.ctx));
        out.push_back(compare("beta_right_first", p, "LEFT_SERIES", "QUADRATURE",
                              series::beta_right(a, b, BetaIdentity::kFirst, e.series_tol, e.ctx, e.opts),
                              quad_value(Side::kLeftAt1, a, 0, b - 1, e), e.tol, e.ctx));
        out.push_back(compare("beta_right_second", p, "GLAISHER_SERIES", "QUADRATURE",
                              series::beta_right(a, b, BetaIdentity::kSecond, e.series_tol, e.ctx, e.opts),
                              quad_value(Side::kRightAt0, a, 0, b - 1, e), e.tol, e.ctx));
        return out;
      });
    }
  }
  for (Triple t : {Triple{1, 2, 2}, Triple{1.5, 2, 1.5}, Triple{2.5, 1.5, 2}, Triple{2, 3, 1}}) {
    jobs.push_back([e, t] {
      Records out;
      const std::string suffix = "(gamma=" + format_real(t.gamma) + ")";
      for (Side side : {Side::kLeftAt1, Side::kRightAt0}) {
        const std::string name = (side == Side::kLeftAt1 ? "combined_weight_left" : "combined_weight_right") + suffix;
        out.push_back(compare(name, {t.alpha, t.beta}, "SERIES", "QUADRATURE",
                              series::combined_weight(t.alpha, t.beta, t.gamma, side, e.ctx, e.series_tol),
                              quad_value(side, t.alpha, t.beta - 1, t.gamma - 1, e), e.tol, e.ctx));
      }
      return out;
    });
  }
}

// --- moments -------------------------------------------------------------------

void add_moment_jobs(std::vector<Job>& jobs, const Env& e) {
  for (int n = 0; n <= 10; ++n) {
    jobs.push_back([e, n] {
      Records out;
      const BigReal g = series::log_gamma_moment(n, MomentMethod::kGlaisherClosed, e.ctx);
      const BigReal z = series::log_gamma_moment(n, MomentMethod::kZetaClosed, e.ctx);
      const BigReal q = series::log_gamma_moment(n, MomentMethod::kQuadrature, e.ctx);
      const Params p{double(n), {}};
      out.push_back(compare("log_gamma_moment", p, "GLAISHER_CLOSED", "ZETA_CLOSED", g, z, e.tol, e.ctx));
      out.push_back(compare("log_gamma_moment", p, "GLAISHER_CLOSED", "QUADRATURE", g, q, e.tol, e.ctx));
      out.push_back(compare("log_gamma_moment", p, "ZETA_CLOSED", "QUADRATURE", z, q, e.tol, e.ctx));
      if (n >= 1) {
        const BigReal dc = series::digamma_moment(n, ClosedOrQuad::kClosed, e.ctx);
        const BigReal dq = series::digamma_moment(n, ClosedOrQuad::kQuadrature, e.ctx);
        const BigReal parts = -series::log_gamma_moment(n - 1, MomentMethod::kGlaisherClosed, e.ctx) *
                              static_cast<long>(n);
        out.push_back(compare("digamma_moment", p, "CLOSED", "QUADRATURE", dc, dq, e.tol, e.ctx));
        out.push_back(compare("digamma_moment", p, "CLOSED", "BY_PARTS", dc, parts, e.tol, e.ctx));
      }
      if (n >= 1 && n <= 6) {
        out.push_back(compare("log_sin_moment", p, "CLOSED", "QUADRATURE",
                              series::log_sin_moment(n, ClosedOrQuad::kClosed, e.ctx),
                              series::log_sin_moment(n, ClosedOrQuad::kQuadrature, e.ctx), e.tol, e.ctx));
      }
      return out;
    });
  }
  jobs.push_back([e] {
    const PrecisionContext w = e.ctx.widened(16);
    const quad::QuadResult q = quad::tanh_sinh(
        quad::WeightedIntegrand(BigReal(w), BigReal(w), quad::Kernel::kLogGammaOver1mt), e.quad_tol, w);
    const double v = q.value.to_double();
    VerificationRecord r = compare("log_gamma_over_1mt_bound", {}, "QUADRATURE", "BOUND_0_2", q.value,
                                   BigReal(2L, e.ctx), 0, e.ctx);
    r.residual = std::max(0.0, v - 2.0) + std::max(0.0, -v);
    r.pass = q.converged && r.residual <= r.tol;
    return Records{r};
  });
}

Records run_job(const Job& job, const VerifyOptions& o, std::string_view label) {
  const auto t0 = std::chrono::steady_clock::now();
  Records out;
  try {
    out = job();
  } catch (const std::exception& ex) {
    VerificationRecord r;
    r.quantity = std::string(label);
    r.value_a = std::string("error: ") + ex.what();
    r.residual = std::numeric_limits<double>::infinity();
    r.tol = o.tol;
    r.bits = o.bits;
    out.push_back(std::move(r));
  }
  if (o.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    for (auto& r : out) r.wall_ms = static_cast<long>(ms.count());
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "constants") return Suite::kConstants;
  if (name == "raabe") return Suite::kRaabe;
  if (name == "beta") return Suite::kBeta;
  if (name == "moments") return Suite::kMoments;
  if (name == "all") return Suite::kAll;
  return std::nullopt;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<VerificationRecord> run_suite(Suite suite, const VerifyOptions& opts) {
  const Env e = make_env(opts);
  std::vector<std::pair<std::string, Job>> labelled;
  auto add = [&](const char* label, void (*fn)(std::vector<Job>&, const Env&)) {
    std::vector<Job> jobs;
    fn(jobs, e);
    for (auto& j : jobs) labelled.emplace_back(label, std::move(j));
  };
  if (suite == Suite::kConstants || suite == Suite::kAll) add("constants", add_constant_jobs);
  if (suite == Suite::kRaabe || suite == Suite::kAll) add("raabe", add_raabe_jobs);
  if (suite == Suite::kBeta || suite == Suite::kAll) add("beta", add_beta_jobs);
  if (suite == Suite::kMoments || suite == Suite::kAll) add("moments", add_moment_jobs);

  std::vector<Records> results(labelled.size());
  std::atomic<std::size_t> next{0};
  unsigned n_threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(labelled.size()));
  auto worker = [&] {
    for (std::size_t i = next++; i < labelled.size(); i = next++) {
      results[i] = run_job(labelled[i].second, opts, labelled[i].first);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Records all;
  for (auto& r : results) all.insert(all.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  sort_records(all);
  return all;
}

void sort_records(std::vector<VerificationRecord>& records) {
  auto key = [](const VerificationRecord& r) {
    const double nan = std::numeric_limits<double>::lowest();
    return std::make_tuple(std::string_view(r.quantity), r.alpha.value_or(nan), r.beta.value_or(nan),
                           std::string_view(r.method_a), std::string_view(r.method_b));
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const VerificationRecord& x, const VerificationRecord& y) { return key(x) < key(y); });
}

std::string to_csv(const std::vector<VerificationRecord>& records) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << csv_field(r.quantity) << ',' << opt_real(r.alpha) << ',' << opt_real(r.beta) << ',' << csv_field(r.method_a)
       << ',' << csv_field(r.method_b) << ',' << csv_field(r.value_a) << ',' << csv_field(r.value_b) << ','
       << format_real(r.residual) << ',' << format_real(r.tol) << ',' << (r.pass ? "true" : "false") << ','
       << r.n_terms << ',' << r.bits << ',' << r.wall_ms << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<VerificationRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["quantity"] = r.quantity;
    j["alpha"] = r.alpha ? nlohmann::ordered_json(format_real(*r.alpha)) : nlohmann::ordered_json(nullptr);
    j["beta"] = r.beta ? nlohmann::ordered_json(format_real(*r.beta)) : nlohmann::ordered_json(nullptr);
    j["method_a"] = r.method_a;
    j["method_b"] = r.method_b;
    j["value_a"] = r.value_a;
    j["value_b"] = r.value_b;
    j["residual"] = format_real(r.residual);
    j["tol"] = format_real(r.tol);
    j["pass"] = r.pass;
    j["n_terms"] = r.n_terms;
    j["bits"] = r.bits;
    j["wall_ms"] = r.wall_ms;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string summary_line(const std::vector<VerificationRecord>& records) {
  const auto passed = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  std::ostringstream os;
  os << records.size() << " records, " << passed << " passed, " << (static_cast<long>(records.size()) - passed)
     << " failed";
  return os.str();
}

}  // namespace raabe::verify
