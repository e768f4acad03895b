#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "raabe/glaisher.hpp"
#include "raabe/raabe_series.hpp"
#include "raabe/rl_quad.hpp"
#include "raabe/special_fn.hpp"
#include "raabe/verify.hpp"

using namespace raabe;
using series::Method;
using Clock = std::chrono::steady_clock;

namespace {

const PrecisionContext kCtx(192);

double diff(const BigReal& a, const BigReal& b) { return abs(a - b).to_double(); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

const double kAlphaGrid[] = {0.5, 0.75, 1.5, 2.5, std::numbers::pi};

BigReal quad_rl(quad::Side side, double alpha) { return quad::rl_eval(side, alpha, 0.0, 0.0, kCtx, 1e-20).value; }

// Printed digits count as reproduced when they match the value rounded or
// truncated to the same number of significant digits.
bool reproduces(const BigReal& v, const std::string& printed) {
  const int digits = static_cast<int>(printed.size()) - 1 - (printed[0] == '0' ? 1 : 0);
  return v.to_string(digits) == printed || v.to_string(digits + 10).rfind(printed, 0) == 0;
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  struct Row {
    int k;
    const char* printed;
  };
  for (Row r : {Row{1, "1.2824271291"}, Row{2, "1.03091675"}, Row{3, "0.97955746"}}) {
    const BigReal d = exp(glaisher::log_glaisher(r.k, kCtx));
    o.require(reproduces(d, r.printed), "D_" + std::to_string(r.k) + " = " + d.to_string(12) + " vs " + r.printed);
  }
  const BigReal g = special::euler_gamma(kCtx);
  o.require(reproduces(g, "0.577215664901532"), "gamma = " + g.to_string(18));
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
}

void criterion2(Outcome& o) {
  const BigReal half = special::log_2pi(kCtx) / 2L;
  for (Method m : {Method::kGlaisherSeries, Method::kZetaSeries, Method::kIntegerClosed, Method::kReflectionAssembled}) {
    if (m != Method::kReflectionAssembled) {
      const double l = diff(series::raabe_left(1.0, m, 1e-14, kCtx).value, half);
      o.require(l <= 1e-12, std::string(series::to_string(m)) + " left " + std::to_string(l));
    }
    const double r = diff(series::raabe_right(1.0, m, 1e-14, kCtx).value, half);
    o.require(r <= 1e-12, std::string(series::to_string(m)) + " right " + std::to_string(r));
  }
  o.require(diff(quad_rl(quad::Side::kLeftAt1, 1.0), half) <= 1e-12, "quadrature left");
  o.require(diff(quad_rl(quad::Side::kRightAt0, 1.0), half) <= 1e-12, "quadrature right");
}

void criterion3(Outcome& o) {
  for (double a : kAlphaGrid) {
    auto t0 = Clock::now();
    const BigReal l = series::raabe_left(a, Method::kGlaisherSeries, 1e-11, kCtx).value;
    const double tl = seconds_since(t0);
    t0 = Clock::now();
    const BigReal r = series::raabe_right(a, Method::kGlaisherSeries, 1e-11, kCtx).value;
    const double tr = seconds_since(t0);
    const double dl = diff(l, quad_rl(quad::Side::kLeftAt1, a));
    const double dr = diff(r, quad_rl(quad::Side::kRightAt0, a));
    const std::string at = "alpha=" + std::to_string(a);
    o.require(dl <= 1e-9, at + " left " + std::to_string(dl));
    o.require(dr <= 1e-9, at + " right " + std::to_string(dr));
    o.require(tl < 5 && tr < 5, at + " slow evaluation");
  }
}

void criterion4(Outcome& o) {
  for (int m = 1; m <= 8; ++m) {
    for (quad::Side side : {quad::Side::kLeftAt1, quad::Side::kRightAt0}) {
      const bool left = side == quad::Side::kLeftAt1;
      auto eval = [&](Method method) {
        return left ? series::raabe_left(double(m), method, 1e-14, kCtx) : series::raabe_right(double(m), method, 1e-14, kCtx);
      };
      const BigReal closed = eval(Method::kIntegerClosed).value;
      const series::SeriesEval gs = eval(Method::kGlaisherSeries);
      const std::string at = std::string(left ? "left" : "right") + " m=" + std::to_string(m);
      o.require(diff(closed, quad_rl(side, m)) <= 1e-10, at + " closed vs quadrature");
      o.require(diff(gs.value, closed) <= 1e-11, at + " series vs closed");
      o.require(gs.n_terms == m, at + " series did not self-truncate");
    }
  }
}

void criterion5(Outcome& o) {
  for (double a : kAlphaGrid) {
    const double d = diff(series::raabe_left(a, Method::kGlaisherSeries, 1e-12, kCtx).value,
                          series::raabe_left(a, Method::kZetaSeries, 1e-12, kCtx).value);
    o.require(d <= 1e-9, "alpha=" + std::to_string(a) + " " + std::to_string(d));
  }
}

void criterion6(Outcome& o) {
  verify::VerifyOptions opts;
  opts.tol = 1e-8;
  for (const auto& r : verify::run_suite(verify::Suite::kBeta, opts)) {
    o.require(r.pass, r.quantity + "(" + verify::format_real(r.alpha.value_or(0)) + "," +
                          verify::format_real(r.beta.value_or(0)) + ") residual " + verify::format_real(r.residual));
  }
}

void criterion7(Outcome& o) {
  using series::ClosedOrQuad;
  using series::MomentMethod;
  for (int n = 0; n <= 10; ++n) {
    const BigReal g = series::log_gamma_moment(n, MomentMethod::kGlaisherClosed, kCtx);
    const BigReal z = series::log_gamma_moment(n, MomentMethod::kZetaClosed, kCtx);
    const BigReal q = series::log_gamma_moment(n, MomentMethod::kQuadrature, kCtx);
    o.require(diff(g, z) <= 1e-10 && diff(g, q) <= 1e-10 && diff(z, q) <= 1e-10,
              "log_gamma_moment n=" + std::to_string(n));
  }
  for (int n = 1; n <= 10; ++n) {
    o.require(diff(series::digamma_moment(n, ClosedOrQuad::kClosed, kCtx),
                   series::digamma_moment(n, ClosedOrQuad::kQuadrature, kCtx)) <= 1e-9,
              "digamma_moment n=" + std::to_string(n));
  }
  for (int m = 1; m <= 6; ++m) {
    o.require(diff(series::log_sin_moment(m, ClosedOrQuad::kClosed, kCtx),
                   series::log_sin_moment(m, ClosedOrQuad::kQuadrature, kCtx)) <= 1e-10,
              "log_sin_moment m=" + std::to_string(m));
  }
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> alpha_dist(0.0, 6.0);
  std::uniform_int_distribution<int> n_dist(0, 200);
  int violations = 0;
  std::string first;
  for (int i = 0; i < 500; ++i) {
    double a = alpha_dist(rng);
    if (a == 0.0) a = 6.0;
    const int n = n_dist(rng);
    const BigReal c = abs(special::binom_real(a - 1.0, n, kCtx));
    if (c > BigReal(std::pow(2.0, a - 1.0), kCtx)) {
      if (violations++ == 0) {
        first = "alpha=" + std::to_string(a) + " n=" + std::to_string(n) + " |C|=" + c.to_string(6);
      }
    }
  }
  o.require(violations == 0, "binomial bound violated in " + std::to_string(violations) + "/500 draws, first " + first);

  for (int k = 0; k <= 20; ++k) {
    const BigReal rhs = BigReal(mpq_class(-special::bernoulli_rational(k + 1) / (k + 1)), kCtx);
    const BigReal lhs = special::zeta(BigReal(-k, kCtx), kCtx).value;
    o.require(diff(lhs, rhs) <= std::ldexp(1.0, -176) * std::max(1.0, std::abs(rhs.to_double())),
              "zeta(-" + std::to_string(k) + ")");
  }
  for (int m = 1; m <= 6; ++m) {
    const BigReal rhs = special::bernoulli_number(2 * m, kCtx) * special::zeta(2.0 * m + 1, kCtx).value /
                        (special::zeta(2.0 * m, kCtx).value * 4L);
    o.require(diff(glaisher::log_glaisher(2 * m, kCtx), rhs) <= std::ldexp(1.0, -176),
              "even index m=" + std::to_string(m));
  }
  const BigReal lg1mt =
      quad::tanh_sinh(quad::WeightedIntegrand(0.0, 0.0, quad::Kernel::kLogGammaOver1mt), 1e-20, kCtx).value;
  o.require(lg1mt > 0L && lg1mt <= 2L, "log Gamma/(1-t) integral " + lg1mt.to_string(10));
  for (double a : kAlphaGrid) {
    const BigReal aw(a, kCtx);
    const BigReal ls =
        quad::tanh_sinh(quad::WeightedIntegrand(aw - 1L, BigReal(kCtx), quad::Kernel::kLogSinPi), 1e-20, kCtx).value;
    const BigReal rhs = (log(const_pi(kCtx)) - aw * ls) / special::gamma(aw + 1L, kCtx);
    const BigReal lhs = series::raabe_left(a, Method::kGlaisherSeries, 1e-12, kCtx).value +
                        quad_rl(quad::Side::kRightAt0, a);
    o.require(diff(lhs, rhs) <= 1e-10, "reflection sum alpha=" + std::to_string(a));
  }
}

void criterion9(Outcome& o) {
  const auto limits = glaisher::log_glaisher_limits(12, 200000, kCtx);
  for (int k = 0; k <= 12; ++k) {
    const double d = diff(limits[static_cast<std::size_t>(k)], glaisher::log_glaisher(k, kCtx));
    o.require(d <= 1e-4, "k=" + std::to_string(k) + " " + std::to_string(d));
  }
}

void criterion10(Outcome& o) {
  const BigReal truth = quad_rl(quad::Side::kRightAt0, 1.0);
  const double printed = diff(series::raabe_right_printed_corollary(1, kCtx), truth);
  const double fixed = diff(series::raabe_right(1.0, Method::kIntegerClosed, 1e-14, kCtx).value, truth);
  o.require(printed > 1.0, "printed form off by only " + std::to_string(printed));
  o.require(fixed <= 1e-10, "corrected form off by " + std::to_string(fixed));
}

void criterion11(Outcome& o) {
  const series::ProbeReport p = series::conjecture_probe(0.5, 0.5, 2000, kCtx);
  o.require(p.monotone, "partial sums not monotone");
  o.require(p.last_decade_growth < 1e-6, "last-decade growth " + std::to_string(p.last_decade_growth));
  o.require(p.decay_exponent < -1, "decay exponent " + std::to_string(p.decay_exponent));
}

void wall_time(Outcome& o) {
  const std::string cmd = std::string(RAABE_CLI_PATH) + " verify --suite all > /dev/null 2>&1";
  const auto t0 = Clock::now();
  const int status = std::system(cmd.c_str());
  const double t = seconds_since(t0);
  o.require(status != -1, "could not launch the CLI");
  o.require(t <= 300, "took " + std::to_string(t) + " s");
  o.detail << (o.pass ? "" : "; ") << "wall " << std::to_string(t) << " s";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"criterion 1: constant digits", criterion1},
      {"criterion 2: base case", criterion2},
      {"criterion 3: fractional series vs quadrature", criterion3},
      {"criterion 4: integer orders", criterion4},
      {"criterion 5: zeta route", criterion5},
      {"criterion 6: beta identities", criterion6},
      {"criterion 7: moments", criterion7},
      {"criterion 8: properties", criterion8},
      {"criterion 9: limit oracle", criterion9},
      {"criterion 10: sign regression", criterion10},
      {"criterion 11: probe", criterion11},
      {"verify --suite all wall time <= 5 min", wall_time},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const std::string detail = o.detail.str();
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << (detail.empty() ? "" : " (" + detail + ")") << '\n';
    std::cout.flush();
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
