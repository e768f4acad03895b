#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "raabe/big_real.hpp"
#include "raabe/glaisher.hpp"
#include "raabe/precision.hpp"
#include "raabe/rl_quad.hpp"

// Closed-form and series evaluations of Riemann-Liouville integrals of
// log Gamma on [0,1].
//
// Every outer series has the shape  sum_{n>=0} (-1)^n C(a,n) M(n+b)  with
// M(s) = int_0^1 t^s log Gamma(t) dt. The head n < N is summed exactly at a
// precision tier that absorbs the cancellation inside the Glaisher inner sums;
// in TailMode::kAsymptotic the remainder n >= N is added from an asymptotic
// expansion in Hurwitz zeta values, otherwise the series is cut off.

namespace raabe::series {

enum class Method { kGlaisherSeries, kZetaSeries, kIntegerClosed, kReflectionAssembled };
enum class MomentMethod { kGlaisherClosed, kZetaClosed, kQuadrature };
enum class ClosedOrQuad { kClosed, kQuadrature };
enum class TailMode { kAsymptotic, kTruncate };
enum class BetaIdentity { kFirst, kSecond };

std::string_view to_string(Method m);
std::string_view to_string(MomentMethod m);
std::string_view to_string(ClosedOrQuad m);
std::string_view to_string(TailMode m);

struct SeriesOptions {
  TailMode tail = TailMode::kAsymptotic;
  /// Hard cap on the number of outer terms.
  int max_terms = 400;
  /// Forces the head length N when > 0 (tail still added in kAsymptotic).
  int fixed_terms = 0;
};

struct SeriesEval {
  BigReal value;
  /// Outer terms summed explicitly (0 for closed forms).
  long n_terms = 0;
  /// Absolute error bound for the part of the series not summed exactly.
  double tail_est = 0;
  int bits_used = 0;
  Method method = Method::kGlaisherSeries;
  bool converged = true;
  /// Asymptotic remainder included in value (zero in kTruncate mode).
  BigReal remainder;
  /// Parameters outside the proven range (beta < 1 for the beta weights).
  bool conjectural = false;
};

/// Minimum precision for an inner sum of order n: 64 + ceil(4.5 n).
int policy_min_bits(long n);
/// Working precision for a head of N terms.
int tier_bits(long n_terms, PrecisionContext ctx);

/// T_n = sum_{k=0}^{n-1} (-1)^k C(n,k) log D_k. Throws PrecisionError when
/// ctx.bits < policy_min_bits(n) and DomainError when table.k_max() < n-1.
BigReal inner_glaisher_sum(int n, const glaisher::GlaisherTable& table, PrecisionContext ctx);

/// T_n from zeta values: the [(log 2pi + gamma) zeta(2k) - zeta'(2k)] block
/// carries (2k)!/(k (2pi)^{2k}) and the zeta(2k+1) block (2k)!/(2 (2pi)^{2k}).
/// printed_coefficient = true puts (2k)!/(2 (2pi)^{2k}) on both blocks, the
/// form found in print (kept for comparison only).
BigReal inner_zeta_sum(int n, PrecisionContext ctx, bool printed_coefficient = false);

/// I_{0+}^alpha log Gamma (1).
SeriesEval raabe_left(const BigReal& alpha, Method method, double tol, PrecisionContext ctx,
                      const SeriesOptions& opts = {});
SeriesEval raabe_left(double alpha, Method method, double tol, PrecisionContext ctx, const SeriesOptions& opts = {});

/// I_{1-}^alpha log Gamma (0) by reflection:
///   (log pi - alpha int t^{alpha-1} log sin(pi t) dt) / Gamma(alpha+1) - I_{0+}^alpha log Gamma (1).
/// kReflectionAssembled always takes the log-sine integral by quadrature.
SeriesEval raabe_right(const BigReal& alpha, Method method, double tol, PrecisionContext ctx,
                       const SeriesOptions& opts = {});
SeriesEval raabe_right(double alpha, Method method, double tol, PrecisionContext ctx,
                       const SeriesOptions& opts = {});

/// The repeated right integral with +sum C(m,k) log D_k, as printed in the
/// literature. Wrong; retained for regression tests.
BigReal raabe_right_printed_corollary(int m, PrecisionContext ctx);

/// int_0^1 t^n log Gamma(t) dt.
BigReal log_gamma_moment(int n, MomentMethod method, PrecisionContext ctx);
/// int_0^1 t^s log Gamma(t) dt for real s > -1: closed form for integer s,
/// reflection for s < 8, the zeta(k)/k Taylor series above.
BigReal log_gamma_moment_real(const BigReal& s, double tol, PrecisionContext ctx);

/// int_0^1 t^n psi(t) dt, n >= 1.
BigReal digamma_moment(int n, ClosedOrQuad method, PrecisionContext ctx);

/// int_0^1 t^{m-1} log sin(pi t) dt, m >= 1.
BigReal log_sin_moment(int m, ClosedOrQuad method, PrecisionContext ctx);
/// Same for real order s > 0 (closed form when s is integral).
BigReal log_sin_moment_real(const BigReal& s, double tol, PrecisionContext ctx);

/// I_{0+}^alpha [x^{beta-1} log Gamma](1), beta >= 1 (beta in (0,1) is
/// accepted and flagged conjectural).
SeriesEval beta_left(const BigReal& alpha, const BigReal& beta, double tol, PrecisionContext ctx,
                     const SeriesOptions& opts = {});
SeriesEval beta_left(double alpha, double beta, double tol, PrecisionContext ctx, const SeriesOptions& opts = {});

/// I_{1-}^alpha [x^{beta-1} log Gamma](0) = Gamma(alpha+beta-1)/Gamma(alpha) I_{1-}^{alpha+beta-1} log Gamma(0).
BigReal beta_left_trivial(const BigReal& alpha, const BigReal& beta, PrecisionContext ctx, double tol = 1e-15);
BigReal beta_left_trivial(double alpha, double beta, PrecisionContext ctx, double tol = 1e-15);

/// Weight (1-x)^{beta-1}:
///   kFirst:  I_{0+}^alpha [...](1) = Gamma(alpha+beta-1)/Gamma(alpha) I_{0+}^{alpha+beta-1} log Gamma(1)
///   kSecond: I_{1-}^alpha [...](0) as a series in C(beta-1, n); finite for integer beta.
SeriesEval beta_right(const BigReal& alpha, const BigReal& beta, BetaIdentity identity, double tol,
                      PrecisionContext ctx, const SeriesOptions& opts = {});
SeriesEval beta_right(double alpha, double beta, BetaIdentity identity, double tol, PrecisionContext ctx,
                      const SeriesOptions& opts = {});

/// Fractional integral of x^{beta-1} (1-x)^{gamma_exp-1} log Gamma(x).
SeriesEval combined_weight(const BigReal& alpha, const BigReal& beta, const BigReal& gamma_exp, quad::Side side,
                           PrecisionContext ctx, double tol);
SeriesEval combined_weight(double alpha, double beta, double gamma_exp, quad::Side side, PrecisionContext ctx,
                           double tol);

struct ProbeReport {
  /// |C(alpha-1,n)| int t^{n+beta-1} log Gamma, n = 0..N.
  std::vector<BigReal> terms;
  std::vector<BigReal> partial_sums;
  /// Least-squares slope of log term_n against log n over n in [N/10, N];
  /// NaN when fewer than two positive terms fall in that window.
  double decay_exponent = 0;
  /// True when alpha-1 is a non-negative integer and the sum is finite.
  bool finite = false;
  bool monotone = true;
  /// S_N - S_{N-10}.
  double last_decade_growth = 0;
};

/// Evidence for absolute convergence of the beta series at beta in (0,1).
ProbeReport conjecture_probe(const BigReal& alpha, const BigReal& beta, long n_max, PrecisionContext ctx);
ProbeReport conjecture_probe(double alpha, double beta, long n_max, PrecisionContext ctx);

}  // namespace raabe::series
