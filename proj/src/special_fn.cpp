#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::special {

namespace {

int guard_bits(PrecisionContext ctx) { return 32 + static_cast<int>(std::ceil(std::log2(ctx.bits))); }

// Stirling threshold: arguments are shifted up to at least this value.
long stirling_threshold(PrecisionContext w) { return std::max<long>(10, w.bits / 4); }

void require_positive(const BigReal& x, const char* who) {
  if (!x.is_finite() || x.sign() <= 0) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " + x.to_string(20));
  }
}

// (z - 1/2) log z - z + log(2 pi)/2 + sum_j B_2j / (2j (2j-1) z^(2j-1)).
BigReal stirling_log_gamma(const BigReal& z, PrecisionContext w) {
  BigReal sum = (z - BigReal(0.5, w)) * log(z) - z + log_2pi(w) / 2;
  const BigReal z2 = z * z;
  BigReal zpow = z;  // z^(2j-1)
  const BigReal eps = ldexp(abs(sum) + 1L, -w.bits - 4);
  for (int j = 1; 2 * j <= kBernoulliCap; ++j) {
    BigReal term = bernoulli_number(2 * j, w) / (zpow * static_cast<long>(2 * j * (2 * j - 1)));
    sum += term;
    if (abs(term) < eps) return sum;
    zpow *= z2;
  }
  throw PrecisionError("log_gamma: Stirling series did not converge within the Bernoulli cap");
}

// log z - 1/(2z) - sum_j B_2j / (2j z^2j).
BigReal asymptotic_digamma(const BigReal& z, PrecisionContext w) {
  BigReal sum = log(z) - 1L / (z * 2L);
  const BigReal z2 = z * z;
  BigReal zpow = z2;
  const BigReal eps = ldexp(abs(sum) + 1L, -w.bits - 4);
  for (int j = 1; 2 * j <= kBernoulliCap; ++j) {
    BigReal term = bernoulli_number(2 * j, w) / (zpow * static_cast<long>(2 * j));
    sum -= term;
    if (abs(term) < eps) return sum;
    zpow *= z2;
  }
  throw PrecisionError("digamma: asymptotic series did not converge within the Bernoulli cap");
}

// One evaluation at working precision w; `scale` receives the magnitude
// exponent of the largest intermediate so callers can detect cancellation.
BigReal log_gamma_at(const BigReal& x, PrecisionContext w, long* scale) {
  const BigReal xw = x.rounded(w);
  const long threshold = stirling_threshold(w);
  BigReal z = xw;
  BigReal prod(1L, w);
  while (z < threshold) {
    prod *= z;
    z += 1L;
  }
  BigReal big = stirling_log_gamma(z, w);
  *scale = big.is_zero() ? 0 : big.exponent();
  if (prod == 1L) return big;
  return big - log(prod);
}

BigReal digamma_at(const BigReal& x, PrecisionContext w, long* scale) {
  const BigReal xw = x.rounded(w);
  const long threshold = stirling_threshold(w);
  BigReal z = xw;
  BigReal shift(w);
  while (z < threshold) {
    shift += 1L / z;
    z += 1L;
  }
  BigReal big = asymptotic_digamma(z, w);
  *scale = std::max(big.is_zero() ? 0L : big.exponent(), shift.is_zero() ? 0L : shift.exponent());
  return big - shift;
}

// Repeats `eval` with more guard bits while the result lost more bits to
// cancellation than the guard covers.
template <class Eval>
BigReal ziv(const BigReal& x, PrecisionContext ctx, Eval eval) {
  int extra = guard_bits(ctx);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const PrecisionContext w = ctx.widened(extra);
    long scale = 0;
    BigReal r = eval(x, w, &scale);
    if (r.is_zero()) return r.rounded(ctx);
    const long lost = scale - r.exponent();
    if (lost <= extra - 16) return r.rounded(ctx);
    extra = static_cast<int>(lost) + guard_bits(ctx) + 16;
  }
  throw PrecisionError("cancellation exceeded the retry budget");
}

struct ConstCache {
  std::mutex mu;
  std::map<int, BigReal> values;
};

}  // namespace

BigReal log_2pi(PrecisionContext ctx) {
  const PrecisionContext w = ctx.widened(16);
  return log(const_pi(w) * 2L).rounded(ctx);
}

BigReal log_gamma(const BigReal& x, PrecisionContext ctx) {
  require_positive(x, "log_gamma");
  if (x == 1L || x == 2L) return BigReal(ctx);
  BigReal r = ziv(x, ctx, log_gamma_at);
  if (!r.is_finite()) throw OverflowError("log_gamma: result not representable");
  return r;
}

BigReal log_gamma(double x, PrecisionContext ctx) { return log_gamma(BigReal(x, ctx.widened(64)), ctx); }

BigReal gamma(const BigReal& x, PrecisionContext ctx) {
  const PrecisionContext w = ctx.widened(guard_bits(ctx));
  BigReal lg = log_gamma(x, w);
  BigReal r = exp(lg).rounded(ctx);
  if (!r.is_finite()) throw OverflowError("gamma: result not representable");
  return r;
}

BigReal digamma(const BigReal& x, PrecisionContext ctx) {
  require_positive(x, "digamma");
  if (x.is_integer() && x <= 4096L) {
    const int n = static_cast<int>(x.to_long());
    const PrecisionContext w = ctx.widened(guard_bits(ctx));
    return (harmonic(n - 1, w) - euler_gamma(w)).rounded(ctx);
  }
  return ziv(x, ctx, digamma_at);
}

BigReal digamma(double x, PrecisionContext ctx) { return digamma(BigReal(x, ctx.widened(64)), ctx); }

mpq_class harmonic_rational(int k) {
  if (k < 0) throw DomainError("harmonic: k must be >= 0");
  mpq_class h(0);
  for (int j = 1; j <= k; ++j) h += mpq_class(1, j);
  return h;
}

BigReal harmonic(int k, PrecisionContext ctx) { return BigReal(harmonic_rational(k), ctx); }

BigReal binom_real(const BigReal& a, int n, PrecisionContext ctx) {
  if (n < 0) throw DomainError("binom_real: n must be >= 0");
  const PrecisionContext w = ctx.widened(guard_bits(ctx) + static_cast<int>(std::ceil(std::log2(n + 2))));
  const BigReal aw = a.rounded(w);
  BigReal c(1L, w);
  for (int i = 1; i <= n; ++i) {
    c *= aw - static_cast<long>(i - 1);
    c /= static_cast<long>(i);
  }
  return c.rounded(ctx);
}

BigReal binom_real(double a, int n, PrecisionContext ctx) { return binom_real(BigReal(a, ctx.widened(64)), n, ctx); }

BigReal euler_gamma(PrecisionContext ctx) {
  static ConstCache cache;
  {
    std::lock_guard lock(cache.mu);
    if (auto it = cache.values.find(ctx.bits); it != cache.values.end()) return it->second;
  }
  // Brent-McMillan: with A_0 = -log N, B_0 = 1,
  //   B_k = B_{k-1} N^2 / k^2,  A_k = (A_{k-1} N^2 / k + B_k) / k,
  // gamma = sum A_k / sum B_k - O(e^{-4N}).
  const long n = static_cast<long>(std::ceil((ctx.bits + 16) * std::log(2.0) / 4.0)) + 2;
  const long iterations = static_cast<long>(std::ceil(3.5911 * static_cast<double>(n))) + 8;
  const PrecisionContext w =
      ctx.widened(guard_bits(ctx) + static_cast<int>(std::ceil(std::log2(static_cast<double>(iterations)))) + 16);
  const long n2 = n * n;
  BigReal a = -log(BigReal(n, w));
  BigReal b(1L, w);
  BigReal u = a;
  BigReal v = b;
  for (long k = 1; k <= iterations; ++k) {
    b *= n2;
    b /= k * k;
    a *= n2;
    a /= k;
    a += b;
    a /= k;
    u += a;
    v += b;
  }
  BigReal r = (u / v).rounded(ctx);
  std::lock_guard lock(cache.mu);
  return cache.values.emplace(ctx.bits, r).first->second;
}

}  // namespace raabe::special
