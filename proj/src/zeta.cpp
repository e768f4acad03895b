#include <algorithm>
#include <cmath>
#include <string>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::special {

namespace {

struct SumAndDerivative {
  BigReal value;
  BigReal derivative;
};

int zeta_guard(PrecisionContext ctx) { return 40 + static_cast<int>(std::ceil(std::log2(ctx.bits))); }

// Smallest cutoff Q for which some correction term j <= kBernoulliCap/2 of
// the Euler-Maclaurin series falls below 2^{-bits-8} of the sum, using
// |B_2j/(2j)!| ~ 2/(2pi)^{2j} and |(s)_{2j-1}| = Gamma(s+2j-1)/Gamma(s).
long cutoff_for(double s, double q, int bits) {
  const double log2_2pi = std::log2(2.0 * M_PI);
  // The sum and its derivative are at least ~ (q+1)^{-s} log 2.
  const double target = -static_cast<double>(bits) - 12.0 - std::max(s, 0.0) * std::log2(q + 1.0);
  const double sa = std::max(s, 0.5);
  auto feasible = [&](double q) {
    const double lq = std::log2(q);
    for (int j = 1; 2 * j <= kBernoulliCap; ++j) {
      const double poch = (std::lgamma(sa + 2 * j - 1) - std::lgamma(sa)) / std::log(2.0);
      const double t = 1.0 + poch - 2.0 * j * log2_2pi - (s + 2.0 * j - 1.0) * lq;
      if (t < target) return true;
    }
    return false;
  };
  long hi = 8;
  while (!feasible(static_cast<double>(hi))) hi *= 2;
  long lo = hi / 2;
  while (lo + 1 < hi) {
    const long mid = (lo + hi) / 2;
    if (feasible(static_cast<double>(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi + 2;
}

// Euler-Maclaurin for sum_{n>=0} (n+q)^{-s} and its s-derivative:
//   sum_{n<K} (n+q)^{-s} + Q^{1-s}/(s-1) + Q^{-s}/2
//     + sum_j B_2j/(2j)! (s)_{2j-1} Q^{1-s-2j},   Q = q + K.
// Correction terms are added until both the value and derivative terms fall
// below 2^{-bits-8} of the running totals.
SumAndDerivative euler_maclaurin(const BigReal& s_in, const BigReal& q_in, PrecisionContext w, bool want_derivative) {
  const BigReal s = s_in.rounded(w);
  const BigReal q = q_in.rounded(w);
  const long q_min = cutoff_for(s.to_double(), q.to_double(), w.bits);

  long head = 0;
  if (q < q_min) head = q_min - static_cast<long>(std::floor(q.to_double()));
  BigReal value(w);
  BigReal deriv(w);
  const bool integral_terms = s.is_integer() && q.is_integer() && s > 0L && s < 100000L;
  for (long n = 0; n < head; ++n) {
    BigReal base = q + n;
    BigReal p = integral_terms ? 1L / pow(base, s.to_long()) : exp(-s * log(base));
    value += p;
    if (want_derivative) deriv -= log(base) * p;
  }

  const BigReal big_q = q + head;
  const BigReal log_q = log(big_q);
  const BigReal q_pow = exp((1L - s) * log_q);  // Q^{1-s}
  const BigReal sm1 = s - 1L;

  value += q_pow / sm1;
  if (want_derivative) deriv -= q_pow * (log_q / sm1 + 1L / (sm1 * sm1));
  const BigReal q_pow_s = q_pow / big_q;  // Q^{-s}
  value += q_pow_s / 2L;
  if (want_derivative) deriv -= log_q * q_pow_s / 2L;

  const BigReal inv_q2 = 1L / (big_q * big_q);
  BigReal qp = q_pow_s / big_q;  // Q^{1-s-2j}, starts at j = 1
  BigReal poch = s;  // (s)_{2j-1}
  BigReal poch_d(1L, w);
  BigReal fact(2L, w);  // (2j)!
  const long eps_exp = -w.bits - 8;
  for (int j = 1;; ++j) {
    if (2 * j > kBernoulliCap) {
      throw PrecisionError("zeta: Euler-Maclaurin correction did not converge");
    }
    const BigReal coeff = bernoulli_number(2 * j, w) / fact * qp;
    const BigReal term = coeff * poch;
    value += term;
    bool done = term.is_zero() || value.is_zero() || term.exponent() < value.exponent() + eps_exp;
    if (want_derivative) {
      const BigReal dterm = coeff * (poch_d - poch * log_q);
      deriv += dterm;
      done = done && (dterm.is_zero() || deriv.is_zero() || dterm.exponent() < deriv.exponent() + eps_exp);
    }
    if (done) break;
    // advance to j + 1
    for (int i = 0; i < 2; ++i) {
      const BigReal factor = s + static_cast<long>(2 * j - 1 + i);
      poch_d = poch_d * factor + poch;
      poch *= factor;
    }
    fact *= static_cast<long>((2 * j + 1) * (2 * j + 2));
    qp *= inv_q2;
  }
  return {value, deriv};
}

// zeta'(-k) for integers k >= 0 from the (differentiated) functional
// equation, which avoids any dependence on Glaisher constants.
BigReal zeta_derivative_at_negative_integer(long k, PrecisionContext w) {
  const BigReal two_pi = const_pi(w) * 2L;
  if (k == 0) return -log(two_pi) / 2L;
  if (k % 2 == 0) {
    // zeta'(-2m) = (-1)^m (2m)! zeta(2m+1) / (2 (2pi)^{2m})
    const long m = k / 2;
    const BigReal z = euler_maclaurin(BigReal(2 * m + 1, w), BigReal(1L, w), w, false).value;
    BigReal r = factorial(static_cast<unsigned long>(2 * m), w) * z / (pow(two_pi, 2 * m) * 2L);
    return (m % 2 == 0) ? r : -r;
  }
  // k = 2m - 1: differentiate zeta(1-s) = 2 (2pi)^{-s} cos(pi s/2) Gamma(s) zeta(s) at s = 2m:
  // zeta'(1-2m) = 2 (-1)^{m+1} (2m-1)! / (2pi)^{2m} [zeta(2m)(psi(2m) - log 2pi) + zeta'(2m)]
  const long m = (k + 1) / 2;
  const SumAndDerivative z = euler_maclaurin(BigReal(2 * m, w), BigReal(1L, w), w, true);
  const BigReal psi = digamma(BigReal(2 * m, w), w);
  BigReal r = factorial(static_cast<unsigned long>(2 * m - 1), w) * 2L / pow(two_pi, 2 * m) *
              (z.value * (psi - log(two_pi)) + z.derivative);
  return (m % 2 == 1) ? r : -r;
}

}  // namespace

ZetaValue zeta(const BigReal& s, PrecisionContext ctx) {
  if (!s.is_finite()) throw DomainError("zeta: argument must be finite");
  if (s == 1L) throw PoleError("zeta: pole at s = 1");
  const PrecisionContext w = ctx.widened(zeta_guard(ctx));

  if (s.is_integer() && s <= 0L) {
    const long k = -s.to_long();
    BigReal value(-bernoulli_rational(static_cast<int>(k + 1)) / mpq_class(k + 1), ctx);
    return {s, value, zeta_derivative_at_negative_integer(k, w).rounded(ctx)};
  }

  if (s >= 0L) {
    SumAndDerivative r = euler_maclaurin(s, BigReal(1L, w), w, true);
    return {s, r.value.rounded(ctx), r.derivative.rounded(ctx)};
  }

  // s < 0, non-integer: zeta(s) = F(s) sin(pi s/2) zeta(1-s), F = 2^s pi^{s-1} Gamma(1-s).
  const BigReal sw = s.rounded(w);
  const BigReal pi = const_pi(w);
  const BigReal one_minus_s = 1L - sw;
  const BigReal f = exp(sw * log(pi * 2L) - log(pi) + log_gamma(one_minus_s, w));
  const BigReal half_angle = pi * sw / 2L;
  const BigReal sn = sin(half_angle);
  const BigReal cs = cos(half_angle);
  const SumAndDerivative z = euler_maclaurin(one_minus_s, BigReal(1L, w), w, true);
  const BigReal value = f * sn * z.value;
  const BigReal lfac = log(pi * 2L) - digamma(one_minus_s, w);
  const BigReal deriv = f * ((lfac * sn + pi / 2L * cs) * z.value - sn * z.derivative);
  return {s, value.rounded(ctx), deriv.rounded(ctx)};
}

ZetaValue zeta(double s, PrecisionContext ctx) { return zeta(BigReal(s, ctx.widened(64)), ctx); }

BigReal hurwitz_zeta(const BigReal& s, const BigReal& q, PrecisionContext ctx) {
  if (!(s > 1L)) throw DomainError("hurwitz_zeta: s must be > 1");
  if (!(q > 0L)) throw DomainError("hurwitz_zeta: q must be > 0");
  const PrecisionContext w = ctx.widened(zeta_guard(ctx));
  return euler_maclaurin(s, q, w, false).value.rounded(ctx);
}

}  // namespace raabe::special
