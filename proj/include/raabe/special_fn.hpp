#pragma once

#include <gmpxx.h>

#include "raabe/big_real.hpp"
#include "raabe/precision.hpp"

// Precision-parametric elementary special functions on the real line.
//
// Every function is a pure function of (arguments, PrecisionContext): results
// are computed with internal guard bits and rounded once to ctx.bits. Caches
// (Bernoulli rationals, Euler's constant, log tables) are write-once and safe
// for concurrent readers.

namespace raabe::special {

/// zeta(s) together with zeta'(s).
struct ZetaValue {
  BigReal s;
  BigReal value;
  BigReal derivative;
};

/// Largest Bernoulli index served from the exact rational cache.
inline constexpr int kBernoulliCap = 512;

/// log Gamma(x) for x > 0: Stirling series after shifting x up to
/// max(10, bits/4). Throws DomainError for x <= 0 or non-finite x,
/// OverflowError when the result is not representable.
BigReal log_gamma(const BigReal& x, PrecisionContext ctx);
BigReal log_gamma(double x, PrecisionContext ctx);

/// Gamma(x) for x > 0.
BigReal gamma(const BigReal& x, PrecisionContext ctx);

/// psi(x) = d/dx log Gamma(x) for x > 0. Positive integers use
/// psi(n) = H_{n-1} - gamma; otherwise recurrence plus asymptotic series.
BigReal digamma(const BigReal& x, PrecisionContext ctx);
BigReal digamma(double x, PrecisionContext ctx);

/// Exact B_n (B_1 = -1/2). Throws std::out_of_range beyond kBernoulliCap.
mpq_class bernoulli_rational(int n);
BigReal bernoulli_number(int n, PrecisionContext ctx);

/// Bernoulli polynomial B_n(x).
BigReal bernoulli_poly(int n, const BigReal& x, PrecisionContext ctx);
BigReal bernoulli_poly(int n, double x, PrecisionContext ctx);

/// H_k = 1 + 1/2 + ... + 1/k, H_0 = 0.
mpq_class harmonic_rational(int k);
BigReal harmonic(int k, PrecisionContext ctx);

/// Generalised binomial coefficient a(a-1)...(a-n+1)/n! by the multiplicative
/// recurrence C(a,n) = C(a,n-1) (a-n+1)/n.
BigReal binom_real(const BigReal& a, int n, PrecisionContext ctx);
BigReal binom_real(double a, int n, PrecisionContext ctx);

/// zeta(s) and zeta'(s) for real s != 1 (PoleError at s = 1).
ZetaValue zeta(const BigReal& s, PrecisionContext ctx);
ZetaValue zeta(double s, PrecisionContext ctx);

/// Hurwitz zeta(s, q) = sum_{n>=0} (n+q)^{-s} for s > 1, q > 0, by
/// Euler-Maclaurin summation.
BigReal hurwitz_zeta(const BigReal& s, const BigReal& q, PrecisionContext ctx);

/// Euler-Mascheroni constant (Brent-McMillan), cached per precision.
BigReal euler_gamma(PrecisionContext ctx);

/// log(2 pi).
BigReal log_2pi(PrecisionContext ctx);

}  // namespace raabe::special
