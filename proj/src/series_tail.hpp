#pragma once

#include "raabe/big_real.hpp"
#include "raabe/precision.hpp"

namespace raabe::series::detail {

struct TailEstimate {
  BigReal value;
  /// Magnitude of the first omitted layer.
  BigReal uncertainty;
  int layers = 0;
};

/// sum_{n>=N} (-1)^n C(a,n) M(n+b) from the large-n expansion of each term.
/// With log Gamma(1-u) = sum_k c_k u^k (c_1 = gamma, c_k = zeta(k)/k),
///   M(s) = sum_k c_k k! Gamma(s+1)/Gamma(s+k+2),
/// and each Gamma ratio is expanded in 1/n through Bernoulli polynomials, so
/// the remainder becomes a sum of Hurwitz zeta values zeta(a+m+2, N).
/// Layers are added until one drops below eps in absolute value (eps = 0:
/// below working precision) or the expansion starts to diverge.
/// Expects a > -1, a not a non-negative integer, N > 2(|a| + |b|).
TailEstimate moment_series_tail(const BigReal& a, const BigReal& b, long n_first, double eps, PrecisionContext ctx);

/// M(s) from the convergent series above, summed until terms drop below
/// 2^{-target_bits} relative. Intended for large s, where it converges fast.
BigReal moment_taylor(const BigReal& s, int target_bits, PrecisionContext ctx);

}  // namespace raabe::series::detail
