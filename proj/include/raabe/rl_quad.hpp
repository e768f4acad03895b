#pragma once

#include "raabe/big_real.hpp"
#include "raabe/precision.hpp"

namespace raabe::quad {

enum class Kernel {
  kLogGamma,
  kLogSinPi,
  kDigamma,
  /// log Gamma(t) / (1 - t); only for the absolute-convergence bound.
  kLogGammaOver1mt,
};

/// Integrand t^p (1-t)^q kernel(t) on (0,1).
struct WeightedIntegrand {
  BigReal p;
  BigReal q;
  Kernel kernel = Kernel::kLogGamma;

  WeightedIntegrand(BigReal p_, BigReal q_, Kernel k) : p(std::move(p_)), q(std::move(q_)), kernel(k) {}
  WeightedIntegrand(double p_, double q_, Kernel k)
      : p(p_, PrecisionContext(64)), q(q_, PrecisionContext(64)), kernel(k) {}

  /// Throws DomainError unless p > -1, q > -1 (and p > 0 for kDigamma;
  /// q is ignored for kLogGammaOver1mt, which carries its own 1/(1-t)).
  void validate() const;
};

struct QuadResult {
  BigReal value;
  /// |S_L - S_{L-1}| between the last two levels.
  double err_est = 0;
  long n_evals = 0;
  int levels = 0;
  bool converged = false;
};

inline constexpr int kMaxLevels = 12;

/// Tanh-sinh quadrature of w over (0,1) with t = 1/(1 + exp(-pi sinh(tau))).
/// Step h = 2^{-L} at level L; stops once err_est <= tol. When the level cap
/// is hit the best value is returned with converged = false.
/// Requires tol >= 2^{-bits+8}.
QuadResult tanh_sinh(const WeightedIntegrand& w, double tol, PrecisionContext ctx, int max_levels = kMaxLevels);

enum class Side { kLeftAt1, kRightAt0 };

/// Riemann-Liouville integral of x^{weight_p} (1-x)^{weight_q} log Gamma(x):
///   kLeftAt1:  I_{0+}^alpha[...](1) = 1/Gamma(alpha) int t^{wp} (1-t)^{alpha-1+wq} log Gamma(t) dt
///   kRightAt0: I_{1-}^alpha[...](0) = 1/Gamma(alpha) int t^{alpha-1+wp} (1-t)^{wq} log Gamma(t) dt
QuadResult rl_eval(Side side, const BigReal& alpha, const BigReal& weight_p, const BigReal& weight_q,
                   PrecisionContext ctx, double tol);
QuadResult rl_eval(Side side, double alpha, double weight_p, double weight_q, PrecisionContext ctx, double tol);

}  // namespace raabe::quad
