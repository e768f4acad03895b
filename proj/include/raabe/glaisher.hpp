#pragma once

#include <memory>
#include <vector>

#include "raabe/big_real.hpp"
#include "raabe/precision.hpp"

namespace raabe::glaisher {

/// log D_k = B_{k+1} H_k / (k+1) - zeta'(-k)  (Adamchik closed form).
/// D_0 = sqrt(2 pi), D_1 = A (Glaisher-Kinkelin), D_2 = B, D_3 = C.
BigReal log_glaisher(int k, PrecisionContext ctx);

/// The correction polynomial-logarithm p(n,k) of the limit definition
///   log D_k = lim_n ( sum_{m<=n} m^k log m - p(n,k) ).
/// For k = 0 the trailing sum over m = 1..k is empty.
BigReal p_nk(long n, int k, PrecisionContext ctx);

/// Partial-sum approximation sum_{m=1}^{n_max} m^k log m - p(n_max, k).
/// Converges slowly; kept as an oracle for log_glaisher. Requires n_max >= 10.
BigReal log_glaisher_limit(int k, long n_max, PrecisionContext ctx);

/// log_glaisher_limit for every k = 0..k_max, sharing one pass over log m.
std::vector<BigReal> log_glaisher_limits(int k_max, long n_max, PrecisionContext ctx);

/// Cached log D_0..log D_{k_max} at one precision.
///
/// Tables are built eagerly on first request and shared: a request is served
/// by any cached table with the same precision and k_max at least as large.
class GlaisherTable {
 public:
  static std::shared_ptr<const GlaisherTable> get(int k_max, PrecisionContext ctx);

  /// Builds a fresh, uncached table.
  GlaisherTable(int k_max, PrecisionContext ctx);

  int k_max() const { return static_cast<int>(log_values_.size()) - 1; }
  PrecisionContext ctx() const { return ctx_; }
  const BigReal& log_value(int k) const { return log_values_.at(static_cast<std::size_t>(k)); }
  const std::vector<BigReal>& log_values() const { return log_values_; }

 private:
  GlaisherTable(const GlaisherTable& prefix, int k_max);

  PrecisionContext ctx_;
  std::vector<BigReal> log_values_;
};

}  // namespace raabe::glaisher
