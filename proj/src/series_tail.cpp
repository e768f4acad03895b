#include "series_tail.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::series::detail {

namespace {

// c_1 = gamma, c_k = zeta(k)/k: Taylor coefficients of log Gamma(1-u).
class TaylorCoefficients {
 public:
  std::shared_ptr<const std::vector<BigReal>> get(int k_max, PrecisionContext w) {
    std::lock_guard lock(mu_);
    auto& slot = cache_[w.bits];
    if (slot && static_cast<int>(slot->size()) > k_max) return slot;
    auto next = std::make_shared<std::vector<BigReal>>(slot ? *slot : std::vector<BigReal>{});
    if (next->empty()) {
      next->push_back(BigReal(w));
      next->push_back(special::euler_gamma(w));
    }
    const int target = std::max(k_max + 1, 2 * static_cast<int>(next->size()));
    for (int k = static_cast<int>(next->size()); k < target; ++k) {
      next->push_back(special::zeta(BigReal(k, w), w).value / static_cast<long>(k));
    }
    slot = next;
    return slot;
  }

 private:
  std::mutex mu_;
  std::map<int, std::shared_ptr<const std::vector<BigReal>>> cache_;
};

TaylorCoefficients& coefficients() {
  static TaylorCoefficients c;
  return c;
}

}  // namespace

TailEstimate moment_series_tail(const BigReal& a_in, const BigReal& b_in, long n_first, double eps,
                                PrecisionContext ctx) {
  const int layers = static_cast<int>(std::min<long>(n_first, 60));
  const PrecisionContext w = ctx.widened(64 + 4 * layers);
  const BigReal a = a_in.rounded(w);
  const BigReal b = b_in.rounded(w);
  const BigReal pi = const_pi(w);
  const auto c = coefficients().get(layers, w);

  // 1/Gamma(-a) = -sin(pi a) Gamma(1+a) / pi
  const BigReal inv_gamma_neg_a = -sin(pi * a) * exp(special::log_gamma(a + 1L, w)) / pi;

  const int deg = layers + 1;
  std::vector<BigReal> b_neg_a;
  std::vector<BigReal> b_one;
  std::vector<BigReal> b_shift;  // B_j(b+1)
  for (int j = 0; j <= deg; ++j) {
    b_neg_a.push_back(special::bernoulli_poly(j, -a, w));
    b_one.push_back(special::bernoulli_poly(j, BigReal(1L, w), w));
    b_shift.push_back(special::bernoulli_poly(j, b + 1L, w));
  }

  // B_j(x+1) = B_j(x) + j x^{j-1}
  auto advance = [&](std::vector<BigReal>& bx, const BigReal& x) {
    BigReal xp(1L, w);
    for (int j = 1; j <= deg; ++j) {
      bx[j] += xp * static_cast<long>(j);
      xp *= x;
    }
  };

  std::vector<BigReal> layer(static_cast<std::size_t>(layers) + 1, BigReal(w));
  std::vector<BigReal> cur = b_shift;  // B_j(b+k+2), starts at k = 1
  advance(cur, b + 1L);
  advance(cur, b + 2L);
  BigReal k_fact(1L, w);
  for (int k = 1; k <= layers; ++k) {
    k_fact *= static_cast<long>(k);
    const int jmax = layers - k;
    std::vector<BigReal> q(static_cast<std::size_t>(jmax) + 1, BigReal(w));
    for (int j = 1; j <= jmax; ++j) {
      q[j] = (b_neg_a[j + 1] - b_one[j + 1] + b_shift[j + 1] - cur[j + 1]) / static_cast<long>(j * (j + 1));
      if (j % 2 == 0) q[j] = -q[j];
    }
    std::vector<BigReal> r(static_cast<std::size_t>(jmax) + 1, BigReal(w));
    r[0] = BigReal(1L, w);
    for (int j = 1; j <= jmax; ++j) {
      BigReal acc(w);
      for (int i = 1; i <= j; ++i) acc += q[i] * r[j - i] * static_cast<long>(i);
      r[j] = acc / static_cast<long>(j);
    }
    const BigReal coeff = (*c)[k] * k_fact;
    for (int j = 0; j <= jmax; ++j) layer[k + j] += coeff * r[j];
    advance(cur, b + static_cast<long>(k + 2));
  }

  // Asymptotic in m: sum the layers up to the smallest one seen before the
  // terms start growing, or stop once two layers in a row fall below eps.
  const BigReal big_n(n_first, w);
  const BigReal g_abs = abs(inv_gamma_neg_a);
  std::vector<BigReal> terms;
  std::size_t best = 0;
  bool small_enough = false;
  int quiet = 0;
  for (int m = 1; m <= layers; ++m) {
    BigReal term = layer[m].is_zero() ? BigReal(w)
                                      : layer[m] * special::hurwitz_zeta(a + static_cast<long>(m + 2), big_n, w);
    terms.push_back(term);
    const std::size_t i = terms.size() - 1;
    if (abs(terms[i]) <= abs(terms[best])) best = i;
    const BigReal scaled = abs(term) * g_abs;
    const bool below = term.is_zero() || (eps > 0 ? scaled.to_double() < eps : term.exponent() < -w.bits);
    quiet = below ? quiet + 1 : 0;
    if (quiet >= 2) {
      small_enough = true;
      break;
    }
    if (m >= 8 && abs(term) > abs(terms[best]) * 16L) break;
  }
  TailEstimate out{BigReal(w), BigReal(w), 0};
  const std::size_t stop = small_enough ? terms.size() : best;
  for (std::size_t i = 0; i < stop; ++i) out.value += terms[i];
  out.layers = static_cast<int>(stop);
  out.uncertainty = small_enough ? abs(terms.back()) + abs(terms[terms.size() - 2]) : abs(terms[best]) * 2L;
  out.value = (out.value * inv_gamma_neg_a).rounded(ctx);
  out.uncertainty = (out.uncertainty * g_abs).rounded(ctx);
  return out;
}

BigReal moment_taylor(const BigReal& s_in, int target_bits, PrecisionContext ctx) {
  const PrecisionContext w = ctx.widened(32);
  const BigReal s = s_in.rounded(w);
  if (!(s > -1L)) throw DomainError("moment_taylor: s must be > -1");
  BigReal p = 1L / ((s + 1L) * (s + 2L));  // k! Gamma(s+1)/Gamma(s+k+2) at k = 1
  int k_cap = 64;
  auto c = coefficients().get(k_cap, w);
  BigReal sum = (*c)[1] * p;
  for (int k = 2; k <= 200000; ++k) {
    if (k > k_cap) {
      k_cap *= 2;
      c = coefficients().get(k_cap, w);
    }
    p *= static_cast<long>(k);
    p /= s + static_cast<long>(k + 1);
    const BigReal term = (*c)[k] * p;
    sum += term;
    if (term.exponent() < sum.exponent() - target_bits) return sum.rounded(ctx);
  }
  throw PrecisionError("moment_taylor: series did not converge");
}

}  // namespace raabe::series::detail
