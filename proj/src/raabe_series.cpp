#include "raabe/raabe_series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"
#include "series_tail.hpp"

namespace raabe::series {

namespace {

constexpr std::array<long, 6> kTiers = {16, 32, 64, 128, 256, 400};

long tier_of(long n) {
  for (long t : kTiers) {
    if (n <= t) return t;
  }
  return n;
}

PrecisionContext widen(PrecisionContext ctx, int extra) { return ctx.widened(extra); }

double quad_tol(double tol, PrecisionContext ctx) { return std::max(tol, std::ldexp(1.0, -ctx.bits + 8)); }

// --- integer moment tables ---------------------------------------------------

// zeta-form ingredients at one precision, index k >= 1:
//   fact[k]    = (2k)!/(2pi)^{2k}
//   bracket[k] = (log 2pi + gamma) zeta(2k) - zeta'(2k)
//   odd[k]     = zeta(2k+1)
struct ZetaBlocks {
  std::vector<BigReal> fact;
  std::vector<BigReal> bracket;
  std::vector<BigReal> odd;
};

std::shared_ptr<const ZetaBlocks> zeta_blocks(int k_max, PrecisionContext w) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ZetaBlocks>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[w.bits];
  if (slot && static_cast<int>(slot->fact.size()) > k_max) return slot;
  auto next = std::make_shared<ZetaBlocks>(slot ? *slot : ZetaBlocks{});
  const BigReal two_pi = const_pi(w) * 2L;
  const BigReal shift = special::log_2pi(w) + special::euler_gamma(w);
  if (next->fact.empty()) {
    next->fact.push_back(BigReal(w));
    next->bracket.push_back(BigReal(w));
    next->odd.push_back(BigReal(w));
  }
  for (int k = static_cast<int>(next->fact.size()); k <= k_max; ++k) {
    next->fact.push_back(factorial(static_cast<unsigned long>(2 * k), w) / pow(two_pi, 2L * k));
    const special::ZetaValue z = special::zeta(BigReal(2L * k, w), w);
    next->bracket.push_back(shift * z.value - z.derivative);
    next->odd.push_back(special::zeta(BigReal(2L * k + 1, w), w).value);
  }
  slot = next;
  return slot;
}

BigReal zeta_inner_at(int n, PrecisionContext w, bool printed) {
  const auto blocks = zeta_blocks(n / 2 + 1, w);
  BigReal sum = special::log_2pi(w) / 2L;
  mpz_class c;
  for (int k = 1; k <= n / 2; ++k) {
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * k - 1));
    BigReal t = BigReal(c, w) * blocks->fact[k] * blocks->bracket[k];
    t /= printed ? 2L : static_cast<long>(k);
    if (k % 2 == 1) {
      sum -= t;
    } else {
      sum += t;
    }
  }
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * k));
    BigReal t = BigReal(c, w) * blocks->fact[k] * blocks->odd[k] / 2L;
    if (k % 2 == 1) {
      sum += t;
    } else {
      sum -= t;
    }
  }
  return sum;
}

enum class MomentKind { kGlaisher, kZeta };

// M(n) = T_{n+1}/(n+1) for n = 0..count-1 at precision w.
std::shared_ptr<const std::vector<BigReal>> integer_moments(MomentKind kind, long count, PrecisionContext w) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<BigReal>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{w.bits, static_cast<int>(kind)}];
  if (slot && static_cast<long>(slot->size()) >= count) return slot;
  long target = tier_of(count);
  while (target > count && policy_min_bits(target) > w.bits) --target;
  count = target;
  auto next = std::make_shared<std::vector<BigReal>>(slot ? *slot : std::vector<BigReal>{});
  std::shared_ptr<const glaisher::GlaisherTable> table;
  if (kind == MomentKind::kGlaisher) table = glaisher::GlaisherTable::get(static_cast<int>(count), w);
  for (long n = static_cast<long>(next->size()); n < count; ++n) {
    const int order = static_cast<int>(n + 1);
    BigReal t = (kind == MomentKind::kGlaisher) ? inner_glaisher_sum(order, *table, w) : zeta_inner_at(order, w, false);
    next->push_back(t / static_cast<long>(order));
  }
  slot = next;
  return slot;
}

BigReal integer_moment(MomentKind kind, long n, PrecisionContext ctx) {
  const PrecisionContext w(tier_bits(n + 1, ctx));
  return (*integer_moments(kind, n + 1, w))[static_cast<std::size_t>(n)].rounded(ctx);
}

// --- outer series engine -----------------------------------------------------

// M(n + b) at precision w, accurate to about tol_each.
using MomentFn = std::function<BigReal(long n, PrecisionContext w, double tol_each)>;

MomentFn integer_moment_fn(MomentKind kind, long offset) {
  return [kind, offset](long n, PrecisionContext w, double) {
    return (*integer_moments(kind, n + offset + 1, w))[static_cast<std::size_t>(n + offset)];
  };
}

MomentFn real_moment_fn(const BigReal& b, PrecisionContext ctx) {
  return [b, ctx](long n, PrecisionContext w, double tol_each) {
    return log_gamma_moment_real(b + n, tol_each, ctx).rounded(w);
  };
}

bool is_nonneg_integer(const BigReal& x) { return x.is_integer() && x >= 0L; }

long ceil_nonneg(const BigReal& x) { return std::max(0L, static_cast<long>(std::ceil(x.to_double()))); }

struct OuterSpec {
  BigReal a;  // weights (-1)^n C(a,n)
  BigReal b;  // moments M(n+b)
  MomentFn moment;
  BigReal scale;
  bool moments_exact;  // integer-order moments from closed forms
};

std::vector<double> abs_weights(const BigReal& a, long count) {
  std::vector<double> out;
  double w = 1.0;
  const double ad = a.to_double();
  for (long n = 0; n < count; ++n) {
    if (n > 0) w *= std::abs((static_cast<double>(n - 1) - ad) / static_cast<double>(n));
    out.push_back(w);
  }
  return out;
}

BigReal head_sum(const OuterSpec& spec, long count, PrecisionContext w, double tol_each) {
  const BigReal a = spec.a.rounded(w);
  BigReal weight(1L, w);
  BigReal sum(w);
  for (long n = 0; n < count; ++n) {
    if (n > 0) {
      weight *= BigReal(n - 1, w) - a;
      weight /= n;
    }
    if (weight.is_zero()) continue;
    sum += weight * spec.moment(n, w, tol_each);
  }
  return sum;
}

double rounding_floor(const BigReal& v, PrecisionContext ctx) {
  return std::ldexp(std::max(1.0, std::abs(v.to_double())), -ctx.bits + 8);
}

SeriesEval outer_sum(const OuterSpec& spec, double tol, PrecisionContext ctx, const SeriesOptions& opts, Method method) {
  SeriesEval r;
  r.method = method;
  r.remainder = BigReal(ctx);
  const double scale_abs = abs(spec.scale).to_double();
  const long b_extra = ceil_nonneg(spec.b) + 1;

  auto per_term_tol = [&](long count) {
    if (spec.moments_exact) return 0.0;
    double s = 0;
    for (double x : abs_weights(spec.a, count)) s += x;
    return tol / (8.0 * std::max(1e-300, s * scale_abs));
  };

  if (is_nonneg_integer(spec.a)) {
    const long count = spec.a.to_long() + 1;
    const PrecisionContext w(tier_bits(count + b_extra, ctx));
    const double each = per_term_tol(count);
    const BigReal head = head_sum(spec, count, w, each);
    r.value = (head * spec.scale).rounded(ctx);
    r.n_terms = count;
    r.bits_used = w.bits;
    r.tail_est = rounding_floor(r.value, ctx) + (spec.moments_exact ? 0.0 : tol / 8.0);
    return r;
  }

  if (opts.tail == TailMode::kAsymptotic) {
    const long lower = static_cast<long>(std::ceil(2.0 * (std::abs(spec.a.to_double()) + std::abs(spec.b.to_double())))) + 16;
    std::vector<long> candidates;
    if (opts.fixed_terms > 0) {
      candidates.push_back(opts.fixed_terms);
    } else {
      for (long t : kTiers) {
        if (t >= lower && t <= opts.max_terms) candidates.push_back(t);
      }
      if (candidates.empty()) candidates.push_back(std::max<long>(lower, opts.max_terms));
    }
    long count = candidates.back();
    detail::TailEstimate tail;
    bool ok = false;
    for (long c : candidates) {
      tail = detail::moment_series_tail(spec.a, spec.b, c, tol / (64.0 * std::max(scale_abs, 1e-300)), ctx);
      count = c;
      if (tail.uncertainty.to_double() * scale_abs <= tol / 8.0) {
        ok = true;
        break;
      }
    }
    const PrecisionContext w(tier_bits(count + b_extra, ctx));
    const double each = per_term_tol(count);
    const BigReal head = head_sum(spec, count, w, each);
    r.value = ((head + tail.value) * spec.scale).rounded(ctx);
    r.remainder = (tail.value * spec.scale).rounded(ctx);
    r.n_terms = count;
    r.bits_used = w.bits;
    r.tail_est = tail.uncertainty.to_double() * scale_abs + rounding_floor(r.value, ctx) +
                 (spec.moments_exact ? 0.0 : tol / 8.0);
    r.converged = ok || opts.fixed_terms > 0;
    return r;
  }

  // Truncation: stop at the first n >= 8 where the last four terms are below
  // tol/4 and the p-series bound on the rest is below tol/2. Terms decay like
  // n^{-(a+3)}: |C(a,n)| ~ n^{-a-1} times moments ~ n^{-2}.
  const long cap = opts.max_terms;
  const PrecisionContext w(tier_bits(cap + b_extra, ctx));
  const double each = per_term_tol(cap);
  const BigReal a = spec.a.rounded(w);
  const double p = a.to_double() + 3.0;
  BigReal weight(1L, w);
  BigReal sum(w);
  std::vector<double> recent;
  double bound = std::numeric_limits<double>::infinity();
  r.converged = false;
  long n = 0;
  for (; n < cap; ++n) {
    if (n > 0) {
      weight *= BigReal(n - 1, w) - a;
      weight /= n;
    }
    const BigReal term = weight * spec.moment(n, w, each) * spec.scale;
    sum += term;
    recent.push_back(std::abs(term.to_double()));
    if (recent.size() > 4) recent.erase(recent.begin());
    if (n < 8) continue;
    double k = 0;
    for (std::size_t i = 0; i < recent.size(); ++i) {
      const double m = static_cast<double>(n - static_cast<long>(recent.size()) + 1 + static_cast<long>(i));
      k = std::max(k, recent[i] * std::pow(m, p));
    }
    bound = k * std::pow(static_cast<double>(n), 1.0 - p) / (p - 1.0);
    const bool small = std::all_of(recent.begin(), recent.end(), [&](double x) { return x < tol / 4.0; });
    if (small && bound < tol / 2.0) {
      r.converged = true;
      ++n;
      break;
    }
  }
  r.value = sum.rounded(ctx);
  r.n_terms = n;
  r.bits_used = w.bits;
  r.tail_est = bound + rounding_floor(r.value, ctx);
  return r;
}

BigReal inv_gamma(const BigReal& x, PrecisionContext w) { return exp(-special::log_gamma(x, w)); }

BigReal gamma_ratio(const BigReal& num, const BigReal& den, PrecisionContext w) {
  return exp(special::log_gamma(num, w) - special::log_gamma(den, w));
}

void require_positive(const BigReal& x, const char* what) {
  if (!x.is_finite() || !(x > 0L)) throw DomainError(std::string(what) + " must be > 0");
}

SeriesEval left_series(const BigReal& alpha, MomentKind kind, Method method, double tol, PrecisionContext ctx,
                       const SeriesOptions& opts) {
  const PrecisionContext w = widen(ctx, 32);
  OuterSpec spec{alpha.rounded(w) - 1L, BigReal(w), integer_moment_fn(kind, 0), inv_gamma(alpha, w), true};
  return outer_sum(spec, tol, ctx, opts, method);
}

// (log pi - alpha L(alpha)) / Gamma(alpha+1)
struct Reflection {
  BigReal value;
  double err = 0;
};

Reflection reflection_part(const BigReal& alpha, bool force_quadrature, double tol, PrecisionContext ctx) {
  const PrecisionContext w = widen(ctx, 32);
  const BigReal aw = alpha.rounded(w);
  BigReal ls(w);
  double err = 0;
  if (aw.is_integer() && !force_quadrature) {
    ls = log_sin_moment(static_cast<int>(aw.to_long()), ClosedOrQuad::kClosed, w);
  } else {
    const quad::QuadResult q =
        quad::tanh_sinh(quad::WeightedIntegrand(aw - 1L, BigReal(w), quad::Kernel::kLogSinPi), quad_tol(tol / 4, w), w);
    if (!q.converged) throw PrecisionError("log-sine quadrature did not converge");
    ls = q.value;
    err = q.err_est;
  }
  const BigReal ig = inv_gamma(aw + 1L, w);
  Reflection r{((log(const_pi(w)) - aw * ls) * ig).rounded(ctx), err * aw.to_double() * ig.to_double()};
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kGlaisherSeries:
      return "GLAISHER_SERIES";
    case Method::kZetaSeries:
      return "ZETA_SERIES";
    case Method::kIntegerClosed:
      return "INTEGER_CLOSED";
    case Method::kReflectionAssembled:
      return "REFLECTION_ASSEMBLED";
  }
  return "?";
}

std::string_view to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::kGlaisherClosed:
      return "GLAISHER_CLOSED";
    case MomentMethod::kZetaClosed:
      return "ZETA_CLOSED";
    case MomentMethod::kQuadrature:
      return "QUADRATURE";
  }
  return "?";
}

std::string_view to_string(ClosedOrQuad m) { return m == ClosedOrQuad::kClosed ? "CLOSED" : "QUADRATURE"; }

std::string_view to_string(TailMode m) { return m == TailMode::kAsymptotic ? "asymptotic" : "truncate"; }

int policy_min_bits(long n) { return 64 + static_cast<int>(std::ceil(4.5 * static_cast<double>(n))); }

int tier_bits(long n_terms, PrecisionContext ctx) {
  const long t = tier_of(std::max(1L, n_terms));
  return ctx.bits + static_cast<int>(std::ceil(4.5 * static_cast<double>(t))) + static_cast<int>(t) + 64;
}

BigReal inner_glaisher_sum(int n, const glaisher::GlaisherTable& table, PrecisionContext ctx) {
  if (n < 1) throw DomainError("inner_glaisher_sum: n must be >= 1");
  if (table.k_max() < n - 1) throw DomainError("inner_glaisher_sum: table too short");
  if (ctx.bits < policy_min_bits(n)) {
    throw PrecisionError("inner_glaisher_sum: " + std::to_string(ctx.bits) + " bits below the policy minimum " +
                         std::to_string(policy_min_bits(n)) + " for n = " + std::to_string(n));
  }
  BigReal sum(ctx);
  mpz_class c;
  for (int k = 0; k < n; ++k) {
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    BigReal t = BigReal(c, ctx) * table.log_value(k).rounded(ctx);
    if (k % 2 == 0) {
      sum += t;
    } else {
      sum -= t;
    }
  }
  return sum;
}

BigReal inner_zeta_sum(int n, PrecisionContext ctx, bool printed_coefficient) {
  if (n < 1) throw DomainError("inner_zeta_sum: n must be >= 1");
  const PrecisionContext w(tier_bits(n, ctx));
  return zeta_inner_at(n, w, printed_coefficient).rounded(ctx);
}

SeriesEval raabe_left(const BigReal& alpha, Method method, double tol, PrecisionContext ctx,
                      const SeriesOptions& opts) {
  require_positive(alpha, "raabe_left: alpha");
  switch (method) {
    case Method::kGlaisherSeries:
      return left_series(alpha, MomentKind::kGlaisher, method, tol, ctx, opts);
    case Method::kZetaSeries:
      return left_series(alpha, MomentKind::kZeta, method, tol, ctx, opts);
    case Method::kIntegerClosed: {
      if (!alpha.is_integer()) throw MethodError("raabe_left: INTEGER_CLOSED needs an integral alpha");
      const long m = alpha.to_long();
      const PrecisionContext w(tier_bits(m, ctx));
      const auto table = glaisher::GlaisherTable::get(static_cast<int>(m), w);
      BigReal sum(w);
      for (long k = 0; k < m; ++k) {
        sum += table->log_value(static_cast<int>(k)) /
               (factorial(static_cast<unsigned long>(k), w) * factorial(static_cast<unsigned long>(m - k), w));
      }
      SeriesEval r;
      r.value = sum.rounded(ctx);
      r.remainder = BigReal(ctx);
      r.n_terms = m;
      r.bits_used = w.bits;
      r.method = method;
      r.tail_est = rounding_floor(r.value, ctx);
      return r;
    }
    case Method::kReflectionAssembled:
      throw MethodError("raabe_left: REFLECTION_ASSEMBLED applies to the right-sided integral only");
  }
  throw MethodError("raabe_left: unknown method");
}

SeriesEval raabe_left(double alpha, Method method, double tol, PrecisionContext ctx, const SeriesOptions& opts) {
  return raabe_left(BigReal(alpha, widen(ctx, 64)), method, tol, ctx, opts);
}

SeriesEval raabe_right(const BigReal& alpha, Method method, double tol, PrecisionContext ctx,
                       const SeriesOptions& opts) {
  require_positive(alpha, "raabe_right: alpha");
  if (method == Method::kIntegerClosed) {
    if (!alpha.is_integer()) throw MethodError("raabe_right: INTEGER_CLOSED needs an integral alpha");
    const long m = alpha.to_long();
    const PrecisionContext w(tier_bits(m, ctx));
    const auto table = glaisher::GlaisherTable::get(static_cast<int>(m), w);
    BigReal sum(w);
    mpz_class c;
    for (long k = 0; k < m; ++k) {
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
      sum -= BigReal(c, w) * table->log_value(static_cast<int>(k));
    }
    sum += log(const_pi(w)) - log_sin_moment(static_cast<int>(m), ClosedOrQuad::kClosed, w) * m;
    SeriesEval r;
    r.value = (sum / factorial(static_cast<unsigned long>(m), w)).rounded(ctx);
    r.remainder = BigReal(ctx);
    r.n_terms = m;
    r.bits_used = w.bits;
    r.method = method;
    r.tail_est = rounding_floor(r.value, ctx);
    return r;
  }
  const Method left_method = (method == Method::kZetaSeries) ? Method::kZetaSeries : Method::kGlaisherSeries;
  const bool force_quad = (method == Method::kReflectionAssembled);
  SeriesEval left = raabe_left(alpha, left_method, tol / 2, ctx, opts);
  const Reflection refl = reflection_part(alpha, force_quad, tol / 2, ctx);
  left.value = (refl.value - left.value).rounded(ctx);
  left.remainder = -left.remainder;
  left.tail_est += refl.err;
  left.method = method;
  return left;
}

SeriesEval raabe_right(double alpha, Method method, double tol, PrecisionContext ctx, const SeriesOptions& opts) {
  return raabe_right(BigReal(alpha, widen(ctx, 64)), method, tol, ctx, opts);
}

BigReal raabe_right_printed_corollary(int m, PrecisionContext ctx) {
  if (m < 1) throw DomainError("raabe_right_printed_corollary: m must be >= 1");
  const PrecisionContext w(tier_bits(m, ctx));
  const auto table = glaisher::GlaisherTable::get(m, w);
  BigReal sum(w);
  mpz_class c;
  for (int k = 0; k < m; ++k) {
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
    sum += BigReal(c, w) * table->log_value(k);
  }
  sum += log(const_pi(w)) - log_sin_moment(m, ClosedOrQuad::kClosed, w) * static_cast<long>(m);
  return (sum / factorial(static_cast<unsigned long>(m), w)).rounded(ctx);
}

BigReal log_gamma_moment(int n, MomentMethod method, PrecisionContext ctx) {
  if (n < 0) throw DomainError("log_gamma_moment: n must be >= 0");
  switch (method) {
    case MomentMethod::kGlaisherClosed:
      return integer_moment(MomentKind::kGlaisher, n, ctx);
    case MomentMethod::kZetaClosed:
      return integer_moment(MomentKind::kZeta, n, ctx);
    case MomentMethod::kQuadrature: {
      const PrecisionContext w = widen(ctx, 16);
      const quad::QuadResult q =
          quad::tanh_sinh(quad::WeightedIntegrand(BigReal(n, w), BigReal(w), quad::Kernel::kLogGamma),
                          quad_tol(1e-30, w), w);
      return q.value.rounded(ctx);
    }
  }
  throw MethodError("log_gamma_moment: unknown method");
}

constexpr long kTaylorFrom = 8;

BigReal log_gamma_moment_real(const BigReal& s, double tol, PrecisionContext ctx) {
  if (!(s > -1L)) throw DomainError("log_gamma_moment_real: s must be > -1");
  if (is_nonneg_integer(s)) return integer_moment(MomentKind::kGlaisher, s.to_long(), ctx);
  if (s >= kTaylorFrom) {
    const double t = std::max(tol, std::ldexp(1.0, -ctx.bits));
    return detail::moment_taylor(s, static_cast<int>(std::ceil(-std::log2(t))) + 24, ctx);
  }
  // int t^s log Gamma = Gamma(s+1) I_{1-}^{s+1} log Gamma(0)
  //                   = (log pi - (s+1) L(s+1))/(s+1) - int (1-t)^s log Gamma
  const PrecisionContext w = widen(ctx, 32);
  const BigReal sigma = s.rounded(w) + 1L;
  OuterSpec spec{s.rounded(w), BigReal(w), integer_moment_fn(MomentKind::kGlaisher, 0), BigReal(1L, w), true};
  const SeriesEval left = outer_sum(spec, tol / 2, w, SeriesOptions{}, Method::kGlaisherSeries);
  const BigReal ls = log_sin_moment_real(sigma, tol / 4, w);
  return ((log(const_pi(w)) - sigma * ls) / sigma - left.value).rounded(ctx);
}

BigReal digamma_moment(int n, ClosedOrQuad method, PrecisionContext ctx) {
  if (n < 1) throw DomainError("digamma_moment: n must be >= 1 (t^0 psi(t) is not integrable)");
  if (method == ClosedOrQuad::kClosed) {
    const PrecisionContext w(tier_bits(n, ctx));
    const auto table = glaisher::GlaisherTable::get(n, w);
    return (-inner_glaisher_sum(n, *table, w)).rounded(ctx);
  }
  const PrecisionContext w = widen(ctx, 16);
  const quad::QuadResult q = quad::tanh_sinh(
      quad::WeightedIntegrand(BigReal(n, w), BigReal(w), quad::Kernel::kDigamma), quad_tol(1e-30, w), w);
  return q.value.rounded(ctx);
}

BigReal log_sin_moment(int m, ClosedOrQuad method, PrecisionContext ctx) {
  if (m < 1) throw DomainError("log_sin_moment: m must be >= 1");
  const PrecisionContext w = widen(ctx, 32);
  if (method == ClosedOrQuad::kQuadrature) {
    const quad::QuadResult q = quad::tanh_sinh(
        quad::WeightedIntegrand(BigReal(m - 1, w), BigReal(w), quad::Kernel::kLogSinPi), quad_tol(1e-30, w), w);
    return q.value.rounded(ctx);
  }
  // -log 2/m + (m-1)! sum_{k=1}^{floor((m-1)/2)} (-1)^k zeta(2k+1) / ((2pi)^{2k} (m-2k)!)
  const BigReal two_pi2 = pow(const_pi(w) * 2L, 2L);
  BigReal sum(w);
  BigReal pk(1L, w);
  for (int k = 1; k <= (m - 1) / 2; ++k) {
    pk *= two_pi2;
    BigReal t = special::zeta(BigReal(2L * k + 1, w), w).value /
                (pk * factorial(static_cast<unsigned long>(m - 2 * k), w));
    if (k % 2 == 1) {
      sum -= t;
    } else {
      sum += t;
    }
  }
  sum *= factorial(static_cast<unsigned long>(m - 1), w);
  return (sum - const_log2(w) / static_cast<long>(m)).rounded(ctx);
}

BigReal log_sin_moment_real(const BigReal& s, double tol, PrecisionContext ctx) {
  if (!(s > 0L)) throw DomainError("log_sin_moment_real: s must be > 0");
  if (s.is_integer()) return log_sin_moment(static_cast<int>(s.to_long()), ClosedOrQuad::kClosed, ctx);
  const PrecisionContext w = widen(ctx, 16);
  const quad::QuadResult q = quad::tanh_sinh(
      quad::WeightedIntegrand(s.rounded(w) - 1L, BigReal(w), quad::Kernel::kLogSinPi), quad_tol(tol, w), w);
  if (!q.converged) throw PrecisionError("log_sin_moment_real: quadrature did not converge");
  return q.value.rounded(ctx);
}

SeriesEval beta_left(const BigReal& alpha, const BigReal& beta, double tol, PrecisionContext ctx,
                     const SeriesOptions& opts) {
  require_positive(alpha, "beta_left: alpha");
  require_positive(beta, "beta_left: beta");
  const PrecisionContext w = widen(ctx, 32);
  const BigReal b = beta.rounded(w) - 1L;
  const bool exact = is_nonneg_integer(b);
  OuterSpec spec{alpha.rounded(w) - 1L, b, exact ? integer_moment_fn(MomentKind::kGlaisher, b.to_long()) : real_moment_fn(b, ctx),
                 inv_gamma(alpha, w), exact};
  SeriesEval r = outer_sum(spec, tol, ctx, opts, Method::kGlaisherSeries);
  r.conjectural = beta < 1L;
  return r;
}

SeriesEval beta_left(double alpha, double beta, double tol, PrecisionContext ctx, const SeriesOptions& opts) {
  const PrecisionContext w = widen(ctx, 64);
  return beta_left(BigReal(alpha, w), BigReal(beta, w), tol, ctx, opts);
}

BigReal beta_left_trivial(const BigReal& alpha, const BigReal& beta, PrecisionContext ctx, double tol) {
  require_positive(alpha, "beta_left_trivial: alpha");
  const PrecisionContext w = widen(ctx, 32);
  const BigReal order = alpha.rounded(w) + beta.rounded(w) - 1L;
  require_positive(order, "beta_left_trivial: alpha + beta - 1");
  const BigReal factor = gamma_ratio(order, alpha.rounded(w), w);
  const SeriesEval right = raabe_right(order, Method::kGlaisherSeries, tol / std::max(1.0, factor.to_double()), w);
  return (factor * right.value).rounded(ctx);
}

BigReal beta_left_trivial(double alpha, double beta, PrecisionContext ctx, double tol) {
  const PrecisionContext w = widen(ctx, 64);
  return beta_left_trivial(BigReal(alpha, w), BigReal(beta, w), ctx, tol);
}

SeriesEval beta_right(const BigReal& alpha, const BigReal& beta, BetaIdentity identity, double tol,
                      PrecisionContext ctx, const SeriesOptions& opts) {
  require_positive(alpha, "beta_right: alpha");
  require_positive(beta, "beta_right: beta");
  const PrecisionContext w = widen(ctx, 32);
  const BigReal aw = alpha.rounded(w);
  const BigReal bw = beta.rounded(w);
  if (identity == BetaIdentity::kFirst) {
    const BigReal order = aw + bw - 1L;
    require_positive(order, "beta_right: alpha + beta - 1");
    const BigReal factor = gamma_ratio(order, aw, w);
    const double f = std::abs(factor.to_double());
    SeriesEval r = raabe_left(order, Method::kGlaisherSeries, tol / std::max(1.0, f), ctx, opts);
    r.value = (factor * r.value).rounded(ctx);
    r.remainder = (factor * r.remainder).rounded(ctx);
    r.tail_est *= f;
    r.conjectural = beta < 1L;
    return r;
  }
  const BigReal b = aw - 1L;
  if (!(b > -1L)) throw DomainError("beta_right: alpha must be > 0");
  const bool exact = is_nonneg_integer(b);
  OuterSpec spec{bw - 1L, b, exact ? integer_moment_fn(MomentKind::kGlaisher, b.to_long()) : real_moment_fn(b, ctx),
                 inv_gamma(aw, w), exact};
  SeriesEval r = outer_sum(spec, tol, ctx, opts, Method::kGlaisherSeries);
  r.conjectural = beta < 1L;
  return r;
}

SeriesEval beta_right(double alpha, double beta, BetaIdentity identity, double tol, PrecisionContext ctx,
                      const SeriesOptions& opts) {
  const PrecisionContext w = widen(ctx, 64);
  return beta_right(BigReal(alpha, w), BigReal(beta, w), identity, tol, ctx, opts);
}

SeriesEval combined_weight(const BigReal& alpha, const BigReal& beta, const BigReal& gamma_exp, quad::Side side,
                           PrecisionContext ctx, double tol) {
  require_positive(alpha, "combined_weight: alpha");
  const PrecisionContext w = widen(ctx, 32);
  const BigReal aw = alpha.rounded(w);
  // Fold the weight factor on the RL kernel's side into the order:
  //   left:  t^{beta-1} (1-t)^{alpha+gamma-2}  ->  beta_left(alpha+gamma-1, beta)
  //   right: t^{alpha+beta-2} (1-t)^{gamma-1}  ->  beta_right(alpha+beta-1, gamma), second identity
  const BigReal order = aw + ((side == quad::Side::kLeftAt1) ? gamma_exp.rounded(w) : beta.rounded(w)) - 1L;
  require_positive(order, "combined_weight: folded order");
  const BigReal factor = gamma_ratio(order, aw, w);
  const double f = std::abs(factor.to_double());
  SeriesEval r = (side == quad::Side::kLeftAt1)
                     ? beta_left(order, beta, tol / std::max(1.0, f), ctx)
                     : beta_right(order, gamma_exp, BetaIdentity::kSecond, tol / std::max(1.0, f), ctx);
  r.value = (factor * r.value).rounded(ctx);
  r.remainder = (factor * r.remainder).rounded(ctx);
  r.tail_est *= f;
  return r;
}

SeriesEval combined_weight(double alpha, double beta, double gamma_exp, quad::Side side, PrecisionContext ctx,
                           double tol) {
  const PrecisionContext w = widen(ctx, 64);
  return combined_weight(BigReal(alpha, w), BigReal(beta, w), BigReal(gamma_exp, w), side, ctx, tol);
}

ProbeReport conjecture_probe(const BigReal& alpha, const BigReal& beta, long n_max, PrecisionContext ctx) {
  require_positive(alpha, "conjecture_probe: alpha");
  if (!(beta > 0L && beta < 1L)) throw DomainError("conjecture_probe: beta must lie in (0,1)");
  if (n_max < 1) throw DomainError("conjecture_probe: N must be >= 1");
  constexpr long kQuadBelow = 32;
  constexpr int kTaylorBits = 96;
  const PrecisionContext w = widen(ctx, 16);
  const BigReal a = alpha.rounded(w) - 1L;
  const BigReal b = beta.rounded(w) - 1L;

  ProbeReport rep;
  rep.finite = is_nonneg_integer(a);
  BigReal weight(1L, w);
  BigReal sum(w);
  for (long n = 0; n <= n_max; ++n) {
    if (n > 0) {
      weight *= BigReal(n - 1, w) - a;
      weight /= n;
    }
    BigReal term(w);
    if (!weight.is_zero()) {
      const BigReal s = b + n;
      const BigReal moment =
          (n < kQuadBelow)
              ? quad::tanh_sinh(quad::WeightedIntegrand(s, BigReal(w), quad::Kernel::kLogGamma), quad_tol(1e-25, w), w)
                    .value
              : detail::moment_taylor(s, kTaylorBits, w);
      term = abs(weight) * moment;
    }
    const BigReal prev = sum;
    sum += term;
    if (sum < prev) rep.monotone = false;
    rep.terms.push_back(term.rounded(ctx));
    rep.partial_sums.push_back(sum.rounded(ctx));
  }

  const std::size_t last = rep.partial_sums.size() - 1;
  const std::size_t back = last >= 10 ? last - 10 : 0;
  rep.last_decade_growth = (rep.partial_sums[last] - rep.partial_sums[back]).to_double();

  double sx = 0;
  double sy = 0;
  double sxx = 0;
  double sxy = 0;
  long count = 0;
  for (long n = std::max(1L, n_max / 10); n <= n_max; ++n) {
    const BigReal& t = rep.terms[static_cast<std::size_t>(n)];
    if (!(t > 0L)) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = log(t).to_double();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double denom = static_cast<double>(count) * sxx - sx * sx;
  rep.decay_exponent = (count >= 2 && denom != 0) ? (static_cast<double>(count) * sxy - sx * sy) / denom
                                                  : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

ProbeReport conjecture_probe(double alpha, double beta, long n_max, PrecisionContext ctx) {
  const PrecisionContext w = widen(ctx, 64);
  return conjecture_probe(BigReal(alpha, w), BigReal(beta, w), n_max, ctx);
}

}  // namespace raabe::series
