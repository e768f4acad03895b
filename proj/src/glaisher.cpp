#include "raabe/glaisher.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::glaisher {

using special::bernoulli_rational;

BigReal log_glaisher(int k, PrecisionContext ctx) {
  if (k < 0) throw DomainError("log_glaisher: k must be >= 0");
  const PrecisionContext w = ctx.widened(32);
  const mpq_class head = bernoulli_rational(k + 1) * special::harmonic_rational(k) / mpq_class(k + 1);
  const special::ZetaValue z = special::zeta(BigReal(-static_cast<long>(k), w), w);
  return (BigReal(head, w) - z.derivative).rounded(ctx);
}

namespace {

// p(n,k) with log n supplied by the caller (shared with the limit pass).
BigReal p_nk_with_log(long n, int k, const BigReal& log_n, PrecisionContext w) {
  const BigReal nb(n, w);
  const mpq_class inv_k1(1, k + 1);
  BigReal p = pow(nb, k) * log_n / 2L;
  p += pow(nb, k + 1) / static_cast<long>(k + 1) * (log_n - BigReal(inv_k1, w));

  mpz_class k_fact;
  mpz_fac_ui(k_fact.get_mpz_t(), static_cast<unsigned long>(k));
  for (int m = 1; m <= k; ++m) {
    const mpq_class bm = bernoulli_rational(m + 1);
    if (bm == 0) continue;
    mpz_class f1;
    mpz_class f2;
    mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(m + 1));
    mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(k - m));
    const mpq_class coeff = mpq_class(k_fact) * bm / mpq_class(f1 * f2);
    // (1 - delta_km) sum_{l=1}^{m} 1/(k-l+1)
    mpq_class harm(0);
    if (m != k) {
      for (int l = 1; l <= m; ++l) harm += mpq_class(1, k - l + 1);
    }
    p += BigReal(coeff, w) * pow(nb, k - m) * (log_n + BigReal(harm, w));
  }
  return p;
}

int limit_guard(int k_max, long n_max) {
  return 40 + static_cast<int>(std::ceil((k_max + 1) * std::log2(static_cast<double>(n_max)) +
                                         std::log2(std::log(static_cast<double>(n_max)) + 1.0)));
}

}  // namespace

BigReal p_nk(long n, int k, PrecisionContext ctx) {
  if (n < 1) throw DomainError("p_nk: n must be >= 1");
  if (k < 0) throw DomainError("p_nk: k must be >= 0");
  const PrecisionContext w = ctx.widened(limit_guard(k, n));
  return p_nk_with_log(n, k, log(BigReal(n, w)), w).rounded(ctx);
}

std::vector<BigReal> log_glaisher_limits(int k_max, long n_max, PrecisionContext ctx) {
  if (k_max < 0) throw DomainError("log_glaisher_limit: k must be >= 0");
  if (n_max < 10) throw DomainError("log_glaisher_limit: n_max must be >= 10");
  const PrecisionContext w = ctx.widened(limit_guard(k_max, n_max));

  // log m from the smallest prime factor: only primes need a fresh logarithm.
  std::vector<long> spf(static_cast<std::size_t>(n_max) + 1, 0);
  for (long i = 2; i <= n_max; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= n_max; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  std::vector<BigReal> logs(static_cast<std::size_t>(n_max) + 1, BigReal(w));
  std::vector<BigReal> sums(static_cast<std::size_t>(k_max) + 1, BigReal(w));
  BigReal term(w);
  for (long m = 2; m <= n_max; ++m) {
    const long p = spf[m];
    logs[m] = (p == m) ? log(BigReal(m, w)) : logs[p] + logs[m / p];
    term = logs[m];
    for (int k = 0; k <= k_max; ++k) {
      sums[k] += term;
      term *= m;
    }
  }

  std::vector<BigReal> out;
  out.reserve(sums.size());
  for (int k = 0; k <= k_max; ++k) {
    out.push_back((sums[k] - p_nk_with_log(n_max, k, logs[n_max], w)).rounded(ctx));
  }
  return out;
}

BigReal log_glaisher_limit(int k, long n_max, PrecisionContext ctx) {
  if (k < 0) throw DomainError("log_glaisher_limit: k must be >= 0");
  if (n_max < 10) throw DomainError("log_glaisher_limit: n_max must be >= 10");
  // A single k needs only its own precision; reuse the batch pass.
  return log_glaisher_limits(k, n_max, ctx).back();
}

GlaisherTable::GlaisherTable(int k_max, PrecisionContext ctx) : ctx_(ctx) {
  if (k_max < 0) throw DomainError("GlaisherTable: k_max must be >= 0");
  log_values_.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) log_values_.push_back(log_glaisher(k, ctx));
}

GlaisherTable::GlaisherTable(const GlaisherTable& prefix, int k_max)
    : ctx_(prefix.ctx_), log_values_(prefix.log_values_) {
  for (int k = prefix.k_max() + 1; k <= k_max; ++k) log_values_.push_back(log_glaisher(k, ctx_));
}

std::shared_ptr<const GlaisherTable> GlaisherTable::get(int k_max, PrecisionContext ctx) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GlaisherTable>> cache;
  // Holding the lock while building keeps construction write-once per key.
  std::lock_guard lock(mu);
  auto& slot = cache[ctx.bits];
  if (!slot) {
    slot = std::make_shared<const GlaisherTable>(k_max, ctx);
  } else if (slot->k_max() < k_max) {
    slot = std::shared_ptr<const GlaisherTable>(new GlaisherTable(*slot, k_max));
  }
  return slot;
}

}  // namespace raabe::glaisher
