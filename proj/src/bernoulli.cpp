#include <stdexcept>
#include <string>
#include <vector>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::special {

namespace {

// Exact B_0..B_cap. Even indices come from tangent numbers T_k through
// B_{2k} = (-1)^{k-1} 2k T_k / (2^{2k} (2^{2k} - 1)), which keeps the heavy
// lifting in integer arithmetic.
std::vector<mpq_class> build_bernoulli(int cap) {
  std::vector<mpq_class> b(static_cast<std::size_t>(cap) + 1, mpq_class(0));
  b[0] = 1;
  if (cap >= 1) b[1] = mpq_class(-1, 2);

  const int half = cap / 2;
  std::vector<mpz_class> t(static_cast<std::size_t>(half) + 1, mpz_class(0));
  if (half >= 1) t[1] = 1;
  for (int k = 2; k <= half; ++k) t[k] = (k - 1) * t[k - 1];
  for (int k = 2; k <= half; ++k) {
    for (int j = k; j <= half; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }
  for (int k = 1; k <= half; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
    mpq_class v(2 * k * t[k], four_k * (four_k - 1));
    v.canonicalize();
    b[2 * k] = (k % 2 == 1) ? v : mpq_class(-v);
  }
  return b;
}

const std::vector<mpq_class>& bernoulli_table() {
  static const std::vector<mpq_class> table = build_bernoulli(kBernoulliCap);
  return table;
}

}  // namespace

mpq_class bernoulli_rational(int n) {
  if (n < 0) throw DomainError("bernoulli_rational: n must be >= 0");
  if (n > kBernoulliCap) {
    throw std::out_of_range("bernoulli_rational: index " + std::to_string(n) +
                            " exceeds cache cap " + std::to_string(kBernoulliCap));
  }
  return bernoulli_table()[static_cast<std::size_t>(n)];
}

BigReal bernoulli_number(int n, PrecisionContext ctx) { return BigReal(bernoulli_rational(n), ctx); }

BigReal bernoulli_poly(int n, const BigReal& x, PrecisionContext ctx) {
  if (n < 0) throw DomainError("bernoulli_poly: n must be >= 0");
  const PrecisionContext w = ctx.widened(32 + n);
  const BigReal xw = x.rounded(w);
  // Horner in x over the coefficients C(n,j) B_{n-j} of x^j.
  BigReal acc(w);
  for (int j = n; j >= 0; --j) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
    acc *= xw;
    acc += BigReal(mpq_class(c * bernoulli_rational(n - j)), w);
  }
  return acc.rounded(ctx);
}

BigReal bernoulli_poly(int n, double x, PrecisionContext ctx) {
  return bernoulli_poly(n, BigReal(x, ctx.widened(64)), ctx);
}

}  // namespace raabe::special
