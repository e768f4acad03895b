#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "raabe/precision.hpp"

namespace raabe {

/// Real number carried at a fixed binary precision (MPFR, round-to-nearest).
///
/// Arithmetic between two values produces a result at the larger of the two
/// operand precisions; mixed operations with machine integers or doubles keep
/// the precision of the BigReal operand. Use rounded() to move a value to
/// another precision explicitly.
class BigReal {
 public:
  BigReal() : BigReal(PrecisionContext{}) {}
  explicit BigReal(PrecisionContext ctx);
  BigReal(long v, PrecisionContext ctx);
  BigReal(int v, PrecisionContext ctx) : BigReal(static_cast<long>(v), ctx) {}
  BigReal(double v, PrecisionContext ctx);
  BigReal(const mpz_class& v, PrecisionContext ctx);
  BigReal(const mpq_class& v, PrecisionContext ctx);

  /// Parses a decimal (or "inf"/"nan") string, correctly rounded at ctx.
  static BigReal parse(std::string_view text, PrecisionContext ctx);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  PrecisionContext ctx() const { return PrecisionContext(bits()); }

  BigReal rounded(PrecisionContext ctx) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Shortest decimal string that parses back to exactly this value at bits().
  std::string to_string() const;
  /// Decimal string with `digits` significant digits (round to nearest).
  std::string to_string(int digits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent() const { return mpfr_get_exp(v_); }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr raw() { return v_; }

  BigReal operator-() const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(long o);
  BigReal& operator-=(long o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

 private:
  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal floor(const BigReal& x);
BigReal ldexp(const BigReal& x, long e);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

BigReal const_pi(PrecisionContext ctx);
BigReal const_log2(PrecisionContext ctx);
/// n! rounded at ctx.
BigReal factorial(unsigned long n, PrecisionContext ctx);
/// 2^e at ctx (exact).
BigReal pow2(long e, PrecisionContext ctx);

}  // namespace raabe
