#include "raabe/big_real.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace raabe {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_prec_t wider(const BigReal& a, const BigReal& b) {
  return std::max<mpfr_prec_t>(a.bits(), b.bits());
}

// Formats MPFR's digit string (implicit point before the first digit,
// exponent `exp10`) as a plain decimal or scientific literal.
std::string format_digits(std::string digits, mpfr_exp_t exp10) {
  bool neg = false;
  if (!digits.empty() && digits.front() == '-') {
    neg = true;
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  // value = 0.d1d2d3... * 10^exp10
  std::string out;
  const long point = static_cast<long>(exp10);
  const long n = static_cast<long>(digits.size());
  if (point > -5 && point <= 21) {
    if (point <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
    } else if (point >= n) {
      out = digits + std::string(static_cast<std::size_t>(point - n), '0');
    } else {
      out = digits.substr(0, static_cast<std::size_t>(point)) + "." +
            digits.substr(static_cast<std::size_t>(point));
    }
  } else {
    out = digits.substr(0, 1);
    if (n > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(point - 1);
  }
  return neg ? "-" + out : out;
}

std::string mpfr_digits(mpfr_srcptr v, int digits, mpfr_exp_t* exp10) {
  char* s = mpfr_get_str(nullptr, exp10, 10, static_cast<std::size_t>(digits), v, kRnd);
  if (s == nullptr) throw std::runtime_error("mpfr_get_str failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

BigReal::BigReal(PrecisionContext ctx) {
  mpfr_init2(v_, ctx.bits);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long v, PrecisionContext ctx) {
  mpfr_init2(v_, ctx.bits);
  mpfr_set_si(v_, v, kRnd);
}

BigReal::BigReal(double v, PrecisionContext ctx) {
  mpfr_init2(v_, ctx.bits);
  mpfr_set_d(v_, v, kRnd);
}

BigReal::BigReal(const mpz_class& v, PrecisionContext ctx) {
  mpfr_init2(v_, ctx.bits);
  mpfr_set_z(v_, v.get_mpz_t(), kRnd);
}

BigReal::BigReal(const mpq_class& v, PrecisionContext ctx) {
  mpfr_init2(v_, ctx.bits);
  mpfr_set_q(v_, v.get_mpq_t(), kRnd);
}

BigReal BigReal::parse(std::string_view text, PrecisionContext ctx) {
  BigReal r(ctx);
  const std::string s(text);
  if (mpfr_set_str(r.v_, s.c_str(), 10, kRnd) != 0) {
    throw std::invalid_argument("BigReal::parse: not a number: '" + s + "'");
  }
  return r;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, kRnd);
}

BigReal::BigReal(BigReal&& other) noexcept {
  // Leave `other` valid (but unspecified) by swapping with a fresh limb set.
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::rounded(PrecisionContext ctx) const {
  BigReal r(ctx);
  mpfr_set(r.v_, v_, kRnd);
  return r;
}

std::string BigReal::to_string() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";

  const int max_digits = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_)));
  auto round_trips = [&](int d) {
    mpfr_exp_t e = 0;
    std::string s = mpfr_digits(v_, d, &e);
    BigReal back = parse(format_digits(s, e), ctx());
    return mpfr_equal_p(back.v_, v_) != 0;
  };
  int lo = 1;
  int hi = max_digits;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (round_trips(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return to_string(lo);
}

std::string BigReal::to_string(int digits) const {
  if (!is_finite() || is_zero()) return to_string();
  mpfr_exp_t e = 0;
  std::string s = mpfr_digits(v_, std::max(digits, 1), &e);
  return format_digits(s, e);
}

BigReal BigReal::operator-() const {
  BigReal r(ctx());
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

BigReal& BigReal::operator+=(const BigReal& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), kRnd);
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), kRnd);
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), kRnd);
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), kRnd);
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator+=(long o) {
  mpfr_add_si(v_, v_, o, kRnd);
  return *this;
}

BigReal& BigReal::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, kRnd);
  return *this;
}

BigReal& BigReal::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, kRnd);
  return *this;
}

BigReal& BigReal::operator/=(long o) {
  mpfr_div_si(v_, v_, o, kRnd);
  return *this;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(PrecisionContext(static_cast<int>(wider(a, b))));
  mpfr_add(r.v_, a.v_, b.v_, kRnd);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(PrecisionContext(static_cast<int>(wider(a, b))));
  mpfr_sub(r.v_, a.v_, b.v_, kRnd);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(PrecisionContext(static_cast<int>(wider(a, b))));
  mpfr_mul(r.v_, a.v_, b.v_, kRnd);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(PrecisionContext(static_cast<int>(wider(a, b))));
  mpfr_div(r.v_, a.v_, b.v_, kRnd);
  return r;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal r(b.ctx());
  mpfr_si_sub(r.v_, a, b.v_, kRnd);
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal r(b.ctx());
  mpfr_si_div(r.v_, a, b.v_, kRnd);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

#define RAABE_UNARY(name, fn)                 \
  BigReal name(const BigReal& x) {            \
    BigReal r(x.ctx());                       \
    fn(r.raw(), x.get(), kRnd);               \
    return r;                                 \
  }

RAABE_UNARY(abs, mpfr_abs)
RAABE_UNARY(sqrt, mpfr_sqrt)
RAABE_UNARY(exp, mpfr_exp)
RAABE_UNARY(log, mpfr_log)
RAABE_UNARY(log1p, mpfr_log1p)
RAABE_UNARY(sin, mpfr_sin)
RAABE_UNARY(cos, mpfr_cos)
RAABE_UNARY(tan, mpfr_tan)
RAABE_UNARY(sinh, mpfr_sinh)
RAABE_UNARY(cosh, mpfr_cosh)

#undef RAABE_UNARY

BigReal floor(const BigReal& x) {
  BigReal r(x.ctx());
  mpfr_floor(r.raw(), x.get());
  return r;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(PrecisionContext(static_cast<int>(wider(x, y))));
  mpfr_pow(r.raw(), x.get(), y.get(), kRnd);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r(x.ctx());
  mpfr_pow_si(r.raw(), x.get(), n, kRnd);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x.ctx());
  mpfr_mul_2si(r.raw(), x.get(), e, kRnd);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal const_pi(PrecisionContext ctx) {
  BigReal r(ctx);
  mpfr_const_pi(r.raw(), kRnd);
  return r;
}

BigReal const_log2(PrecisionContext ctx) {
  BigReal r(ctx);
  mpfr_const_log2(r.raw(), kRnd);
  return r;
}

BigReal factorial(unsigned long n, PrecisionContext ctx) {
  BigReal r(ctx);
  mpfr_fac_ui(r.raw(), n, kRnd);
  return r;
}

BigReal pow2(long e, PrecisionContext ctx) {
  BigReal r(1L, ctx);
  mpfr_mul_2si(r.raw(), r.get(), e, kRnd);
  return r;
}

}  // namespace raabe
