#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"
#include "test_util.hpp"

using namespace raabe;
using testing::dec;
using testing::diff;
using testing::ulps;

namespace {
const PrecisionContext k128(128);
const PrecisionContext k192(192);
const PrecisionContext k256(256);
}  // namespace

TEST_CASE("BigReal round trips through its shortest decimal string") {
  for (int bits : {53, 128, 192, 300}) {
    const PrecisionContext ctx(bits);
    const BigReal x = const_pi(ctx) / 7L;
    CHECK(BigReal::parse(x.to_string(), ctx) == x);
    const BigReal y = -exp(BigReal(-40L, ctx));
    CHECK(BigReal::parse(y.to_string(), ctx) == y);
  }
  CHECK(BigReal(0.5, k128).to_string() == "0.5");
}

TEST_CASE("PrecisionContext rejects fewer than 53 bits") {
  CHECK_THROWS_AS(PrecisionContext(52), std::invalid_argument);
  CHECK(PrecisionContext().bits == 128);
}

TEST_CASE("log_gamma special values and frozen values") {
  CHECK(special::log_gamma(1.0, k192).is_zero());
  CHECK(special::log_gamma(2.0, k192).is_zero());
  CHECK(ulps(special::log_gamma(0.5, k192), log(const_pi(k192)) / 2L, 192) <= 4);
  CHECK(diff(special::log_gamma(dec("0.1", k192), k192), dec("2.2527126517342059598697016463684951", k192)) < 1e-33);
  CHECK(diff(special::log_gamma(dec("7.3", k192), k192), dec("7.1478925230222490327770571544283892", k192)) < 1e-33);
  CHECK(diff(special::log_gamma(dec("1e-5", k192), k192), dec("11.512919692895825707420833930939005", k192)) < 1e-32);
  CHECK(diff(special::log_gamma(dec("1000.5", k192), k192), dec("5908.6741758486774886838747340626249", k192)) <
        1e-30);
}

TEST_CASE("log_gamma at 10.3 matches MPFR") {
  const BigReal x = dec("10.3", k192);
  BigReal ref(k192);
  mpfr_lngamma(ref.raw(), x.get(), MPFR_RNDN);
  CHECK(ulps(special::log_gamma(x, k192), ref, 192) <= 4);
}

TEST_CASE("log_gamma matches MPFR on a sweep") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int i = 0; i < 100; ++i) {
    const BigReal x(std::exp(u(rng)), k256);
    BigReal ref(k256);
    mpfr_lngamma(ref.raw(), x.get(), MPFR_RNDN);
    CHECK(ulps(special::log_gamma(x, k256), ref, 256) <= 4);
  }
}

TEST_CASE("log_gamma domain") {
  CHECK_THROWS_AS(special::log_gamma(0.0, k128), DomainError);
  CHECK_THROWS_AS(special::log_gamma(-1.5, k128), DomainError);
  CHECK_THROWS_AS(special::log_gamma(BigReal::parse("inf", k128), k128), DomainError);
}

TEST_CASE("reflection formula on random t") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BigReal log_pi = log(const_pi(k192));
  for (int i = 0; i < 200; ++i) {
    const BigReal t(u(rng), k192);
    const BigReal lhs = special::log_gamma(t, k192) + special::log_gamma(1L - t, k192) - log_pi +
                        log(sin(const_pi(k192) * t));
    CHECK(std::abs(lhs.to_double()) <= std::ldexp(1.0, -192 + 8));
  }
}

TEST_CASE("recurrences") {
  for (double xd : {0.1, 0.5, 1.7, 9.2, 41.0}) {
    const BigReal x(xd, k192);
    const BigReal lg = special::log_gamma(x + 1L, k192);
    const BigReal lgx = special::log_gamma(x, k192);
    const double mag = abs(lgx).to_double() + std::abs(std::log(xd));
    CHECK(diff(lgx + log(x), lg) <= std::ldexp(std::max(1.0, mag), -192 + 4));
    const BigReal ps = special::digamma(x + 1L, k192);
    CHECK(ulps(special::digamma(x, k192) + 1L / x, ps, 192) <= 8);
  }
}

TEST_CASE("digamma") {
  const BigReal g = special::euler_gamma(k192);
  CHECK(ulps(special::digamma(1.0, k192), -g, 192) <= 4);
  CHECK(ulps(special::digamma(2.0, k192), 1L - g, 192) <= 4);
  CHECK(ulps(special::digamma(0.5, k192), -g - const_log2(k192) * 2L, 192) <= 8);
  CHECK(diff(special::digamma(dec("0.25", k192), k192), dec("-4.2274535333762654080895301460966836", k192)) < 1e-33);
  CHECK(diff(special::digamma(dec("3.7", k192), k192), dec("1.1671535393615113858738639661450469", k192)) < 1e-33);
  BigReal ref(k192);
  const BigReal x = dec("0.013", k192);
  mpfr_digamma(ref.raw(), x.get(), MPFR_RNDN);
  CHECK(ulps(special::digamma(x, k192), ref, 192) <= 8);
  CHECK_THROWS_AS(special::digamma(0.0, k128), DomainError);
}

TEST_CASE("digamma against a central difference of log_gamma") {
  const PrecisionContext w(320);
  const BigReal x = dec("0.5", w);
  const BigReal h = pow2(-80, w);
  const BigReal fd = (special::log_gamma(x + h, w) - special::log_gamma(x - h, w)) / (h * 2L);
  CHECK(diff(fd, special::digamma(x, w)) < 1e-40);
}

TEST_CASE("euler_gamma") {
  CHECK(special::euler_gamma(k128).to_string(16) == "0.5772156649015329");
  const BigReal lo = special::euler_gamma(PrecisionContext(53));
  CHECK(lo == special::euler_gamma(k256).rounded(PrecisionContext(53)));
  BigReal ref(k256);
  mpfr_const_euler(ref.raw(), MPFR_RNDN);
  CHECK(special::euler_gamma(k256) == ref);
}

TEST_CASE("bernoulli numbers") {
  CHECK(special::bernoulli_rational(0) == 1);
  CHECK(special::bernoulli_rational(1) == mpq_class(-1, 2));
  CHECK(special::bernoulli_rational(3) == 0);
  CHECK(special::bernoulli_rational(12) == mpq_class(-691, 2730));
  for (int n = 3; n < 60; n += 2) CHECK(special::bernoulli_rational(n) == 0);
  // sum_{j<=n} C(n+1, j) B_j = 0
  for (int n = 1; n <= 40; ++n) {
    mpq_class s = 0;
    mpz_class c = 1;
    for (int j = 0; j <= n; ++j) {
      s += c * special::bernoulli_rational(j);
      c = c * (n + 1 - j) / (j + 1);
    }
    CHECK(s == 0);
  }
  CHECK_THROWS_AS(special::bernoulli_rational(special::kBernoulliCap + 1), std::out_of_range);
}

TEST_CASE("bernoulli polynomials") {
  CHECK(special::bernoulli_poly(1, 1.0, k128) == BigReal(0.5, k128));
  CHECK(ulps(special::bernoulli_poly(2, 0.0, k128), BigReal(mpq_class(1, 6), k128), 128) <= 1);
  for (int n = 2; n <= 12; ++n) {
    CHECK(ulps(special::bernoulli_poly(n, 1.0, k128), special::bernoulli_poly(n, 0.0, k128), 128) <= 2);
  }
  // B_4(x) = x^4 - 2x^3 + x^2 - 1/30
  const mpq_class x(3, 10);
  const mpq_class b4 = x * x * x * x - 2 * x * x * x + x * x - mpq_class(1, 30);
  CHECK(ulps(special::bernoulli_poly(4, BigReal(x, k128), k128), BigReal(b4, k128), 128) <= 4);
}

TEST_CASE("harmonic numbers") {
  CHECK(special::harmonic_rational(0) == 0);
  CHECK(special::harmonic_rational(3) == mpq_class(11, 6));
  mpq_class h = 0;
  for (int j = 1; j <= 50; ++j) h += mpq_class(1, j);
  CHECK(special::harmonic_rational(50) == h);
  CHECK(special::harmonic(50, k128) == BigReal(h, k128));
}

TEST_CASE("generalised binomial") {
  CHECK(special::binom_real(2.7, 0, k128) == BigReal(1L, k128));
  CHECK(special::binom_real(5.0, 2, k128) == BigReal(10L, k128));
  CHECK(special::binom_real(-0.5, 3, k128) == BigReal(-0.3125, k128));
  CHECK(special::binom_real(4.0, 7, k128).is_zero());
}

TEST_CASE("binomial bound holds for alpha >= 1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(1.0, 6.0);
  std::uniform_int_distribution<int> un(0, 200);
  for (int i = 0; i < 500; ++i) {
    const double a = ua(rng);
    const int n = un(rng);
    CHECK(abs(special::binom_real(a - 1, n, k128)).to_double() <= std::pow(2.0, a - 1) * (1 + 1e-15));
  }
}

TEST_CASE("binomial bound fails below alpha 1") {
  // |C(-0.9, 1)| = 0.9 > 2^{-0.9}
  CHECK(abs(special::binom_real(-0.9, 1, k128)).to_double() > std::pow(2.0, -0.9));
  CHECK(special::binom_real(-0.5, 0, k128).to_double() > std::pow(2.0, -0.5));
}

TEST_CASE("zeta at positive arguments") {
  const BigReal pi = const_pi(k192);
  CHECK(ulps(special::zeta(2.0, k192).value, pi * pi / 6L, 192) <= 8);
  CHECK(diff(special::zeta(3.0, k192).value, dec("1.20205690315959428539973816151145", k192)) < 1e-32);
  CHECK(diff(special::zeta(2.0, k192).derivative, dec("-0.93754825431584375370257409456786498", k192)) < 1e-33);
  BigReal ref(k192);
  mpfr_zeta_ui(ref.raw(), 7, MPFR_RNDN);
  CHECK(ulps(special::zeta(7.0, k192).value, ref, 192) <= 8);
}

TEST_CASE("zeta below one") {
  CHECK(diff(special::zeta(0.5, k192).value, dec("-1.460354508809586812889499152515298", k192)) < 1e-32);
  CHECK(diff(special::zeta(0.5, k192).derivative, dec("-3.9226461392091517274715314467145995", k192)) < 1e-32);
  CHECK(diff(special::zeta(-2.5, k192).value, dec("0.0085169287778503305423585670283444869", k192)) < 1e-33);
  CHECK(diff(special::zeta(-2.5, k192).derivative, dec("-0.0062657363721897584032827587297258332", k192)) < 1e-33);
  CHECK(ulps(special::zeta(0.0, k192).derivative, -special::log_2pi(k192) / 2L, 192) <= 8);
  CHECK(diff(special::zeta(-1.0, k192).derivative, dec("-0.16542114370045092921391966024278064", k192)) < 1e-33);
  CHECK(diff(special::zeta(-3.0, k192).derivative, dec("0.0053785763577743011444169742104138429", k192)) < 1e-33);
  CHECK_THROWS_AS(special::zeta(1.0, k128), PoleError);
}

TEST_CASE("zeta at negative integers") {
  CHECK(special::zeta(-1.0, k192).value == BigReal(mpq_class(-1, 12), k192));
  for (int k = 0; k <= 20; ++k) {
    const BigReal expect(mpq_class(-special::bernoulli_rational(k + 1) / (k + 1)), k192);
    CHECK(ulps(special::zeta(BigReal(-k, k192), k192).value, expect, 192) <= 2);
  }
  for (int m = 1; m <= 10; ++m) CHECK(special::zeta(BigReal(-2 * m, k192), k192).value.is_zero());
  const BigReal pi = const_pi(k192);
  CHECK(ulps(special::zeta(-2.0, k192).derivative, -special::zeta(3.0, k192).value / (pi * pi * 4L), 192) <= 8);
}

TEST_CASE("hurwitz zeta") {
  CHECK(diff(special::hurwitz_zeta(dec("2.5", k192), dec("3.25", k192), k192),
             dec("0.14333130965938579096997822148008019", k192)) < 1e-33);
  // zeta(3, 1/2) = 7 zeta(3)
  CHECK(ulps(special::hurwitz_zeta(BigReal(3L, k192), BigReal(0.5, k192), k192),
             special::zeta(3.0, k192).value * 7L, 192) <= 16);
  CHECK(ulps(special::hurwitz_zeta(BigReal(4L, k192), BigReal(1L, k192), k192), special::zeta(4.0, k192).value,
             192) <= 16);
}

TEST_CASE("precision coherence between 128 and 256 bits") {
  auto agree = [](const BigReal& lo, const BigReal& hi) {
    return lo.is_zero() ? hi.exponent() < -120 : ulps(lo, hi.rounded(k128), 128) <= 256;
  };
  for (double x : {0.03, 0.5, 2.25, 17.0, 123.4}) {
    CHECK(agree(special::log_gamma(x, k128), special::log_gamma(x, k256)));
    CHECK(agree(special::digamma(x, k128), special::digamma(x, k256)));
  }
  for (double s : {-7.5, -3.0, 0.25, 2.0, 5.5}) {
    CHECK(agree(special::zeta(s, k128).value, special::zeta(s, k256).value));
    CHECK(agree(special::zeta(s, k128).derivative, special::zeta(s, k256).derivative));
  }
  CHECK(agree(special::euler_gamma(k128), special::euler_gamma(k256)));
  CHECK(agree(special::bernoulli_poly(7, 0.3, k128), special::bernoulli_poly(7, 0.3, k256)));
}

TEST_CASE("determinism and concurrent use") {
  const PrecisionContext ctx(211);
  std::vector<double> xs;
  for (int i = 1; i <= 32; ++i) xs.push_back(0.37 * i);
  std::vector<BigReal> serial;
  for (double x : xs) serial.push_back(special::log_gamma(x, ctx) + special::zeta(x + 1.5, ctx).derivative);
  std::vector<BigReal> parallel(xs.size(), BigReal(ctx));
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < xs.size(); i += 4) {
        parallel[i] = special::log_gamma(xs[i], ctx) + special::zeta(xs[i] + 1.5, ctx).derivative;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(serial[i] == parallel[i]);
}
