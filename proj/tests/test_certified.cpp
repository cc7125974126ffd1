#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pscert/certified.hpp"
#include "pscert/rational.hpp"

using namespace pscert;

namespace {

mpq_class q(const std::string& s) { return parse_decimal(s); }

// True value known to lie in (lo_dec, hi_dec): the enclosure must cover that
// whole sliver.
void check_covers(const CertifiedReal& e, const std::string& lo_dec,
                  const std::string& hi_dec) {
  CHECK(e.lo().to_mpq() <= q(lo_dec));
  CHECK(e.hi().to_mpq() >= q(hi_dec));
}

}  // namespace

TEST_CASE("pow_enclose at trivial and exact inputs") {
  CertifiedReal one = pow_enclose(1, CertifiedReal::of_rational(q("2.7"), 64), 64);
  CHECK(one.lo().to_mpq() == 1);
  CHECK(one.hi().to_mpq() == 1);

  CertifiedReal eight = pow_enclose(2, CertifiedReal::exact_int(3), 64);
  CHECK(eight.lo().to_mpq() == 8);
  CHECK(eight.hi().to_mpq() == 8);
}

TEST_CASE("pow_enclose 2^2.5 against the high-precision oracle") {
  CertifiedReal e = pow_enclose(2, CertifiedReal::of_rational(q("2.5"), 64), 64);
  // sqrt(32) = 5.65685424949238019520675489683879...
  check_covers(e, "5.656854249492380195206754896838", "5.656854249492380195206754896839");
  CHECK(e.width().to_mpq() < mpq_class(1, mpz_class(1) << 50));

  // independent 512-bit evaluation also inside the enclosure
  mpfr_t v;
  mpfr_init2(v, 512);
  oracle::pow_512(v, 2, q("2.5"), MPFR_RNDN);
  CHECK(mpfr_cmp(e.lo().raw(), v) <= 0);
  CHECK(mpfr_cmp(e.hi().raw(), v) >= 0);
  mpfr_clear(v);
}

TEST_CASE("pow_enclose rejects precision above the cap") {
  PrecisionPolicy pol;
  CHECK_THROWS_AS(pow_enclose(2, CertifiedReal::of_rational(q("2.5"), 64), 8192, pol),
                  PrecisionCapError);
}

TEST_CASE("floor_pow examples") {
  CertifiedFloor f = floor_pow(2, CertifiedReal::of_rational(q("2.5"), 64));
  CHECK(f.decided);
  CHECK(f.value == 5);

  f = floor_pow(10, CertifiedReal::of_rational(q("2.5"), 64));
  CHECK(f.decided);
  CHECK(f.value == 316);
  CHECK(f.value == oracle::exact_pow_floor(10, 5, 2));

  f = floor_pow(2, CertifiedReal::exact_int(3));
  CHECK(f.decided);
  CHECK(f.value == 8);
  CHECK(f.frac_lo.sgn() == 0);
  CHECK(f.frac_hi.sgn() == 0);
}

TEST_CASE("floor_pow decides exact non-integer-exponent ties") {
  // 4^2.5 = 32 exactly; interval refinement alone can never separate it from
  // the integer, the dyadic short-circuit must.
  CertifiedFloor f = floor_pow(4, CertifiedReal::of_rational(q("2.5"), 64));
  CHECK(f.decided);
  CHECK(f.value == 32);
  CHECK(f.frac_lo.sgn() == 0);
  CHECK(f.frac_hi.sgn() == 0);
}

TEST_CASE("floor_pow reports a genuine crossing straddle") {
  CertifiedReal span = CertifiedReal::hull_of_rationals(q("2.3"), q("2.4"), 96);
  CertifiedFloor f = floor_pow(2, span);  // 2^2.3 = 4.92.., 2^2.4 = 5.27..
  CHECK_FALSE(f.decided);
  CHECK(f.reason == CertifiedFloor::Fail::exponent_straddles_crossing);
}

TEST_CASE("log_ratio examples") {
  CertifiedReal z = log_ratio(1, 1, 64);
  CHECK(z.lo().to_mpq() == 0);
  CHECK(z.hi().to_mpq() == 0);

  check_covers(log_ratio(2, 1, 96), "0.693147180559945309417232121458",
               "0.693147180559945309417232121459");
  check_covers(log_ratio(136, 100, 96), "0.307484699747960640465248072878",
               "0.307484699747960640465248072879");
}

TEST_CASE("monotone refinement: doubling precision never widens") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    mpz_class base = 2 + static_cast<long>(rng() % 9999);
    unsigned long den = 1 + rng() % 60;
    unsigned long num = den * 2 + rng() % (den * 2);
    mpq_class t(num, den);
    t.canonicalize();
    CertifiedReal expo = CertifiedReal::of_rational(t, 128);
    BigFloat w_prev = pow_enclose(base, expo, 128).width();
    for (mpfr_prec_t p = 256; p <= 1024; p *= 2) {
      BigFloat w = pow_enclose(base, expo, p).width();
      CHECK(w <= w_prev);
      w_prev = w;
    }
  }
}

TEST_CASE("floor soundness against the exact integer-root oracle") {
  std::mt19937_64 rng(7);
  int undecided = 0;
  const int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    mpz_class base = 1 + static_cast<long>(rng() % 100000);
    unsigned long den = 1 + rng() % 20;
    unsigned long num = den + 1 + rng() % (3 * den);
    mpq_class t(num, den);
    t.canonicalize();
    CertifiedFloor f = floor_pow(base, CertifiedReal::of_rational(t, 192));
    if (!f.decided) {
      ++undecided;
      continue;
    }
    CHECK(f.value == oracle::exact_pow_floor(base, num, den));
  }
  // undecided is allowed (never a wrong floor), but must stay rare
  CHECK(undecided < trials / 100);
}

TEST_CASE("interval-exponent floor agrees with sampled point floors") {
  // pick a narrow exponent interval with a decided floor, then sample it
  mpq_class t0 = q("2.31");
  mpq_class w(1, mpz_class(1) << 40);
  CertifiedReal span = CertifiedReal::hull_of_rationals(t0, t0 + w, 128);
  CertifiedFloor f = floor_pow(7, span);
  REQUIRE(f.decided);
  for (int i = 0; i <= 100; ++i) {
    mpq_class tau = t0 + w * i / 100;
    CertifiedFloor g = floor_pow(7, CertifiedReal::of_rational(tau, 128));
    REQUIRE(g.decided);
    CHECK(g.value == f.value);
  }
}

TEST_CASE("decimal parsing reproduces the string exactly") {
  CHECK(parse_decimal("2.2") == mpq_class(11, 5));
  CHECK(parse_decimal("2.35") == mpq_class(47, 20));
  CHECK(parse_decimal("-0.125") == mpq_class(-1, 8));
  CHECK(parse_decimal("17") == 17);
  CHECK(decimal_string(mpq_class(24, 185), 12) == "0.129729729730");
  CHECK(decimal_string(mpq_class(54, 875), 12) == "0.061714285714");
  CHECK_THROWS_AS(parse_decimal("2.3.4"), ParseError);
  CHECK_THROWS_AS(parse_decimal(""), ParseError);
  CHECK_THROWS_AS(parse_decimal("abc"), ParseError);
}

TEST_CASE("certified real arithmetic keeps directed bounds ordered") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    mpq_class a(static_cast<long>(rng() % 2000) - 1000, 1 + rng() % 50);
    mpq_class b(static_cast<long>(rng() % 2000) - 1000, 1 + rng() % 50);
    a.canonicalize();
    b.canonicalize();
    CertifiedReal x = CertifiedReal::of_rational(a, 64);
    CertifiedReal y = CertifiedReal::of_rational(b, 64);
    for (const CertifiedReal& r :
         {cr_add(x, y, 64), cr_sub(x, y, 64), cr_mul(x, y, 64)}) {
      CHECK(r.lo() <= r.hi());
    }
    // exact rational result lies inside each enclosure
    CHECK(cr_add(x, y, 64).lo().to_mpq() <= a + b);
    CHECK(cr_add(x, y, 64).hi().to_mpq() >= a + b);
    CHECK(cr_mul(x, y, 64).lo().to_mpq() <= a * b);
    CHECK(cr_mul(x, y, 64).hi().to_mpq() >= a * b);
  }
}
