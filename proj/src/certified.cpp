#include "pscert/certified.hpp"

#include <algorithm>
#include <cmath>

namespace pscert {

namespace {

// Smallest power of two >= x (as a precision value).
mpfr_prec_t next_pow2(mpfr_prec_t x) {
  mpfr_prec_t p = 64;
  while (p < x) p *= 2;
  return p;
}

// Starting precision for base^t queries: enough bits for the integer part
// plus headroom for the fractional part to be meaningful.
mpfr_prec_t start_precision(const mpz_class& base, const CertifiedReal& expo,
                            const PrecisionPolicy& policy) {
  double bits = static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2));
  double t_hi = expo.hi().to_double(MPFR_RNDU);
  if (!std::isfinite(t_hi) || t_hi < 0) t_hi = 1;
  double need = bits * t_hi + 64.0;
  if (need > 1e9) need = 1e9;
  mpfr_prec_t p = next_pow2(static_cast<mpfr_prec_t>(need));
  return std::clamp<mpfr_prec_t>(p, policy.start, policy.cap);
}

// Exact value of base^(num/2^log2den) when it is an integer; nullopt when it
// is not, or when the inputs are too large for the exact route.
std::optional<mpz_class> exact_dyadic_power(const mpz_class& base, const mpz_class& num,
                                            unsigned log2den) {
  if (log2den > 6) return std::nullopt;  // root degree up to 64
  if (!num.fits_uint_p()) return std::nullopt;
  unsigned long n = num.get_ui();
  size_t bits = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (bits * n > 1u << 15) return std::nullopt;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), n);
  unsigned long deg = 1ul << log2den;
  if (deg == 1) return p;
  mpz_class r;
  int exact = mpz_root(r.get_mpz_t(), p.get_mpz_t(), deg);
  if (exact) return r;
  return std::nullopt;
}

BigFloat pow_point(const mpz_class& base, const BigFloat& t, mpfr_prec_t prec,
                   mpfr_rnd_t rnd) {
  BigFloat b = BigFloat::exact_mpz(base);
  return bf_pow(b, t, prec, rnd);
}

}  // namespace

CertifiedReal::CertifiedReal(BigFloat lo, BigFloat hi, mpfr_prec_t prec)
    : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
  if (lo_.is_nan() || hi_.is_nan() || lo_ > hi_)
    throw DomainError("CertifiedReal: invalid bounds");
}

CertifiedReal CertifiedReal::exact_int(const mpz_class& v) {
  BigFloat b = BigFloat::exact_mpz(v);
  return CertifiedReal(b, b, b.precision());
}

CertifiedReal CertifiedReal::exact_dyadic(const BigFloat& v) {
  return CertifiedReal(v, v, v.precision());
}

CertifiedReal CertifiedReal::of_rational(const mpq_class& v, mpfr_prec_t prec) {
  return CertifiedReal(BigFloat::of_mpq(v, prec, MPFR_RNDD),
                       BigFloat::of_mpq(v, prec, MPFR_RNDU), prec);
}

CertifiedReal CertifiedReal::hull_of_rationals(const mpq_class& lo, const mpq_class& hi,
                                               mpfr_prec_t prec) {
  if (lo > hi) throw DomainError("hull_of_rationals: lo > hi");
  return CertifiedReal(BigFloat::of_mpq(lo, prec, MPFR_RNDD),
                       BigFloat::of_mpq(hi, prec, MPFR_RNDU), prec);
}

bool CertifiedReal::contains_int(const mpz_class& n) const {
  BigFloat b = BigFloat::exact_mpz(n);
  return lo_ <= b && b <= hi_;
}

std::string CertifiedReal::str(int digits) const {
  return "[" + lo_.str_fixed(digits, MPFR_RNDD) + ", " + hi_.str_fixed(digits, MPFR_RNDU) + "]";
}

CertifiedReal cr_add(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec) {
  return CertifiedReal(bf_add(a.lo(), b.lo(), prec, MPFR_RNDD),
                       bf_add(a.hi(), b.hi(), prec, MPFR_RNDU), prec);
}

CertifiedReal cr_sub(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec) {
  return CertifiedReal(bf_sub(a.lo(), b.hi(), prec, MPFR_RNDD),
                       bf_sub(a.hi(), b.lo(), prec, MPFR_RNDU), prec);
}

CertifiedReal cr_mul(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec) {
  const BigFloat* as[2] = {&a.lo(), &a.hi()};
  const BigFloat* bs[2] = {&b.lo(), &b.hi()};
  BigFloat lo = bf_mul(a.lo(), b.lo(), prec, MPFR_RNDD);
  BigFloat hi = bf_mul(a.lo(), b.lo(), prec, MPFR_RNDU);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      lo = bf_min(lo, bf_mul(*as[i], *bs[j], prec, MPFR_RNDD));
      hi = bf_max(hi, bf_mul(*as[i], *bs[j], prec, MPFR_RNDU));
    }
  return CertifiedReal(lo, hi, prec);
}

CertifiedReal cr_div(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec) {
  if (b.lo().sgn() <= 0 && b.hi().sgn() >= 0)
    throw DomainError("cr_div: divisor interval contains zero");
  const BigFloat* as[2] = {&a.lo(), &a.hi()};
  const BigFloat* bs[2] = {&b.lo(), &b.hi()};
  BigFloat lo = bf_div(a.lo(), b.lo(), prec, MPFR_RNDD);
  BigFloat hi = bf_div(a.lo(), b.lo(), prec, MPFR_RNDU);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      lo = bf_min(lo, bf_div(*as[i], *bs[j], prec, MPFR_RNDD));
      hi = bf_max(hi, bf_div(*as[i], *bs[j], prec, MPFR_RNDU));
    }
  return CertifiedReal(lo, hi, prec);
}

CertifiedReal cr_neg(const CertifiedReal& a) {
  return CertifiedReal(bf_neg(a.hi()), bf_neg(a.lo()), a.precision_bits());
}

CertifiedReal cr_mul_int(const CertifiedReal& a, const mpz_class& k, mpfr_prec_t prec) {
  return cr_mul(a, CertifiedReal::exact_int(k), prec);
}

CertifiedReal cr_log(const CertifiedReal& a, mpfr_prec_t prec) {
  if (a.lo().sgn() <= 0) throw DomainError("cr_log: argument must be positive");
  return CertifiedReal(bf_log(a.lo(), prec, MPFR_RNDD),
                       bf_log(a.hi(), prec, MPFR_RNDU), prec);
}

CertifiedReal cr_pow(const CertifiedReal& base, const CertifiedReal& expo, mpfr_prec_t prec) {
  if (base.lo().sgn() <= 0) throw DomainError("cr_pow: base must be positive");
  const BigFloat* bs[2] = {&base.lo(), &base.hi()};
  const BigFloat* es[2] = {&expo.lo(), &expo.hi()};
  BigFloat lo = bf_pow(base.lo(), expo.lo(), prec, MPFR_RNDD);
  BigFloat hi = bf_pow(base.lo(), expo.lo(), prec, MPFR_RNDU);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      lo = bf_min(lo, bf_pow(*bs[i], *es[j], prec, MPFR_RNDD));
      hi = bf_max(hi, bf_pow(*bs[i], *es[j], prec, MPFR_RNDU));
    }
  return CertifiedReal(lo, hi, prec);
}

CertifiedReal cr_min(const CertifiedReal& a, const CertifiedReal& b) {
  mpfr_prec_t prec = std::max(a.precision_bits(), b.precision_bits());
  return CertifiedReal(bf_min(a.lo(), b.lo()), bf_min(a.hi(), b.hi()), prec);
}

CertifiedReal pow_enclose(const mpz_class& base, const CertifiedReal& expo,
                          mpfr_prec_t precision_bits, const PrecisionPolicy& policy) {
  if (base < 1) throw DomainError("pow_enclose: base must be >= 1");
  if (expo.lo().sgn() <= 0) throw DomainError("pow_enclose: exponent must be positive");
  if (precision_bits > policy.cap)
    throw PrecisionCapError("pow_enclose: requested " + std::to_string(precision_bits) +
                            " bits, cap is " + std::to_string(policy.cap));
  if (base == 1) return CertifiedReal::exact_int(1);

  if (expo.is_point() && expo.lo().is_integer()) {
    mpz_class k = expo.lo().floor_z();
    if (k.fits_uint_p() &&
        mpz_sizeinbase(base.get_mpz_t(), 2) * k.get_ui() <= (1u << 20)) {
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), k.get_ui());
      return CertifiedReal::exact_int(p);
    }
  }

  // t -> base^t is increasing for base >= 2.
  return CertifiedReal(pow_point(base, expo.lo(), precision_bits, MPFR_RNDD),
                       pow_point(base, expo.hi(), precision_bits, MPFR_RNDU),
                       precision_bits);
}

CertifiedFloor floor_pow(const mpz_class& base, const CertifiedReal& expo,
                         const PrecisionPolicy& policy) {
  if (base < 1) throw DomainError("floor_pow: base must be >= 1");
  if (expo.lo().sgn() <= 0) throw DomainError("floor_pow: exponent must be positive");

  CertifiedFloor out;
  out.frac_lo = BigFloat::of_si(0, 64);
  out.frac_hi = BigFloat::of_si(0, 64);

  if (base == 1) {
    out.value = 1;
    out.decided = true;
    return out;
  }

  // Exact short-circuit for a degenerate exponent whose value is dyadic and
  // small: catches integer exponents and ties like 4^2.5 = 32 that interval
  // refinement alone can never decide.
  if (expo.is_point() && expo.lo().is_finite()) {
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), expo.lo().raw());
    // value = m * 2^e; normalize to num / 2^log2den
    mpz_class num = m;
    long log2den = 0;
    if (e >= 0) {
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      log2den = -e;
      while (log2den > 0 && mpz_even_p(num.get_mpz_t())) {
        num >>= 1;
        --log2den;
      }
    }
    if (log2den >= 0 && log2den <= 6) {
      auto exact = exact_dyadic_power(base, num, static_cast<unsigned>(log2den));
      if (exact) {
        out.value = *exact;
        out.decided = true;
        return out;
      }
    }
  }

  mpfr_prec_t p = start_precision(base, expo, policy);
  while (true) {
    CertifiedReal e = pow_enclose(base, expo, p, PrecisionPolicy{policy.start, p});
    mpz_class zl = e.lo().floor_z();
    mpz_class zh = e.hi().floor_z();
    if (zl == zh) {
      out.value = zl;
      BigFloat zb = BigFloat::exact_mpz(zl);
      BigFloat fl = bf_sub(e.lo(), zb, p, MPFR_RNDD);
      BigFloat fh = bf_sub(e.hi(), zb, p, MPFR_RNDU);
      if (fl.sgn() < 0) fl = BigFloat::of_si(0, 64);
      if (fh.cmp_si(1) > 0) fh = BigFloat::of_si(1, 64);
      out.frac_lo = fl;
      out.frac_hi = fh;
      out.decided = true;
      return out;
    }
    if (!expo.is_point()) {
      // If the floor provably differs at the two exponent endpoints, no
      // precision can decide: the interval straddles an integer crossing.
      CertifiedReal a = pow_enclose(base, CertifiedReal::exact_dyadic(expo.lo()), p,
                                    PrecisionPolicy{policy.start, p});
      CertifiedReal b = pow_enclose(base, CertifiedReal::exact_dyadic(expo.hi()), p,
                                    PrecisionPolicy{policy.start, p});
      if (a.hi().floor_z() < b.lo().floor_z()) {
        out.reason = CertifiedFloor::Fail::exponent_straddles_crossing;
        return out;
      }
    }
    if (p >= policy.cap) {
      out.reason = CertifiedFloor::Fail::precision_cap;
      return out;
    }
    p = std::min<mpfr_prec_t>(p * 2, policy.cap);
  }
}

CertifiedReal log_ratio(const mpz_class& num, const mpz_class& den,
                        mpfr_prec_t precision_bits) {
  if (num < 1 || den < 1) throw DomainError("log_ratio: arguments must be >= 1");
  if (num == den) return CertifiedReal::exact_int(0);
  mpq_class q(num, den);
  q.canonicalize();
  CertifiedReal ratio = CertifiedReal::of_rational(q, precision_bits + 8);
  return cr_log(ratio, precision_bits);
}

}  // namespace pscert
