#pragma once

#include <optional>
#include <string>

#include "pscert/bigfloat.hpp"
#include "pscert/errors.hpp"

namespace pscert {

// Adaptive-precision schedule. Queries start at `start` bits (or the
// magnitude-derived estimate if larger) and double until `cap`.
struct PrecisionPolicy {
  mpfr_prec_t start = 64;
  mpfr_prec_t cap = 4096;
};

// A certified enclosure [lo, hi] of one exact real value, maintained by
// directed rounding in every operation: lo is always rounded down, hi up,
// so the target provably never escapes the interval.
class CertifiedReal {
public:
  CertifiedReal() : lo_(2), hi_(2), prec_(2) {}

  CertifiedReal(BigFloat lo, BigFloat hi, mpfr_prec_t prec);

  // Degenerate enclosure of an exact integer (width 0).
  static CertifiedReal exact_int(const mpz_class& v);
  static CertifiedReal exact_int(long v) { return exact_int(mpz_class(v)); }

  // Degenerate enclosure of an exact dyadic value (width 0).
  static CertifiedReal exact_dyadic(const BigFloat& v);

  // Tightest enclosure of a rational at the given precision.
  static CertifiedReal of_rational(const mpq_class& v, mpfr_prec_t prec);

  // Enclosure of the whole closed rational interval [lo, hi].
  static CertifiedReal hull_of_rationals(const mpq_class& lo, const mpq_class& hi,
                                         mpfr_prec_t prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision_bits() const { return prec_; }

  bool is_point() const { return lo_ == hi_; }
  BigFloat width() const { return bf_sub(hi_, lo_, prec_, MPFR_RNDU); }

  // +1 if provably positive, -1 if provably negative, 0 if undecided.
  int sign() const {
    if (lo_.sgn() > 0) return 1;
    if (hi_.sgn() < 0) return -1;
    return 0;
  }

  bool contains_int(const mpz_class& n) const;

  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }

  std::string str(int digits = 30) const;

private:
  BigFloat lo_, hi_;
  mpfr_prec_t prec_;
};

// Interval arithmetic at explicit target precision.
CertifiedReal cr_add(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec);
CertifiedReal cr_sub(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec);
CertifiedReal cr_mul(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec);
// Requires b to exclude zero.
CertifiedReal cr_div(const CertifiedReal& a, const CertifiedReal& b, mpfr_prec_t prec);
CertifiedReal cr_neg(const CertifiedReal& a);
CertifiedReal cr_mul_int(const CertifiedReal& a, const mpz_class& k, mpfr_prec_t prec);
// Natural log; requires a.lo > 0.
CertifiedReal cr_log(const CertifiedReal& a, mpfr_prec_t prec);
// base^expo over the whole rectangle; requires base.lo > 0. Monotone in each
// argument separately, so corner evaluation with directed rounding encloses.
CertifiedReal cr_pow(const CertifiedReal& base, const CertifiedReal& expo, mpfr_prec_t prec);
CertifiedReal cr_min(const CertifiedReal& a, const CertifiedReal& b);

// Certified floor of base^t over an exponent interval. `decided` means the
// floor (and the fractional-part enclosure) is valid for every t in the
// queried interval; an undecided result is never a wrong floor.
struct CertifiedFloor {
  mpz_class value;
  BigFloat frac_lo{64};
  BigFloat frac_hi{64};
  bool decided = false;

  enum class Fail { none, exponent_straddles_crossing, precision_cap };
  Fail reason = Fail::none;
};

// Enclosure of { base^t : t in expo }. Throws PrecisionCapError if
// precision_bits exceeds policy.cap. Requires base >= 1 and expo.lo > 0.
CertifiedReal pow_enclose(const mpz_class& base, const CertifiedReal& expo,
                          mpfr_prec_t precision_bits, const PrecisionPolicy& policy = {});

// Doubles precision from the policy start until the enclosure of base^t pins
// a unique floor across the whole exponent interval, or the interval provably
// straddles an integer crossing of t -> base^t (then decided = false).
CertifiedFloor floor_pow(const mpz_class& base, const CertifiedReal& expo,
                         const PrecisionPolicy& policy = {});

// Certified enclosure of log(num/den), natural log. Requires num, den >= 1.
CertifiedReal log_ratio(const mpz_class& num, const mpz_class& den,
                        mpfr_prec_t precision_bits);

}  // namespace pscert
