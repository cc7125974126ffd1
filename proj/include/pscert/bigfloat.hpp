#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace pscert {

// Value-semantic RAII wrapper around mpfr_t. Copies preserve the source
// precision exactly; all arithmetic lives in free functions that take an
// explicit target precision and rounding mode, so every rounding decision
// is visible at the call site.
class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_nan(v_);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
  }

  BigFloat(BigFloat&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
    mpfr_set_nan(o.v_);
  }

  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) {
      mpfr_swap(v_, o.v_);
    }
    return *this;
  }

  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat of_si(long x, mpfr_prec_t prec = 64) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }

  static BigFloat of_mpz(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), rnd);
    return r;
  }

  // Exact representation of an integer: precision grows to fit.
  static BigFloat exact_mpz(const mpz_class& x) {
    mpfr_prec_t need = mpz_sizeinbase(x.get_mpz_t(), 2);
    if (need < MPFR_PREC_MIN) need = MPFR_PREC_MIN;
    BigFloat r(need);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static BigFloat of_mpq(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
    return r;
  }

  static BigFloat of_double(double x, mpfr_prec_t prec = 64) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp_si(long x) const { return mpfr_cmp_si(v_, x); }
  int sgn() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }

  bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
  bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
  bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
  bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }
  bool operator==(const BigFloat& o) const { return cmp(o) == 0; }

  mpz_class floor_z() const {
    mpz_class r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDD);
    return r;
  }

  mpz_class ceil_z() const {
    mpz_class r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDU);
    return r;
  }

  // Exact dyadic rational value. Requires a finite value.
  mpq_class to_mpq() const;

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const {
    return mpfr_get_d(v_, rnd);
  }

  // Fixed-point decimal rendering with directed rounding.
  std::string str_fixed(int digits, mpfr_rnd_t rnd) const;
  // Scientific rendering (for very small magnitudes such as window lengths).
  std::string str_sci(int digits, mpfr_rnd_t rnd) const;

private:
  mpfr_t v_;
};

// c = a op b at precision `prec`, rounding `rnd`.
BigFloat bf_add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
BigFloat bf_sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
BigFloat bf_mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
BigFloat bf_div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
BigFloat bf_log(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd);
BigFloat bf_pow(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
BigFloat bf_neg(const BigFloat& a);

BigFloat bf_min(const BigFloat& a, const BigFloat& b);
BigFloat bf_max(const BigFloat& a, const BigFloat& b);

}  // namespace pscert
