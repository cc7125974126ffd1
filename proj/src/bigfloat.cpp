#include "pscert/bigfloat.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace pscert {

mpq_class BigFloat::to_mpq() const {
  if (!is_finite()) throw std::invalid_argument("to_mpq: non-finite value");
  if (mpfr_zero_p(v_)) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0) {
    mpz_class p2 = 1;
    mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    q *= p2;
  } else {
    mpz_class p2 = 1;
    mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    q /= mpq_class(p2);
  }
  q.canonicalize();
  return q;
}

std::string BigFloat::str_fixed(int digits, mpfr_rnd_t rnd) const {
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%dR*f", digits);
  char* out = nullptr;
  mpfr_asprintf(&out, fmt, rnd, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string BigFloat::str_sci(int digits, mpfr_rnd_t rnd) const {
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%dR*e", digits);
  char* out = nullptr;
  mpfr_asprintf(&out, fmt, rnd, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

BigFloat bf_add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat bf_sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat bf_mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat bf_div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat bf_log(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_log(r.raw(), a.raw(), rnd);
  return r;
}

BigFloat bf_pow(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_pow(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat bf_neg(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);  // exact at same precision
  return r;
}

BigFloat bf_min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }
BigFloat bf_max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }

}  // namespace pscert
