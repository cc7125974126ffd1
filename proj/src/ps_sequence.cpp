#include "pscert/ps_sequence.hpp"

#include <algorithm>

namespace pscert {

namespace {

void check_alpha(const CertifiedReal& alpha) {
  if (alpha.lo().cmp_si(1) <= 0)
    throw DomainError("ps_sequence: alpha must exceed 1");
}

// Certified enclosure of m^(1/alpha), refined at precision `prec`.
CertifiedReal inverse_power(const mpz_class& m, const CertifiedReal& alpha,
                            mpfr_prec_t prec) {
  CertifiedReal inv = cr_div(CertifiedReal::exact_int(1), alpha, prec);
  return cr_pow(CertifiedReal::exact_int(m), inv, prec);
}

}  // namespace

PsTerm ps_term(std::uint64_t n, const CertifiedReal& alpha, const PrecisionPolicy& policy) {
  if (n == 0) throw DomainError("ps_term: index must be positive");
  check_alpha(alpha);
  mpz_class base(static_cast<unsigned long>(n));
  CertifiedFloor f = floor_pow(base, alpha, policy);
  if (!f.decided)
    throw UndecidableError("ps_term: floor of " + base.get_str() +
                           "^alpha undecidable at precision cap");
  PsTerm t;
  t.index = n;
  t.value = f.value;
  mpfr_prec_t p = std::max(f.frac_lo.precision(), f.frac_hi.precision());
  t.frac = CertifiedReal(f.frac_lo, f.frac_hi, p);
  return t;
}

std::vector<PsTerm> ps_members_in_range(const CertifiedReal& alpha, const mpz_class& lo,
                                        const mpz_class& hi, const PrecisionPolicy& policy) {
  if (lo < 0 || lo > hi) throw DomainError("ps_members_in_range: need 0 <= lo <= hi");
  check_alpha(alpha);
  std::vector<PsTerm> out;
  if (hi < 1) return out;

  std::uint64_t n_first = 1;
  if (lo > 1) {
    CertifiedReal root = inverse_power(lo, alpha, 128);
    mpz_class cand = root.lo().floor_z() - 1;
    if (cand > 1) n_first = cand.get_ui();
  }
  CertifiedReal top = inverse_power(hi, alpha, 128);
  mpz_class n_last_z = top.hi().ceil_z() + 1;
  if (!n_last_z.fits_ulong_p())
    throw DomainError("ps_members_in_range: range too large");
  std::uint64_t n_last = n_last_z.get_ui();

  for (std::uint64_t n = n_first; n <= n_last; ++n) {
    PsTerm t = ps_term(n, alpha, policy);
    if (t.value > hi) break;
    if (t.value >= lo) out.push_back(std::move(t));
  }
  return out;
}

Membership is_member(const mpz_class& m, const CertifiedReal& alpha,
                     const PrecisionPolicy& policy) {
  if (m < 1) throw DomainError("is_member: m must be >= 1");
  check_alpha(alpha);

  // Membership is pointwise in alpha: the enclosure must pin a single target
  // value. A window-valued alpha whose answer varies across the interval
  // surfaces as an undecidable floor below, never as a wrong answer.

  // floor(n^alpha) = m forces n in [m^(1/a), (m+1)^(1/a)), an interval of
  // length < 1 for alpha > 1: at most two integer candidates adjacent to the
  // enclosure of m^(1/alpha).
  mpfr_prec_t p = 128;
  for (;;) {
    CertifiedReal root = inverse_power(m, alpha, p);
    mpz_class c_lo = root.lo().ceil_z();
    mpz_class c_hi = root.hi().ceil_z();
    if (c_hi - c_lo <= 1) {
      for (mpz_class c = c_lo; c <= c_hi; ++c) {
        if (c < 1) continue;
        if (!c.fits_ulong_p()) return {};
        PsTerm t = ps_term(c.get_ui(), alpha, policy);
        if (t.value == m) return {true, t.index};
      }
      return {};
    }
    if (p >= policy.cap) {
      throw UndecidableError("is_member: candidate index for " + m.get_str() +
                             " undecidable at precision cap");
    }
    p = std::min<mpfr_prec_t>(p * 2, policy.cap);
  }
}

}  // namespace pscert
