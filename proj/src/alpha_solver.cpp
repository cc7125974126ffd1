#include "pscert/alpha_solver.hpp"

#include <algorithm>
#include <cmath>

namespace pscert {

namespace {

void check_cell(const mpq_class& beta, const mpq_class& gamma) {
  if (floor_q(beta) != floor_q(gamma) || floor_q(beta) < 2)
    throw DomainError("beta and gamma must share an integer cell floor >= 2");
  if (beta >= gamma) throw DomainError("beta < gamma required");
}

// Enclosure of the open case interval (L, R) for z at precision `prec`.
struct JEndpoints {
  CertifiedReal left, right;
};

JEndpoints j_endpoints(const EquationCoeffs& co, std::uint64_t x, const mpq_class& beta,
                       const mpq_class& gamma, mpfr_prec_t prec) {
  mpz_class xz(static_cast<unsigned long>(x));
  CertifiedReal xc = CertifiedReal::exact_int(xz);
  CertifiedReal lnx = cr_log(xc, prec);
  CertifiedReal x2lnx = cr_mul(cr_mul(xc, xc, prec), lnx, prec);
  CertifiedReal inv_beta = CertifiedReal::of_rational(mpq_class(1) / beta, prec);
  CertifiedReal inv_gamma = CertifiedReal::of_rational(mpq_class(1) / gamma, prec);
  mpq_class ac(co.wa, co.wc);
  ac.canonicalize();

  switch (co.work_case) {
    case CoeffCase::a_gt_c: {
      // ((b/(c x^2 log x) + a/c)^{1/gamma} x, (a/c)^{1/beta} x)
      CertifiedReal lead = cr_div(CertifiedReal::exact_int(co.wb),
                                  cr_mul_int(x2lnx, co.wc, prec), prec);
      CertifiedReal base = cr_add(lead, CertifiedReal::of_rational(ac, prec), prec);
      CertifiedReal left = cr_mul(cr_pow(base, inv_gamma, prec), xc, prec);
      CertifiedReal right =
          cr_mul(cr_pow(CertifiedReal::of_rational(ac, prec), inv_beta, prec), xc, prec);
      return {left, right};
    }
    case CoeffCase::a_lt_c: {
      // ((a/(c - b/(x^2 log x)))^{1/beta} x, (a/c)^{1/gamma} x)
      CertifiedReal den = cr_sub(CertifiedReal::exact_int(co.wc),
                                 cr_div(CertifiedReal::exact_int(co.wb), x2lnx, prec), prec);
      CertifiedReal base = cr_div(CertifiedReal::exact_int(co.wa), den, prec);
      CertifiedReal left = cr_mul(cr_pow(base, inv_beta, prec), xc, prec);
      CertifiedReal right =
          cr_mul(cr_pow(CertifiedReal::of_rational(ac, prec), inv_gamma, prec), xc, prec);
      return {left, right};
    }
    case CoeffCase::all_equal: {
      // (2^{1/gamma} (x + 1/(x ceil(log x))), 2^{1/beta} x)
      std::uint64_t L = ceil_log(x);
      mpq_class shifted(static_cast<unsigned long>(x));
      shifted += mpq_class(1, mpz_class(static_cast<unsigned long>(x)) *
                                  mpz_class(static_cast<unsigned long>(L)));
      CertifiedReal two = CertifiedReal::exact_int(2);
      CertifiedReal left = cr_mul(cr_pow(two, inv_gamma, prec),
                                  CertifiedReal::of_rational(shifted, prec), prec);
      CertifiedReal right = cr_mul(cr_pow(two, inv_beta, prec), xc, prec);
      return {left, right};
    }
    default:
      throw DomainError("j_endpoints: unexpected case");
  }
}

}  // namespace

EquationCoeffs make_coeffs(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  if (a < 1 || b < 1 || c < 1) throw DomainError("coefficients must be positive");
  EquationCoeffs co;
  co.a = a;
  co.b = b;
  co.c = c;
  if (a == b && b == c) {
    co.case_tag = CoeffCase::all_equal;
    co.wa = co.wb = co.wc = 1;  // a x + a y = a z reduces to x + y = z
    co.work_case = CoeffCase::all_equal;
  } else if (a == c) {
    // a = c != b: switch the roles of (a, x) and (b, y).
    co.case_tag = CoeffCase::swapped;
    co.wa = b;
    co.wb = a;
    co.wc = c;
    co.work_case = b > c ? CoeffCase::a_gt_c : CoeffCase::a_lt_c;
  } else {
    co.case_tag = a > c ? CoeffCase::a_gt_c : CoeffCase::a_lt_c;
    co.wa = a;
    co.wb = b;
    co.wc = c;
    co.work_case = co.case_tag;
  }
  return co;
}

std::uint64_t ceil_log(std::uint64_t x) {
  if (x < 2) throw DomainError("ceil_log: x must be >= 2");
  CertifiedReal lx = cr_log(CertifiedReal::exact_int(mpz_class(static_cast<unsigned long>(x))), 96);
  mpz_class cl = lx.lo().ceil_z(), ch = lx.hi().ceil_z();
  if (cl != ch) {
    lx = cr_log(CertifiedReal::exact_int(mpz_class(static_cast<unsigned long>(x))), 512);
    cl = lx.lo().ceil_z();
    ch = lx.hi().ceil_z();
    if (cl != ch) throw UndecidableError("ceil_log: tie at x=" + std::to_string(x));
  }
  return cl.get_ui();
}

AdmissibleZ admissible_z(const EquationCoeffs& coeffs, std::uint64_t x,
                         const mpq_class& beta, const mpq_class& gamma,
                         const PrecisionPolicy& policy) {
  check_cell(beta, gamma);
  if (x < 3) throw DomainError("admissible_z: x must be >= 3");

  AdmissibleZ out;
  mpfr_prec_t p = std::max<mpfr_prec_t>(policy.start, 96);
  for (;;) {
    JEndpoints ends = j_endpoints(coeffs, x, beta, gamma, p);
    mpz_class in_lo = ends.left.hi().floor_z() + 1;   // certified > L
    mpz_class in_hi = ends.right.lo().ceil_z() - 1;   // certified < R
    mpz_class fuzzy_left_lo = ends.left.lo().floor_z() + 1;
    mpz_class fuzzy_right_hi = ends.right.hi().ceil_z() - 1;
    bool fuzzy = fuzzy_left_lo < in_lo || fuzzy_right_hi > in_hi;
    if (fuzzy && p < policy.cap) {
      p = std::min<mpfr_prec_t>(p * 2, policy.cap);
      continue;
    }
    if (fuzzy) {
      for (mpz_class n = fuzzy_left_lo; n < in_lo; ++n)
        if (n > 0) out.undecided.push_back(n.get_ui());
      for (mpz_class n = in_hi + 1; n <= fuzzy_right_hi; ++n)
        if (n > 0) out.undecided.push_back(n.get_ui());
    }
    for (mpz_class n = std::max(in_lo, mpz_class(1)); n <= in_hi; ++n) {
      if (coeffs.work_case == CoeffCase::a_gt_c &&
          n % mpz_class(static_cast<unsigned long>(x)) == 0)
        continue;  // multiples of x are excluded in this case
      out.z.push_back(n.get_ui());
    }
    return out;
  }
}

bool z_is_admissible(const EquationCoeffs& coeffs, std::uint64_t x, std::uint64_t z,
                     const mpq_class& beta, const mpq_class& gamma,
                     const PrecisionPolicy& policy) {
  check_cell(beta, gamma);
  if (coeffs.work_case == CoeffCase::a_gt_c && z % x == 0) return false;
  mpz_class zz(static_cast<unsigned long>(z));
  BigFloat zb = BigFloat::exact_mpz(zz);
  mpfr_prec_t p = std::max<mpfr_prec_t>(policy.start, 96);
  for (;;) {
    JEndpoints ends = j_endpoints(coeffs, x, beta, gamma, p);
    if (ends.left.hi() < zb && zb < ends.right.lo()) return true;
    if (zb < ends.left.lo() || ends.right.hi() < zb) return false;
    if (p >= policy.cap) return false;  // undecidable: excluded for soundness
    p = std::min<mpfr_prec_t>(p * 2, policy.cap);
  }
}

int case_function_sign(const EquationCoeffs& coeffs, std::uint64_t x, std::uint64_t z,
                       const mpq_class& u, const PrecisionPolicy& policy) {
  mpz_class xz(static_cast<unsigned long>(x)), zz(static_cast<unsigned long>(z));
  double zu = mpq_class(u).get_d() * std::max(1.0, static_cast<double>(mpz_sizeinbase(zz.get_mpz_t(), 2)));
  mpfr_prec_t p = 64;
  while (p < static_cast<mpfr_prec_t>(zu) + 64) p *= 2;
  p = std::clamp<mpfr_prec_t>(p, policy.start, policy.cap);

  for (;;) {
    CertifiedReal U = CertifiedReal::of_rational(u, p);
    CertifiedReal val = [&] {
      if (coeffs.work_case == CoeffCase::all_equal) {
        std::uint64_t L = ceil_log(x);
        mpz_class xl = xz * mpz_class(static_cast<unsigned long>(L));
        mpq_class mid(xl * xz + 1, xl);  // x + 1/(x ceil(log x))
        mid.canonicalize();
        CertifiedReal xs = cr_pow(CertifiedReal::exact_int(xz), U, p);
        CertifiedReal ms = cr_pow(CertifiedReal::of_rational(mid, p), U, p);
        CertifiedReal zs = cr_pow(CertifiedReal::exact_int(zz), U, p);
        return cr_sub(cr_add(xs, ms, p), zs, p);
      }
      CertifiedReal xs = cr_pow(CertifiedReal::exact_int(xz), U, p);
      CertifiedReal zs = cr_pow(CertifiedReal::exact_int(zz), U, p);
      return cr_sub(cr_add(cr_mul_int(xs, coeffs.wa, p), CertifiedReal::exact_int(coeffs.wb), p),
                    cr_mul_int(zs, coeffs.wc, p), p);
    }();
    if (val.sign() != 0) return val.sign();
    if (p >= policy.cap) return 0;
    p = std::min<mpfr_prec_t>(p * 2, policy.cap);
  }
}

namespace {

// One certified bisection step; returns false when every candidate split
// point has an undecidable sign.
bool bisect_step(AlphaBracket& br, const EquationCoeffs& coeffs, std::uint64_t x,
                 std::uint64_t z, const PrecisionPolicy& policy) {
  static const int num[5] = {1, 7, 9, 13, 19};
  static const int den[5] = {2, 16, 16, 32, 32};
  for (int i = 0; i < 5; ++i) {
    mpq_class mid = br.lo + (br.hi - br.lo) * mpq_class(num[i], den[i]);
    int s = case_function_sign(coeffs, x, z, mid, policy);
    if (s == 0) continue;
    if (s == br.sign_lo)
      br.lo = mid;
    else
      br.hi = mid;
    return true;
  }
  return false;
}

}  // namespace

AlphaBracket bracket_exponent(const EquationCoeffs& coeffs, std::uint64_t x,
                              std::uint64_t z, const mpq_class& beta,
                              const mpq_class& gamma, const mpq_class& width,
                              const PrecisionPolicy& policy) {
  check_cell(beta, gamma);
  int s_beta = case_function_sign(coeffs, x, z, beta, policy);
  int s_gamma = case_function_sign(coeffs, x, z, gamma, policy);
  if (s_beta == 0 || s_gamma == 0)
    throw UndecidableError("bracket_exponent: endpoint sign undecidable");
  if (s_beta == s_gamma)
    throw ConstructionError("bracket_exponent: no sign change in (beta, gamma) for x=" +
                            std::to_string(x) + " z=" + std::to_string(z));
  AlphaBracket br{beta, gamma, s_beta};
  shrink_bracket(br, coeffs, x, z, width, policy);
  // Detach the bracket from the cell endpoints so it lies strictly inside.
  int extra = 0;
  while ((br.lo == beta || br.hi == gamma) && extra < 300) {
    if (!bisect_step(br, coeffs, x, z, policy))
      throw ConstructionError("bracket_exponent: undecidable split point");
    ++extra;
  }
  if (br.lo == beta || br.hi == gamma)
    throw ConstructionError("bracket_exponent: root pinned to cell endpoint");
  return br;
}

void shrink_bracket(AlphaBracket& br, const EquationCoeffs& coeffs, std::uint64_t x,
                    std::uint64_t z, const mpq_class& width, const PrecisionPolicy& policy) {
  int guard = 0;
  while (br.hi - br.lo > width) {
    if (!bisect_step(br, coeffs, x, z, policy))
      throw ConstructionError("shrink_bracket: undecidable split point");
    if (++guard > 100000)
      throw ConstructionError("shrink_bracket: width target unreachable");
  }
}

CertifiedReal solve_exponent(const EquationCoeffs& coeffs, std::uint64_t x,
                             std::uint64_t z, const mpq_class& beta,
                             const mpq_class& gamma, const mpq_class& width,
                             const PrecisionPolicy& policy) {
  AlphaBracket br = bracket_exponent(coeffs, x, z, beta, gamma, width, policy);
  double wbits = mpq_class(width).get_d() > 0 ? -std::log2(mpq_class(width).get_d()) : 128;
  mpfr_prec_t prec = 64;
  while (prec < static_cast<mpfr_prec_t>(wbits) + 64) prec *= 2;
  return CertifiedReal::hull_of_rationals(br.lo, br.hi, prec);
}

CertifiedReal approx_exponent(const EquationCoeffs& coeffs, std::uint64_t x,
                              std::uint64_t z, mpfr_prec_t prec) {
  mpz_class num, den;
  if (coeffs.work_case == CoeffCase::all_equal) {
    num = 2;
    den = 1;
  } else {
    num = coeffs.wa;
    den = coeffs.wc;
  }
  CertifiedReal lk = log_ratio(num, den, prec);
  CertifiedReal lzx = log_ratio(mpz_class(static_cast<unsigned long>(z)),
                                mpz_class(static_cast<unsigned long>(x)), prec);
  return cr_div(lk, lzx, prec);
}

}  // namespace pscert
