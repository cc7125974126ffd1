#pragma once

#include <cstdint>
#include <vector>

#include "pscert/certified.hpp"
#include "pscert/rational.hpp"

namespace pscert {

// Coefficients of a x + b y = c z with the case split of the construction.
// When a = c != b the roles of (a, x) and (b, y) are switched, which lands
// the problem in one of the three essential cases; `swapped` records that
// the working coefficients are (b, a, c).
enum class CoeffCase { a_gt_c, a_lt_c, all_equal, swapped };

struct EquationCoeffs {
  mpz_class a, b, c;
  CoeffCase case_tag = CoeffCase::all_equal;

  // The coefficients actually used by the construction: equal to (a, b, c)
  // except in the swapped case, where they are (b, a, c).
  mpz_class wa, wb, wc;
  CoeffCase work_case = CoeffCase::all_equal;  // never `swapped`
};

// Classifies and normalizes. all_equal is normalized to (1,1,1).
EquationCoeffs make_coeffs(const mpz_class& a, const mpz_class& b, const mpz_class& c);

// An exponent window (theta, theta + ell) attached to a generator pair
// (x, z). The endpoints are kept as exact rationals (bisection bracket and
// stability width are rational by construction) with certified views.
struct ExponentWindow {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  mpq_class theta_lo, theta_hi;  // bracket around the exact exponent
  mpq_class ell;                 // window length, exact
  mpq_class beta, gamma;

  mpq_class outer_lo() const { return theta_lo; }
  mpq_class outer_hi() const { return theta_hi + ell; }

  CertifiedReal theta(mpfr_prec_t prec = 128) const {
    return CertifiedReal::hull_of_rationals(theta_lo, theta_hi, prec);
  }
  CertifiedReal length(mpfr_prec_t prec = 128) const {
    return CertifiedReal::of_rational(ell, prec);
  }
};

// Result of the admissible-z computation: the certified integer points of
// the case's open interval, plus any integers whose membership stayed
// undecidable at the precision cap (excluded, reported).
struct AdmissibleZ {
  std::vector<std::uint64_t> z;          // ascending
  std::vector<std::uint64_t> undecided;  // excluded for soundness
};

// Integer points of the case interval J_{a,b,c}(x). Empty result means x is
// below the effective threshold, not an error.
AdmissibleZ admissible_z(const EquationCoeffs& coeffs, std::uint64_t x,
                         const mpq_class& beta, const mpq_class& gamma,
                         const PrecisionPolicy& policy = {});

// Certified check that one z lies in the open case interval.
bool z_is_admissible(const EquationCoeffs& coeffs, std::uint64_t x, std::uint64_t z,
                     const mpq_class& beta, const mpq_class& gamma,
                     const PrecisionPolicy& policy = {});

// Exact rational bisection bracket around the case exponent alpha(x, z):
// the sign of the case function is certified at both endpoints.
struct AlphaBracket {
  mpq_class lo, hi;
  int sign_lo = 0;  // certified sign of f at lo (f has sign -sign_lo at hi)
};

// Certified sign of the case function at a rational point, or 0 when the
// sign stays undecidable at the precision cap.
int case_function_sign(const EquationCoeffs& coeffs, std::uint64_t x, std::uint64_t z,
                       const mpq_class& u, const PrecisionPolicy& policy = {});

// Bisection with certified signs from (beta, gamma) down to `width`.
// Throws ConstructionError when no certified sign change exists (z outside
// the effective admissible set).
AlphaBracket bracket_exponent(const EquationCoeffs& coeffs, std::uint64_t x,
                              std::uint64_t z, const mpq_class& beta,
                              const mpq_class& gamma, const mpq_class& width,
                              const PrecisionPolicy& policy = {});

// Continues bisection on an existing bracket until hi - lo <= width.
void shrink_bracket(AlphaBracket& br, const EquationCoeffs& coeffs, std::uint64_t x,
                    std::uint64_t z, const mpq_class& width,
                    const PrecisionPolicy& policy = {});

// The spec surface: certified enclosure of alpha(x, z) of width <= width.
CertifiedReal solve_exponent(const EquationCoeffs& coeffs, std::uint64_t x,
                             std::uint64_t z, const mpq_class& beta,
                             const mpq_class& gamma, const mpq_class& width,
                             const PrecisionPolicy& policy = {});

// Closed-form approximant log(kappa)/log(z/x) with kappa = a/c (a != c)
// or 2 (all equal); seeds bisection and drives the rate diagnostics.
CertifiedReal approx_exponent(const EquationCoeffs& coeffs, std::uint64_t x,
                              std::uint64_t z, mpfr_prec_t prec = 128);

// ceil(ln x) for integer x >= 2, certified.
std::uint64_t ceil_log(std::uint64_t x);

}  // namespace pscert
