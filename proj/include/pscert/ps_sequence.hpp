#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pscert/certified.hpp"

namespace pscert {

// One term of PS(alpha) = { floor(n^alpha) : n in N }, with a certified
// fractional-part enclosure.
struct PsTerm {
  std::uint64_t index = 0;  // n
  mpz_class value;          // floor(n^alpha), certified
  CertifiedReal frac;       // enclosure of {n^alpha}
};

// Certified term. Throws UndecidableError when the floor stays open at the
// precision cap (the caller may widen the cap and retry).
PsTerm ps_term(std::uint64_t n, const CertifiedReal& alpha,
               const PrecisionPolicy& policy = {});

// All terms with lo <= value <= hi, ascending; the index range is derived
// from certified enclosures of lo^(1/alpha) and hi^(1/alpha).
std::vector<PsTerm> ps_members_in_range(const CertifiedReal& alpha, const mpz_class& lo,
                                        const mpz_class& hi,
                                        const PrecisionPolicy& policy = {});

struct Membership {
  bool member = false;
  std::uint64_t index = 0;  // certificate when member
};

// Is m a term of PS(alpha)? The only candidate indices are the integers
// adjacent to the enclosure of m^(1/alpha).
Membership is_member(const mpz_class& m, const CertifiedReal& alpha,
                     const PrecisionPolicy& policy = {});

}  // namespace pscert
