#pragma once

#include <gmpxx.h>

#include <string>

namespace pscert {

// Parses a plain decimal string ("2.35", "-0.125", "17") into the exact
// rational it denotes. Throws ParseError on malformed input.
mpq_class parse_decimal(const std::string& s);

// Decimal rendering of an exact rational, correctly rounded to `digits`
// places after the point (round half away from zero).
std::string decimal_string(const mpq_class& q, int digits);

// floor(q) as an integer.
mpz_class floor_q(const mpq_class& q);

// Fractional part q - floor(q), in [0, 1).
mpq_class frac_q(const mpq_class& q);

}  // namespace pscert
