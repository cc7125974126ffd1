#pragma once

#include <cstdint>
#include <vector>

namespace pscert {

// Deterministic primality: trial division for small n, a deterministic
// strong-pseudoprime battery (bases 2..37) beyond, valid for all 64-bit n.
bool is_prime(std::uint64_t n);

// Primes p with lo < p <= hi, ascending.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

}  // namespace pscert
