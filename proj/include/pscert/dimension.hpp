#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pscert/solution_lifter.hpp"

namespace pscert {

// Closed-form Hausdorff-dimension lower bound of the main theorem:
// (s + s^3 / ((2 + {s} - 2^(1-floor(s))) (2 - {s})))^{-1}, doubled unless
// a = b = c. Exact rational arithmetic; s > 2 required.
mpq_class dimension_lower_bound(const EquationCoeffs& coeffs, const mpq_class& s);

// q(beta, gamma, eps): decay exponent of the window lengths (the basic
// intervals shrink like x^-q). Requires shared integer cell, beta <= gamma.
mpq_class window_decay_exponent(const mpq_class& beta, const mpq_class& gamma,
                                const mpq_class& epsilon);

// r(beta, gamma, eps): growth exponent of the lift-multiplier cap
// (n0 is bounded by a constant times (X+Y)^r).
mpq_class multiplier_cap_exponent(const mpq_class& beta, const mpq_class& gamma,
                                  const mpq_class& epsilon);

struct CantorBound {
  // Quotient log(m_1...m_{k-1}) / (-log(m_k delta_k)) for k = 2..len.
  std::vector<double> quotients;
  // liminf surrogate: minimum over the trailing half of the quotients.
  double estimate = 0;
};

// Generic nested-interval lower bound data. Lists must have equal length
// >= 2, every m_k >= 2, delta strictly decreasing, and m_k delta_k < 1.
CantorBound cantor_lower_bound(const std::vector<long long>& m,
                               const std::vector<double>& delta);

// ---- Finite-depth Cantor construction from witness windows ----

struct WitnessFailure {
  std::uint64_t x = 0, z = 0;
  std::string reason;
};

struct GeneratorWindows {
  std::vector<SolvabilityWitness> witnesses;  // sorted by window position
  std::vector<WitnessFailure> failures;
  std::vector<std::uint64_t> undecided_z;
  mpq_class min_gap;  // 0 when fewer than 2 windows
};

// One certified window per admissible z for which the pipeline succeeds.
GeneratorWindows generator_windows(const EquationCoeffs& coeffs, std::uint64_t x,
                                   const mpq_class& beta, const mpq_class& gamma,
                                   const WitnessOptions& opts = {},
                                   const PrecisionPolicy& policy = {});

struct CantorLevel {
  int depth = 0;                 // 0 = seed interval
  std::uint64_t U = 0;           // prime block parameter (0 for the seed)
  // Disjoint sorted windows. The seed level holds one synthetic window
  // (beta, 2 gamma) with no witness.
  std::vector<mpq_class> lo, hi;
  std::vector<SolvabilityWitness> witnesses;  // empty for the seed
  mpq_class min_gap;   // 0 when fewer than 2 windows
  mpq_class min_len;
  std::size_t pruned_parents = 0;  // parents dropped for having < 2 children
};

// Union of generator_windows over primes p in (U, 2U], sorted, with gap and
// length statistics. Throws ConstructionError when no prime yields windows.
CantorLevel prime_block_level(const EquationCoeffs& coeffs, std::uint64_t U,
                              const mpq_class& beta, const mpq_class& gamma,
                              const WitnessOptions& opts = {},
                              const PrecisionPolicy& policy = {});

struct RefineConfig {
  double B3 = 1.0;
  double B4 = 1.0;
  std::uint64_t u_max = 1'000'000;  // clamp on the u_k recursion
  mpq_class epsilon = mpq_class(1, 10);
  WitnessOptions witness;
};

struct RefineResult {
  std::vector<CantorLevel> levels;  // levels[0] is the seed (beta, 2 gamma)
  // Lists fed to cantor_lower_bound, re-based with the seed as the ambient
  // interval: m[j] = min children per parent at round j+1, delta[j] = min gap.
  std::vector<long long> m;
  std::vector<double> delta;
  std::optional<CantorBound> bound;  // present when the lists are long enough
};

// Nested refinement: the seed (beta, 2 gamma), then `rounds` levels built
// from prime blocks H_{u_k} with u_k = max(u_prev^(k+1), ceil(3 (B4/B3)
// u_prev^q), u_prev + 1) clamped to u_max, keeping only windows completely
// inside a surviving parent. Parents with < 2 children are pruned (reported);
// an empty level is a refinement failure.
RefineResult refine_levels(const EquationCoeffs& coeffs, const mpq_class& beta,
                           const mpq_class& gamma, int rounds, std::uint64_t u1,
                           const RefineConfig& cfg = {},
                           const PrecisionPolicy& policy = {});

}  // namespace pscert
