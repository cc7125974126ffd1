#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pscert/alpha_solver.hpp"

namespace pscert {

// A finite certificate that a x + b y = c z has a solution triple drawn from
// PS(tau) for every tau in the attached exponent window. The triple is kept
// in the working orientation (for the swapped case the original-order triple
// is (Y, X, Z)); floors are certified across the whole window.
struct SolvabilityWitness {
  EquationCoeffs coeffs;
  ExponentWindow window;
  mpz_class X, Y, Z;              // scaled triple, working orientation
  std::uint64_t n0 = 0;           // lift multiplier
  mpz_class floor_X, floor_Y, floor_Z;
  std::uint64_t verified_samples = 0;
  bool n0_within_default_cap = true;
  std::vector<std::uint64_t> skipped_n;  // undecidable multipliers, recorded
};

// delta(n) = a {(nX)^alpha} + b {(nY)^alpha} - c {(nZ)^alpha}, certified.
CertifiedReal fractional_defect(std::uint64_t n, const mpz_class& X, const mpz_class& Y,
                                const mpz_class& Z, const CertifiedReal& alpha,
                                const EquationCoeffs& coeffs,
                                const PrecisionPolicy& policy = {});

struct LiftSearch {
  std::optional<std::uint64_t> n0;
  std::vector<std::uint64_t> skipped;   // undecidable at this enclosure
  bool bracket_too_wide = false;        // some skip was a crossing straddle
};

// Smallest n in [start, cap] whose scaled triple satisfies the floor
// identity with all three fractional parts certified below 1/2, at the given
// exponent enclosure. Undecidable n are skipped and recorded.
LiftSearch find_lift_multiplier(const EquationCoeffs& coeffs, const mpz_class& X,
                                const mpz_class& Y, const mpz_class& Z,
                                const CertifiedReal& alpha, std::uint64_t cap,
                                std::uint64_t start = 1,
                                const PrecisionPolicy& policy = {});

// min over W in {X, Y, Z} of log((floor(W^alpha)+1) W^-alpha) / log W: the
// exponent width over which all three floors stay constant. Requires W >= 2.
CertifiedReal stability_width(const CertifiedReal& alpha, const mpz_class& X,
                              const mpz_class& Y, const mpz_class& Z,
                              const PrecisionPolicy& policy = {});

// Default lift-multiplier cap ceil(K (X+Y)^r) with r from the dimension
// formula exponent; mirrors the paper's search bound shape.
mpz_class default_multiplier_cap(const mpz_class& X, const mpz_class& Y,
                                 const mpq_class& beta, const mpq_class& gamma,
                                 const mpq_class& epsilon, const mpz_class& K);

struct WitnessOptions {
  mpq_class width_target = mpq_class(1, mpz_class(1) << 80);
  std::optional<mpz_class> n0_cap;   // overrides the default cap
  mpq_class epsilon = mpq_class(1, 10);
  mpz_class cap_K = 100;
  int max_retries = 6;
  std::uint64_t default_verify_samples = 16;
};

// Full pipeline: solve the exponent, build the case's base triple, search
// the lift multiplier, attach the stability window, and certify the floor
// identity over the entire window (shrinking the bracket and retrying on
// failure, up to the retry cap).
SolvabilityWitness make_witness(const EquationCoeffs& coeffs, std::uint64_t x,
                                std::uint64_t z, const mpq_class& beta,
                                const mpq_class& gamma,
                                const WitnessOptions& opts = {},
                                const PrecisionPolicy& policy = {});

struct VerifyReport {
  bool ok = false;
  std::string diagnostic;
};

// Re-checks the whole-window certificate and the floor identity at `samples`
// equispaced exponents plus both window endpoints.
VerifyReport verify_witness(const SolvabilityWitness& w, std::uint64_t samples,
                            const PrecisionPolicy& policy = {});

}  // namespace pscert
