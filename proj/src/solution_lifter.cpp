#include "pscert/solution_lifter.hpp"

#include <algorithm>
#include <cmath>

namespace pscert {

namespace {

struct TripleFloors {
  CertifiedFloor fx, fy, fz;
  bool all_decided() const { return fx.decided && fy.decided && fz.decided; }
  bool straddle() const {
    auto s = CertifiedFloor::Fail::exponent_straddles_crossing;
    return fx.reason == s || fy.reason == s || fz.reason == s;
  }
};

TripleFloors floors_at(const mpz_class& X, const mpz_class& Y, const mpz_class& Z,
                       const CertifiedReal& expo, const PrecisionPolicy& policy) {
  TripleFloors t;
  t.fx = floor_pow(X, expo, policy);
  t.fy = floor_pow(Y, expo, policy);
  t.fz = floor_pow(Z, expo, policy);
  return t;
}

bool identity_holds(const EquationCoeffs& co, const TripleFloors& t) {
  return co.wa * t.fx.value + co.wb * t.fy.value == co.wc * t.fz.value;
}

bool frac_below_half(const CertifiedFloor& f) {
  return mpfr_cmp_d(f.frac_hi.raw(), 0.5) < 0;
}

// Case base triple: the exact-power identity wa X^a + wb Y^a = wc Z^a holds
// at the bracketed exponent by construction.
void base_triple(const EquationCoeffs& co, std::uint64_t x, std::uint64_t z,
                 mpz_class& X, mpz_class& Y, mpz_class& Z) {
  mpz_class xz(static_cast<unsigned long>(x)), zz(static_cast<unsigned long>(z));
  if (co.work_case == CoeffCase::all_equal) {
    mpz_class L(static_cast<unsigned long>(ceil_log(x)));
    X = xz * xz * L;      // x^2 ceil(log x)
    Y = X + 1;
    Z = zz * xz * L;      // z x ceil(log x)
  } else {
    X = xz;
    Y = 1;
    Z = zz;
  }
}

CertifiedReal bracket_view(const AlphaBracket& br, mpfr_prec_t prec) {
  return CertifiedReal::hull_of_rationals(br.lo, br.hi, prec);
}

mpfr_prec_t bracket_prec(const AlphaBracket& br) {
  double w = mpq_class(br.hi - br.lo).get_d();
  double bits = w > 0 ? -std::log2(w) : 256;
  mpfr_prec_t p = 64;
  while (p < static_cast<mpfr_prec_t>(bits) + 64) p *= 2;
  return p;
}

}  // namespace

CertifiedReal fractional_defect(std::uint64_t n, const mpz_class& X, const mpz_class& Y,
                                const mpz_class& Z, const CertifiedReal& alpha,
                                const EquationCoeffs& coeffs, const PrecisionPolicy& policy) {
  mpz_class nz(static_cast<unsigned long>(n));
  TripleFloors t = floors_at(nz * X, nz * Y, nz * Z, alpha, policy);
  if (!t.all_decided())
    throw UndecidableError("fractional_defect: fractional part undecidable at n=" +
                           std::to_string(n));
  mpfr_prec_t p = 128;
  auto frac = [&](const CertifiedFloor& f) {
    return CertifiedReal(f.frac_lo, f.frac_hi,
                         std::max(f.frac_lo.precision(), f.frac_hi.precision()));
  };
  CertifiedReal acc = cr_mul_int(frac(t.fx), coeffs.wa, p);
  acc = cr_add(acc, cr_mul_int(frac(t.fy), coeffs.wb, p), p);
  return cr_sub(acc, cr_mul_int(frac(t.fz), coeffs.wc, p), p);
}

LiftSearch find_lift_multiplier(const EquationCoeffs& coeffs, const mpz_class& X,
                                const mpz_class& Y, const mpz_class& Z,
                                const CertifiedReal& alpha, std::uint64_t cap,
                                std::uint64_t start, const PrecisionPolicy& policy) {
  LiftSearch out;
  for (std::uint64_t n = std::max<std::uint64_t>(start, 1); n <= cap; ++n) {
    mpz_class nz(static_cast<unsigned long>(n));
    TripleFloors t = floors_at(nz * X, nz * Y, nz * Z, alpha, policy);
    if (!t.all_decided()) {
      out.skipped.push_back(n);
      if (t.straddle()) out.bracket_too_wide = true;
      continue;
    }
    if (!identity_holds(coeffs, t)) continue;
    if (!(frac_below_half(t.fx) && frac_below_half(t.fy) && frac_below_half(t.fz))) {
      // The fractional-part condition may be genuinely violated or merely
      // uncertifiable at this enclosure; either way n is not certified.
      bool maybe = mpfr_cmp_d(t.fx.frac_lo.raw(), 0.5) < 0 &&
                   mpfr_cmp_d(t.fy.frac_lo.raw(), 0.5) < 0 &&
                   mpfr_cmp_d(t.fz.frac_lo.raw(), 0.5) < 0;
      if (maybe) {
        out.skipped.push_back(n);
        out.bracket_too_wide = true;
      }
      continue;
    }
    out.n0 = n;
    return out;
  }
  return out;
}

CertifiedReal stability_width(const CertifiedReal& alpha, const mpz_class& X,
                              const mpz_class& Y, const mpz_class& Z,
                              const PrecisionPolicy& policy) {
  const mpz_class* ws[3] = {&X, &Y, &Z};
  for (const mpz_class* w : ws)
    if (*w < 2) throw DomainError("stability_width: W must be >= 2 (log W = 0 at W = 1)");

  mpfr_prec_t p = 128;
  for (;;) {
    std::optional<CertifiedReal> result;
    bool positive = true;
    for (const mpz_class* w : ws) {
      CertifiedFloor f = floor_pow(*w, alpha, policy);
      if (!f.decided)
        throw UndecidableError("stability_width: floor undecidable");
      // log((F+1) W^-alpha) / log W = (log(F+1) - alpha log W) / log W
      CertifiedReal logW = cr_log(CertifiedReal::exact_int(*w), p);
      CertifiedReal logF1 = cr_log(CertifiedReal::exact_int(f.value + 1), p);
      CertifiedReal num = cr_sub(logF1, cr_mul(alpha, logW, p), p);
      CertifiedReal quot = cr_div(num, logW, p);
      result = result ? cr_min(*result, quot) : quot;
      if (quot.lo().sgn() <= 0) positive = false;
    }
    if (positive && result->lo().sgn() > 0) return *result;
    if (p >= policy.cap)
      throw UndecidableError("stability_width: positivity undecidable at precision cap");
    p = std::min<mpfr_prec_t>(p * 2, policy.cap);
  }
}

mpz_class default_multiplier_cap(const mpz_class& X, const mpz_class& Y,
                                 const mpq_class& beta, const mpq_class& gamma,
                                 const mpq_class& epsilon, const mpz_class& K) {
  // r = gamma^2 / ((2 + {beta} - 2^(1-floor(beta))) (2 - {gamma})) + epsilon
  mpz_class d = floor_q(beta);
  mpq_class fb = frac_q(beta), fg = frac_q(gamma);
  mpz_class p2 = mpz_class(1) << static_cast<unsigned long>(mpz_class(d - 1).get_ui());
  mpq_class r = gamma * gamma / ((2 + fb - mpq_class(1, p2)) * (2 - fg)) + epsilon;
  CertifiedReal pw = cr_pow(CertifiedReal::exact_int(X + Y),
                            CertifiedReal::of_rational(r, 128), 128);
  mpz_class cap = pw.hi().ceil_z() * K;
  return cap;
}

SolvabilityWitness make_witness(const EquationCoeffs& coeffs, std::uint64_t x,
                                std::uint64_t z, const mpq_class& beta,
                                const mpq_class& gamma, const WitnessOptions& opts,
                                const PrecisionPolicy& policy) {
  SolvabilityWitness w;
  w.coeffs = coeffs;

  mpz_class bX, bY, bZ;
  base_triple(coeffs, x, z, bX, bY, bZ);

  mpz_class cap_z = opts.n0_cap ? *opts.n0_cap
                                : default_multiplier_cap(bX, bY, beta, gamma,
                                                         opts.epsilon, opts.cap_K);
  mpz_class default_cap = default_multiplier_cap(bX, bY, beta, gamma, opts.epsilon,
                                                 opts.cap_K);
  std::uint64_t cap = cap_z.fits_ulong_p() ? cap_z.get_ui()
                                           : std::numeric_limits<std::uint64_t>::max();

  AlphaBracket br = bracket_exponent(coeffs, x, z, beta, gamma, opts.width_target, policy);

  std::uint64_t n0 = 0;
  std::uint64_t scan_start = 1;
  int widen_rounds = 0;
  mpz_class sX, sY, sZ;
  for (;;) {
    CertifiedReal alpha = bracket_view(br, bracket_prec(br));
    LiftSearch ls = find_lift_multiplier(coeffs, bX, bY, bZ, alpha, cap, scan_start, policy);
    for (std::uint64_t s : ls.skipped) w.skipped_n.push_back(s);
    if (!ls.n0) {
      if (ls.bracket_too_wide && widen_rounds < 10) {
        shrink_bracket(br, coeffs, x, z, (br.hi - br.lo) / (mpz_class(1) << 24), policy);
        ++widen_rounds;
        scan_start = 1;
        w.skipped_n.clear();
        continue;
      }
      throw NotFoundError("make_witness: no certified lift multiplier up to cap " +
                          std::to_string(cap) + " for x=" + std::to_string(x) +
                          " z=" + std::to_string(z));
    }
    n0 = *ls.n0;
    mpz_class nz(static_cast<unsigned long>(n0));
    sX = nz * bX;
    sY = nz * bY;
    sZ = nz * bZ;
    if (sX < 2 || sY < 2 || sZ < 2) {
      // A component of 1 cannot carry a stability window (log 1 = 0).
      w.skipped_n.push_back(n0);
      scan_start = n0 + 1;
      continue;
    }
    break;
  }

  // Assemble and certify the window; shrink the bracket and retry on failure.
  for (int attempt = 0;; ++attempt) {
    CertifiedReal alpha = bracket_view(br, bracket_prec(br));
    CertifiedReal eta = stability_width(alpha, sX, sY, sZ, policy);
    mpq_class eta_lo = eta.lo().to_mpq();
    mpq_class width = br.hi - br.lo;
    if (width * 4 >= eta_lo) {
      shrink_bracket(br, coeffs, x, z, eta_lo / 8, policy);
      width = br.hi - br.lo;
      alpha = bracket_view(br, bracket_prec(br));
      eta = stability_width(alpha, sX, sY, sZ, policy);
      eta_lo = eta.lo().to_mpq();
    }
    mpq_class ell = eta_lo - 2 * width;
    if (ell > 0) {
      mpq_class win_lo = br.lo, win_hi = br.hi + ell;
      mpfr_prec_t p = bracket_prec(br);
      CertifiedReal span = CertifiedReal::hull_of_rationals(win_lo, win_hi, p);
      TripleFloors t = floors_at(sX, sY, sZ, span, policy);
      if (t.all_decided() && identity_holds(coeffs, t)) {
        w.window.x = x;
        w.window.z = z;
        w.window.theta_lo = br.lo;
        w.window.theta_hi = br.hi;
        w.window.ell = ell;
        w.window.beta = beta;
        w.window.gamma = gamma;
        w.X = sX;
        w.Y = sY;
        w.Z = sZ;
        w.n0 = n0;
        w.floor_X = t.fx.value;
        w.floor_Y = t.fy.value;
        w.floor_Z = t.fz.value;
        w.n0_within_default_cap = mpz_class(static_cast<unsigned long>(n0)) <= default_cap;
        break;
      }
    }
    if (attempt >= opts.max_retries)
      throw ConstructionError("make_witness: whole-window certification failed after " +
                              std::to_string(opts.max_retries) + " retries (x=" +
                              std::to_string(x) + " z=" + std::to_string(z) + ")");
    shrink_bracket(br, coeffs, x, z, (br.hi - br.lo) / (mpz_class(1) << 10), policy);
  }

  // Window stays inside the exponent cell: beta < theta and
  // theta + ell < gamma + x^-2.
  mpq_class x2(mpz_class(static_cast<unsigned long>(x)) * mpz_class(static_cast<unsigned long>(x)));
  if (!(beta < w.window.theta_lo && w.window.outer_hi() < gamma + 1 / x2))
    throw ConstructionError("make_witness: window escaped the exponent cell");
  if (!(w.X != w.Y && w.Y != w.Z && w.X != w.Z))
    throw ConstructionError("make_witness: triple not pairwise distinct");

  VerifyReport rep = verify_witness(w, opts.default_verify_samples, policy);
  if (!rep.ok)
    throw ConstructionError("make_witness: post-construction verification failed: " +
                            rep.diagnostic);
  w.verified_samples = opts.default_verify_samples + 2;
  return w;
}

VerifyReport verify_witness(const SolvabilityWitness& w, std::uint64_t samples,
                            const PrecisionPolicy& policy) {
  VerifyReport rep;
  mpq_class lo = w.window.outer_lo(), hi = w.window.outer_hi();
  if (!(lo < hi)) {
    rep.diagnostic = "degenerate window";
    return rep;
  }
  mpfr_prec_t p = 64;
  {
    double wd = mpq_class(hi - lo).get_d();
    double bits = wd > 0 ? -std::log2(wd) : 256;
    while (p < static_cast<mpfr_prec_t>(bits) + 64) p *= 2;
  }

  // Whole-window certificate first.
  CertifiedReal span = CertifiedReal::hull_of_rationals(lo, hi, p);
  TripleFloors t = floors_at(w.X, w.Y, w.Z, span, policy);
  if (!t.all_decided()) {
    rep.diagnostic = "whole-window floor undecidable";
    return rep;
  }
  if (!identity_holds(w.coeffs, t)) {
    rep.diagnostic = "whole-window floor identity fails";
    return rep;
  }

  // Endpoints plus equispaced interior samples.
  for (std::uint64_t i = 0; i <= samples + 1; ++i) {
    mpq_class tau = lo + (hi - lo) * mpq_class(static_cast<unsigned long>(i),
                                               static_cast<unsigned long>(samples + 1));
    tau.canonicalize();
    CertifiedReal tc = CertifiedReal::of_rational(tau, p);
    TripleFloors ts = floors_at(w.X, w.Y, w.Z, tc, policy);
    if (!ts.all_decided()) {
      rep.diagnostic = "floor undecidable at sample " + std::to_string(i);
      return rep;
    }
    if (!identity_holds(w.coeffs, ts)) {
      rep.diagnostic = "floor identity fails at sample " + std::to_string(i);
      return rep;
    }
    if (ts.fx.value != t.fx.value || ts.fy.value != t.fy.value ||
        ts.fz.value != t.fz.value) {
      rep.diagnostic = "floor not constant across window at sample " + std::to_string(i);
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace pscert
