#include "pscert/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pscert/primes.hpp"

namespace pscert {

namespace {

// (2 + {beta} - 2^(1 - floor(beta))) (2 - {gamma}), exact.
mpq_class cell_denominator(const mpq_class& beta, const mpq_class& gamma) {
  mpz_class d = floor_q(beta);
  if (d < 2) throw DomainError("cell denominator: floor(beta) must be >= 2");
  if (floor_q(gamma) != d) throw DomainError("beta and gamma must share an integer cell");
  mpz_class p2 = mpz_class(1) << static_cast<unsigned long>(mpz_class(d - 1).get_ui());
  return (2 + frac_q(beta) - mpq_class(1, p2)) * (2 - frac_q(gamma));
}

}  // namespace

mpq_class dimension_lower_bound(const EquationCoeffs& coeffs, const mpq_class& s) {
  if (s <= 2) throw DomainError("dimension_lower_bound: s must exceed 2");
  mpq_class denom = cell_denominator(s, s);
  mpq_class bound = 1 / (s + s * s * s / denom);
  bool same = coeffs.a == coeffs.b && coeffs.b == coeffs.c;
  return same ? bound : mpq_class(2 * bound);
}

mpq_class window_decay_exponent(const mpq_class& beta, const mpq_class& gamma,
                                const mpq_class& epsilon) {
  if (beta > gamma) throw DomainError("window_decay_exponent: beta <= gamma required");
  if (epsilon < 0) throw DomainError("window_decay_exponent: epsilon >= 0 required");
  mpq_class r0 = gamma * gamma / cell_denominator(beta, gamma);
  return (gamma + epsilon) * (r0 + 1 + epsilon);
}

mpq_class multiplier_cap_exponent(const mpq_class& beta, const mpq_class& gamma,
                                  const mpq_class& epsilon) {
  if (beta > gamma) throw DomainError("multiplier_cap_exponent: beta <= gamma required");
  if (epsilon < 0) throw DomainError("multiplier_cap_exponent: epsilon >= 0 required");
  return gamma * gamma / cell_denominator(beta, gamma) + epsilon;
}

CantorBound cantor_lower_bound(const std::vector<long long>& m,
                               const std::vector<double>& delta) {
  if (m.size() != delta.size()) throw DomainError("cantor_lower_bound: length mismatch");
  if (m.size() < 2) throw DomainError("cantor_lower_bound: need at least two levels");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 2) throw DomainError("cantor_lower_bound: every m_k must be >= 2");
    if (!(delta[i] > 0)) throw DomainError("cantor_lower_bound: delta must be positive");
    if (i > 0 && !(delta[i] < delta[i - 1]))
      throw DomainError("cantor_lower_bound: delta must be strictly decreasing");
  }
  CantorBound out;
  double log_prod = 0;  // log(m_1 ... m_{k-1})
  for (std::size_t k = 1; k < m.size(); ++k) {
    log_prod += std::log(static_cast<double>(m[k - 1]));
    double md = static_cast<double>(m[k]) * delta[k];
    if (md >= 1)
      throw DomainError("cantor_lower_bound: m_k delta_k must be below 1");
    out.quotients.push_back(log_prod / -std::log(md));
  }
  std::size_t tail = (out.quotients.size() + 1) / 2;
  out.estimate = *std::min_element(out.quotients.end() - tail, out.quotients.end());
  return out;
}

GeneratorWindows generator_windows(const EquationCoeffs& coeffs, std::uint64_t x,
                                   const mpq_class& beta, const mpq_class& gamma,
                                   const WitnessOptions& opts,
                                   const PrecisionPolicy& policy) {
  GeneratorWindows out;
  AdmissibleZ adm = admissible_z(coeffs, x, beta, gamma, policy);
  out.undecided_z = adm.undecided;
  for (std::uint64_t z : adm.z) {
    try {
      out.witnesses.push_back(make_witness(coeffs, x, z, beta, gamma, opts, policy));
    } catch (const Error& e) {
      out.failures.push_back({x, z, e.what()});
    }
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(),
            [](const SolvabilityWitness& a, const SolvabilityWitness& b) {
              return a.window.outer_lo() < b.window.outer_lo();
            });
  for (std::size_t i = 1; i < out.witnesses.size(); ++i) {
    mpq_class gap = out.witnesses[i].window.outer_lo() -
                    out.witnesses[i - 1].window.outer_hi();
    if (i == 1 || gap < out.min_gap) out.min_gap = gap;
  }
  return out;
}

namespace {

void finalize_level(CantorLevel& lvl) {
  // sort by position, carrying witnesses along
  std::vector<std::size_t> idx(lvl.lo.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return lvl.lo[a] < lvl.lo[b]; });
  CantorLevel s = lvl;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    s.lo[i] = lvl.lo[idx[i]];
    s.hi[i] = lvl.hi[idx[i]];
    if (!lvl.witnesses.empty()) s.witnesses[i] = lvl.witnesses[idx[i]];
  }
  lvl = std::move(s);
  for (std::size_t i = 0; i < lvl.lo.size(); ++i) {
    mpq_class len = lvl.hi[i] - lvl.lo[i];
    if (i == 0 || len < lvl.min_len) lvl.min_len = len;
    if (i > 0) {
      mpq_class gap = lvl.lo[i] - lvl.hi[i - 1];
      if (gap <= 0)
        throw ConstructionError("cantor level: windows overlap");
      if (i == 1 || gap < lvl.min_gap) lvl.min_gap = gap;
    }
  }
}

}  // namespace

CantorLevel prime_block_level(const EquationCoeffs& coeffs, std::uint64_t U,
                              const mpq_class& beta, const mpq_class& gamma,
                              const WitnessOptions& opts, const PrecisionPolicy& policy) {
  if (U < 3) throw DomainError("prime_block_level: U must be >= 3");
  CantorLevel lvl;
  lvl.U = U;
  for (std::uint64_t p : primes_in(U, 2 * U)) {
    GeneratorWindows gw = generator_windows(coeffs, p, beta, gamma, opts, policy);
    for (auto& w : gw.witnesses) {
      lvl.lo.push_back(w.window.outer_lo());
      lvl.hi.push_back(w.window.outer_hi());
      lvl.witnesses.push_back(std::move(w));
    }
  }
  if (lvl.lo.empty())
    throw ConstructionError("prime_block_level: no prime in (" + std::to_string(U) + ", " +
                            std::to_string(2 * U) + "] yields windows");
  finalize_level(lvl);
  return lvl;
}

namespace {

// Candidate (p, z) search for a deep level: only pairs whose closed-form
// exponent approximant lands inside (or within slack of) a parent window are
// run through the certified pipeline. Missing a candidate undercounts
// children, which is sound for a lower-bound construction.
CantorLevel deep_level(const EquationCoeffs& coeffs, std::uint64_t U,
                       const CantorLevel& parents, const mpq_class& beta,
                       const mpq_class& gamma, const WitnessOptions& opts,
                       const PrecisionPolicy& policy) {
  CantorLevel lvl;
  lvl.U = U;
  double ln_kappa;
  if (coeffs.work_case == CoeffCase::all_equal)
    ln_kappa = std::log(2.0);
  else
    ln_kappa = std::log(coeffs.wa.get_d() / coeffs.wc.get_d());

  std::vector<std::pair<double, double>> pr;  // parent hulls as doubles
  for (std::size_t i = 0; i < parents.lo.size(); ++i)
    pr.emplace_back(parents.lo[i].get_d(), parents.hi[i].get_d());

  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::uint64_t p : primes_in(U, 2 * U)) {
    double pd = static_cast<double>(p);
    double slack = 50.0 / (pd * pd * std::log(pd)) + 1e-12;
    for (auto [plo, phi] : pr) {
      double ta = plo - slack, tb = phi + slack;
      double za = pd * std::exp(ln_kappa / ta);
      double zb = pd * std::exp(ln_kappa / tb);
      if (za > zb) std::swap(za, zb);
      std::int64_t z_from = static_cast<std::int64_t>(std::floor(za)) - 1;
      std::int64_t z_to = static_cast<std::int64_t>(std::ceil(zb)) + 1;
      for (std::int64_t zi = z_from; zi <= z_to; ++zi) {
        if (zi < 2) continue;
        std::uint64_t z = static_cast<std::uint64_t>(zi);
        double approx = ln_kappa / std::log(static_cast<double>(z) / pd);
        if (!(approx >= ta && approx <= tb)) continue;
        if (!seen.insert({p, z}).second) continue;
        if (!z_is_admissible(coeffs, p, z, beta, gamma, policy)) continue;
        try {
          SolvabilityWitness w = make_witness(coeffs, p, z, beta, gamma, opts, policy);
          bool contained = false;
          for (std::size_t i = 0; i < parents.lo.size(); ++i)
            if (parents.lo[i] <= w.window.outer_lo() &&
                w.window.outer_hi() <= parents.hi[i]) {
              contained = true;
              break;
            }
          if (!contained) continue;
          lvl.lo.push_back(w.window.outer_lo());
          lvl.hi.push_back(w.window.outer_hi());
          lvl.witnesses.push_back(std::move(w));
        } catch (const Error&) {
          // failed candidates only shrink the level
        }
      }
    }
  }
  if (lvl.lo.empty())
    throw ConstructionError("deep_level: no window of H_" + std::to_string(U) +
                            " lands inside a parent");
  finalize_level(lvl);
  return lvl;
}

}  // namespace

RefineResult refine_levels(const EquationCoeffs& coeffs, const mpq_class& beta,
                           const mpq_class& gamma, int rounds, std::uint64_t u1,
                           const RefineConfig& cfg, const PrecisionPolicy& policy) {
  if (rounds < 0 || rounds > 3)
    throw DomainError("refine_levels: rounds must be in [0, 3]");
  if (u1 < 2) throw DomainError("refine_levels: u1 must be >= 2");

  RefineResult res;
  CantorLevel seed;
  seed.depth = 0;
  seed.lo.push_back(beta);
  seed.hi.push_back(2 * gamma);
  seed.min_len = 2 * gamma - beta;
  res.levels.push_back(seed);

  double q = window_decay_exponent(beta, gamma, cfg.epsilon).get_d();
  std::uint64_t u_prev = u1;
  for (int k = 1; k <= rounds; ++k) {
    double a = std::pow(static_cast<double>(u_prev), static_cast<double>(k + 1));
    double b = std::ceil(3.0 * (cfg.B4 / cfg.B3) *
                         std::pow(static_cast<double>(u_prev), q));
    double cap = static_cast<double>(cfg.u_max);
    double uk_d = std::max({a, b, static_cast<double>(u_prev + 1)});
    std::uint64_t uk = static_cast<std::uint64_t>(std::min(uk_d, cap));
    if (uk <= u_prev)
      throw ConstructionError("refine_levels: u_k recursion cannot grow past " +
                              std::to_string(u_prev) + " under the u_max clamp");
    CantorLevel lvl = k == 1
                          ? prime_block_level(coeffs, uk, beta, gamma, cfg.witness, policy)
                          : deep_level(coeffs, uk, res.levels.back(), beta, gamma,
                                       cfg.witness, policy);
    lvl.depth = k;
    // keep only windows completely inside some parent window
    const CantorLevel& par = res.levels.back();
    CantorLevel kept;
    kept.depth = lvl.depth;
    kept.U = lvl.U;
    for (std::size_t i = 0; i < lvl.lo.size(); ++i) {
      bool inside = false;
      for (std::size_t j = 0; j < par.lo.size(); ++j)
        if (par.lo[j] <= lvl.lo[i] && lvl.hi[i] <= par.hi[j]) {
          inside = true;
          break;
        }
      if (!inside) continue;
      kept.lo.push_back(lvl.lo[i]);
      kept.hi.push_back(lvl.hi[i]);
      kept.witnesses.push_back(std::move(lvl.witnesses[i]));
    }
    if (kept.lo.empty())
      throw ConstructionError("refine_levels: level " + std::to_string(k) + " is empty");
    finalize_level(kept);
    res.levels.push_back(std::move(kept));
    u_prev = uk;
  }

  // Prune interior parents with < 2 fully contained children (bottom-up, so
  // removals cascade upward), then drop orphaned subtrees top-down. The seed
  // is never pruned; too few children under it is a refinement failure.
  if (rounds >= 2) {
    std::vector<std::vector<char>> keep(res.levels.size());
    for (std::size_t L = 0; L < res.levels.size(); ++L)
      keep[L].assign(res.levels[L].lo.size(), 1);
    for (std::size_t L = res.levels.size() - 2; L >= 1; --L) {
      auto& par = res.levels[L];
      auto& chl = res.levels[L + 1];
      for (std::size_t j = 0; j < par.lo.size(); ++j) {
        int c = 0;
        for (std::size_t i = 0; i < chl.lo.size(); ++i)
          if (keep[L + 1][i] && par.lo[j] <= chl.lo[i] && chl.hi[i] <= par.hi[j]) ++c;
        if (c < 2) {
          keep[L][j] = 0;
          res.levels[L].pruned_parents++;
        }
      }
    }
    for (std::size_t L = 1; L < res.levels.size(); ++L) {
      auto& par = res.levels[L - 1];  // already rebuilt
      auto& lvl = res.levels[L];      // old arrays, matching keep[L]
      CantorLevel nw;
      nw.depth = lvl.depth;
      nw.U = lvl.U;
      nw.pruned_parents = lvl.pruned_parents;
      for (std::size_t i = 0; i < lvl.lo.size(); ++i) {
        if (!keep[L][i]) continue;
        bool parent_alive = false;
        for (std::size_t j = 0; j < par.lo.size(); ++j)
          if (par.lo[j] <= lvl.lo[i] && lvl.hi[i] <= par.hi[j]) {
            parent_alive = true;
            break;
          }
        if (!parent_alive) continue;
        nw.lo.push_back(lvl.lo[i]);
        nw.hi.push_back(lvl.hi[i]);
        nw.witnesses.push_back(std::move(lvl.witnesses[i]));
      }
      if (nw.lo.empty())
        throw ConstructionError("refine_levels: level " + std::to_string(L) +
                                " empty after pruning parents with < 2 children");
      finalize_level(nw);
      res.levels[L] = std::move(nw);
    }
    if (res.levels[1].lo.size() < 2)
      throw ConstructionError("refine_levels: seed retains fewer than 2 children");
  }

  // Extract (m_k, delta_k), re-based with the seed as the ambient interval.
  for (std::size_t L = 1; L < res.levels.size(); ++L) {
    const auto& par = res.levels[L - 1];
    const auto& lvl = res.levels[L];
    long long mk = -1;
    for (std::size_t j = 0; j < par.lo.size(); ++j) {
      long long c = 0;
      for (std::size_t i = 0; i < lvl.lo.size(); ++i)
        if (par.lo[j] <= lvl.lo[i] && lvl.hi[i] <= par.hi[j]) ++c;
      if (mk < 0 || c < mk) mk = c;
    }
    res.m.push_back(mk);
    mpq_class d0 = lvl.lo.size() >= 2 ? lvl.min_gap : mpq_class(lvl.hi[0] - lvl.lo[0]);
    res.delta.push_back(d0.get_d());
  }
  if (res.m.size() >= 2) res.bound = cantor_lower_bound(res.m, res.delta);
  return res;
}

}  // namespace pscert
