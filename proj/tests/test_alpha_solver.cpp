#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "pscert/alpha_solver.hpp"

using namespace pscert;

namespace {

const mpq_class kBeta = parse_decimal("2.2");
const mpq_class kGamma = parse_decimal("2.3");
const mpq_class kWidth80 = mpq_class(1, mpz_class(1) << 80);

mpq_class mid(const CertifiedReal& cr) {
  return (cr.lo().to_mpq() + cr.hi().to_mpq()) / 2;
}

double dist(const mpq_class& a, const mpq_class& b) {
  return std::abs(mpq_class(a - b).get_d());
}

}  // namespace

TEST_CASE("coefficient classification and normalization") {
  EquationCoeffs co = make_coeffs(1, 1, 1);
  CHECK(co.case_tag == CoeffCase::all_equal);
  CHECK(co.wa == 1);

  co = make_coeffs(5, 5, 5);  // reduces to x + y = z
  CHECK(co.case_tag == CoeffCase::all_equal);
  CHECK(co.wa == 1);

  co = make_coeffs(3, 1, 1);
  CHECK(co.case_tag == CoeffCase::a_gt_c);
  CHECK(co.work_case == CoeffCase::a_gt_c);

  co = make_coeffs(1, 1, 2);
  CHECK(co.case_tag == CoeffCase::a_lt_c);

  co = make_coeffs(2, 3, 2);  // a = c != b: roles of (a,x) and (b,y) switch
  CHECK(co.case_tag == CoeffCase::swapped);
  CHECK(co.work_case == CoeffCase::a_gt_c);
  CHECK(co.wa == 3);
  CHECK(co.wb == 2);
  CHECK(co.wc == 2);

  CHECK_THROWS_AS(make_coeffs(0, 1, 1), DomainError);
}

TEST_CASE("ceil_log matches the natural-log convention") {
  CHECK(ceil_log(20) == 3);    // ln 20 = 2.9957
  CHECK(ceil_log(100) == 5);   // ln 100 = 4.6052
  CHECK(ceil_log(200) == 6);   // ln 200 = 5.2983
}

TEST_CASE("admissible z sets match the endpoint oracle") {
  // (1,1,1), x=100: endpoints (135.1734..., 137.0350...)
  AdmissibleZ adm = admissible_z(make_coeffs(1, 1, 1), 100, kBeta, kGamma);
  CHECK(adm.z == std::vector<std::uint64_t>{136, 137});
  CHECK(adm.undecided.empty());

  // (1,1,2), x=100: endpoints (72.9743..., 73.9805...)
  adm = admissible_z(make_coeffs(1, 1, 2), 100, kBeta, kGamma);
  CHECK(adm.z == std::vector<std::uint64_t>{73});

  // (3,1,1), x=100: endpoints (161.2298..., 164.7681...)
  adm = admissible_z(make_coeffs(3, 1, 1), 100, kBeta, kGamma);
  CHECK(adm.z == std::vector<std::uint64_t>{162, 163, 164});
}

TEST_CASE("lead-coefficient case excludes multiples of x and stays above x") {
  EquationCoeffs co = make_coeffs(4, 1, 1);
  for (std::uint64_t x : {50, 101, 250}) {
    AdmissibleZ adm = admissible_z(co, x, kBeta, kGamma);
    for (std::uint64_t z : adm.z) {
      CHECK(z > x);
      CHECK(z % x != 0);
    }
  }
}

TEST_CASE("gap structure of the admissible sets") {
  // trailing-coefficient and equal cases: consecutive integers
  for (auto [a, b, c] : {std::tuple<int, int, int>{1, 1, 2}, {1, 1, 1}}) {
    AdmissibleZ adm = admissible_z(make_coeffs(a, b, c), 300, kBeta, kGamma);
    for (std::size_t i = 1; i < adm.z.size(); ++i)
      CHECK(adm.z[i] - adm.z[i - 1] == 1);
  }
  // lead case: at most one multiple of x removed per 3 consecutive integers
  AdmissibleZ adm = admissible_z(make_coeffs(3, 1, 1), 300, kBeta, kGamma);
  REQUIRE(adm.z.size() >= 2);
  for (std::size_t i = 1; i < adm.z.size(); ++i)
    CHECK(adm.z[i] - adm.z[i - 1] <= 2);
}

TEST_CASE("solve_exponent against the independent bisection oracle") {
  // (1,1,1), x=100, z=136: root of x^u + (x + 1/(x ceil(ln x)))^u = z^u
  // 60-digit reference 2.25432265209718892785056635942274961531947627821171...
  CertifiedReal a = solve_exponent(make_coeffs(1, 1, 1), 100, 136, kBeta, kGamma, kWidth80);
  mpq_class ref = parse_decimal("2.254322652097188927850566359422");
  CHECK(dist(mid(a), ref) < 1e-24);
  CHECK(mpq_class(a.hi().to_mpq() - a.lo().to_mpq()) <= mpq_class(1, mpz_class(1) << 78));

  // (1,1,2), x=100, z=73: root of x^u + 1 = 2 z^u
  // reference 2.20236459397859220743318864334900361064966815812151...
  a = solve_exponent(make_coeffs(1, 1, 2), 100, 73, kBeta, kGamma, kWidth80);
  ref = parse_decimal("2.202364593978592207433188643349");
  CHECK(dist(mid(a), ref) < 1e-24);

  // live cross-check with a plain 512-bit bisection on the same function
  auto sign = [](const mpq_class& u) { return oracle::sign_axbcz(1, 1, 2, 100, 73, u); };
  auto [olo, ohi] = oracle::bisect(sign, kBeta, kGamma, 120);
  CHECK(a.lo().to_mpq() <= ohi);
  CHECK(a.hi().to_mpq() >= olo);
}

TEST_CASE("bracket stays strictly inside the cell with a certified sign change") {
  EquationCoeffs co = make_coeffs(2, 1, 1);
  AdmissibleZ adm = admissible_z(co, 100, kBeta, kGamma);
  REQUIRE(!adm.z.empty());
  for (std::uint64_t z : adm.z) {
    AlphaBracket br;
    try {
      br = bracket_exponent(co, 100, z, kBeta, kGamma, kWidth80);
    } catch (const ConstructionError&) {
      continue;  // boundary-hugging z: reported, not a defect
    }
    CHECK(br.lo > kBeta);
    CHECK(br.hi < kGamma);
    // lead case: f positive below the root, negative above
    CHECK(case_function_sign(co, 100, z, br.lo) == 1);
    CHECK(case_function_sign(co, 100, z, br.hi) == -1);
    CHECK(br.sign_lo == 1);
  }
}

TEST_CASE("no admissible root signals a construction error") {
  // z far outside the admissible band has no sign change in the cell
  CHECK_THROWS_AS(bracket_exponent(make_coeffs(1, 1, 1), 100, 150, kBeta, kGamma, kWidth80),
                  ConstructionError);
}

TEST_CASE("closed-form approximant values") {
  // log 2 / log(136/100) = 2.25424933705028207438947155242...
  CertifiedReal ap = approx_exponent(make_coeffs(1, 1, 1), 100, 136);
  CHECK(dist(mid(ap), parse_decimal("2.254249337050282074389471552423")) < 1e-20);

  // log(1/2) / log(73/100) = 2.20248972088005411255620881030...
  ap = approx_exponent(make_coeffs(1, 1, 2), 100, 73);
  CHECK(dist(mid(ap), parse_decimal("2.202489720880054112556208810304")) < 1e-20);
}

TEST_CASE("approximation error scales like 1/(x^2 log x)") {
  EquationCoeffs co = make_coeffs(1, 1, 1);
  double lo_stat = 1e18, hi_stat = 0;
  for (std::uint64_t x : {100, 200, 400}) {
    AdmissibleZ adm = admissible_z(co, x, kBeta, kGamma);
    REQUIRE(!adm.z.empty());
    std::uint64_t z = adm.z.front();
    CertifiedReal a = solve_exponent(co, x, z, kBeta, kGamma, kWidth80);
    CertifiedReal ap = approx_exponent(co, x, z, 192);
    double diff = dist(mid(a), mid(ap));
    double stat = diff * static_cast<double>(x) * static_cast<double>(x) *
                  std::log(static_cast<double>(x));
    lo_stat = std::min(lo_stat, stat);
    hi_stat = std::max(hi_stat, stat);
    MESSAGE("x=", x, " z=", z, " |alpha-approx|*x^2*lnx = ", stat);
  }
  CHECK(lo_stat > 0.01);
  CHECK(hi_stat < 100.0);
  CHECK(hi_stat / lo_stat < 10.0);
}

TEST_CASE("exponents at the extreme admissible z approach the cell ends") {
  EquationCoeffs co = make_coeffs(1, 1, 1);
  for (std::uint64_t x : {100, 200, 400}) {
    AdmissibleZ adm = admissible_z(co, x, kBeta, kGamma);
    REQUIRE(adm.z.size() >= 2);
    CertifiedReal a_first = solve_exponent(co, x, adm.z.front(), kBeta, kGamma, kWidth80);
    CertifiedReal a_last = solve_exponent(co, x, adm.z.back(), kBeta, kGamma, kWidth80);
    // smallest z sits near gamma, largest near beta (kappa = 2 > 1)
    double d_hi = dist(mid(a_first), kGamma) * static_cast<double>(x);
    double d_lo = dist(mid(a_last), kBeta) * static_cast<double>(x);
    MESSAGE("x=", x, " |alpha(z_min)-gamma|*x = ", d_hi, " |alpha(z_max)-beta|*x = ", d_lo);
    CHECK(d_hi < 20.0);
    CHECK(d_lo < 20.0);
  }
}
