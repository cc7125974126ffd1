#include "pscert/rational.hpp"

#include <cctype>

#include "pscert/errors.hpp"

namespace pscert {

mpq_class parse_decimal(const std::string& s) {
  if (s.empty()) throw ParseError("empty decimal string");
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string int_part, frac_part;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty()))
    throw ParseError("malformed decimal string: '" + s + "'");
  mpz_class num(int_part.empty() ? "0" : int_part, 10);
  if (!frac_part.empty()) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    num = num * scale + mpz_class(frac_part, 10);
    mpq_class q(num, scale);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  }
  mpq_class q(num);
  return neg ? mpq_class(-q) : q;
}

std::string decimal_string(const mpq_class& q, int digits) {
  mpq_class a = q < 0 ? mpq_class(-q) : q;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round(a * 10^digits), half away from zero
  mpq_class scaled = a * mpq_class(scale);
  mpz_class n = scaled.get_num(), d = scaled.get_den();
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (2 * rem >= d) quot += 1;
  mpz_class ip = quot / scale, fp = quot % scale;
  std::string out = (q < 0 && quot != 0 ? "-" : "") + ip.get_str();
  if (digits > 0) {
    std::string f = fp.get_str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpq_class frac_q(const mpq_class& q) { return q - mpq_class(floor_q(q)); }

}  // namespace pscert
