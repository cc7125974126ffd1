#include "pscert/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "pscert/errors.hpp"

namespace pscert {

namespace {

void check_nonempty(const PointSet& ps) {
  if (ps.size() == 0) throw DomainError("discrepancy: empty point set");
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Keeps at most `limit` values, always including the first and last.
std::vector<double> subsample(const std::vector<double>& v, std::size_t limit) {
  if (v.size() <= limit) return v;
  std::vector<double> out;
  double step = static_cast<double>(v.size() - 1) / static_cast<double>(limit - 1);
  for (std::size_t i = 0; i < limit; ++i) {
    std::size_t idx = static_cast<std::size_t>(std::lround(i * step));
    out.push_back(v[std::min(idx, v.size() - 1)]);
  }
  out = sorted_unique(out);
  return out;
}

double max_gap_with_anchors(const std::vector<double>& g) {
  double gap = 0, prev = 0.0;
  for (double v : g) {
    gap = std::max(gap, v - prev);
    prev = v;
  }
  return std::max(gap, 1.0 - prev);
}

}  // namespace

PointSet parse_points(std::istream& in) {
  PointSet ps;
  std::string line;
  std::size_t lineno = 0;
  bool have_dim = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<double> fields;
    double v;
    while (ls >> v) fields.push_back(v);
    if (ls.fail() && !ls.eof()) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed field");
    }
    if (fields.empty()) continue;  // blank line
    if (!have_dim) {
      if (fields.size() != 1 && fields.size() != 2)
        throw ParseError("line " + std::to_string(lineno) + ": expected 1 or 2 fields");
      ps.dim = static_cast<int>(fields.size());
      have_dim = true;
    }
    if (fields.size() != static_cast<std::size_t>(ps.dim))
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(ps.dim) + " fields, got " +
                       std::to_string(fields.size()));
    for (double f : fields)
      if (!(f >= 0.0 && f < 1.0))
        throw ParseError("line " + std::to_string(lineno) + ": coordinate outside [0,1)");
    ps.x.push_back(fields[0]);
    if (ps.dim == 2) ps.y.push_back(fields[1]);
  }
  if (!have_dim) throw ParseError("no points in input");
  return ps;
}

double discrepancy_1d(const PointSet& ps) {
  if (ps.dim != 1) throw DomainError("discrepancy_1d: dimension must be 1");
  check_nonempty(ps);
  const double n = static_cast<double>(ps.size());
  std::vector<double> s = ps.x;
  std::sort(s.begin(), s.end());
  std::vector<double> c = sorted_unique(s);
  const std::size_t m = c.size();
  std::vector<long> le(m), lt(m);
  for (std::size_t t = 0; t < m; ++t) {
    lt[t] = std::lower_bound(s.begin(), s.end(), c[t]) - s.begin();
    le[t] = std::upper_bound(s.begin(), s.end(), c[t]) - s.begin();
  }

  // Overcount: closed spans [c_s, c_t] over point coordinates; the sup is
  // approached by half-open boxes shrinking onto them.
  double d_plus = 0, best_left = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < m; ++t) {
    best_left = std::max(best_left, c[t] - lt[t] / n);
    d_plus = std::max(d_plus, le[t] / n - c[t] + best_left);
  }

  // Undercount: open spans with boundary values from {0} u coords and
  // coords u {1}; counts exclude the boundary points.
  double d_minus = 0;
  double best_c = (m > 0 && c[0] == 0.0 ? le[0] : 0) / n - 0.0;  // c = 0
  for (std::size_t t = 0; t < m; ++t) {
    if (c[t] > 0.0) d_minus = std::max(d_minus, c[t] - lt[t] / n + best_c);
    best_c = std::max(best_c, le[t] / n - c[t]);
  }
  d_minus = std::max(d_minus, 1.0 - n / n + best_c);  // right boundary at 1

  return std::min(1.0, std::max(d_plus, d_minus));
}

namespace {

// Max of count/N - vol over closed candidate boxes [gx_i, gx_j] x [ys_k, ys_l].
// Counting is done from scratch per x-pair; the y maximization is a linear
// prefix scan. With the full coordinate grid this realizes the exact
// overcount supremum; on a subsampled grid it is a certified lower bound.
double overcount(const PointSet& ps, const std::vector<double>& gx,
                 const std::vector<double>& gy) {
  const double n = static_cast<double>(ps.size());
  const std::size_t my = gy.size();
  std::vector<long> on(my), off(my);
  double best = 0;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    for (std::size_t j = i; j < gx.size(); ++j) {
      std::fill(on.begin(), on.end(), 0);
      std::fill(off.begin(), off.end(), 0);
      for (std::size_t t = 0; t < ps.size(); ++t) {
        if (ps.x[t] < gx[i] || ps.x[t] > gx[j]) continue;
        // A point on a candidate line (py == gy[b]) lies in [gy_k, gy_l] iff
        // k <= b <= l; an off-grid point between gy[b-1] and gy[b] needs
        // k <= b-1 and l >= b. Both reduce to the difference of two prefix
        // accumulators when off-grid mass is added before the k-role and the
        // on-grid mass between the k- and l-roles of each scan position.
        std::size_t b = std::lower_bound(gy.begin(), gy.end(), ps.y[t]) - gy.begin();
        if (b < my && gy[b] == ps.y[t])
          on[b]++;
        else if (b < my)
          off[b]++;
        // py above the last candidate can never fall in a candidate span
      }
      double g = gx[j] - gx[i];
      double run = 0, left = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < my; ++t) {
        run += off[t];
        left = std::max(left, g * gy[t] - run / n);
        run += on[t];
        best = std::max(best, run / n - g * gy[t] + left);
      }
    }
  }
  return best;
}

// Max of vol - count/N over open candidate boxes (u, v) x (c, d) with
// u in {0} u gx, v in gx u {1}, c in {0} u gy, d in gy u {1}; counts are
// strict on all four sides.
double undercount(const PointSet& ps, const std::vector<double>& gx,
                  const std::vector<double>& gy) {
  const double n = static_cast<double>(ps.size());
  std::vector<double> xl = gx;
  if (xl.empty() || xl.front() != 0.0) xl.insert(xl.begin(), 0.0);
  std::vector<double> xr = gx;
  if (xr.empty() || xr.back() != 1.0) xr.push_back(1.0);
  const std::size_t my = gy.size();
  std::vector<long> at(my), above(my + 1);
  double best = 0;

  for (double u : xl) {
    for (double v : xr) {
      if (v <= u) continue;
      // Bucket included points by y: at[r] counts py == gy[r]; between[b]
      // counts points strictly between gy[b-1] and gy[b] (between[my] above
      // the last candidate). Prefix sums then give strict counts for any
      // candidate boundary.
      std::fill(at.begin(), at.end(), 0);
      std::fill(above.begin(), above.end(), 0);
      for (std::size_t t = 0; t < ps.size(); ++t) {
        if (!(ps.x[t] > u && ps.x[t] < v)) continue;
        std::size_t b = std::lower_bound(gy.begin(), gy.end(), ps.y[t]) - gy.begin();
        if (b < my && gy[b] == ps.y[t])
          at[b]++;
        else
          above[b]++;
      }
      double w = v - u;
      double lt = above[0];  // count with py < gy[0]
      // c = 0 lower boundary: excludes exactly the py == 0 points
      double best_c = ((my > 0 && gy[0] == 0.0) ? static_cast<double>(at[0]) : 0.0) / n;
      for (std::size_t r = 0; r < my; ++r) {
        if (gy[r] > 0.0) best = std::max(best, w * gy[r] - lt / n + best_c);
        double le = lt + at[r];
        best_c = std::max(best_c, le / n - w * gy[r]);
        lt = le + above[r + 1];
      }
      best = std::max(best, w * 1.0 - lt / n + best_c);  // d = 1: all included
    }
  }
  return best;
}

}  // namespace

Discrepancy2dResult discrepancy_2d(const PointSet& ps, std::size_t exact_limit) {
  if (ps.dim != 2) throw DomainError("discrepancy_2d: dimension must be 2");
  check_nonempty(ps);
  Discrepancy2dResult res;
  std::vector<double> gx = sorted_unique(ps.x);
  std::vector<double> gy = sorted_unique(ps.y);
  if (ps.size() <= exact_limit) {
    res.value = std::min(1.0, std::max(overcount(ps, gx, gy), undercount(ps, gx, gy)));
    res.exact = true;
    return res;
  }
  // Certified lower bound on a subsampled candidate grid; snapping any box
  // outward/inward to the grid changes the volume by at most one gap per
  // side and only ever moves the defect toward a candidate value.
  std::size_t s = static_cast<std::size_t>(
      std::clamp(std::sqrt(2e8 / static_cast<double>(ps.size())), 16.0, 256.0));
  std::vector<double> sgx = subsample(gx, s);
  std::vector<double> sgy = subsample(gy, s);
  res.value = std::min(1.0, std::max(overcount(ps, sgx, sgy), undercount(ps, sgx, sgy)));
  res.exact = false;
  res.slack = 2.0 * (max_gap_with_anchors(sgx) + max_gap_with_anchors(sgy));
  return res;
}

double exp_sum(const PointSet& ps, const std::vector<long>& k) {
  check_nonempty(ps);
  if (static_cast<int>(k.size()) != ps.dim)
    throw DomainError("exp_sum: k arity must match dimension");
  bool all_zero = true;
  for (long v : k)
    if (v != 0) all_zero = false;
  if (all_zero) throw DomainError("exp_sum: k must be nonzero");
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    long double phase = static_cast<long double>(k[0]) * ps.x[i];
    if (ps.dim == 2) phase += static_cast<long double>(k[1]) * ps.y[i];
    phase *= 2.0L * std::numbers::pi_v<long double>;
    re += cosl(phase);
    im += sinl(phase);
  }
  long double nn = static_cast<long double>(ps.size());
  return static_cast<double>(sqrtl(re * re + im * im) / nn);
}

double etk_rhs(const PointSet& ps, int K, double c_d) {
  check_nonempty(ps);
  if (K < 1) throw DomainError("etk_rhs: K must be >= 1");
  double acc = 1.0 / K;
  if (ps.dim == 1) {
    for (long k = -K; k <= K; ++k) {
      if (k == 0) continue;
      acc += exp_sum(ps, {k}) / std::max(1.0, std::abs(static_cast<double>(k)));
    }
  } else {
    for (long k1 = -K; k1 <= K; ++k1)
      for (long k2 = -K; k2 <= K; ++k2) {
        if (k1 == 0 && k2 == 0) continue;
        double nu = std::max(1.0, std::abs(static_cast<double>(k1))) *
                    std::max(1.0, std::abs(static_cast<double>(k2)));
        acc += exp_sum(ps, {k1, k2}) / nu;
      }
  }
  return c_d * acc;
}

double min_etk_constant(const PointSet& ps, int K) {
  double base = etk_rhs(ps, K, 1.0);
  double d = ps.dim == 1 ? discrepancy_1d(ps) : discrepancy_2d(ps).value;
  return d / base;
}

double vdc_rhs(double interval_length, double lambda_k, int k, double c_hk) {
  if (k < 4 || k > 62) throw DomainError("vdc_rhs: k must be in [4, 62]");
  if (interval_length < 1) throw DomainError("vdc_rhs: interval length must be >= 1");
  if (lambda_k <= 0) throw DomainError("vdc_rhs: lambda must be positive");
  double e = 1.0 / (std::ldexp(1.0, k) - 2.0);
  double first = interval_length * std::pow(lambda_k, e);
  double second = std::pow(interval_length, 1.0 - std::ldexp(1.0, 2 - k)) *
                  std::pow(lambda_k, -e);
  return c_hk * (first + second);
}

}  // namespace pscert
