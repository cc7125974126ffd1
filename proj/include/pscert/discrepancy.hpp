#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace pscert {

// A finite point set in [0,1)^d, d in {1, 2}; fractional parts already taken.
struct PointSet {
  int dim = 1;
  std::vector<double> x;
  std::vector<double> y;  // empty when dim == 1

  std::size_t size() const { return x.size(); }
};

// One point per line, coordinates separated by whitespace. Throws ParseError
// (with the line number) on malformed input or coordinates outside [0,1).
PointSet parse_points(std::istream& in);

// Exact extreme (two-sided box) discrepancy in dimension 1: the supremum over
// [a,b) of |count/N - (b-a)|, computed as a max over finitely many candidate
// expressions from the sorted points and {0,1} with open/closed corrections.
double discrepancy_1d(const PointSet& ps);

struct Discrepancy2dResult {
  double value = 0;       // exact, or a certified lower bound
  bool exact = true;
  double slack = 0;       // declared upper-bound slack in approximate mode
};

// Exact mode up to `exact_limit` points (candidate corners on the coordinate
// grid); beyond that, a certified lower bound from a subsampled grid plus a
// declared slack so that the true value lies in [value, value + slack].
Discrepancy2dResult discrepancy_2d(const PointSet& ps, std::size_t exact_limit = 512);

// |1/N sum e^{2 pi i <k, x_n>}|. k must match the dimension and be nonzero.
double exp_sum(const PointSet& ps, const std::vector<long>& k);

// Full right-hand side of the Erdos-Turan-Koksma inequality for parameter K:
// C_d (1/K + sum_{0 < |k|_inf <= K} exp_sum(k) / nu(k)).
double etk_rhs(const PointSet& ps, int K, double c_d);

// Smallest C_d for which the ETK right-hand side dominates the measured
// discrepancy of this point set.
double min_etk_constant(const PointSet& ps, int K);

// Bound shape of the van der Corput k-th derivative test:
// C (L lambda^{1/(2^k-2)} + L^{1-2^{2-k}} lambda^{-1/(2^k-2)}).
double vdc_rhs(double interval_length, double lambda_k, int k, double c_hk);

}  // namespace pscert
