#pragma once

#include <vector>

#include "ebound/orthopoly.hpp"

namespace ebound {

/// Position of a separation s in the Levenshtein partition of [-1, 1):
/// I_{2k-1} = [t_{k-1}^{1,1}, t_k^{1,0}],  I_{2k} = [t_k^{1,0}, t_k^{1,1}].
struct IntervalIndex {
  int m = 1;
  int k = 1;
  int eps = 0;  // m = 2k - 1 + eps
  double lo = -1.0;
  double hi = -1.0;
  /// s sits on the shared endpoint of I_m and I_{m+1}; the smaller m was chosen.
  bool tie = false;
};

/// Endpoints of I_m for dimension n.
IntervalIndex interval_bounds(int n, int m);

/// The m with s in I_m. A shared endpoint (within tie_tol) resolves to the
/// smaller m and sets `tie`.
IntervalIndex find_interval(int n, double s, double tie_tol = 1e-12);

/// Closed-form L_m(n, s) for the given interval.
double lev_value(int n, const IntervalIndex& interval, double s);

/// Piecewise Levenshtein function L(n, s); continuous and increasing in s.
double levenshtein_function(int n, double s);

/// Quadrature nodes alpha_0 < ... < alpha_{k-1+eps} = s. For even m the
/// first node is exactly -1.
std::vector<double> lev_poly_roots(int n, const IntervalIndex& interval, double s,
                                   double tol = 1e-13);

/// Levenshtein 1/N-quadrature rule, N = L_m(n,s), exact on polynomials of
/// degree <= m:  f_0 = f(1)/N + sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
  int dim = 0;
  IntervalIndex interval;
  double s = 0.0;
  double N = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// max_j |delta_{j0} - (1/N + sum_i w_i P_j(a_i))| over j = 0..m.
  double max_residual = 0.0;

  int m() const noexcept { return interval.m; }
};

/// Builds and self-checks the rule at separation s. Throws CertificationError
/// on a non-positive weight or an exactness residual above 1e-8.
QuadratureRule quadrature(int n, double s, double tol = 1e-13);

/// Same, for a fixed interval (s must belong to it up to tie tolerance).
QuadratureRule quadrature(int n, const IntervalIndex& interval, double s, double tol = 1e-13);

/// f_m^{(n,s)}(t) = prod_{a in T} (t - a) and its Gegenbauer coefficients.
struct LevenshteinPoly {
  int dim = 0;
  double s = 0.0;
  std::vector<double> multiset;  // T, nondecreasing
  GegenPoly gegen{2, {1.0}};
};

/// Multiset T: every node doubled except the last one, and except -1 when m
/// is even.
std::vector<double> node_multiset(const QuadratureRule& rule);

LevenshteinPoly levenshtein_poly(const QuadratureRule& rule);

struct CardinalitySolution {
  double r = 0.0;
  QuadratureRule rule;
};

/// Unique r with L(n, r) = M and the 1/M-quadrature rule at r.
CardinalitySolution solve_cardinality(int n, double M, double tol = 1e-13);

}  // namespace ebound
