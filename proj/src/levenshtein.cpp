#include "ebound/levenshtein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "ebound/error.hpp"

namespace ebound {

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kResidualLimit = 1e-8;

// Generalized binomial C(top, j) for integer j >= 0.
double binomial(double top, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c *= (top - j + i) / i;
  return c;
}

double t11(int n, int k) { return k == 0 ? -1.0 : greatest_zero(JacobiParams::adjacent(n, 1, 1), k); }
double t10(int n, int k) { return greatest_zero(JacobiParams::adjacent(n, 1, 0), k); }

}  // namespace

IntervalIndex interval_bounds(int n, int m) {
  if (n < 2) throw ArgumentError("dimension n must be >= 2");
  if (m < 1) throw ArgumentError("interval index m must be >= 1");
  if (m > kMaxDegree) throw ArgumentError("interval index m exceeds the degree cap");
  IntervalIndex out;
  out.m = m;
  out.eps = (m % 2 == 0) ? 1 : 0;
  out.k = (m + 1 - out.eps) / 2;
  if (out.eps == 0) {
    out.lo = t11(n, out.k - 1);
    out.hi = t10(n, out.k);
  } else {
    out.lo = t10(n, out.k);
    out.hi = t11(n, out.k);
  }
  return out;
}

IntervalIndex find_interval(int n, double s, double tie_tol) {
  if (n < 2) throw ArgumentError("dimension n must be >= 2");
  if (!(s >= -1.0) || !(s < 1.0)) {
    std::ostringstream os;
    os << "separation s must lie in [-1, 1), got " << s;
    throw ArgumentError(os.str());
  }
  // Right endpoints alternate t_k^{1,0}, t_k^{1,1}; walk them upward.
  for (int m = 1; m <= kMaxDegree; ++m) {
    const int eps = (m % 2 == 0) ? 1 : 0;
    const int k = (m + 1 - eps) / 2;
    const double hi = eps == 0 ? t10(n, k) : t11(n, k);
    if (s <= hi + tie_tol) {
      IntervalIndex out = interval_bounds(n, m);
      out.tie = std::abs(s - hi) <= tie_tol;
      return out;
    }
  }
  throw ArgumentError("separation s lies beyond the interval for the degree cap");
}

double lev_value(int n, const IntervalIndex& interval, double s) {
  const int k = interval.k;
  const auto p = gegenbauer_values(n, k + 1, s);
  if (interval.eps == 0) {
    const double den = (1.0 - s) * p[static_cast<std::size_t>(k)];
    if (den == 0.0 || !std::isfinite(1.0 / den))
      throw DomainError("vanishing denominator in L_{2k-1}(n,s)");
    return binomial(k + n - 3.0, k - 1) *
           ((2.0 * k + n - 3) / (n - 1.0) -
            (p[static_cast<std::size_t>(k) - 1] - p[static_cast<std::size_t>(k)]) / den);
  }
  const double pk = p[static_cast<std::size_t>(k)];
  const double pk1 = p[static_cast<std::size_t>(k) + 1];
  const double den = (1.0 - s) * (pk + pk1);
  if (den == 0.0 || !std::isfinite(1.0 / den))
    throw DomainError("vanishing denominator in L_{2k}(n,s)");
  return binomial(k + n - 2.0, k) * ((2.0 * k + n - 1) / (n - 1.0) - (1.0 + s) * (pk - pk1) / den);
}

double levenshtein_function(int n, double s) { return lev_value(n, find_interval(n, s), s); }

std::vector<double> lev_poly_roots(int n, const IntervalIndex& interval, double s, double tol) {
  const int k = interval.k;
  const int eps = interval.eps;
  const JacobiParams q = JacobiParams::adjacent(n, 1, eps);
  const std::vector<double> z = jacobi_zeros(q, k, tol);

  std::vector<double> roots;
  if (eps == 1) roots.push_back(-1.0);

  if (s > z.back() + 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "s = " << s << " is outside I_" << interval.m << " (right endpoint " << z.back() << ")";
    throw ArgumentError(os.str());
  }
  if (s >= z.back() - kTieTol) {
    // Q_k(s) = 0: the nodes are exactly the zeros of Q_k.
    roots.insert(roots.end(), z.begin(), z.end() - 1);
    roots.push_back(s);
    return roots;
  }
  if (k == 1) {
    roots.push_back(s);
    return roots;
  }

  const double qk_s = eval_jacobi(q, k, s);
  const double qk1_s = eval_jacobi(q, k - 1, s);
  auto F = [&](double t) { return eval_jacobi(q, k, t) * qk1_s - qk_s * eval_jacobi(q, k - 1, t); };

  auto bisect = [&](double lo, double hi) {
    double flo = F(lo);
    const double fhi = F(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nan("");
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = F(mid);
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  // One root below the smallest zero of Q_k, one in each gap between zeros.
  double first = bisect(-1.0, z.front());
  if (std::isnan(first)) {
    if (std::abs(F(-1.0)) <= 1e-10 * std::abs(F(z.front()))) {
      first = -1.0;
    } else {
      throw InternalError("Levenshtein root bracket (-1, z_1) has no sign change");
    }
  }
  roots.push_back(first);
  for (int j = 0; j + 1 < k; ++j) {
    const double r = bisect(z[static_cast<std::size_t>(j)], z[static_cast<std::size_t>(j) + 1]);
    if (std::isnan(r)) {
      std::ostringstream os;
      os << "Levenshtein root bracket " << j + 1 << " of " << k - 1 << " has no sign change";
      throw InternalError(os.str());
    }
    roots.push_back(r);
  }
  const double last = roots.back();
  if (std::abs(last - s) > 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "largest Levenshtein root " << last << " differs from s = " << s;
    throw InternalError(os.str());
  }
  roots.back() = s;
  if (static_cast<int>(roots.size()) != k + eps)
    throw InternalError("Levenshtein root count mismatch");
  return roots;
}

QuadratureRule quadrature(int n, double s, double tol) {
  return quadrature(n, find_interval(n, s), s, tol);
}

QuadratureRule quadrature(int n, const IntervalIndex& interval, double s, double tol) {
  QuadratureRule rule;
  rule.dim = n;
  rule.interval = interval;
  rule.s = s;
  rule.N = lev_value(n, interval, s);
  rule.nodes = lev_poly_roots(n, interval, s, tol);

  const int size = static_cast<int>(rule.nodes.size());
  const int m = interval.m;
  std::vector<std::vector<double>> values;
  values.reserve(rule.nodes.size());
  for (double a : rule.nodes) values.push_back(gegenbauer_values(n, m, a));

  Eigen::MatrixXd A(size, size);
  Eigen::VectorXd b(size);
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < size; ++i) A(j, i) = values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    b(j) = (j == 0 ? 1.0 : 0.0) - 1.0 / rule.N;
  }
  const Eigen::VectorXd rho = A.fullPivLu().solve(b);
  rule.weights.assign(rho.data(), rho.data() + size);

  for (int j = 0; j <= m; ++j) {
    double q = 1.0 / rule.N;
    for (int i = 0; i < size; ++i) q += rule.weights[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    rule.max_residual = std::max(rule.max_residual, std::abs((j == 0 ? 1.0 : 0.0) - q));
  }

  for (int i = 0; i < size; ++i) {
    if (!(rule.weights[static_cast<std::size_t>(i)] > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-positive quadrature weight rho_" << i << " = " << rule.weights[static_cast<std::size_t>(i)]
         << " at node " << rule.nodes[static_cast<std::size_t>(i)] << " (n=" << n << ", s=" << s << ")";
      throw CertificationError(os.str());
    }
  }
  if (!(rule.max_residual <= kResidualLimit)) {
    std::ostringstream os;
    os << "quadrature exactness residual " << rule.max_residual << " exceeds " << kResidualLimit;
    throw CertificationError(os.str());
  }
  return rule;
}

std::vector<double> node_multiset(const QuadratureRule& rule) {
  std::vector<double> T;
  const std::size_t count = rule.nodes.size();
  for (std::size_t i = 0; i < count; ++i) {
    const bool simple = (i + 1 == count) || (rule.interval.eps == 1 && i == 0);
    T.push_back(rule.nodes[i]);
    if (!simple) T.push_back(rule.nodes[i]);
  }
  return T;
}

LevenshteinPoly levenshtein_poly(const QuadratureRule& rule) {
  LevenshteinPoly out;
  out.dim = rule.dim;
  out.s = rule.s;
  out.multiset = node_multiset(rule);
  out.gegen = product_to_gegen(rule.dim, out.multiset);
  return out;
}

CardinalitySolution solve_cardinality(int n, double M, double tol) {
  if (n < 2) throw ArgumentError("dimension n must be >= 2");
  if (!(M >= 2.0)) throw ArgumentError("cardinality M must be >= 2");

  double lo = -1.0;
  double r = -1.0;
  if (levenshtein_function(n, lo) < M) {
    double hi = 0.0;
    for (int j = 1; levenshtein_function(n, hi) < M; ++j) {
      lo = hi;
      hi = 1.0 - std::ldexp(1.0, -j);
      if (j > 52) throw ArgumentError("cardinality M too large for the degree cap");
    }
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (levenshtein_function(n, mid) < M) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    r = 0.5 * (lo + hi);
  }
  CardinalitySolution out;
  out.r = r;
  out.rule = quadrature(n, r, tol);
  return out;
}

}  // namespace ebound
