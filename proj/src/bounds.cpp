#include "ebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ebound/error.hpp"

namespace ebound {

GegenPoly hermite_interpolant(const Potential& pot, int n, std::span<const double> nodes) {
  const std::size_t count = nodes.size();
  if (count == 0) return GegenPoly::constant(n, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(nodes[i] >= -1.0 && nodes[i] < 1.0)) throw ArgumentError("Hermite nodes must lie in [-1, 1)");
    if (i > 0 && nodes[i] < nodes[i - 1]) throw ArgumentError("Hermite nodes must be sorted");
    if (i > 1 && nodes[i] == nodes[i - 2])
      throw UnsupportedError("Hermite node multiplicity above 2 is not supported");
  }

  // Divided differences, in place; repeated node uses f[x,x] = h'(x).
  std::vector<double> dd(count);
  for (std::size_t i = 0; i < count; ++i) dd[i] = pot(nodes[i]);
  std::vector<double> newton(count);
  newton[0] = dd[0];
  for (std::size_t j = 1; j < count; ++j) {
    for (std::size_t i = count - 1; i >= j; --i) {
      const double span = nodes[i] - nodes[i - j];
      dd[i] = span == 0.0 ? pot.derivative(nodes[i]) : (dd[i] - dd[i - 1]) / span;
    }
    newton[j] = dd[j];
  }

  // Horner in the Newton form, staying in the Gegenbauer basis.
  GegenPoly g = GegenPoly::constant(n, newton[count - 1]);
  for (std::size_t j = count - 1; j-- > 0;) {
    g = g.times_linear(nodes[j]) + GegenPoly::constant(n, newton[j]);
  }
  return g;
}

LambdaChoice lambda_star(const GegenPoly& g, const LevenshteinPoly& lev) {
  const int deg = static_cast<int>(g.coeffs().size()) - 1;
  if (deg > lev.gegen.degree()) throw ArgumentError("interpolant degree exceeds the Levenshtein degree");
  LambdaChoice out;
  out.degenerate = true;
  for (int i = 1; i <= deg; ++i) {
    const double ell = lev.gegen.coeff(i);
    if (!(ell > 0.0)) throw CertificationError("Levenshtein coefficient l_" + std::to_string(i) + " is not positive");
    const double ratio = g.coeff(i) / ell;
    if (ratio > out.lambda) {
      out.lambda = ratio;
      out.argmax = i;
      out.degenerate = false;
    }
  }
  return out;
}

std::vector<double> feasibility_grid(double s, std::span<const double> extra, int points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points) + extra.size());
  const double mid = 0.5 * (s - 1.0);
  const double half = 0.5 * (s + 1.0);
  for (int j = 0; j < points; ++j) {
    const double c = points == 1 ? 1.0 : std::cos(std::numbers::pi * j / (points - 1));
    grid.push_back(std::clamp(mid - half * c, -1.0, s));
  }
  grid.insert(grid.end(), extra.begin(), extra.end());
  return grid;
}

Feasibility check_feasibility(const GegenPoly& f, const Potential& pot, double s,
                              std::span<const double> nodes, const CertificateTolerances& tol) {
  Feasibility out;
  out.max_coeff = -INFINITY;
  const int size = static_cast<int>(f.coeffs().size());
  for (int i = 1; i < size; ++i) {
    if (f.coeff(i) > out.max_coeff) {
      out.max_coeff = f.coeff(i);
      out.max_coeff_index = i;
    }
  }
  if (size <= 1) out.max_coeff = 0.0;
  out.f2 = out.max_coeff <= tol.coeff;

  const auto grid = feasibility_grid(s, nodes, tol.grid_points);
  out.grid_size = static_cast<int>(grid.size());
  out.min_gap = INFINITY;
  for (double t : grid) {
    const double gap = f(t) - pot(t);
    if (gap < out.min_gap) {
      out.min_gap = gap;
      out.min_gap_t = t;
    }
  }
  out.f1 = out.min_gap >= -tol.domination;
  return out;
}

double bound_from_polynomial(const GegenPoly& F, double M) { return M * (F.coeff(0) * M - F.at_one()); }

double bound_at_lambda(const BoundCertificate& cert, double lambda) {
  return bound_from_polynomial(cert.interpolant - cert.lev.gegen.scaled(lambda), cert.M);
}

BoundCertificate uub(int n, double M, double s, const Potential& pot, const CertificateTolerances& tol) {
  if (!(M >= 2.0)) throw ArgumentError("cardinality M must be >= 2");
  BoundCertificate cert;
  cert.n = n;
  cert.M = M;
  cert.s = s;
  cert.potential = pot.spec();
  cert.quad = quadrature(n, s);
  const double N = cert.quad.N;
  if (M > N + 1e-9 * std::max(1.0, N)) {
    std::ostringstream os;
    os.precision(10);
    os << "M = " << M << " exceeds L_" << cert.quad.m() << "(" << n << ", " << s << ") = " << N
       << ": class provably empty or beyond LP reach";
    throw InfeasibleError(os.str());
  }

  cert.lev = levenshtein_poly(cert.quad);
  for (double ell : cert.lev.gegen.coeffs()) {
    if (!(ell > 0.0)) throw CertificationError("Levenshtein polynomial has a non-positive Gegenbauer coefficient");
  }
  cert.interpolant = hermite_interpolant(pot, n, cert.lev.multiset);
  cert.lambda = lambda_star(cert.interpolant, cert.lev);
  cert.f = cert.interpolant - cert.lev.gegen.scaled(cert.lambda.lambda);

  cert.uub = bound_from_polynomial(cert.f, M);
  double node_sum = 0.0;
  for (std::size_t i = 0; i < cert.quad.nodes.size(); ++i) {
    const double a = cert.quad.nodes[i];
    node_sum += cert.quad.weights[i] * pot(a);
    cert.interpolation_residual = std::max(cert.interpolation_residual, std::abs(cert.f(a) - pot(a)));
  }
  cert.uub_quadrature_form = M * (M / N - 1.0) * cert.f.at_one() + M * M * node_sum;

  cert.feasibility = check_feasibility(cert.f, pot, s, cert.quad.nodes, tol);
  if (!cert.feasibility.passed()) {
    std::ostringstream os;
    os.precision(6);
    os << "UUB certificate failed: max f_i (i>=1) = " << cert.feasibility.max_coeff << " at i="
       << cert.feasibility.max_coeff_index << ", min(f-h) = " << cert.feasibility.min_gap << " at t="
       << cert.feasibility.min_gap_t;
    throw CertificationError(os.str());
  }
  return cert;
}

double uub_with_extra_node(const BoundCertificate& cert, const Potential& pot, double node) {
  std::vector<double> T = cert.lev.multiset;
  T.insert(std::upper_bound(T.begin(), T.end(), node), node);
  const GegenPoly g = hermite_interpolant(pot, cert.n, T);
  const int m = cert.quad.m();
  double lambda = -INFINITY;
  for (int i = 1; i <= m; ++i) lambda = std::max(lambda, g.coeff(i) / cert.lev.gegen.coeff(i));
  return bound_from_polynomial(g - cert.lev.gegen.scaled(lambda), cert.M);
}

LowerBound ulb(int n, double M, const Potential& pot) {
  auto sol = solve_cardinality(n, M);
  LowerBound out;
  out.r = sol.r;
  double sum = 0.0;
  for (std::size_t i = 0; i < sol.rule.nodes.size(); ++i) sum += sol.rule.weights[i] * pot(sol.rule.nodes[i]);
  out.value = M * M * sum;
  out.rule = std::move(sol.rule);
  return out;
}

EnergyStrip strip(int n, double M, double s, const Potential& pot, const CertificateTolerances& tol) {
  EnergyStrip out;
  out.upper = uub(n, M, s, pot, tol);
  out.lower = ulb(n, M, pot);
  out.uub = out.upper.uub;
  out.ulb = out.lower.value;
  out.sharp = std::abs(M - out.upper.quad.N) <= 1e-9 * out.upper.quad.N;
  if (out.ulb > out.uub + 1e-9 * std::abs(out.uub)) {
    std::ostringstream os;
    os.precision(12);
    os << "energy strip inverted: ULB " << out.ulb << " > UUB " << out.uub;
    throw CertificationError(os.str());
  }
  return out;
}

double test_function_value(const QuadratureRule& rule, int j) {
  double r = 1.0 / rule.N;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) r += rule.weights[i] * eval_gegenbauer(rule.dim, j, rule.nodes[i]);
  return r;
}

TestFunctionReport test_functions(int n, double s, int j_max) {
  if (j_max < 1) throw ArgumentError("j_max must be >= 1");
  if (j_max > kMaxDegree) throw ArgumentError("j_max exceeds the degree cap");
  TestFunctionReport rep;
  rep.rule = quadrature(n, s);
  rep.first_checked = 2 * rep.rule.interval.k + rep.rule.interval.eps;
  rep.min_checked = INFINITY;
  for (int j = 1; j <= j_max; ++j) {
    const double r = test_function_value(rep.rule, j);
    rep.values.emplace_back(j, r);
    if (j >= rep.first_checked) {
      ++rep.checked;
      rep.min_checked = std::min(rep.min_checked, r);
      if (r < -1e-9) rep.optimal_in_class = false;
    }
  }
  if (rep.checked == 0) rep.min_checked = 0.0;
  return rep;
}

ProbeReport optimality_probe(const BoundCertificate& cert, const Potential& pot, int trials, std::uint64_t seed) {
  ProbeReport rep;
  rep.min_excess = INFINITY;
  const int m = cert.quad.m();
  const double scale = 1e-2 * std::max(1.0, std::abs(cert.f.coeff(0)));
  const auto grid = feasibility_grid(cert.s, cert.quad.nodes, 2048);
  std::vector<std::vector<double>> basis;
  basis.reserve(grid.size());
  for (double t : grid) basis.push_back(gegenbauer_values(cert.n, m, t));
  std::vector<double> gap(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) gap[g] = cert.f(grid[g]) - pot(grid[g]);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tol = 1e-9 * std::abs(cert.uub);

  for (int trial = 0; trial < trials; ++trial) {
    ++rep.trials;
    // Trial 0 is the unperturbed certificate polynomial.
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    if (trial > 0) {
      double total = 0.0;
      for (int i = 1; i <= m; ++i) {
        c[static_cast<std::size_t>(i)] = scale * unit(rng);
        total += c[static_cast<std::size_t>(i)];
      }
      c[0] = (2.0 * unit(rng) - 1.0) * total;
    }
    // F = f + c_0 - sum c_i P_i
    bool feasible = true;
    for (std::size_t g = 0; g < grid.size() && feasible; ++g) {
      double shift = c[0];
      for (int i = 1; i <= m; ++i) shift -= c[static_cast<std::size_t>(i)] * basis[g][static_cast<std::size_t>(i)];
      if (gap[g] + shift < -1e-12) feasible = false;
    }
    double sum_c = 0.0;
    for (int i = 1; i <= m; ++i) sum_c += c[static_cast<std::size_t>(i)];
    if (c[0] - sum_c > 0.0) feasible = false;  // F(1) > f(1)
    if (!feasible) continue;
    ++rep.accepted;

    std::vector<double> coeffs(cert.f.coeffs().begin(), cert.f.coeffs().end());
    coeffs.resize(std::max(coeffs.size(), c.size()), 0.0);
    coeffs[0] += c[0];
    for (int i = 1; i <= m; ++i) coeffs[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i)];
    const double bound = bound_from_polynomial(GegenPoly(cert.n, std::move(coeffs)), cert.M);
    const double excess = bound - cert.uub;
    rep.min_excess = std::min(rep.min_excess, excess);
    if (excess < -tol) ++rep.violations;
  }
  if (rep.accepted == 0) rep.min_excess = 0.0;
  return rep;
}

}  // namespace ebound
