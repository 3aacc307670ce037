#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ebound/levenshtein.hpp"
#include "ebound/orthopoly.hpp"
#include "ebound/potentials.hpp"

namespace ebound {

/// Tolerances of the feasibility certificate.
struct CertificateTolerances {
  double coeff = 1e-12;       // f_i <= coeff for i >= 1
  double domination = 1e-9;   // f(t) - h(t) >= -domination on the grid
  int grid_points = 2048;
};

/// Hermite interpolant of h on a nondecreasing node multiset (multiplicity
/// at most two), in the Gegenbauer basis of dimension n. Repeated nodes match
/// h'. Throws UnsupportedError for a triple node.
GegenPoly hermite_interpolant(const Potential& pot, int n, std::span<const double> nodes);

struct LambdaChoice {
  double lambda = 0.0;
  int argmax = 0;
  /// No positive ratio g_i / l_i: lambda is 0 and f = g_T.
  bool degenerate = false;
};

/// max_{1 <= i <= deg g} g_i / l_i, clamped at 0. Ties go to the smallest i.
LambdaChoice lambda_star(const GegenPoly& g, const LevenshteinPoly& lev);

/// Chebyshev-Lobatto points on [-1, s] followed by the extra points.
std::vector<double> feasibility_grid(double s, std::span<const double> extra, int points = 2048);

struct Feasibility {
  double max_coeff = 0.0;      // max_{i>=1} f_i
  int max_coeff_index = 0;
  double min_gap = 0.0;        // min over the grid of f(t) - h(t)
  double min_gap_t = 0.0;
  int grid_size = 0;
  bool f1 = false;
  bool f2 = false;
  bool passed() const noexcept { return f1 && f2; }
};

/// Checks (F1) f >= h on [-1, s] (sampled) and (F2) f_i <= 0 for i >= 1.
Feasibility check_feasibility(const GegenPoly& f, const Potential& pot, double s,
                              std::span<const double> nodes, const CertificateTolerances& tol = {});

struct BoundCertificate {
  int n = 0;
  double M = 0.0;
  double s = 0.0;
  std::string potential;
  QuadratureRule quad;
  LevenshteinPoly lev;
  GegenPoly interpolant{2, {0.0}};
  LambdaChoice lambda;
  GegenPoly f{2, {0.0}};
  /// M (f_0 M - f(1)).
  double uub = 0.0;
  /// M (M/N - 1) f(1) + M^2 sum_i rho_i h(alpha_i).
  double uub_quadrature_form = 0.0;
  /// max_i |f(alpha_i) - h(alpha_i)|.
  double interpolation_residual = 0.0;
  Feasibility feasibility;
};

/// Universal upper bound on the h-energy of codes in C(n, M, s).
/// Throws InfeasibleError when M > L_m(n, s) and CertificationError when the
/// resulting polynomial fails its feasibility checks.
BoundCertificate uub(int n, double M, double s, const Potential& pot,
                     const CertificateTolerances& tol = {});

/// M (F_0 M - F(1)): the bound any feasible polynomial F yields.
double bound_from_polynomial(const GegenPoly& F, double M);

/// Bound from f = g_T - lambda * f_m for a given lambda.
double bound_at_lambda(const BoundCertificate& cert, double lambda);

/// Re-derives the bound with `node` appended to T and lambda re-optimized
/// over 1..m. Reproduces cert.uub.
double uub_with_extra_node(const BoundCertificate& cert, const Potential& pot, double node);

struct LowerBound {
  double value = 0.0;
  double r = 0.0;
  QuadratureRule rule;
};

/// M^2 sum_i rho'_i h(alpha'_i) with the rule at the r solving L(n, r) = M.
LowerBound ulb(int n, double M, const Potential& pot);

struct EnergyStrip {
  double ulb = 0.0;
  double uub = 0.0;
  LowerBound lower;
  BoundCertificate upper;
  /// M = L_m(n, s): the strip collapses to a point.
  bool sharp = false;
};

EnergyStrip strip(int n, double M, double s, const Potential& pot, const CertificateTolerances& tol = {});

/// R_j = 1/N + sum_i rho_i P_j(alpha_i) for a quadrature rule; R_0 = 1.
double test_function_value(const QuadratureRule& rule, int j);

struct TestFunctionReport {
  QuadratureRule rule;
  std::vector<std::pair<int, double>> values;  // (j, R_j), j = 1..j_max
  int first_checked = 0;                      // 2k + eps
  int checked = 0;
  double min_checked = 0.0;
  bool optimal_in_class = true;
};

TestFunctionReport test_functions(int n, double s, int j_max);

struct ProbeReport {
  int trials = 0;
  int accepted = 0;
  int violations = 0;
  double min_excess = 0.0;  // min over accepted of bound(F) - uub
};

/// Samples F = f + c_0 - sum_{i=1..m} c_i P_i with c_i >= 0, keeps those that
/// stay feasible with F(1) <= f(1), and counts any whose bound beats the UUB.
ProbeReport optimality_probe(const BoundCertificate& cert, const Potential& pot, int trials,
                             std::uint64_t seed = 20201);

}  // namespace ebound
