#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ebound/bounds.hpp"
#include "ebound/levenshtein.hpp"
#include "ebound/potentials.hpp"

namespace ebound {

/// Finite set of unit vectors in R^n, one per row, with its Gram matrix.
class SphericalCode {
 public:
  /// Rows must have unit norm within norm_tol. With `renormalize`, rows inside
  /// the tolerance are rescaled to exactly unit length.
  explicit SphericalCode(Eigen::MatrixXd points, double norm_tol = 1e-9, bool renormalize = false);

  int dim() const noexcept { return static_cast<int>(points_.cols()); }
  int size() const noexcept { return static_cast<int>(points_.rows()); }
  const Eigen::MatrixXd& points() const noexcept { return points_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

 private:
  Eigen::MatrixXd points_;
  Eigen::MatrixXd gram_;
};

/// Reads one point per line, fields separated by commas or whitespace,
/// '#' lines ignored. Throws ParseError on malformed or non-unit input.
SphericalCode load_code(const std::filesystem::path& path, std::optional<int> dim_hint = std::nullopt,
                        bool renormalize = false, double norm_tol = 1e-9);
SphericalCode parse_code(std::istream& in, std::optional<int> dim_hint = std::nullopt,
                         bool renormalize = false, double norm_tol = 1e-9);

SphericalCode simplex_code(int n);
SphericalCode cross_polytope_code(int n);
SphericalCode orthonormal_code(int n);
SphericalCode icosahedron_code();
SphericalCode hexagon_code();

/// Generator by name: simplex:n, cross_polytope:n (or cross:n), orthonormal:n,
/// icosahedron, hexagon.
SphericalCode generate(std::string_view spec);

/// Sum of h(<x,y>) over ordered pairs x != y. Returns +infinity when two
/// points coincide under a kernel that is singular at t = 1.
double energy(const SphericalCode& code, const Potential& pot);

/// s(C): largest off-diagonal Gram entry.
double separation(const SphericalCode& code);

/// M_i(C) = sum over all (x, y), diagonal included, of P_i(<x,y>), i = 0..i_max.
std::vector<double> moments(const SphericalCode& code, int i_max);

struct DistanceDistribution {
  int anchor = 0;
  std::vector<std::pair<double, int>> entries;  // (inner product, count), increasing t
};

DistanceDistribution distance_distribution(const SphericalCode& code, int anchor, double cluster_tol = 1e-7);

struct DdSystemReport {
  std::vector<double> solution;  // A_{alpha_j}, j = 0..k-1+eps
  int equations = 0;
  int unknowns = 0;
  int rank = 0;
  double residual = 0.0;  // max |row residual| of the least-squares solution
  bool consistent = false;
  bool unique = false;
  /// A_{alpha_j} = rho_j * L_m(n, s) for all j.
  bool matches_quadrature = false;
};

/// Solves 1 + sum_j A_j P_i(alpha_j) = 0 for i in `vanishing` together with
/// 1 + sum_j A_j = M, in the least-squares sense, and reports rank/consistency.
DdSystemReport dd_system_solve(int n, double M, const QuadratureRule& quad, std::span<const int> vanishing);

struct StripVerdict {
  double s = 0.0;
  double energy = 0.0;
  EnergyStrip strip;
  double position = 0.0;  // (E - ULB) / (UUB - ULB); 0 for a collapsed strip
  bool inside = false;
  bool attains_uub = false;
  bool attains_ulb = false;
  /// Every inner product of distinct points is a quadrature node.
  bool inner_products_on_nodes = false;
  /// f_i M_i(C) = 0 for i = 1..m.
  bool moment_conditions = false;
  std::vector<double> moments;  // M_0..M_m
};

StripVerdict verify_strip(const SphericalCode& code, const Potential& pot);

/// Unique root in (0, 1/n) of n(n-2)^2 X^3 - n^2 X^2 - n X + 1.
double ez_separation(int n);

/// Inner-product data of the 11-point code in dimension 5 with separation
/// ez_separation(5). a, b, c are fixed decimals.
struct EzFixture {
  static constexpr int n = 5;
  static constexpr int M = 11;
  static constexpr double a = -0.22793;
  static constexpr double b = -0.553428;
  static constexpr double c = -0.89904;
};

/// (3n^2 - n) h(s) + (n^2 - n) h(a) + 2n h(b) + 2n h(c) for n = 5.
double ez_energy_n5(const Potential& pot);

}  // namespace ebound
