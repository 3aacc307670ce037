#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ebound {

/// Highest polynomial degree any routine in the library will build or
/// evaluate. Double-precision three-term recurrences stay accurate well
/// beyond this for t in [-1, 1].
inline constexpr int kMaxDegree = 64;

/// Exponents (a, b) of a Jacobi polynomial P_i^{(a,b)}.
struct JacobiParams {
  double a = 0.0;
  double b = 0.0;

  /// Jacobi parameters adjacent to dimension n:
  /// a = da + (n-3)/2, b = db + (n-3)/2.
  static JacobiParams adjacent(int n, int da, int db);
};

/// Gegenbauer polynomial P_i^{(n)}(t), normalized so that P_i^{(n)}(1) = 1.
double eval_gegenbauer(int n, int i, double t);

/// All values P_0^{(n)}(t), ..., P_degree^{(n)}(t) in one recurrence pass.
std::vector<double> gegenbauer_values(int n, int degree, double t);

/// Standard (unnormalized) Jacobi polynomial P_i^{(a,b)}(t).
double eval_jacobi(JacobiParams p, int i, double t);

/// d/dt P_i^{(a,b)}(t) = (i+a+b+1)/2 * P_{i-1}^{(a+1,b+1)}(t).
double eval_jacobi_derivative(JacobiParams p, int i, double t);

/// Greatest zero of P_i^{(a,b)} for i >= 1. Returns -1 for i == 0, which is
/// the conventional t_0 used to open the interlacing recursion.
double greatest_zero(JacobiParams p, int i, double tol = 1e-13);

/// All zeros of P_i^{(a,b)} in increasing order.
std::vector<double> jacobi_zeros(JacobiParams p, int i, double tol = 1e-13);

/// Polynomial stored by its coefficients in the Gegenbauer basis
/// {P_0^{(n)}, P_1^{(n)}, ...} for a fixed dimension n.
class GegenPoly {
 public:
  GegenPoly(int dim, std::vector<double> coeffs);

  static GegenPoly constant(int dim, double c) { return GegenPoly(dim, {c}); }

  int dim() const noexcept { return dim_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// i-th coefficient, zero past the stored range.
  double coeff(int i) const noexcept;

  /// Index of the last coefficient with |c| > tol (0 for the zero polynomial).
  int degree(double tol = 0.0) const noexcept;

  double operator()(double t) const;

  /// Value at t = 1, i.e. the coefficient sum.
  double at_one() const noexcept;

  /// (t - root) * this, computed with the linearization
  /// t P_i = ((i+n-2) P_{i+1} + i P_{i-1}) / (2i+n-2).
  GegenPoly times_linear(double root) const;

  GegenPoly scaled(double c) const;
  GegenPoly operator+(const GegenPoly& other) const;
  GegenPoly operator-(const GegenPoly& other) const;

 private:
  int dim_;
  std::vector<double> coeffs_;
};

/// Expands prod_j (t - roots[j]) in the Gegenbauer basis of dimension n.
GegenPoly product_to_gegen(int n, std::span<const double> roots);

/// i-th Gegenbauer coefficient of f by adaptive Gauss-Kronrod quadrature,
/// i.e. <f, P_i> / <P_i, P_i> under the weight (1-t^2)^{(n-3)/2}.
/// Integrates in the angle variable t = cos(theta) so the endpoint weight
/// singularity for n = 2 disappears. Cross-check oracle only.
/// Throws NumericalError when the error estimate exceeds tol.
double gegen_coefficient_integral(int n, const std::function<double(double)>& f, int i,
                                  double tol = 1e-12);

}  // namespace ebound
