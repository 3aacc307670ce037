#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace ebound {

enum class PotentialKind { newton, riesz, gaussian, logarithmic, custom };

/// Absolutely monotone interaction kernel h(t) of the inner product t.
///
/// Named kernels carry closed forms for every derivative order. A custom
/// kernel must provide h and h'; higher orders are optional. Only h and h'
/// are needed by the Hermite interpolation step because node multiplicities
/// never exceed two.
class Potential {
 public:
  using Fn = std::function<double(double)>;
  using FnP = std::function<double(double, int)>;

  /// [2(1-t)]^{1-n/2}; for n = 2 the planar kernel -(1/2) log[2(1-t)].
  static Potential newton(int n);
  /// [2(1-t)]^{-alpha/2}, alpha > 0.
  static Potential riesz(double alpha);
  /// exp(-alpha (1-t)), alpha > 0.
  static Potential gaussian(double alpha);
  /// -log[2(1-t)].
  static Potential logarithmic();
  static Potential custom(std::string name, Fn eval, Fn deriv, FnP deriv_p = {});

  PotentialKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }

  double operator()(double t) const;
  double derivative(double t) const;
  double derivative(double t, int order) const;
  bool has_derivative_p() const noexcept;

  /// True when h(t) -> infinity as t -> 1.
  bool singular_at_one() const noexcept;

  /// CLI spelling: newton, riesz:a, gauss:a, log (custom kernels: their name).
  const std::string& spec() const noexcept { return spec_; }

 private:
  Potential() = default;

  PotentialKind kind_ = PotentialKind::custom;
  double param_ = 0.0;  // riesz/gaussian alpha; newton dimension
  bool planar_newton_ = false;
  std::string spec_;
  Fn eval_;
  Fn deriv_;
  FnP deriv_p_;
};

/// Generic constructor: `param` is alpha for riesz/gaussian and the
/// dimension n for newton; ignored for logarithmic.
Potential make_potential(PotentialKind kind, double param = 0.0);

/// Parses `newton`, `riesz:a`, `gauss:a`, `log`. Newton needs the dimension.
Potential parse_potential(std::string_view spec, int n);

struct DerivativeReport {
  double max_rel_deviation = 0.0;
  double worst_t = 0.0;
};

/// Compares the analytic derivative of the given order (1 or 2) to central
/// finite differences over the grid.
DerivativeReport derivative_check(const Potential& pot, int order, std::span<const double> grid);

}  // namespace ebound
