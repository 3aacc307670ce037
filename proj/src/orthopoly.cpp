#include "ebound/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ebound/error.hpp"

namespace ebound {

namespace {

void check_dim(int n) {
  if (n < 2) throw ArgumentError("dimension n must be >= 2, got " + std::to_string(n));
}

void check_degree(int i) {
  if (i < 0) throw ArgumentError("polynomial degree must be >= 0, got " + std::to_string(i));
  if (i > kMaxDegree)
    throw ArgumentError("polynomial degree " + std::to_string(i) + " exceeds cap " +
                        std::to_string(kMaxDegree));
}

void check_params(JacobiParams p) {
  if (!(p.a > -1.0) || !(p.b > -1.0)) {
    std::ostringstream os;
    os << "Jacobi parameters must exceed -1, got (" << p.a << ", " << p.b << ")";
    throw ArgumentError(os.str());
  }
}

// Bisection on [lo, hi] where f changes sign, followed by up to five
// safeguarded Newton steps that must stay inside the final bracket.
template <class F, class DF>
double bracketed_root(F f, DF df, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << flo << " f(hi)=" << fhi;
    throw InternalError(os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 5; ++it) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - f(x) / d;
    if (!(next >= lo && next <= hi)) break;
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace

JacobiParams JacobiParams::adjacent(int n, int da, int db) {
  check_dim(n);
  const double base = (n - 3) / 2.0;
  return {da + base, db + base};
}

double eval_gegenbauer(int n, int i, double t) {
  check_dim(n);
  check_degree(i);
  if (i == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int j = 1; j < i; ++j) {
    const double next = ((2.0 * j + n - 2) * t * cur - j * prev) / (j + n - 2.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> gegenbauer_values(int n, int degree, double t) {
  check_dim(n);
  check_degree(degree);
  std::vector<double> p(static_cast<std::size_t>(degree) + 1);
  p[0] = 1.0;
  if (degree >= 1) p[1] = t;
  for (int j = 1; j < degree; ++j) {
    p[j + 1] = ((2.0 * j + n - 2) * t * p[j] - j * p[j - 1]) / (j + n - 2.0);
  }
  return p;
}

double eval_jacobi(JacobiParams p, int i, double t) {
  check_params(p);
  check_degree(i);
  const double a = p.a;
  const double b = p.b;
  if (i == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * ((a + b + 2.0) * t + (a - b));
  for (int j = 1; j < i; ++j) {
    const double s = 2.0 * j + a + b;
    const double c1 = 2.0 * (j + 1) * (j + a + b + 1) * s;
    const double c2 = (s + 1) * ((s + 2) * s * t + a * a - b * b);
    const double c3 = 2.0 * (j + a) * (j + b) * (s + 2);
    const double next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_jacobi_derivative(JacobiParams p, int i, double t) {
  check_params(p);
  check_degree(i);
  if (i == 0) return 0.0;
  return 0.5 * (i + p.a + p.b + 1) * eval_jacobi({p.a + 1, p.b + 1}, i - 1, t);
}

double greatest_zero(JacobiParams p, int i, double tol) {
  check_params(p);
  check_degree(i);
  double lower = -1.0;
  for (int j = 1; j <= i; ++j) {
    lower = bracketed_root([&](double t) { return eval_jacobi(p, j, t); },
                           [&](double t) { return eval_jacobi_derivative(p, j, t); }, lower,
                           1.0, tol);
  }
  return lower;
}

std::vector<double> jacobi_zeros(JacobiParams p, int i, double tol) {
  check_params(p);
  check_degree(i);
  std::vector<double> zeros;
  for (int j = 1; j <= i; ++j) {
    std::vector<double> edges;
    edges.reserve(zeros.size() + 2);
    edges.push_back(-1.0);
    edges.insert(edges.end(), zeros.begin(), zeros.end());
    edges.push_back(1.0);
    std::vector<double> next;
    next.reserve(static_cast<std::size_t>(j));
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      next.push_back(bracketed_root([&](double t) { return eval_jacobi(p, j, t); },
                                    [&](double t) { return eval_jacobi_derivative(p, j, t); },
                                    edges[e], edges[e + 1], tol));
    }
    zeros = std::move(next);
  }
  return zeros;
}

GegenPoly::GegenPoly(int dim, std::vector<double> coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
  check_dim(dim);
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  check_degree(static_cast<int>(coeffs_.size()) - 1);
}

double GegenPoly::coeff(int i) const noexcept {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(i)];
}

int GegenPoly::degree(double tol) const noexcept {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i > 0; --i) {
    if (std::abs(coeffs_[static_cast<std::size_t>(i)]) > tol) return i;
  }
  return 0;
}

double GegenPoly::operator()(double t) const {
  const auto p = gegenbauer_values(dim_, static_cast<int>(coeffs_.size()) - 1, t);
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) sum += coeffs_[i] * p[i];
  return sum;
}

double GegenPoly::at_one() const noexcept {
  double sum = 0.0;
  for (double c : coeffs_) sum += c;
  return sum;
}

GegenPoly GegenPoly::times_linear(double root) const {
  const int d = static_cast<int>(coeffs_.size()) - 1;
  check_degree(d + 1);
  std::vector<double> out(coeffs_.size() + 1, 0.0);
  const double n = dim_;
  for (int i = 0; i <= d; ++i) {
    const double c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    if (i == 0) {
      out[1] += c;
    } else {
      const double den = 2.0 * i + n - 2.0;
      out[static_cast<std::size_t>(i) + 1] += c * (i + n - 2.0) / den;
      out[static_cast<std::size_t>(i) - 1] += c * i / den;
    }
    out[static_cast<std::size_t>(i)] -= root * c;
  }
  return GegenPoly(dim_, std::move(out));
}

GegenPoly GegenPoly::scaled(double c) const {
  std::vector<double> out(coeffs_);
  for (double& v : out) v *= c;
  return GegenPoly(dim_, std::move(out));
}

GegenPoly GegenPoly::operator+(const GegenPoly& other) const {
  if (other.dim_ != dim_) throw ArgumentError("GegenPoly dimension mismatch");
  std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = coeff(static_cast<int>(i)) + other.coeff(static_cast<int>(i));
  }
  return GegenPoly(dim_, std::move(out));
}

GegenPoly GegenPoly::operator-(const GegenPoly& other) const { return *this + other.scaled(-1.0); }

GegenPoly product_to_gegen(int n, std::span<const double> roots) {
  GegenPoly poly = GegenPoly::constant(n, 1.0);
  for (double r : roots) {
    if (!(r >= -1.0 && r < 1.0)) throw ArgumentError("roots must lie in [-1, 1)");
    poly = poly.times_linear(r);
  }
  return poly;
}

double gegen_coefficient_integral(int n, const std::function<double(double)>& f, int i,
                                  double tol) {
  check_dim(n);
  check_degree(i);
  using boost::math::quadrature::gauss_kronrod;
  const double pi = std::numbers::pi;
  const double wexp = n - 2.0;

  auto weight = [&](double theta) { return wexp == 0.0 ? 1.0 : std::pow(std::sin(theta), wexp); };
  auto numer = [&](double theta) {
    const double t = std::cos(theta);
    return f(t) * eval_gegenbauer(n, i, t) * weight(theta);
  };
  auto denom = [&](double theta) {
    const double p = eval_gegenbauer(n, i, std::cos(theta));
    return p * p * weight(theta);
  };

  double err_num = 0.0;
  double l1_num = 0.0;
  const double num = gauss_kronrod<double, 61>::integrate(numer, 0.0, pi, 6, 1e-2 * tol, &err_num, &l1_num);
  double err_den = 0.0;
  const double den = gauss_kronrod<double, 61>::integrate(denom, 0.0, pi, 6, 1e-2 * tol, &err_den);

  const double scale = std::max(l1_num, den);
  if (err_num > tol * scale || err_den > tol * den) {
    std::ostringstream os;
    os << "Gegenbauer coefficient integral did not converge (error estimate " << err_num << ")";
    throw NumericalError(os.str(), err_num);
  }
  return num / den;
}

}  // namespace ebound
