#include "ebound/potentials.hpp"

#include <charconv>
#include <cmath>

#include "ebound/error.hpp"

namespace ebound {

namespace {

double rising(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x + i;
  return r;
}

double factorial(int p) {
  double r = 1.0;
  for (int i = 2; i <= p; ++i) r *= i;
  return r;
}

std::string format_param(double a) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, a);
  return std::string(buf, res.ptr);
}

}  // namespace

Potential Potential::newton(int n) {
  if (n < 2) throw ArgumentError("newton potential needs dimension n >= 2");
  Potential p;
  p.kind_ = PotentialKind::newton;
  p.param_ = n;
  p.planar_newton_ = (n == 2);
  p.spec_ = "newton";
  return p;
}

Potential Potential::riesz(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("riesz alpha must be > 0");
  Potential p;
  p.kind_ = PotentialKind::riesz;
  p.param_ = alpha;
  p.spec_ = "riesz:" + format_param(alpha);
  return p;
}

Potential Potential::gaussian(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("gaussian alpha must be > 0");
  Potential p;
  p.kind_ = PotentialKind::gaussian;
  p.param_ = alpha;
  p.spec_ = "gauss:" + format_param(alpha);
  return p;
}

Potential Potential::logarithmic() {
  Potential p;
  p.kind_ = PotentialKind::logarithmic;
  p.spec_ = "log";
  return p;
}

Potential Potential::custom(std::string name, Fn eval, Fn deriv, FnP deriv_p) {
  if (!eval || !deriv) throw ArgumentError("custom potential needs eval and deriv");
  Potential p;
  p.kind_ = PotentialKind::custom;
  p.spec_ = std::move(name);
  p.eval_ = std::move(eval);
  p.deriv_ = std::move(deriv);
  p.deriv_p_ = std::move(deriv_p);
  return p;
}

double Potential::operator()(double t) const { return derivative(t, 0); }

double Potential::derivative(double t) const { return derivative(t, 1); }

double Potential::derivative(double t, int order) const {
  if (order < 0) throw ArgumentError("derivative order must be >= 0");
  const double u = 2.0 * (1.0 - t);
  switch (kind_) {
    case PotentialKind::newton:
      if (planar_newton_) {
        if (order == 0) return -0.5 * std::log(u);
        return 0.5 * factorial(order - 1) / std::pow(1.0 - t, order);
      }
      [[fallthrough]];
    case PotentialKind::riesz: {
      const double beta = kind_ == PotentialKind::newton ? (param_ - 2.0) / 2.0 : param_ / 2.0;
      return std::ldexp(rising(beta, order), order) * std::pow(u, -beta - order);
    }
    case PotentialKind::gaussian:
      return std::pow(param_, order) * std::exp(-param_ * (1.0 - t));
    case PotentialKind::logarithmic:
      if (order == 0) return -std::log(u);
      return factorial(order - 1) / std::pow(1.0 - t, order);
    case PotentialKind::custom:
      if (order == 0) return eval_(t);
      if (order == 1) return deriv_(t);
      if (!deriv_p_) throw UnsupportedError("custom potential '" + spec_ + "' has no higher derivatives");
      return deriv_p_(t, order);
  }
  return 0.0;
}

bool Potential::has_derivative_p() const noexcept {
  return kind_ != PotentialKind::custom || static_cast<bool>(deriv_p_);
}

bool Potential::singular_at_one() const noexcept {
  switch (kind_) {
    case PotentialKind::newton:
    case PotentialKind::riesz:
    case PotentialKind::logarithmic:
      return true;
    case PotentialKind::gaussian:
      return false;
    case PotentialKind::custom:
      return !std::isfinite(eval_(1.0));
  }
  return true;
}

Potential make_potential(PotentialKind kind, double param) {
  switch (kind) {
    case PotentialKind::newton: {
      const int n = static_cast<int>(param);
      if (n != param) throw ArgumentError("newton potential needs an integer dimension");
      return Potential::newton(n);
    }
    case PotentialKind::riesz:
      return Potential::riesz(param);
    case PotentialKind::gaussian:
      return Potential::gaussian(param);
    case PotentialKind::logarithmic:
      return Potential::logarithmic();
    case PotentialKind::custom:
      break;
  }
  throw ArgumentError("custom potentials are built with Potential::custom");
}

Potential parse_potential(std::string_view spec, int n) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  auto parse_alpha = [&]() {
    if (colon == std::string_view::npos) throw ArgumentError("potential '" + std::string(spec) + "' needs a parameter");
    const std::string text(spec.substr(colon + 1));
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw ArgumentError("bad potential parameter '" + text + "'");
    return a;
  };
  if (name == "newton") {
    if (colon != std::string_view::npos) throw ArgumentError("newton takes no parameter");
    return Potential::newton(n);
  }
  if (name == "riesz") return Potential::riesz(parse_alpha());
  if (name == "gauss" || name == "gaussian") return Potential::gaussian(parse_alpha());
  if (name == "log") {
    if (colon != std::string_view::npos) throw ArgumentError("log takes no parameter");
    return Potential::logarithmic();
  }
  throw ArgumentError("unknown potential '" + std::string(spec) + "'");
}

DerivativeReport derivative_check(const Potential& pot, int order, std::span<const double> grid) {
  if (order != 1 && order != 2) throw ArgumentError("derivative_check supports orders 1 and 2");
  DerivativeReport rep;
  for (double t : grid) {
    const double scale = std::min(1.0, 1.0 - t);
    double fd = 0.0;
    if (order == 1) {
      const double d = 1e-5 * scale;
      fd = (pot(t + d) - pot(t - d)) / (2.0 * d);
    } else {
      const double d = 1e-4 * scale;
      fd = (pot(t + d) - 2.0 * pot(t) + pot(t - d)) / (d * d);
    }
    const double exact = pot.derivative(t, order);
    const double dev = std::abs(fd - exact) / std::max(std::abs(exact), 1e-300);
    if (exact == 0.0 && fd == 0.0) continue;
    if (dev > rep.max_rel_deviation) {
      rep.max_rel_deviation = dev;
      rep.worst_t = t;
    }
  }
  return rep;
}

}  // namespace ebound
