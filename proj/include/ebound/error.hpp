#pragma once

#include <stdexcept>
#include <string>

namespace ebound {

// Invalid caller input (bad dimension, negative degree, s >= 1, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A closed form hit a vanishing denominator or similar.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bracketing or root counting failed where the theory guarantees success.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Adaptive integration did not reach the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A quadrature rule or bound certificate failed its own checks.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// M exceeds the Levenshtein bound L_m(n,s): C(n,M,s) is empty.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Code file could not be read or violates the format.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ebound
