#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ergo {

/// Argument outside an operation's domain (re z < 0, t <= 0, bad parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Point lies on the branch cut (-inf, 0] of a Stieltjes-type function.
class BranchCutError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An integral that has no finite value for the given measure and kernel.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its evaluation budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Operation needs the (a, b, mu) triple of a function that only has direct evaluation.
class MeasureUnavailableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Sampled t*r(t) is not positive, nondecreasing and concave on the grid.
class RateShapeError : public DomainError {
 public:
  RateShapeError(const std::string& what, std::size_t index, double t0, double t1, double t2)
      : DomainError(what), index_(index), t0_(t0), t1_(t1), t2_(t2) {}
  /// Index of the first grid point of the violating triple.
  std::size_t index() const noexcept { return index_; }
  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  double t2() const noexcept { return t2_; }

 private:
  std::size_t index_;
  double t0_, t1_, t2_;
};

/// Malformed configuration or serialized document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergo
