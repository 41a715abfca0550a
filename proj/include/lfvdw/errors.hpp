#pragma once

#include <stdexcept>
#include <string>

namespace lfvdw {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used in the CLI's error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Argument outside the mathematical domain (negative frequency, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};

/// Evaluation at a pole (zero argument of a Hankel function, u = 0 for the
/// cavity coefficients).
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error("pole", w) {}
};

struct UnsupportedOrderError : Error {
  explicit UnsupportedOrderError(const std::string& w) : Error("unsupported_order", w) {}
};

/// Coincident source and field points of a bulk Green tensor.
struct SingularityError : Error {
  explicit SingularityError(const std::string& w) : Error("singularity", w) {}
};

/// Invalid model parameters or geometry.
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error("validation", w) {}
};

/// An internal numerical assertion failed (reality of an imaginary-axis
/// quantity, positivity of D, enhancement-factor bounds).
struct AssertionError : Error {
  explicit AssertionError(const std::string& w) : Error("assertion", w) {}
};

/// Adaptive quadrature ran out of subdivisions. Carries the partial result.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& w, double partial, double err_est, long evals)
      : Error("convergence", w), partial_(partial), err_est_(err_est), evals_(evals) {}
  double partial_value() const noexcept { return partial_; }
  double error_estimate() const noexcept { return err_est_; }
  long evaluations() const noexcept { return evals_; }

 private:
  double partial_;
  double err_est_;
  long evals_;
};

}  // namespace lfvdw
