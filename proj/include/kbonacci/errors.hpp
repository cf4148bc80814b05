#pragma once

#include <stdexcept>
#include <string>

namespace kbonacci {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recurrence order k < 2.
class InvalidOrderError : public Error {
 public:
  explicit InvalidOrderError(long long k)
      : Error("invalid order k=" + std::to_string(k) + " (need k >= 2)"), k_(k) {}
  long long order() const noexcept { return k_; }

 private:
  long long k_;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Simultaneous iteration or Newton polishing did not reach the residual bound.
/// Carries the best residual seen (decimal string, as it may underflow a double).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::string best_residual)
      : Error(what + " (best residual " + best_residual + ")"),
        best_residual_(std::move(best_residual)) {}
  const std::string& best_residual() const noexcept { return best_residual_; }

 private:
  std::string best_residual_;
};

/// Root separation does not dominate the certified perturbation bound.
class PrecisionInsufficientError : public Error {
 public:
  using Error::Error;
};

/// The adaptive Binet loop hit its escalation cap without certifying.
class PrecisionExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Dominant-term rounding requested below n_min(k).
class TailBoundError : public Error {
 public:
  using Error::Error;
};

/// Coincident nodes in a partial-fraction sum or a zero Vandermonde product.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace kbonacci
