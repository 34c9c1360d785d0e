#pragma once

#include <stdexcept>
#include <string>

namespace gpi {

enum class ErrorCode {
  Domain,            // argument outside the operation's precondition
  NonConvergence,    // series hit its term cap
  Divergence,        // series value at z = 1 does not exist
  QuadratureFailure, // adaptive integrator could not reach its target
  InfiniteVariance,  // Monte Carlo estimator refused
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by the quadrature routines when the error target is missed. The
/// best available estimate is kept so callers can still report it.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best, double achieved)
      : Error(ErrorCode::QuadratureFailure, what), best_(best), achieved_(achieved) {}
  double best_estimate() const noexcept { return best_; }
  double achieved_error() const noexcept { return achieved_; }

 private:
  double best_;
  double achieved_;
};

[[noreturn]] inline void domain_error(const std::string& what) {
  throw Error(ErrorCode::Domain, what);
}

}  // namespace gpi
