#pragma once

#include <stdexcept>
#include <string>

namespace fewbody {

// Raised when a physics-domain precondition fails (zero speed in a ratio,
// co-moving bodies that never collide, degenerate PDFs, ...).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an iterative solver fails to meet its residual tolerance.
class ConvergenceError : public PhysicsError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : PhysicsError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Raised by the numerical oracle when a grid cannot resolve the problem.
class ResolutionError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace fewbody
