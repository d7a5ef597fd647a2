#pragma once

#include <stdexcept>
#include <string>

namespace engel {

// Parameter outside a chart domain or a radius schedule outside coverage.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The chart Jacobian has rank < 2 at a probed point.
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative procedure (Newton inversion, quadrature refinement) did not
// reach its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace engel
