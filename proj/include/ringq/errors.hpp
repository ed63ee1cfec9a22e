#pragma once

#include <stdexcept>
#include <string>

namespace ringq {

// Thrown when a profile degenerates (q vanishing on a set of positive
// measure, psi infinite where it must be integrable).
class DegenerateProfileError : public std::runtime_error {
 public:
  explicit DegenerateProfileError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown by the grid solver when the iteration cap is reached before the
// residual drops below tolerance. Carries the last energy value so callers
// can inspect how far the solve got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_energy,
                   double last_residual, int iterations)
      : std::runtime_error(what),
        last_energy(last_energy),
        last_residual(last_residual),
        iterations(iterations) {}

  double last_energy;
  double last_residual;
  int iterations;
};

class OutOfDomainError : public std::domain_error {
 public:
  explicit OutOfDomainError(const std::string& what)
      : std::domain_error(what) {}
};

}  // namespace ringq
