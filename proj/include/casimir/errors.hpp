#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// A truncated sum or adaptive integral that did not reach its tolerance.
// Carries the partial value and the work done so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value, int count)
      : std::runtime_error(what), partial_value_(partial_value), count_(count) {}

  double partial_value() const { return partial_value_; }
  // Matsubara terms or subdivisions consumed.
  int count() const { return count_; }

 private:
  double partial_value_;
  int count_;
};

}  // namespace casimir
