#pragma once

#include <stdexcept>
#include <string>

namespace fbnet {

// Thrown when an iterative numerical routine exhausts its budget without
// reaching the requested tolerance. Carries the best estimate so callers
// can decide whether the partial result is still usable.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

}  // namespace fbnet
