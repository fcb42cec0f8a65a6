#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

/// Raised when quadrature refinement or the Matsubara sum fails to reach the
/// requested tolerance. Carries the best error estimate that was achieved.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_error, std::size_t l = 0)
      : std::runtime_error(what), achieved_error_(achieved_error), l_(l) {}

  double achieved_error() const { return achieved_error_; }
  std::size_t matsubara_index() const { return l_; }

 private:
  double achieved_error_;
  std::size_t l_;
};

}  // namespace casimir
