#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

namespace casimir {

/// Gauss-Kronrod pair used on each subinterval of the adaptive scheme.
enum class QuadratureRule { gk15, gk21, gk31, gk41, gk51, gk61 };

std::string_view rule_name(QuadratureRule rule);
QuadratureRule parse_rule(std::string_view name);

struct QuadratureOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 500;
  QuadratureRule rule = QuadratureRule::gk21;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod integration of f over [lo, hi]. Exceptions
/// thrown by f propagate to the caller. Non-convergence is reported through
/// QuadratureResult::converged, not thrown.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& opts);

}  // namespace casimir
