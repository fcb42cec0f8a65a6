#pragma once

#include <cstddef>

#include "casimir/quantities.hpp"

namespace casimir::oracle {

/// A series value together with how it was obtained.
struct OracleValue {
  double value = 0.0;
  std::size_t series_terms_used = 0;
  double bound_on_remainder = 0.0;
};

/// Li_3(x) = sum x^n / n^3 for 0 <= x <= 1. Equals -int_0^inf y ln(1 - x e^-y) dy.
OracleValue trilog(double x);

/// zeta(3), i.e. trilog(1).
OracleValue apery();

/// -k_B T R zeta(3) / (4 a^2): perfect reflector, static term only. Newtons.
double classical_ideal_term(const Geometry& geom);

/// (k_B T R / (8 a^2)) (zeta(3) - Li_3(r0^2)), r0 = (eps_0 - 1)/(eps_0 + 1). Newtons.
double drude_minus_neglected(const Geometry& geom, double eps_0_static);

}  // namespace casimir::oracle
