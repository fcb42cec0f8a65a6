#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/quantities.hpp"

namespace casimir {

struct ReflectionPair {
  double r_tm = 0.0;
  double r_te = 0.0;
};

/// Half-space reflection coefficients at imaginary frequency. Requires
/// y >= zeta >= 0 and eps >= 1.
ReflectionPair fresnel(double zeta, double y, double eps);

/// Static TM coefficient of a screened dielectric; kappa_reduced = 2 a kappa.
ReflectionPair screened_static(double y, double eps_0, double kappa_reduced);

/// l = 0 coefficients for each material model.
ReflectionPair zero_frequency(double y, const MaterialModel& model, const Geometry& geom);

}  // namespace casimir
