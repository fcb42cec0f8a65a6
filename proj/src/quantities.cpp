#include "casimir/quantities.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace casimir {

void Geometry::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("separation must be positive, got " + std::to_string(a));
  if (!(R > 0.0)) throw std::invalid_argument("sphere radius must be positive, got " + std::to_string(R));
  if (!(T >= 0.0)) throw std::invalid_argument("temperature must be non-negative, got " + std::to_string(T));
}

double matsubara_zeta(std::size_t l, const Geometry& geom) {
  const double step = 4.0 * std::numbers::pi * geom.a * constants::k_B * geom.T / (constants::hbar * constants::c);
  return step * static_cast<double>(l);
}

MatsubaraPoint matsubara_point(std::size_t l, const Geometry& geom) {
  return {l, matsubara_zeta(l, geom), l == 0 ? 0.5 : 1.0};
}

double characteristic_frequency(const Geometry& geom) { return constants::c / (2.0 * geom.a); }

double reduce_frequency(double omega, const Geometry& geom) { return omega / characteristic_frequency(geom); }

}  // namespace casimir
