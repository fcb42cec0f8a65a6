#pragma once

#include <cstddef>

namespace casimir {

/// CODATA-2018 values. SI except where noted.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c = 2.99792458e8;              // m/s
inline constexpr double k_B = 1.380649e-23;            // J/K
inline constexpr double e_gauss = 4.80320425e-10;      // statC
inline constexpr double m_electron = 9.1093837015e-28; // g
inline constexpr double k_B_erg = k_B * 1.0e7;         // erg/K
}  // namespace constants

/// Sphere-above-plate configuration. Separation and radius in metres.
struct Geometry {
  double a = 1.0e-6;
  double R = 0.151;
  double T = 300.0;

  /// Throws std::invalid_argument unless a > 0, R > 0, T >= 0.
  void validate() const;

  /// True when a/R is small enough for the proximity force approximation.
  bool pfa_valid() const { return a / R <= 1.0e-3; }
};

struct MatsubaraPoint {
  std::size_t l = 0;
  double zeta = 0.0;
  double weight = 0.5;
};

/// Dimensionless Matsubara frequency 4 pi a k_B T l / (hbar c).
double matsubara_zeta(std::size_t l, const Geometry& geom);

MatsubaraPoint matsubara_point(std::size_t l, const Geometry& geom);

/// omega_c = c / (2a), rad/s.
double characteristic_frequency(const Geometry& geom);

/// omega / omega_c.
double reduce_frequency(double omega, const Geometry& geom);

}  // namespace casimir
