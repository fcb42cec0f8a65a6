#include "casimir/reflection.hpp"

#include <cmath>
#include <variant>

namespace casimir {

ReflectionPair fresnel(double zeta, double y, double eps) {
  const double s = std::sqrt(y * y + (eps - 1.0) * zeta * zeta);
  return {(eps * y - s) / (eps * y + s), (y - s) / (y + s)};
}

ReflectionPair screened_static(double y, double eps_0, double kappa_reduced) {
  const double q = eps_0 * std::sqrt(y * y + kappa_reduced * kappa_reduced);
  return {(q - y) / (q + y), 0.0};
}

ReflectionPair zero_frequency(double y, const MaterialModel& model, const Geometry& geom) {
  if (const auto* m = std::get_if<NeglectedCarriers>(&model)) {
    const double e0 = m->osc.eps_0;
    return {(e0 - 1.0) / (e0 + 1.0), 0.0};
  }
  if (std::holds_alternative<Drude>(model)) return {1.0, 0.0};
  if (const auto* m = std::get_if<Plasma>(&model)) {
    const double wc = characteristic_frequency(geom);
    const double s = std::sqrt(y * y + m->carriers.omega_p_squared_sum() / (wc * wc));
    return {1.0, (y - s) / (y + s)};
  }
  const auto& m = std::get<DriftDiffusion>(model);
  const double kappa = geom.T > 0.0 ? debye_kappa(m.carriers.electrons(), m.carriers.holes(), m.osc.eps_0, geom.T)
                                    : 0.0;
  return screened_static(y, m.osc.eps_0, 2.0 * geom.a * kappa);
}

}  // namespace casimir
