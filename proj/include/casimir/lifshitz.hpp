#pragma once

#include <cstddef>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/quantities.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

struct EngineConfig {
  double rel_tol = 1e-10;
  double y_tail_cut = 60.0;  // integration runs over [zeta_l, zeta_l + y_tail_cut]
  std::size_t l_max_hard = 2000;
  QuadratureRule quadrature_rule = QuadratureRule::gk21;
  std::size_t max_intervals = 500;  // adaptive refinement depth per integral
  unsigned threads = 1;             // concurrent Matsubara term evaluation

  void validate() const;
};

/// One Matsubara term. Contributions are prefactor * integral, in newtons,
/// before the l = 0 half weight is applied.
struct TermBreakdown {
  std::size_t l = 0;
  double zeta = 0.0;
  double weight = 1.0;
  double tm_contribution = 0.0;
  double te_contribution = 0.0;
  double quadrature_error_estimate = 0.0;

  double contribution() const { return tm_contribution + te_contribution; }
  double weighted() const { return weight * contribution(); }
};

struct ForceResult {
  double force = 0.0;      // N, negative means attraction
  double magnitude = 0.0;  // |force|
  std::vector<TermBreakdown> terms;
  std::size_t l_used = 0;
  double truncation_bound = 0.0;  // N
  bool converged = false;

  /// Summed quadrature error plus truncation bound, relative to |force|.
  double rel_err_est() const;
};

/// Reflection coefficients as a function of Matsubara index, zeta and y.
/// Lets the engine run on synthetic responses as well as material models.
class ReflectionSource {
 public:
  virtual ~ReflectionSource() = default;
  virtual ReflectionPair at(std::size_t l, double zeta, double y) const = 0;
};

/// Material model bound to a geometry: zero_frequency() at l = 0 and
/// fresnel() with eps_model() above.
class MaterialResponse final : public ReflectionSource {
 public:
  MaterialResponse(const MaterialModel& model, const Geometry& geom);
  ReflectionPair at(std::size_t l, double zeta, double y) const override;

 private:
  MaterialModel model_;
  Geometry geom_;
  double omega_c_;
};

/// k_B T R / (4 a^2), newtons.
double force_prefactor(const Geometry& geom);

/// y [ln(1 - r_TM^2 e^-y) + ln(1 - r_TE^2 e^-y)]. Throws std::logic_error if
/// r^2 e^-y reaches 1.
double integrand(std::size_t l, double zeta, double y, const ReflectionSource& source);
double integrand(std::size_t l, double zeta, double y, const MaterialModel& model, const Geometry& geom);

TermBreakdown matsubara_term(std::size_t l, const ReflectionSource& source, const Geometry& geom,
                             const EngineConfig& cfg);
TermBreakdown matsubara_term(std::size_t l, const MaterialModel& model, const Geometry& geom,
                             const EngineConfig& cfg);

/// Primed Matsubara sum in ascending l with compensated summation. Throws
/// ConvergenceError when l_max_hard is reached first.
ForceResult casimir_force(const ReflectionSource& source, const Geometry& geom, const EngineConfig& cfg = {});
ForceResult casimir_force(const MaterialModel& model, const Geometry& geom, const EngineConfig& cfg = {});

/// |F_a| - |F_b| in newtons, integrating the difference of integrands term
/// by term. Both models must share the oscillator core.
double model_difference(const MaterialModel& model_a, const MaterialModel& model_b, const Geometry& geom,
                        const EngineConfig& cfg = {});

}  // namespace casimir
