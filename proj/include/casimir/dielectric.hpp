#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

namespace casimir {

/// Single-oscillator permittivity of the dielectric core:
///   eps(i zeta omega_c) = eps_inf + (eps_0 - eps_inf) / (1 + zeta^2 omega_c^2 / omega_0^2)
struct OscillatorModel {
  double eps_inf = 1.1;
  double eps_0 = 16.2;
  double omega_0 = 5.0e15;  // rad/s

  void validate() const;
};

/// One free-carrier species. Density in cm^-3, gamma in s^-1.
struct CarrierSpecies {
  double density = 0.0;
  double mass_ratio = 1.0;  // effective mass / free electron mass
  double gamma = 0.0;

  void validate() const;
};

/// Electron and hole populations with their plasma frequencies cached.
class FreeCarriers {
 public:
  FreeCarriers(const CarrierSpecies& electrons, const CarrierSpecies& holes);

  const CarrierSpecies& electrons() const { return electrons_; }
  const CarrierSpecies& holes() const { return holes_; }
  double omega_p_electrons() const { return omega_p_e_; }
  double omega_p_holes() const { return omega_p_h_; }
  double omega_p_squared_sum() const { return omega_p_e_ * omega_p_e_ + omega_p_h_ * omega_p_h_; }

 private:
  CarrierSpecies electrons_;
  CarrierSpecies holes_;
  double omega_p_e_;
  double omega_p_h_;
};

struct NeglectedCarriers {
  OscillatorModel osc;
};

struct Drude {
  OscillatorModel osc;
  FreeCarriers carriers;
};

/// Drude with both relaxation rates forced to zero.
struct Plasma {
  OscillatorModel osc;
  FreeCarriers carriers;
};

/// Oscillator permittivity at l >= 1; carriers screen the static field at l = 0.
struct DriftDiffusion {
  OscillatorModel osc;
  FreeCarriers carriers;
};

using MaterialModel = std::variant<NeglectedCarriers, Drude, Plasma, DriftDiffusion>;

enum class ModelKind { neglected, drude, plasma, diffusion };

inline constexpr ModelKind kAllModels[] = {ModelKind::neglected, ModelKind::drude, ModelKind::plasma,
                                           ModelKind::diffusion};

std::string_view model_name(ModelKind kind);

/// Accepts the canonical names; throws std::invalid_argument otherwise.
ModelKind parse_model(std::string_view name);

struct MaterialParameters {
  OscillatorModel osc;
  CarrierSpecies electrons;
  CarrierSpecies holes;

  /// Intrinsic germanium at room temperature.
  static MaterialParameters germanium();
};

MaterialModel make_model(ModelKind kind, const MaterialParameters& params = MaterialParameters::germanium());

ModelKind kind_of(const MaterialModel& model);
const OscillatorModel& oscillator_of(const MaterialModel& model);

/// sqrt(4 pi n e^2 / m_eff) in Gaussian units; result in rad/s.
double plasma_frequency(const CarrierSpecies& species);

double eps_oscillator(double zeta, double omega_c, const OscillatorModel& osc);

/// Free-carrier addition to the oscillator permittivity at l >= 1 (zero for
/// the neglected-carrier and diffusion models).
double carrier_correction(std::size_t l, double zeta, double omega_c, const MaterialModel& model);

/// Permittivity at the l-th Matsubara frequency. l = 0 is rejected with
/// std::domain_error: the static limit goes through zero_frequency().
double eps_model(std::size_t l, double zeta, double omega_c, const MaterialModel& model);

/// Debye screening wavenumber in m^-1,
///   kappa^2 = 4 pi e^2 (n_e + n_h) / (eps_0 k_B T)   (Gaussian units).
double debye_kappa(const CarrierSpecies& electrons, const CarrierSpecies& holes, double eps_0_static, double T);

}  // namespace casimir
