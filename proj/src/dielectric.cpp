#include "casimir/dielectric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "casimir/quantities.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double drude_terms(double zeta, double omega_c, const FreeCarriers& carriers, bool relaxation) {
  const double wpe = carriers.omega_p_electrons() / omega_c;
  const double wph = carriers.omega_p_holes() / omega_c;
  const double ge = relaxation ? carriers.electrons().gamma / omega_c : 0.0;
  const double gh = relaxation ? carriers.holes().gamma / omega_c : 0.0;
  return wpe * wpe / (zeta * (zeta + ge)) + wph * wph / (zeta * (zeta + gh));
}

}  // namespace

void OscillatorModel::validate() const {
  if (!(eps_inf >= 1.0)) throw std::invalid_argument("eps_inf must be >= 1");
  if (!(eps_0 > eps_inf)) throw std::invalid_argument("eps_0 must exceed eps_inf");
  if (!(omega_0 > 0.0)) throw std::invalid_argument("omega_0 must be positive");
}

void CarrierSpecies::validate() const {
  if (!(density >= 0.0)) throw std::invalid_argument("carrier density must be non-negative");
  if (!(mass_ratio > 0.0)) throw std::invalid_argument("effective mass ratio must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("relaxation rate must be non-negative");
}

FreeCarriers::FreeCarriers(const CarrierSpecies& electrons, const CarrierSpecies& holes)
    : electrons_(electrons), holes_(holes) {
  electrons_.validate();
  holes_.validate();
  omega_p_e_ = plasma_frequency(electrons_);
  omega_p_h_ = plasma_frequency(holes_);
}

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::neglected: return "neglected";
    case ModelKind::drude: return "drude";
    case ModelKind::plasma: return "plasma";
    case ModelKind::diffusion: return "diffusion";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  for (ModelKind k : kAllModels)
    if (model_name(k) == name) return k;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected neglected, drude, plasma or diffusion)");
}

MaterialParameters MaterialParameters::germanium() {
  MaterialParameters p;
  p.osc = OscillatorModel{1.1, 16.2, 5.0e15};
  p.electrons = CarrierSpecies{2.3e13, 0.12, 2.6e11};
  p.holes = CarrierSpecies{2.3e13, 0.21, 2.6e11};
  return p;
}

MaterialModel make_model(ModelKind kind, const MaterialParameters& params) {
  params.osc.validate();
  switch (kind) {
    case ModelKind::neglected: return NeglectedCarriers{params.osc};
    case ModelKind::drude: return Drude{params.osc, FreeCarriers(params.electrons, params.holes)};
    case ModelKind::plasma: return Plasma{params.osc, FreeCarriers(params.electrons, params.holes)};
    case ModelKind::diffusion: return DriftDiffusion{params.osc, FreeCarriers(params.electrons, params.holes)};
  }
  throw std::invalid_argument("unknown model kind");
}

ModelKind kind_of(const MaterialModel& model) {
  return std::visit(overloaded{[](const NeglectedCarriers&) { return ModelKind::neglected; },
                               [](const Drude&) { return ModelKind::drude; },
                               [](const Plasma&) { return ModelKind::plasma; },
                               [](const DriftDiffusion&) { return ModelKind::diffusion; }},
                    model);
}

const OscillatorModel& oscillator_of(const MaterialModel& model) {
  return std::visit([](const auto& m) -> const OscillatorModel& { return m.osc; }, model);
}

double plasma_frequency(const CarrierSpecies& species) {
  if (!(species.mass_ratio > 0.0)) throw std::invalid_argument("effective mass ratio must be positive");
  const double e2 = constants::e_gauss * constants::e_gauss;
  return std::sqrt(4.0 * std::numbers::pi * species.density * e2 / (species.mass_ratio * constants::m_electron));
}

double eps_oscillator(double zeta, double omega_c, const OscillatorModel& osc) {
  const double x = zeta * omega_c / osc.omega_0;
  return osc.eps_inf + (osc.eps_0 - osc.eps_inf) / (1.0 + x * x);
}

double carrier_correction(std::size_t l, double zeta, double omega_c, const MaterialModel& model) {
  if (l == 0) throw std::domain_error("carrier_correction: l = 0 must use the zero-frequency reflection path");
  return std::visit(overloaded{[](const NeglectedCarriers&) { return 0.0; },
                               [](const DriftDiffusion&) { return 0.0; },
                               [&](const Drude& m) { return drude_terms(zeta, omega_c, m.carriers, true); },
                               [&](const Plasma& m) { return drude_terms(zeta, omega_c, m.carriers, false); }},
                    model);
}

double eps_model(std::size_t l, double zeta, double omega_c, const MaterialModel& model) {
  if (l == 0) throw std::domain_error("eps_model: l = 0 must use the zero-frequency reflection path");
  return eps_oscillator(zeta, omega_c, oscillator_of(model)) + carrier_correction(l, zeta, omega_c, model);
}

double debye_kappa(const CarrierSpecies& electrons, const CarrierSpecies& holes, double eps_0_static, double T) {
  if (!(T > 0.0)) throw std::domain_error("debye_kappa: screening length undefined at T = 0");
  if (!(eps_0_static > 0.0)) throw std::invalid_argument("debye_kappa: static permittivity must be positive");
  const double e2 = constants::e_gauss * constants::e_gauss;
  const double n = electrons.density + holes.density;
  const double kappa_per_cm = std::sqrt(4.0 * std::numbers::pi * e2 * n / (eps_0_static * constants::k_B_erg * T));
  return kappa_per_cm * 100.0;
}

}  // namespace casimir
