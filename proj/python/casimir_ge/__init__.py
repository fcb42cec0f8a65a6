"""Thermal Casimir force between a germanium lens and plate."""

from ._casimir import (
    CarrierSpecies,
    ConvergenceError,
    EngineConfig,
    ForceResult,
    Geometry,
    MaterialModel,
    MaterialParameters,
    OscillatorModel,
    TermBreakdown,
    casimir_force,
    characteristic_frequency,
    classical_ideal_term,
    debye_kappa,
    drude_minus_neglected,
    eps_model,
    eps_oscillator,
    fresnel,
    golden_table,
    matsubara_zeta,
    model_difference,
    plasma_frequency,
    reduce_frequency,
    run_cli,
    trilog,
    zero_frequency,
)

MODELS = ("neglected", "drude", "plasma", "diffusion")


def force_pN(model: str, a_um: float, R_cm: float = 15.10, T: float = 300.0) -> float:
    """|F| in pN for one of the canonical models at separation a (micrometres)."""
    geom = Geometry(a_um * 1e-6, R_cm * 1e-2, T)
    return casimir_force(MaterialModel(model), geom).magnitude * 1e12


__all__ = [name for name in dir() if not name.startswith("_")]
