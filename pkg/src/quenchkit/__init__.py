"""Sudden-quench quantum dynamics toolkit.

Two exactly solvable systems driven faster than they can respond:

* an infinite square well whose wall jumps instantly to a new position
  (``quenchkit.well``): re-expansion of the frozen ground state, truncated
  post-quench energy, and the matter-wave force on the wall;
* a spin-1/2 in a rotating magnetic field (``quenchkit.spin``): exact
  evolution, return probabilities, and the drive frequency beyond which the
  state stays frozen.

Closed forms are cross-checked against independent quadrature and ODE
oracles in ``quenchkit.numerics``.
"""

from quenchkit.numerics import (
    OdeDivergenceError,
    OdeResult,
    OdeSpec,
    QuadratureConvergenceError,
    QuadratureSpec,
    central_difference,
    integrate,
    ode_evolve,
)
from quenchkit.spin import (
    ReturnCurve,
    RotorConfig,
    SpinState,
    ThresholdReport,
    anti_adiabatic_threshold,
    branch_symmetry_check,
    evolve_closed_form,
    hamiltonian,
    instantaneous_eigenstates,
    omega_scan,
    return_probability,
    return_probability_cycle,
)
from quenchkit.well import (
    EnergyReport,
    ForceProfile,
    QuenchRatio,
    Regime,
    SpectralDecomposition,
    WellConfig,
    decompose,
    eigen_energy,
    eigen_wavefunction,
    energy_scan,
    expansion_coefficient,
    force_scan,
    matter_wave_force,
    overlap_oracle,
    population,
    population_scan,
    quench_energy,
)

__version__ = "0.1.0"

__all__ = [
    "OdeDivergenceError",
    "OdeResult",
    "OdeSpec",
    "QuadratureConvergenceError",
    "QuadratureSpec",
    "central_difference",
    "integrate",
    "ode_evolve",
    "ReturnCurve",
    "RotorConfig",
    "SpinState",
    "ThresholdReport",
    "anti_adiabatic_threshold",
    "branch_symmetry_check",
    "evolve_closed_form",
    "hamiltonian",
    "instantaneous_eigenstates",
    "omega_scan",
    "return_probability",
    "return_probability_cycle",
    "EnergyReport",
    "ForceProfile",
    "QuenchRatio",
    "Regime",
    "SpectralDecomposition",
    "WellConfig",
    "decompose",
    "eigen_energy",
    "eigen_wavefunction",
    "energy_scan",
    "expansion_coefficient",
    "force_scan",
    "matter_wave_force",
    "overlap_oracle",
    "population",
    "population_scan",
    "quench_energy",
    "__version__",
]
