"""Forces on superradiant atomic ensembles in structured light."""

from ._core import (
    NumericalError,
    ReducedDrive,
    SingularityError,
    beam_fields,
    collective_operators,
    evolve,
    fig1,
    forces,
    series,
    steady_observables,
    steady_state,
    torque,
    validate,
)

__all__ = [
    "NumericalError",
    "ReducedDrive",
    "SingularityError",
    "beam_fields",
    "collective_operators",
    "evolve",
    "fig1",
    "forces",
    "series",
    "steady_observables",
    "steady_state",
    "torque",
    "validate",
]
