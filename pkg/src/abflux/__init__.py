"""Interference phases of a split charge, computed two ways in any frame.

The package builds electromagnetic configurations (solenoid, pulsed
capacitor, polynomial gauges), Lorentz-boosts worldlines / fields /
potentials between frames, and evaluates the relative phase either as a
loop integral of the potentials or as the flux of the field 2-form
through a spanning spacetime surface -- whose magnetic and electric
parts are frame-dependent even though their sum is not.
"""

from .constants import C_LIGHT, E_CHARGE, HBAR
from .em import (
    CapacitorConfig,
    EmConfiguration,
    FieldSample,
    PotentialSample,
    SolenoidConfig,
    boost_field,
    boost_potential,
    boosted_configuration,
    capacitor_configuration,
    polynomial_gauge_configuration,
    solenoid_configuration,
)
from .holonomy import (
    Box3D,
    FieldOnPath,
    PhaseDecomposition,
    StokesReport,
    SurfacePatch3D,
    flux_phase,
    gauge_shift,
    potential_phase,
    stokes_check,
    stokes_check_3d,
)
from .polynomial import Polynomial4D
from .quadrature import QuadratureSpec, ToleranceNotMet
from .scenarios import (
    CapacitorScenario,
    DomainError,
    ReferenceValues,
    SolenoidScenario,
    build_capacitor_scenario,
    build_solenoid_scenario,
    capacitor_null_electric_boost,
    capacitor_references,
    solenoid_references,
    solenoid_special_frame,
)
from .spacetime import (
    Boost,
    Event,
    GeometryError,
    NonMonotoneTime,
    SpacetimeSurface,
    Worldline,
    WorldlinePair,
    boost_event,
    boost_pair,
    boost_surface,
    boost_tangent,
    boost_worldline,
    bulged_ruled_surface,
    ruled_surface_equal_time,
    three_vec,
)

__version__ = "0.1.0"

__all__ = [
    "Boost",
    "Box3D",
    "C_LIGHT",
    "CapacitorConfig",
    "CapacitorScenario",
    "DomainError",
    "E_CHARGE",
    "EmConfiguration",
    "Event",
    "FieldOnPath",
    "FieldSample",
    "GeometryError",
    "HBAR",
    "NonMonotoneTime",
    "PhaseDecomposition",
    "Polynomial4D",
    "PotentialSample",
    "QuadratureSpec",
    "ReferenceValues",
    "SolenoidConfig",
    "SolenoidScenario",
    "SpacetimeSurface",
    "StokesReport",
    "SurfacePatch3D",
    "ToleranceNotMet",
    "Worldline",
    "WorldlinePair",
    "boost_event",
    "boost_field",
    "boost_pair",
    "boost_potential",
    "boost_surface",
    "boost_tangent",
    "boost_worldline",
    "boosted_configuration",
    "build_capacitor_scenario",
    "build_solenoid_scenario",
    "bulged_ruled_surface",
    "capacitor_configuration",
    "capacitor_null_electric_boost",
    "capacitor_references",
    "flux_phase",
    "gauge_shift",
    "polynomial_gauge_configuration",
    "potential_phase",
    "ruled_surface_equal_time",
    "solenoid_configuration",
    "solenoid_references",
    "solenoid_special_frame",
    "stokes_check",
    "stokes_check_3d",
    "three_vec",
    "__version__",
]
