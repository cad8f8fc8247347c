"""Translating-soliton profile curves for the inverse mean curvature flow
over isoparametric foliations of the unit sphere.

Subpackages:

- :mod:`imcfsoliton.geometry`: closed-form algebra of the foliation
  (admissible parameters, band bounds, the eta/zeta curves).
- :mod:`imcfsoliton.ode`: the profile ODEs and singularity-aware adaptive
  integration with event detection.
- :mod:`imcfsoliton.classify`: the five-type phase-plane classification,
  basin sweeps and separatrix shooting.
- :mod:`imcfsoliton.verify`: independent residual oracles for the profile
  equations.
- :mod:`imcfsoliton.cli`: command-line interface, CSV/JSON serialization
  and SVG portraits.
"""

from .geometry import (
    Band,
    BandInterior,
    BadK,
    DimensionMismatch,
    DomainError,
    GeometryError,
    Parameters,
    ROutOfRange,
    UnequalMultiplicities,
    alpha,
    band_bounds,
    beta,
    discriminant_B,
    eta,
    quadratic_A,
    validate_parameters,
    zeta,
)
from .ode import (
    ComparisonReport,
    Event,
    EventKind,
    HypothesisUnmet,
    IllConditioned,
    LimitFlag,
    ProfileState,
    StepControl,
    Termination,
    TerminationKind,
    Trace,
    comparison_bound_h,
    integrate_profile,
    integrate_psi,
    psi_rhs,
    vpp_rhs,
)

__version__ = "0.1.0"
