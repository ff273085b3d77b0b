"""Entanglement of two magnetically coupled harmonic oscillators.

Closed-form Schmidt spectra for excited normal-mode states, entanglement
entropy and Schmidt number, their time dynamics, and brute-force oracles
that check each closed form independently.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CouplingTooLarge,
    DegenerateCoupling,
    EmptyGrid,
    GridOutOfRange,
    IndexOutOfManifold,
    InsufficientNodes,
    IoFailure,
    LevelTooHigh,
    NonPositiveFrequency,
    NotNormalized,
    OscillentError,
    Unstable,
)
from .model import (  # noqa: E402
    NormalModeData,
    OscillatorParams,
    TransformMatrix,
    build_transform_matrix,
    eigen_energy,
    mixing_angle,
    normal_frequencies,
    normal_modes,
    validate_params,
)
from .schmidt import (  # noqa: E402
    CoefficientMatrix,
    EntanglementMeasures,
    ModePair,
    SchmidtSpectrum,
    coefficient_matrix,
    entanglement_measures,
    schmidt_coefficient,
    schmidt_number,
    schmidt_spectrum,
    von_neumann_entropy,
)
from .dynamics import (  # noqa: E402
    EntropySeries,
    InitialState,
    entropy_timeseries,
    evolution_coefficients,
    time_spectrum,
    transition_probability,
)
