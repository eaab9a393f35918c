"""Analogue Hawking radiation from a moving refractive-index perturbation.

Horizon geometry, Hawking temperatures, Bogoliubov thermality, greybody
factors and dispersion-limited emission windows for a dielectric medium
swept by an intense laser pulse.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    HorizonSingularError,
    InternalInconsistency,
    NoHorizonError,
    QuadratureError,
    ResolutionError,
    ResonantIndicialError,
    SeriesConvergenceError,
    StiffnessError,
    TangentHorizonError,
)
from .kinematics import C, HBAR, K_B, WIEN_B, FrameKinematics, lorentz_gamma  # noqa: E402
from .profiles import GaussianProfile, ShockwaveProfile, TabulatedProfile  # noqa: E402
from .horizons import (  # noqa: E402
    HorizonReport,
    find_horizons,
    horizon_exists,
    temperature_lab,
    temperature_pulse,
)
from .modes import ModeSpec, frobenius_series, thermality_exponent  # noqa: E402
from .bogoliubov import closed_form_magnitudes, occupation, quadrature_magnitudes  # noqa: E402
from .greybody import ScatteringProblem, greybody_lab, numerov_transmission  # noqa: E402
from .dispersion import (  # noqa: E402
    CauchyMaterial,
    load_material,
    phase_window,
    group_window,
)
from .spectra import emission_spectrum, planck_density_dispersive  # noqa: E402
