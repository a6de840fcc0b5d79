"""Electric and magnetic field noise above planar metals with charge diffusion.

Three electrodynamic models are supported: a local Drude-like conductor, a
surface charge layer with lateral diffusion, and a bulk (continuous) charge
that diffuses into the metal.  All internal arithmetic is Gaussian-CGS and,
where conditioning matters, dimensionless in units of the skin depth.
"""

from .scales import (
    C_LIGHT,
    DerivedScales,
    DimensionlessSpec,
    MediumSpec,
    ModelKind,
    ParameterDomainError,
    ProbeSpec,
    derive_scales,
    from_dimensionless,
    validity_report,
)
from .kernels import ReducedMedium, UndefinedQuantityError
from .quadrature import QuadResult, QuadSpec, integrate_fixed_oracle, integrate_response
from .response import (
    NoiseResult,
    ResponseValue,
    alpha_xx,
    alpha_zz,
    b_zz,
    delta_b_xx,
    fdt_noise,
)
from .asymptotics import NoFormulaError, Regime, asymptotic_alpha, asymptotic_magnetic, classify_regime

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT",
    "DerivedScales",
    "DimensionlessSpec",
    "MediumSpec",
    "ModelKind",
    "NoFormulaError",
    "NoiseResult",
    "ParameterDomainError",
    "ProbeSpec",
    "QuadResult",
    "QuadSpec",
    "ReducedMedium",
    "Regime",
    "ResponseValue",
    "UndefinedQuantityError",
    "alpha_xx",
    "alpha_zz",
    "asymptotic_alpha",
    "asymptotic_magnetic",
    "b_zz",
    "classify_regime",
    "delta_b_xx",
    "derive_scales",
    "fdt_noise",
    "from_dimensionless",
    "integrate_fixed_oracle",
    "integrate_response",
    "validity_report",
]
