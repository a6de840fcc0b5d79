"""Material and probe parameters, unit conversion and derived length scales.

Everything is held in Gaussian-CGS.  SI values are accepted only through the
``from_si`` constructors, which convert once at the boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

#: speed of light, cm/s
C_LIGHT = 2.99792458e10

#: 1/(4 pi eps0) in SI; multiplies a conductivity in S/m to give s^-1
SI_TO_GAUSSIAN_CONDUCTIVITY = 8.9875517873681764e9

#: m^2/s -> cm^2/s
SI_TO_GAUSSIAN_DIFFUSION = 1.0e4

#: m -> cm
SI_TO_GAUSSIAN_LENGTH = 1.0e2


class ParameterDomainError(ValueError):
    """A physical parameter lies outside its admissible domain."""


class ModelKind(str, enum.Enum):
    LOCAL = "local"
    CHARGE_LAYER = "charge_layer"
    CONTINUOUS_CHARGE = "continuous_charge"

    @classmethod
    def parse(cls, value: "str | ModelKind") -> "ModelKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "local": cls.LOCAL,
            "chargelayer": cls.CHARGE_LAYER,
            "charge_layer": cls.CHARGE_LAYER,
            "layer": cls.CHARGE_LAYER,
            "continuouscharge": cls.CONTINUOUS_CHARGE,
            "continuous_charge": cls.CONTINUOUS_CHARGE,
            "continuous": cls.CONTINUOUS_CHARGE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown model kind {value!r}") from None


@dataclass(frozen=True)
class MediumSpec:
    """Conductor parameters in Gaussian units.

    Attributes
    ----------
    sigma : float
        Conductivity, s^-1.
    diffusion : float
        Bulk diffusion constant D, cm^2/s.
    surface_diffusion : float
        Lateral diffusion constant of the surface charge sheet, cm^2/s.
    kind : ModelKind
    """

    sigma: float
    diffusion: float = 0.0
    surface_diffusion: float = 0.0
    kind: ModelKind = ModelKind.LOCAL

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind.parse(self.kind))
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ParameterDomainError(f"conductivity must be positive, got {self.sigma!r}")
        if not self.diffusion >= 0:
            raise ParameterDomainError(f"diffusion must be >= 0, got {self.diffusion!r}")
        if not self.surface_diffusion >= 0:
            raise ParameterDomainError(
                f"surface diffusion must be >= 0, got {self.surface_diffusion!r}"
            )

    @classmethod
    def from_si(cls, sigma, diffusion=0.0, surface_diffusion=0.0, kind=ModelKind.LOCAL):
        """Build from S/m and m^2/s."""
        return cls(
            sigma=sigma * SI_TO_GAUSSIAN_CONDUCTIVITY,
            diffusion=diffusion * SI_TO_GAUSSIAN_DIFFUSION,
            surface_diffusion=surface_diffusion * SI_TO_GAUSSIAN_DIFFUSION,
            kind=kind,
        )

    @property
    def effective_diffusion(self) -> float:
        # Local response ignores any stored diffusion constants
        return 0.0 if self.kind is ModelKind.LOCAL else self.diffusion

    @property
    def effective_surface_diffusion(self) -> float:
        return 0.0 if self.kind is ModelKind.LOCAL else self.surface_diffusion


@dataclass(frozen=True)
class ProbeSpec:
    """Angular frequency (rad/s), distance above the surface (cm), temperature (K)."""

    omega: float
    z0: float
    temperature: float | None = None

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ParameterDomainError(f"angular frequency must be positive, got {self.omega!r}")
        if not (self.z0 > 0 and math.isfinite(self.z0)):
            raise ParameterDomainError(f"distance z0 must be positive, got {self.z0!r}")
        if self.temperature is not None and not self.temperature > 0:
            raise ParameterDomainError(f"temperature must be positive, got {self.temperature!r}")

    @classmethod
    def from_si(cls, omega, z0, temperature=None):
        return cls(omega=omega, z0=z0 * SI_TO_GAUSSIAN_LENGTH, temperature=temperature)


@dataclass(frozen=True)
class DerivedScales:
    """Secondary scales of a (medium, probe) pair, all in cm or dimensionless."""

    skin_depth: float
    wavelength: float
    screening_length: float
    surface_screening_length: float
    d0: float
    epsilon: complex
    omega: float
    sigma: float
    diffusion: float
    surface_diffusion: float

    @property
    def omega_delta_over_c(self) -> float:
        return self.omega * self.skin_depth / C_LIGHT

    @property
    def d0_bulk(self) -> float:
        """Bulk diffusion in skin-depth units, D/(omega delta^2)."""
        return self.diffusion / (self.omega * self.skin_depth**2)

    @property
    def electric_scale(self) -> float:
        """Factor (8 pi sigma/omega) delta^3 turning Im alpha into the scaled value."""
        return 8.0 * math.pi * self.sigma / self.omega * self.skin_depth**3


def derive_scales(medium: MediumSpec, probe: ProbeSpec) -> DerivedScales:
    sigma, omega = medium.sigma, probe.omega
    if not (sigma > 0 and omega > 0):
        raise ParameterDomainError("sigma and omega must be positive")
    d = medium.effective_diffusion
    ds = medium.effective_surface_diffusion
    delta = C_LIGHT / math.sqrt(2.0 * math.pi * sigma * omega)
    return DerivedScales(
        skin_depth=delta,
        wavelength=2.0 * math.pi * C_LIGHT / omega,
        screening_length=math.sqrt(d / (4.0 * math.pi * sigma)),
        surface_screening_length=math.sqrt(ds / (4.0 * math.pi * sigma)),
        d0=ds / (omega * delta**2),
        epsilon=complex(1.0, 4.0 * math.pi * sigma / omega),
        omega=omega,
        sigma=sigma,
        diffusion=d,
        surface_diffusion=ds,
    )


@dataclass(frozen=True)
class DimensionlessSpec:
    """Parameterization used by the figures: omega*delta/c, D0 and a grid in delta units.

    ``d0_bulk`` is D/(omega delta^2) for the continuous-charge model; when left
    as None it follows ``d0`` (equal bulk and surface diffusion).
    """

    omega_delta_over_c: float
    d0: float = 0.0
    d0_bulk: float | None = None
    kind: ModelKind = ModelKind.CHARGE_LAYER
    grid: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind.parse(self.kind))
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        if not self.omega_delta_over_c > 0:
            raise ParameterDomainError("omega*delta/c must be positive")
        if not self.d0 >= 0:
            raise ParameterDomainError("D0 must be >= 0")
        if self.d0_bulk is not None and not self.d0_bulk >= 0:
            raise ParameterDomainError("bulk D0 must be >= 0")
        g = self.grid
        if any(not x > 0 for x in g) or any(b <= a for a, b in zip(g, g[1:])):
            raise ParameterDomainError("grid must be strictly positive and ascending")

    @property
    def bulk(self) -> float:
        return self.d0 if self.d0_bulk is None else self.d0_bulk


def from_dimensionless(spec: DimensionlessSpec) -> tuple[MediumSpec, ProbeSpec]:
    """Physical parameters with the skin depth normalized to 1 cm.

    With delta = 1 cm the frequency is omega = (omega delta/c) c and the
    conductivity follows from delta^2 = c^2/(2 pi sigma omega).
    """
    w = spec.omega_delta_over_c
    omega = w * C_LIGHT
    sigma = C_LIGHT / (2.0 * math.pi * w)
    kind = spec.kind
    medium = MediumSpec(
        sigma=sigma,
        diffusion=spec.bulk * omega,
        surface_diffusion=spec.d0 * omega,
        kind=kind,
    )
    z0 = spec.grid[0] if spec.grid else 1.0
    return medium, ProbeSpec(omega=omega, z0=z0)


def validity_report(medium: MediumSpec, probe: ProbeSpec) -> list[str]:
    """Warnings for every violated regime assumption; empty when all hold."""
    s = derive_scales(medium, probe)
    out = []
    a0 = max(s.screening_length, s.surface_screening_length)
    if a0 / probe.z0 >= 0.1:
        out.append(
            f"screening length not small against distance: a0/z0 = {a0 / probe.z0:.3g} >= 0.1"
        )
    if probe.z0 / s.wavelength >= 0.1:
        out.append(
            f"distance not small against vacuum wavelength: z0/lambda = {probe.z0 / s.wavelength:.3g} >= 0.1"
        )
    bulk = s.diffusion * probe.omega / C_LIGHT**2
    if bulk >= 0.01:
        out.append(f"bulk diffusion correction D omega/c^2 = {bulk:.3g} >= 0.01 is neglected")
    surf = s.surface_diffusion * probe.omega / C_LIGHT**2
    if surf >= 0.01:
        out.append(f"surface diffusion correction Ds omega/c^2 = {surf:.3g} >= 0.01 is neglected")
    return out
