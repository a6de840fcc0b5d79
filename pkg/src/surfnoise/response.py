"""Reflected-field response functions and their thermal noise spectra.

Electric responses are per unit source dipole: alpha_ij = E_i^r(r0)/a_j.
Magnetic ones are per unit magnetic moment.  The integrals keep the full
complex v0 in both the exponential and the 1/v0 weight, so the radiative
(k < omega/c) part is included.  For a vertical dipole near a good conductor
that part adds about +(2/3)(omega/c)^3 to Im alpha_zz, and about the same
amount with opposite sign to Im alpha_xx.  It is negligible while z0 is
well inside the near field (z0^2 omega/c << delta).

Scaled values: electric channels report (8 pi sigma/omega) delta^3 Im alpha,
so the local short-distance law reads (delta/z0)^3; magnetic channels report
c delta^3 Im B.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from . import kernels as kn
from .kernels import ReducedMedium
from .quadrature import QuadResult, QuadSpec, integrate_response
from .scales import C_LIGHT, MediumSpec, ModelKind, ParameterDomainError, ProbeSpec, derive_scales

HBAR = constants.hbar * 1e7  # erg s
K_BOLTZMANN = constants.k * 1e7  # erg/K


class Channel(str, enum.Enum):
    ALPHA_ZZ = "alpha_zz"
    ALPHA_XX = "alpha_xx"
    B_ZZ = "b_zz"
    DELTA_B_XX = "delta_b_xx"

    @property
    def electric(self) -> bool:
        return self in (Channel.ALPHA_ZZ, Channel.ALPHA_XX)


@dataclass(frozen=True)
class ResponseValue:
    channel: Channel
    model: ModelKind
    z0: float
    omega: float
    value: complex  # Gaussian units
    scaled: float
    quad: QuadResult

    @property
    def converged(self) -> bool:
        return self.quad.converged


def _numerator(channel: Channel, p: ReducedMedium):
    if channel is Channel.ALPHA_ZZ:
        return lambda K: K**3 * kn.r_tm_z_reduced(K, p)
    if channel is Channel.ALPHA_XX:
        return lambda K: K * kn.tm_x_bracket_reduced(K, p)
    if channel is Channel.B_ZZ:
        return lambda K: kn.bzz_numerator_reduced(K, p)
    if channel is Channel.DELTA_B_XX:
        if p.kind is not ModelKind.CHARGE_LAYER:
            raise ValueError("delta_b_xx is defined for the charge-layer model only")
        return lambda K: kn.dbxx_numerator_reduced(K, p)
    raise ValueError(f"unknown channel {channel!r}")


def _breakpoints(p: ReducedMedium):
    pts = [1.0]
    if p.d_s > 0:
        pts.append(1.0 / math.sqrt(p.d_s))
    if p.kind is ModelKind.CONTINUOUS_CHARGE and p.d_b > 0:
        pts.append(abs(np.sqrt(-1j * p.eps / p.d_b)))
    return pts


def response_reduced(channel, p: ReducedMedium, z0: float, quad: QuadSpec = QuadSpec()) -> QuadResult:
    """Integral in reference-length units (lengths in L, result times L^3).

    For magnetic channels the result is c L^3 B.
    """
    channel = Channel(channel)
    return integrate_response(
        _numerator(channel, p), p.q, z0, quad, divide_by_v0=True, breakpoints=_breakpoints(p)
    )


def scaled_from_reduced(channel, p: ReducedMedium, value: complex) -> float:
    """Scaled Im response from a skin-depth-units integral."""
    if Channel(channel).electric:
        # 8 pi sigma/omega = 2 Im eps
        return 2.0 * p.eps.imag * value.imag
    return value.imag


def _response(channel, medium: MediumSpec, probe: ProbeSpec, quad: QuadSpec) -> ResponseValue:
    channel = Channel(channel)
    scales = derive_scales(medium, probe)
    delta = scales.skin_depth
    p = ReducedMedium.from_scales(scales, medium.kind)
    res = response_reduced(channel, p, probe.z0 / delta, quad)
    raw = res.value / delta**3
    if not channel.electric:
        raw /= C_LIGHT
    return ResponseValue(
        channel=channel,
        model=medium.kind,
        z0=probe.z0,
        omega=probe.omega,
        value=raw,
        scaled=scaled_from_reduced(channel, p, res.value),
        quad=res,
    )


def alpha_zz(medium: MediumSpec, probe: ProbeSpec, quad: QuadSpec = QuadSpec()) -> ResponseValue:
    return _response(Channel.ALPHA_ZZ, medium, probe, quad)


def alpha_xx(medium: MediumSpec, probe: ProbeSpec, quad: QuadSpec = QuadSpec()) -> ResponseValue:
    return _response(Channel.ALPHA_XX, medium, probe, quad)


def b_zz(medium: MediumSpec, probe: ProbeSpec, quad: QuadSpec = QuadSpec()) -> ResponseValue:
    return _response(Channel.B_ZZ, medium, probe, quad)


def delta_b_xx(medium: MediumSpec, probe: ProbeSpec, quad: QuadSpec = QuadSpec()) -> ResponseValue:
    return _response(Channel.DELTA_B_XX, medium, probe, quad)


@dataclass(frozen=True)
class NoiseResult:
    """Thermal noise derived from a response.

    ``heating_factor`` is Gamma hbar^2/a^2 = 2 n Im alpha, the 0 -> 1 rate per
    squared dipole.  ``spectral_density`` is 2 hbar n Im alpha; in the
    classical limit it tends to ``spectral_density_classical`` = (2 kT/omega)
    Im alpha.  Vacuum (T = 0) fluctuations are not included.
    """

    channel: Channel
    temperature: float
    occupation: float
    bose_factor: float
    heating_factor: float
    spectral_density: float
    spectral_density_classical: float


def bose_factor(x):
    """2/(e^x - 1) with x = hbar omega/(k T)."""
    with np.errstate(over="ignore"):
        return 2.0 / np.expm1(x)


def fdt_noise(resp: ResponseValue, temperature: float) -> NoiseResult:
    if not temperature > 0:
        raise ParameterDomainError(f"temperature must be positive, got {temperature!r}")
    x = HBAR * resp.omega / (K_BOLTZMANN * temperature)
    n = 1.0 / math.expm1(x) if x < 700 else 0.0
    im = resp.value.imag
    return NoiseResult(
        channel=resp.channel,
        temperature=temperature,
        occupation=n,
        bose_factor=2.0 * n,
        heating_factor=2.0 * n * im,
        spectral_density=2.0 * HBAR * n * im,
        spectral_density_classical=2.0 * K_BOLTZMANN * temperature / resp.omega * im,
    )
