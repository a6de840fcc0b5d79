"""Wave-vector resolved kernels: decay constants, reflection coefficients, brackets.

The ``*_reduced`` functions are the workhorses.  They take the transverse wave
number in units of a reference length L (normally the skin depth) and a
:class:`ReducedMedium` holding

* ``q = omega L / c``
* ``eps``, the transverse permittivity
* ``d_s = D_s/(omega L^2)`` and ``d_b = D/(omega L^2)``.

In these units the physical magnitudes (sigma ~ 1e17 s^-1 for good metals)
never appear, and every quantity is O(1) apart from ``eps`` itself.  All
functions are vectorized over the wave number.

The expressions are arranged so that small imaginary parts survive: when
Im eps ~ 1e12 the dissipative part of a reflection coefficient is ~1e-12 of
its real part, so forms like ``(eps v0 - v)/(eps v0 + v)`` are rewritten as
``1 - 2 v/(eps v0 + v)`` and differences of square roots are replaced by the
corresponding difference of squares.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .scales import DerivedScales, MediumSpec, ModelKind, ProbeSpec, derive_scales


class UndefinedQuantityError(ValueError):
    """A quantity was requested that the model does not define (e.g. v1 with D = 0)."""


class Polarization(str, enum.Enum):
    TM_Z = "tm_z"
    TM_X = "tm_x"
    TE = "te"


@dataclass(frozen=True)
class ReducedMedium:
    """Dimensionless medium description; see the module docstring."""

    q: float
    eps: complex
    d_s: float = 0.0
    d_b: float = 0.0
    kind: ModelKind = ModelKind.LOCAL

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind.parse(self.kind))
        object.__setattr__(self, "eps", complex(self.eps))
        if not self.q >= 0:
            raise ValueError("q must be >= 0")
        if self.kind is ModelKind.LOCAL:
            object.__setattr__(self, "d_s", 0.0)
            object.__setattr__(self, "d_b", 0.0)

    @classmethod
    def skin_units(cls, omega_delta_over_c, d0=0.0, d0_bulk=0.0, kind=ModelKind.LOCAL):
        """Medium in skin-depth units, where eps = 1 + 2i/(omega delta/c)^2."""
        q = float(omega_delta_over_c)
        return cls(q=q, eps=complex(1.0, 2.0 / q**2), d_s=d0, d_b=d0_bulk, kind=kind)

    @classmethod
    def from_scales(cls, scales: DerivedScales, kind: ModelKind):
        return cls.skin_units(scales.omega_delta_over_c, scales.d0, scales.d0_bulk, kind)

    @property
    def q2_eps_minus_1(self) -> complex:
        return self.q**2 * (self.eps - 1.0)

    @property
    def diffusive_current_factor(self) -> complex:
        """1 + i D_s omega/c^2 multiplying the surface-charge source of E_x."""
        return 1.0 + 1j * self.d_s * self.q**2


def _branch_sqrt(z):
    """Square root with Re >= 0, and Im <= 0 on the cut (outgoing/decaying branch)."""
    r = np.sqrt(np.asarray(z, dtype=complex))
    flip = (r.real < 0) | ((r.real == 0) & (r.imag > 0))
    return np.where(flip, -r, r)


def v0_reduced(K, p: ReducedMedium):
    K = np.asarray(K, dtype=float)
    arg = K * K - p.q**2
    # built explicitly: real above the light line, -i|.| below it
    root = np.sqrt(np.abs(arg))
    return np.where(arg >= 0, root + 0j, -1j * root)


def v_reduced(K, p: ReducedMedium):
    K = np.asarray(K, dtype=float)
    return _branch_sqrt(K * K - p.q**2 - p.q2_eps_minus_1)


def v1_reduced(K, p: ReducedMedium):
    if p.d_b <= 0:
        raise UndefinedQuantityError("v1 is undefined without bulk diffusion (D = 0)")
    K = np.asarray(K, dtype=float)
    # (4 pi sigma - i omega)/D = -i omega eps/D
    return _branch_sqrt(K * K - 1j * p.eps / p.d_b)


def diffusion_ratio(K, p: ReducedMedium):
    """i D_s k^2/omega."""
    K = np.asarray(K, dtype=float)
    return 1j * p.d_s * K * K


def eps_tilde_reduced(K, p: ReducedMedium):
    if p.d_s == 0:
        return np.full(np.shape(K), p.eps, dtype=complex)
    s = diffusion_ratio(K, p)
    return (p.eps + s) / (1.0 + s)


def one_minus_rp(eps_p, v0, v):
    """1 - (eps v0 - v)/(eps v0 + v)."""
    return 2.0 * v / (eps_p * v0 + v)


def r_tm_z_reduced(K, p: ReducedMedium):
    v0, v = v0_reduced(K, p), v_reduced(K, p)
    if p.kind is ModelKind.LOCAL:
        return 1.0 - one_minus_rp(p.eps, v0, v)
    if p.kind is ModelKind.CHARGE_LAYER:
        return 1.0 - one_minus_rp(eps_tilde_reduced(K, p), v0, v)
    K = np.asarray(K, dtype=float)
    x = (p.eps - 1.0) * K * K / v1_reduced(K, p)
    return 1.0 - 2.0 * (v + x) / (p.eps * v0 + v + x)


def r_te_reduced(K, p: ReducedMedium):
    v0, v = v0_reduced(K, p), v_reduced(K, p)
    return p.q2_eps_minus_1 / (v0 + v) ** 2


def _a17(eps_p, K, v0, v, p):
    # (v - v0)/(v + v0) = -q^2 (eps - 1)/(v + v0)^2
    tm = v0 * v0 * (1.0 - one_minus_rp(eps_p, v0, v))
    te = p.q**2 * p.q2_eps_minus_1 / (v + v0) ** 2
    return 0.5 * (tm + te)


def tm_x_bracket_reduced(K, p: ReducedMedium, printed: bool = False):
    """Bracket of the x-polarized response, without the k e^{-2 v0 z0}/v0 measure.

    For the charge layer the default keeps the diffusive surface current on the
    E_z-sourced term of the tangential jump condition.  That makes the four
    boundary conditions mutually consistent and collapses the bracket to the
    combined local form with eps replaced by eps_tilde.  ``printed=True``
    drops that factor (as is done when D_s omega/c^2 is treated as negligible),
    which is not self-consistent once multiplied by eps - 1.
    """
    K = np.asarray(K, dtype=float)
    v0, v = v0_reduced(K, p), v_reduced(K, p)
    if p.kind is ModelKind.LOCAL:
        return _a17(p.eps, K, v0, v, p)
    if p.kind is ModelKind.CHARGE_LAYER:
        if not printed:
            return _a17(eps_tilde_reduced(K, p), K, v0, v, p)
        s = diffusion_ratio(K, p)
        eps = p.eps
        corr = -s * K * K * v0 * v0 * (eps - 1.0) / (((eps + s) * v0 + (1.0 + s) * v) * (eps * v0 + v))
        return _a17(eps, K, v0, v, p) + corr
    eps = p.eps
    v1 = v1_reduced(K, p)
    n = eps * v0 + v + (eps - 1.0) * K * K / v1
    corr = -eps * (eps - 1.0) * K * K * v0**3 / (v1 * (eps * v0 + v) * n)
    return _a17(eps, K, v0, v, p) + corr


def tm_x_bracket_literal(K, p: ReducedMedium, printed: bool = True):
    """Bracket assembled term by term, as the scattering solution reads.

    Suffers from cancellation when |eps| is large; intended for cross-checks
    at moderate parameters only.
    """
    K = np.asarray(K, dtype=float)
    v0, v = v0_reduced(K, p), v_reduced(K, p)
    eps, q2 = p.eps, p.q**2
    first = 0.5 * (v0 * v0 - q2) * (v - v0) / (v + v0)
    if p.kind is ModelKind.CONTINUOUS_CHARGE:
        v1 = v1_reduced(K, p)
        n = eps * v0 + v + (eps - 1.0) * K * K / v1
        return first + K * K * v0 * v0 * (eps - 1.0) * (v1 - v) / (v1 * (v + v0) * n)
    s = diffusion_ratio(K, p)
    et = eps_tilde_reduced(K, p)
    factor = 1.0 if printed else p.diffusive_current_factor
    return first + factor * K * K * v0 * v0 * (eps - 1.0) / ((1.0 + s) * (v + v0) * (et * v0 + v))


def bzz_numerator_reduced(K, p: ReducedMedium):
    """k^3 (v0 - v)/(v0 + v); the 1/v0 is left to the quadrature."""
    K = np.asarray(K, dtype=float)
    return K**3 * r_te_reduced(K, p)


def dbxx_numerator_reduced(K, p: ReducedMedium, form: str = "printed"):
    """Diffusion-induced change of the xx magnetic bracket, times v0.

    ``form="printed"`` is the commonly quoted integrand.  It agrees with half
    the exact difference of the charge-layer and local brackets only for
    k delta << 1 and does not vanish at eps = 1.  ``form="difference"`` is
    that exact half-difference,

        s v0 q^2 (eps - 1)^2 / [(v0 + v)((eps + s) v0 + (1 + s) v)(eps v0 + v)],

    which gives the same far-zone value and a 4/3 larger sub-skin one.
    """
    K = np.asarray(K, dtype=float)
    if form not in ("printed", "difference"):
        raise ValueError(f"unknown form {form!r}")
    if p.kind is not ModelKind.CHARGE_LAYER or p.d_s == 0:
        return np.zeros(K.shape, dtype=complex)
    v0, v = v0_reduced(K, p), v_reduced(K, p)
    eps = p.eps
    s = diffusion_ratio(K, p)
    if form == "difference":
        return K**3 * s * v0 * p.q2_eps_minus_1 * (eps - 1.0) / (
            (v0 + v) * ((eps + s) * v0 + (1.0 + s) * v) * (eps * v0 + v)
        )
    return (
        K**3
        * s
        / (v + v0)
        * (-v * v0 * (eps * v + v0))
        / ((eps * v0 + v * (1.0 + s)) * (eps * v0 + v))
    )


# physical-unit front end -------------------------------------------------


@dataclass(frozen=True)
class WaveTriple:
    """Normal decay constants in 1/cm for one transverse wave number k (1/cm)."""

    k: np.ndarray
    v0: np.ndarray
    v: np.ndarray
    _v1: np.ndarray | None = None

    @property
    def v1(self):
        if self._v1 is None:
            raise UndefinedQuantityError("v1 is undefined without bulk diffusion (D = 0)")
        return self._v1


@dataclass(frozen=True)
class ReflectionValue:
    model: ModelKind
    polarization: Polarization
    k: np.ndarray
    r: np.ndarray

    @property
    def exceeds_unit_modulus(self):
        """Flag (not an error) for |r| > 1 + 1e-9; meaningful on the evanescent branch."""
        return np.abs(self.r) > 1.0 + 1e-9


def _reduce(k, omega, medium: MediumSpec):
    scales = derive_scales(medium, ProbeSpec(omega=omega, z0=1.0))
    p = ReducedMedium.from_scales(scales, medium.kind)
    delta = scales.skin_depth
    return np.asarray(k, dtype=float) * delta, p, delta


def wave_triple(k, omega, medium: MediumSpec) -> WaveTriple:
    if np.any(np.asarray(k) < 0):
        raise ValueError("k must be >= 0")
    K, p, delta = _reduce(k, omega, medium)
    v1 = None
    if medium.effective_diffusion > 0:
        pb = ReducedMedium(p.q, p.eps, p.d_s, p.d_b, ModelKind.CONTINUOUS_CHARGE)
        v1 = v1_reduced(K, pb) / delta
    return WaveTriple(
        k=np.asarray(k, dtype=float),
        v0=v0_reduced(K, p) / delta,
        v=v_reduced(K, p) / delta,
        _v1=v1,
    )


def effective_permittivity(k, omega, medium: MediumSpec):
    K, p, _ = _reduce(k, omega, medium)
    if p.kind is not ModelKind.CHARGE_LAYER:
        return np.full(K.shape, p.eps, dtype=complex)
    return eps_tilde_reduced(K, p)


def surface_charge(k, omega, medium: MediumSpec, ez_in):
    """Induced sheet charge gamma(k) driven by the normal field just inside."""
    K, p, _ = _reduce(k, omega, medium)
    return (p.eps - 1.0) / (4.0 * np.pi) / (1.0 + diffusion_ratio(K, p)) * ez_in


def reflect_tm_z(k, omega, medium: MediumSpec) -> ReflectionValue:
    K, p, _ = _reduce(k, omega, medium)
    return ReflectionValue(medium.kind, Polarization.TM_Z, np.asarray(k, float), r_tm_z_reduced(K, p))


def reflect_te(k, omega, medium: MediumSpec) -> ReflectionValue:
    K, p, _ = _reduce(k, omega, medium)
    return ReflectionValue(medium.kind, Polarization.TE, np.asarray(k, float), r_te_reduced(K, p))


def tm_x_kernel(k, omega, medium: MediumSpec, printed: bool = False):
    """x-polarized bracket in 1/cm^2."""
    K, p, delta = _reduce(k, omega, medium)
    return tm_x_bracket_reduced(K, p, printed=printed) / delta**2


def magnetic_kernels(k, omega, medium: MediumSpec):
    """(B_zz kernel, Delta B_xx kernel), each per unit c and in 1/cm^2.

    Both include the 1/v0 factor; the exponential e^{-2 v0 z0} is excluded.
    """
    K, p, delta = _reduce(k, omega, medium)
    v0 = v0_reduced(K, p)
    return (
        bzz_numerator_reduced(K, p) / v0 / delta**2,
        dbxx_numerator_reduced(K, p) / v0 / delta**2,
    )
