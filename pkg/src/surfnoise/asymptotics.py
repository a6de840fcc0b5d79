"""Closed-form limits of the response integrals and a distance-regime classifier.

Electric values are returned in the scaled convention (8 pi sigma/omega)
delta^3 Im alpha, so with t = delta/z0:

    ============== ================= ==================================
    model/channel  z0 << delta       delta << z0 << lambda
    ============== ================= ==================================
    local zz       t^3               t^2
    local xx       t^3/2             t^2
    layer zz       (1 + D0) t^3      t^2 (1 + 3/2 D0 t^2)
    layer xx       (1 + D0) t^3/2    t^2 (1 + 3/4 D0 t^2)
    ============== ================= ==================================

The far-zone xx diffusion term was fixed against brute-force quadrature of
the self-consistent charge-layer kernel.  Its TM part is exactly half the zz
integrand, so the correction is half the zz one and falls as z0^-4.  The
often-quoted form (15/16) D0 t^4 is kept as ``xx_far_form="printed"`` for
comparison; quadrature does not reproduce it.

The continuous-charge model returns the local values: its corrections are
of relative order a0/z0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .response import Channel
from .scales import C_LIGHT, DerivedScales, ModelKind

SUB_SKIN_MAX = 0.1
FAR_MIN = 10.0
NEAR_FIELD_MAX = 0.1

#: (coefficient, power of delta/z0) of the far-zone xx diffusion correction
XX_FAR_CORRECTION = (0.75, 2)
XX_FAR_CORRECTION_PRINTED = (15.0 / 16.0, 4)

#: leading-order coefficients of Im Delta B_xx in units of (D_s/c sigma)
DBXX_FAR_COEFF = 3.0 / (32.0 * math.pi)
DBXX_SUB_COEFF = 3.0 / (64.0 * math.pi)


class NoFormulaError(ValueError):
    """No closed-form result applies in the requested distance regime."""


class RegimeLabel(str, enum.Enum):
    SUB_SKIN = "sub_skin"
    SKIN_TO_WAVELENGTH = "skin_to_wavelength"
    CROSSOVER = "crossover"
    RADIATIVE = "radiative"


@dataclass(frozen=True)
class Regime:
    label: RegimeLabel
    z_over_delta: float
    z_over_lambda: float
    z_over_diffusive: float  # z0/(delta sqrt(D0)); inf when D0 = 0
    in_z4_window: bool


@dataclass(frozen=True)
class AsymptoticValue:
    scaled: float
    raw: float
    regime: Regime


def classify_regime(scales: DerivedScales, z0: float) -> Regime:
    zd = z0 / scales.skin_depth
    zl = z0 / scales.wavelength
    if zd < SUB_SKIN_MAX:
        label = RegimeLabel.SUB_SKIN
    elif zd >= FAR_MIN * (1 - 1e-9) and zl < NEAR_FIELD_MAX:
        # inclusive so that z0 = 10 delta, reconstructed from physical units, still qualifies
        label = RegimeLabel.SKIN_TO_WAVELENGTH
    elif zl >= NEAR_FIELD_MAX:
        label = RegimeLabel.RADIATIVE
    else:
        label = RegimeLabel.CROSSOVER
    d0 = scales.d0
    zdiff = zd / math.sqrt(d0) if d0 > 0 else math.inf
    window = d0 > 1 and 1.0 <= zd <= math.sqrt(d0)
    return Regime(label, zd, zl, zdiff, window)


def _require_formula(regime: Regime):
    if regime.label not in (RegimeLabel.SUB_SKIN, RegimeLabel.SKIN_TO_WAVELENGTH):
        raise NoFormulaError(
            f"no asymptotic formula at z0/delta = {regime.z_over_delta:.3g}, "
            f"z0/lambda = {regime.z_over_lambda:.3g} ({regime.label.value}); use the numerics"
        )


def scaled_alpha(channel, model, d0: float, t: float, near: bool, xx_far_form="resolved") -> float:
    """Scaled electric asymptote at t = delta/z0 (``near``: z0 << delta)."""
    channel = Channel(channel)
    model = ModelKind.parse(model)
    if not channel.electric:
        raise ValueError(f"{channel.value} is not an electric channel")
    if model is not ModelKind.CHARGE_LAYER:
        d0 = 0.0
    if near:
        base = t**3 * (1.0 + d0)
        return base if channel is Channel.ALPHA_ZZ else 0.5 * base
    if channel is Channel.ALPHA_ZZ:
        return t**2 * (1.0 + 1.5 * d0 * t**2)
    coeff, power = XX_FAR_CORRECTION if xx_far_form == "resolved" else XX_FAR_CORRECTION_PRINTED
    return t**2 * (1.0 + coeff * d0 * t**power)


def asymptotic_alpha(channel, model, scales: DerivedScales, z0: float, xx_far_form="resolved") -> AsymptoticValue:
    regime = classify_regime(scales, z0)
    _require_formula(regime)
    t = scales.skin_depth / z0
    near = regime.label is RegimeLabel.SUB_SKIN
    scaled = scaled_alpha(channel, model, scales.d0, t, near, xx_far_form)
    return AsymptoticValue(scaled, scaled / scales.electric_scale, regime)


def asymptotic_magnetic(channel, model, scales: DerivedScales, z0: float, printed: bool = False) -> AsymptoticValue:
    """Im Delta B_xx (channel "delta_b_xx") or the local Im B_xx baseline ("b_xx_local").

    Delta B_xx follows D_s/(c sigma) / (delta z0^4) in the far zone and
    D_s/(c sigma) / (delta^2 z0^3) below the skin depth, with the leading
    expansion coefficients 3/(32 pi) and 3/(64 pi); ``printed=True`` drops
    them to give the bare order-of-magnitude forms.  The local baselines are
    delta/(c z0^4) and 1/(c z0 delta^2).
    """
    regime = classify_regime(scales, z0)
    _require_formula(regime)
    near = regime.label is RegimeLabel.SUB_SKIN
    delta = scales.skin_depth
    if channel == "b_xx_local":
        raw = 1.0 / (C_LIGHT * z0 * delta**2) if near else delta / (C_LIGHT * z0**4)
    elif Channel(channel) is Channel.DELTA_B_XX:
        ds = scales.surface_diffusion if ModelKind.parse(model) is ModelKind.CHARGE_LAYER else 0.0
        pref = ds / (C_LIGHT * scales.sigma)
        if near:
            raw = pref / (delta**2 * z0**3) * (1.0 if printed else DBXX_SUB_COEFF)
        else:
            raw = pref / (delta * z0**4) * (1.0 if printed else DBXX_FAR_COEFF)
    else:
        raise ValueError(f"no magnetic asymptote for channel {channel!r}")
    return AsymptoticValue(C_LIGHT * delta**3 * raw, raw, regime)


def magnetic_suppression(scales: DerivedScales, z0: float, printed: bool = True) -> float:
    """Ratio Delta B_xx / local B_xx from the closed forms."""
    d = asymptotic_magnetic("delta_b_xx", ModelKind.CHARGE_LAYER, scales, z0, printed)
    b = asymptotic_magnetic("b_xx_local", ModelKind.LOCAL, scales, z0)
    return d.raw / b.raw
