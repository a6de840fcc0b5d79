import math

import numpy as np
import pytest

from surfnoise.asymptotics import (
    DBXX_FAR_COEFF,
    DBXX_SUB_COEFF,
    NoFormulaError,
    RegimeLabel,
    asymptotic_alpha,
    asymptotic_magnetic,
    classify_regime,
    magnetic_suppression,
    scaled_alpha,
)
from surfnoise.kernels import ReducedMedium
from surfnoise.response import delta_b_xx, response_reduced, scaled_from_reduced
from surfnoise.scales import DimensionlessSpec, MediumSpec, ProbeSpec, derive_scales, from_dimensionless


def dimless(w, d0, kind="charge_layer"):
    m, p = from_dimensionless(DimensionlessSpec(w, d0, kind=kind))
    return derive_scales(m, p)


def numeric(channel, kind, z, d0=0.0, w=1e-6, d0_bulk=0.0):
    p = ReducedMedium.skin_units(w, d0, d0_bulk, kind)
    return scaled_from_reduced(channel, p, response_reduced(channel, p, z).value)


def test_classification():
    s = dimless(1e-6, 100.0)
    assert classify_regime(s, 1e-3).label is RegimeLabel.SUB_SKIN
    assert classify_regime(s, 1e2).label is RegimeLabel.SKIN_TO_WAVELENGTH
    assert classify_regime(s, 1.0).label is RegimeLabel.CROSSOVER
    # z0/lambda = z0/delta * w/(2 pi)
    assert classify_regime(s, 1e6).label is RegimeLabel.RADIATIVE
    r = classify_regime(s, 5.0)
    assert r.in_z4_window and r.z_over_diffusive == pytest.approx(0.5)
    assert not classify_regime(s, 20.0).in_z4_window
    assert not classify_regime(dimless(1e-6, 0.0), 5.0).in_z4_window


def test_crossover_has_no_formula():
    s = dimless(1e-6, 10.0)
    with pytest.raises(NoFormulaError):
        asymptotic_alpha("alpha_zz", "charge_layer", s, 1.0)
    with pytest.raises(NoFormulaError):
        asymptotic_magnetic("delta_b_xx", "charge_layer", s, 1.0)


@pytest.mark.parametrize("z", [0.01, 30.0])
@pytest.mark.parametrize("channel", ["alpha_zz", "alpha_xx"])
def test_layer_without_diffusion_is_local(z, channel):
    a = asymptotic_alpha(channel, "charge_layer", dimless(1e-6, 0.0), z)
    b = asymptotic_alpha(channel, "local", dimless(1e-6, 0.0, "local"), z)
    assert a.scaled == b.scaled


def test_layer_sub_skin_enhancement():
    a = asymptotic_alpha("alpha_zz", "charge_layer", dimless(1e-6, 10.0), 0.01).scaled
    b = asymptotic_alpha("alpha_zz", "local", dimless(1e-6, 10.0, "local"), 0.01).scaled
    assert a == pytest.approx(11 * b, rel=1e-14)


def test_diffusion_term_equals_one():
    d0 = 200.0
    z = math.sqrt(1.5 * d0)
    a = asymptotic_alpha("alpha_zz", "charge_layer", dimless(1e-6, d0), z)
    assert a.scaled == pytest.approx(2 / z**2, rel=1e-14)


def test_raw_values():
    s = dimless(1e-6, 0.0, "local")
    a = asymptotic_alpha("alpha_zz", "local", s, 0.01)
    assert a.raw == pytest.approx(s.omega / (8 * math.pi * s.sigma) / 0.01**3, rel=1e-12)


@pytest.mark.parametrize(
    "channel,near,form,base_power,corr_power",
    [
        ("alpha_zz", True, "resolved", 3, 3),
        ("alpha_xx", True, "resolved", 3, 3),
        ("alpha_zz", False, "resolved", 2, 4),
        ("alpha_xx", False, "resolved", 2, 4),
        ("alpha_xx", False, "printed", 2, 6),
    ],
)
def test_homogeneity(channel, near, form, base_power, corr_power):
    # every term scales with the quoted power of t = delta/z0
    d0 = 7.0

    def base(t):
        return scaled_alpha(channel, "charge_layer", 0.0, t, near, form)

    def corr(t):
        return scaled_alpha(channel, "charge_layer", d0, t, near, form) - base(t)

    assert base(0.02) / base(0.01) == pytest.approx(2.0**base_power, rel=1e-12)
    assert corr(0.02) / corr(0.01) == pytest.approx(2.0**corr_power, rel=1e-6)


def test_continuous_returns_local():
    s = dimless(1e-6, 1.0, "continuous_charge")
    a = asymptotic_alpha("alpha_xx", "continuous_charge", s, 30.0)
    assert a.scaled == pytest.approx((1 / 30.0) ** 2, rel=1e-14)


@pytest.mark.parametrize("z", [0.01, 0.03])
@pytest.mark.parametrize("channel", ["alpha_zz", "alpha_xx"])
@pytest.mark.parametrize("kind,d0", [("local", 0.0), ("charge_layer", 10.0), ("continuous_charge", 1.0)])
def test_numeric_agreement_sub_skin(z, channel, kind, d0):
    s = dimless(1e-6, d0, kind)
    a = asymptotic_alpha(channel, kind, s, z).scaled
    assert numeric(channel, kind, z, d0, d0_bulk=d0) == pytest.approx(a, rel=0.05)


@pytest.mark.parametrize("z", [10.0, 30.0])
@pytest.mark.parametrize("channel", ["alpha_zz", "alpha_xx"])
@pytest.mark.parametrize("kind,d0", [("local", 0.0), ("charge_layer", 10.0), ("continuous_charge", 1.0)])
def test_numeric_agreement_far(z, channel, kind, d0):
    s = dimless(1e-6, d0, kind)
    a = asymptotic_alpha(channel, kind, s, z).scaled
    assert numeric(channel, kind, z, d0, d0_bulk=d0) == pytest.approx(a, rel=0.10)


def test_xx_far_correction_prefactor():
    d0, z = 10.0, np.array([15.0, 30.0])
    corr = np.array([numeric("alpha_xx", "charge_layer", x, d0) - numeric("alpha_xx", "local", x) for x in z])
    pred = np.array([scaled_alpha("alpha_xx", "charge_layer", d0, 1 / x, False) - x**-2 for x in z])
    assert np.allclose(corr / pred, 1.0, atol=0.02)


# magnetic -----------------------------------------------------------------------------------


def test_magnetic_closed_forms():
    s = dimless(1e-6, 10.0)
    d, z = s.skin_depth, 30.0
    a = asymptotic_magnetic("delta_b_xx", "charge_layer", s, z, printed=True)
    from surfnoise.scales import C_LIGHT

    assert a.raw == pytest.approx(s.surface_diffusion / (C_LIGHT * s.sigma) / (d * z**4), rel=1e-14)
    b = asymptotic_magnetic("delta_b_xx", "charge_layer", s, 0.01, printed=True)
    assert b.raw == pytest.approx(s.surface_diffusion / (C_LIGHT * s.sigma) / (d**2 * 0.01**3), rel=1e-14)
    assert asymptotic_magnetic("delta_b_xx", "charge_layer", dimless(1e-6, 0.0), z).raw == 0.0
    assert asymptotic_magnetic("b_xx_local", "local", s, z).raw == pytest.approx(d / (C_LIGHT * z**4))
    with pytest.raises(ValueError):
        asymptotic_magnetic("alpha_zz", "local", s, z)


@pytest.mark.parametrize("z,coeff", [(20.0, DBXX_FAR_COEFF), (0.01, DBXX_SUB_COEFF)])
def test_magnetic_coefficients_against_numerics(z, coeff):
    m, p = from_dimensionless(DimensionlessSpec(1e-6, 10.0, grid=(z,)))
    num = delta_b_xx(m, p).value.imag
    a = asymptotic_magnetic("delta_b_xx", "charge_layer", derive_scales(m, p), z)
    assert num == pytest.approx(a.raw, rel=0.05)


def test_suppression_ratio_matches_screening_estimate():
    # copper-like numbers: sigma ~ 5e17 1/s, 1 MHz, D = D_s = 1e2 cm^2/s
    m = MediumSpec(5e17, 1e2, 1e2, "charge_layer")
    probe = ProbeSpec(2 * math.pi * 1e6, 1.0)
    s = derive_scales(m, probe)
    z = 20 * s.skin_depth
    ratio = magnetic_suppression(s, z)
    estimate = s.screening_length**2 * s.surface_diffusion / (s.skin_depth**2 * s.diffusion)
    assert 0.1 < ratio / estimate < 30
    assert ratio < 1e-10


def test_sub_skin_suppression_order():
    m = MediumSpec(5e17, 0.0, 1.0, "charge_layer")
    probe = ProbeSpec(2 * math.pi * 1e6, 1.0)
    s = derive_scales(m, probe)
    ratio = magnetic_suppression(s, 0.05 * s.skin_depth) * 0.05**2  # scaled to z0 ~ delta
    assert 1e-13 < ratio / s.d0 < 1e-10
