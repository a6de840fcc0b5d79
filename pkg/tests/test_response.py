import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfnoise.kernels import ReducedMedium
from surfnoise.response import (
    HBAR,
    K_BOLTZMANN,
    Channel,
    alpha_xx,
    alpha_zz,
    b_zz,
    bose_factor,
    delta_b_xx,
    fdt_noise,
    response_reduced,
    scaled_from_reduced,
)
from surfnoise.scales import (
    C_LIGHT,
    DimensionlessSpec,
    MediumSpec,
    ParameterDomainError,
    ProbeSpec,
    derive_scales,
    from_dimensionless,
)


def scaled(channel, kind, z, d0=0.0, w=1e-6, d0_bulk=None):
    bulk = d0 if d0_bulk is None else d0_bulk
    p = ReducedMedium.skin_units(w, d0, bulk, kind)
    return scaled_from_reduced(channel, p, response_reduced(channel, p, z).value)


# physical front end ----------------------------------------------------------


def test_physical_matches_reduced():
    m, probe = from_dimensionless(DimensionlessSpec(1e-6, 10.0, grid=(0.3,)))
    s = derive_scales(m, probe)
    r = alpha_zz(m, probe)
    assert r.converged
    assert r.scaled == pytest.approx(r.value.imag * s.electric_scale, rel=1e-12)
    assert r.scaled == pytest.approx(scaled("alpha_zz", "charge_layer", 0.3, 10.0), rel=1e-12)


def test_physical_copper():
    # copper at 1 MHz, 50 um above the surface
    m = MediumSpec.from_si(5.8e7)
    probe = ProbeSpec.from_si(2 * math.pi * 1e6, 50e-6)
    s = derive_scales(m, probe)
    assert s.skin_depth == pytest.approx(6.6e-3, rel=0.02)
    r = alpha_zz(m, probe)
    t = s.skin_depth / probe.z0
    assert r.converged and r.scaled > 0
    assert r.value.imag == pytest.approx(r.scaled / s.electric_scale, rel=1e-12)
    assert 0.5 * t**3 < r.scaled < 2 * t**3 + 1


def test_magnetic_units():
    m, probe = from_dimensionless(DimensionlessSpec(1e-6, 1.0, grid=(0.5,)))
    r = b_zz(m, probe)
    assert r.scaled == pytest.approx(C_LIGHT * r.value.imag, rel=1e-12)  # delta = 1 cm


# examples --------------------------------------------------------------------------


def test_local_short_distance():
    assert scaled("alpha_zz", "local", 0.01) == pytest.approx(1e6, rel=0.02)
    assert scaled("alpha_xx", "local", 0.01) == pytest.approx(0.5e6, rel=0.02)


def test_local_far_zone():
    assert scaled("alpha_zz", "local", 20.0) == pytest.approx(2.5e-3, rel=0.05)
    assert scaled("alpha_xx", "local", 20.0) == pytest.approx(2.5e-3, rel=0.05)


def test_layer_enhancement():
    assert scaled("alpha_zz", "charge_layer", 0.01, 10.0) == pytest.approx(11e6, rel=0.02)
    far = scaled("alpha_zz", "charge_layer", 10.0, 10.0)
    assert far == pytest.approx(1e-2 * (1 + 1.5 * 10 * 1e-2), rel=0.10)
    ratio = scaled("alpha_xx", "charge_layer", 0.01, 10.0) / scaled("alpha_zz", "charge_layer", 0.01, 10.0)
    assert ratio == pytest.approx(0.5, abs=0.01)


def test_continuous_charge_small_screening():
    # a0/z0 = 1e-3 at z0 = delta: (a0/delta)^2 = d_b q^2/2
    db = 2 * 1e-6 / 1e-12
    dev = scaled("alpha_zz", "continuous_charge", 1.0, 0.0, d0_bulk=db) / scaled("alpha_zz", "local", 1.0) - 1
    assert abs(dev) < 1e-2


def test_bzz_independent_of_diffusion():
    for z in (0.01, 1.0, 30.0):
        a = scaled("b_zz", "charge_layer", z, 0.0)
        b = scaled("b_zz", "charge_layer", z, 100.0)
        assert a == pytest.approx(b, rel=1e-12)


def test_bzz_vanishes_in_vacuum():
    p = ReducedMedium(q=0.13, eps=1.0)
    assert response_reduced("b_zz", p, 1.0).value == 0


def test_bzz_short_distance_slope():
    z = np.array([0.008, 0.0125])
    v = [scaled("b_zz", "local", x) for x in z]
    slope = math.log(v[1] / v[0]) / math.log(z[1] / z[0])
    assert slope == pytest.approx(-1.0, abs=0.1)


def test_delta_bxx_zero_without_diffusion():
    m, probe = from_dimensionless(DimensionlessSpec(1e-6, 0.0, grid=(1.0,)))
    assert delta_b_xx(m, probe).value == 0


def test_delta_bxx_layer_only():
    m, probe = from_dimensionless(DimensionlessSpec(1e-6, 1.0, kind="local", grid=(1.0,)))
    with pytest.raises(ValueError):
        delta_b_xx(m, probe)


def test_alpha_xx_physical():
    m, probe = from_dimensionless(DimensionlessSpec(1e-6, 0.0, kind="local", grid=(0.01,)))
    assert alpha_xx(m, probe).scaled == pytest.approx(0.5e6, rel=0.02)


# properties --------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["local", "charge_layer", "continuous_charge"]),
    st.sampled_from(["alpha_zz", "alpha_xx"]),
    st.floats(min_value=0.0, max_value=100.0),
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=-6.0, max_value=-1.0),
)
def test_positivity_in_near_field(kind, channel, d0, log_z, log_w):
    z, w = 10.0**log_z, 10.0**log_w
    # radiative part reverses the sign of Im alpha_xx once (8/3) w z^2 ~ 1
    if 8.0 / 3.0 * w * z * z > 0.1:
        return
    d0_bulk = max(d0, 1e-3)
    assert scaled(channel, kind, z, d0, w, d0_bulk) > 0


@pytest.mark.parametrize("kind,d0", [("local", 0.0), ("charge_layer", 10.0), ("charge_layer", 100.0)])
def test_decreasing_with_distance(kind, d0):
    z = np.geomspace(0.01, 100, 25)
    v = np.array([scaled("alpha_zz", kind, x, d0) for x in z])
    assert np.all(np.diff(v) < 0)


@pytest.mark.parametrize("z", [0.01, 1.0, 5.0, 50.0])
def test_non_decreasing_in_diffusion(z):
    v = [scaled("alpha_zz", "charge_layer", z, d0) for d0 in (0.0, 1.0, 10.0, 100.0)]
    assert all(b >= a for a, b in zip(v, v[1:]))


@pytest.mark.parametrize("kind,d0", [("local", 0.0), ("charge_layer", 10.0)])
def test_ratio_laws(kind, d0):
    near = scaled("alpha_xx", kind, 0.003, d0) / scaled("alpha_zz", kind, 0.003, d0)
    assert near == pytest.approx(0.5, abs=0.01)
    if d0 == 0.0:
        # far enough that the O(delta/z0) terms are small, w small enough to stay near field
        far = scaled("alpha_xx", kind, 1000.0, w=1e-10) / scaled("alpha_zz", kind, 1000.0, w=1e-10)
        assert far == pytest.approx(1.0, abs=0.005)


# FDT -------------------------------------------------------------------------------


def _resp(omega):
    m = MediumSpec.from_si(5.8e7)
    return alpha_zz(m, ProbeSpec.from_si(omega, 1e-4))


def test_bose_factor_values():
    assert bose_factor(math.log(2.0)) == 2.0
    assert bose_factor(1e-4) == pytest.approx(2e4, rel=1e-4)
    assert bose_factor(800.0) == 0.0


def test_fdt_noise():
    omega = 2 * math.pi * 1e6
    r = _resp(omega)
    T = HBAR * omega / (K_BOLTZMANN * math.log(2.0))
    n = fdt_noise(r, T)
    assert n.bose_factor == pytest.approx(2.0, rel=1e-12)
    assert n.heating_factor == pytest.approx(2.0 * r.value.imag, rel=1e-12)
    assert n.spectral_density == pytest.approx(2 * HBAR * r.value.imag, rel=1e-12)


def test_fdt_classical_limit():
    omega = 2 * math.pi * 1e6
    r = _resp(omega)
    T = HBAR * omega / (K_BOLTZMANN * 1e-4)
    n = fdt_noise(r, T)
    assert n.spectral_density == pytest.approx(n.spectral_density_classical, rel=1e-4)


def test_fdt_cold_and_invalid():
    r = _resp(2 * math.pi * 1e6)
    assert fdt_noise(r, 1e-9).heating_factor == 0.0
    with pytest.raises(ParameterDomainError):
        fdt_noise(r, 0.0)
    with pytest.raises(ParameterDomainError):
        fdt_noise(r, -3.0)


def test_channel_enum():
    assert Channel("b_zz") is Channel.B_ZZ
    assert Channel.ALPHA_XX.electric and not Channel.DELTA_B_XX.electric
