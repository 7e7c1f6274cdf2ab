import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bochner_opt import (
    ConfigurationError, DualXVector, ExponentPair, PVector, XConfig,
    j_x, j_x_star, x_dual_norm, x_norm, x_pair,
)
from bochner_opt.xspace import duality_map, lp_norms

from strategies import coord, exponent

TOL = 1e-9


@st.composite
def vectors(draw, max_dim=6):
    d = draw(st.integers(1, max_dim))
    cfg = XConfig.lp(d, draw(exponent))
    return PVector(cfg, draw(st.lists(coord, min_size=d, max_size=d)))


def test_exponent_pair_conjugate():
    e = ExponentPair(3.0)
    assert e.q == pytest.approx(1.5)
    assert e.dual().q == pytest.approx(3.0)


@pytest.mark.parametrize("p", [1.0, 0.5, math.inf, -2.0])
def test_exponent_pair_rejects_out_of_range(p):
    with pytest.raises(ConfigurationError):
        ExponentPair(p)


def test_config_and_coords_validated():
    with pytest.raises(ConfigurationError):
        XConfig.lp(0, 2.0)
    with pytest.raises(ConfigurationError):
        PVector(XConfig.lp(3, 2.0), [1.0, 2.0])


def test_coords_read_only():
    x = PVector(XConfig.lp(2, 2.0), [1.0, 2.0])
    with pytest.raises(ValueError):
        x.coords[0] = 5.0


def test_norm_known_value():
    # 27 + 8 + 1 = 36
    x = PVector(XConfig.lp(3, 3.0), [3.0, -2.0, -1.0])
    assert x_norm(x) == pytest.approx(36 ** (1 / 3), abs=TOL)
    assert x_norm(PVector(XConfig.lp(3, 3.0), [1.0, -3.0, 2.0])) == pytest.approx(36 ** (1 / 3), abs=TOL)


def test_duality_map_known_value():
    c = 36 ** (1 / 3)
    got = j_x(PVector(XConfig.lp(3, 3.0), [3.0, -2.0, -1.0])).coords
    np.testing.assert_allclose(got, np.array([9.0, -4.0, -1.0]) / c, atol=TOL, rtol=0)
    got = j_x(PVector(XConfig.lp(3, 3.0), [1.0, -3.0, 2.0])).coords
    np.testing.assert_allclose(got, np.array([1.0, -9.0, 4.0]) / c, atol=TOL, rtol=0)


def test_pair_known_value():
    cfg = XConfig.lp(3, 3.0)
    g = PVector(cfg, [25.0, 37.0, 77.0])
    assert x_pair(DualXVector(cfg, [1.0, -1.0, 0.0]), g) == pytest.approx(-12.0, abs=TOL)
    phi = DualXVector(cfg, np.array([9.0, -4.0, -1.0]) / 36 ** (1 / 3))
    assert x_pair(phi, g) == pytest.approx(0.0, abs=TOL)


def test_pair_rejects_mismatched_config():
    with pytest.raises(ConfigurationError):
        x_pair(DualXVector(XConfig.lp(2, 3.0), [1, 0]), PVector(XConfig.lp(2, 2.0), [1, 0]))


def test_zero_maps_to_zero():
    x = PVector(XConfig.lp(4, 1.3), np.zeros(4))
    assert np.all(j_x(x).coords == 0.0)


def test_extreme_magnitudes_do_not_overflow():
    big = np.array([1e200, -3e200])
    assert np.isfinite(lp_norms(big, 5.5))
    out = duality_map(big, 5.5)
    assert np.all(np.isfinite(out))
    s = 1e-200
    assert np.dot(s * out, s * big) == pytest.approx((s * lp_norms(big, 5.5)) ** 2, rel=1e-12)


@given(vectors())
def test_pair_with_image_is_norm_squared(x):
    n = x_norm(x)
    assert abs(x_pair(j_x(x), x) - n * n) <= TOL * (1 + n * n)


@given(vectors())
def test_image_norm_equals_norm(x):
    assert abs(x_dual_norm(j_x(x)) - x_norm(x)) <= TOL * (1 + x_norm(x))


@given(vectors(), st.floats(-20, 20))
def test_homogeneity(x, lam):
    lhs = j_x(PVector(x.cfg, lam * x.coords)).coords
    np.testing.assert_allclose(lhs, lam * j_x(x).coords, atol=TOL * (1 + abs(lam) * x_norm(x)), rtol=0)


@given(vectors())
def test_round_trips(x):
    scale = 1 + x_norm(x)
    np.testing.assert_allclose(j_x_star(j_x(x)).coords, x.coords, atol=1e-8 * scale, rtol=0)
    phi = DualXVector(x.cfg, x.coords)
    np.testing.assert_allclose(j_x(j_x_star(phi)).coords, phi.coords, atol=1e-8 * scale, rtol=0)


@given(exponent, coord)
def test_one_dimensional_map_is_identity(p, t):
    assert j_x(PVector(XConfig.lp(1, p), [t])).coords[0] == pytest.approx(t, abs=TOL * (1 + abs(t)))


@given(st.lists(coord, min_size=1, max_size=6))
def test_euclidean_map_is_identity(c):
    x = PVector(XConfig.lp(len(c), 2.0), c)
    np.testing.assert_allclose(j_x(x).coords, x.coords, atol=TOL * (1 + x_norm(x)), rtol=0)


@given(vectors(), st.data())
def test_hoelder(x, data):
    c = data.draw(st.lists(coord, min_size=x.cfg.dim, max_size=x.cfg.dim))
    phi = DualXVector(x.cfg, c)
    assert abs(x_pair(phi, x)) <= x_dual_norm(phi) * x_norm(x) * (1 + 1e-12) + TOL
