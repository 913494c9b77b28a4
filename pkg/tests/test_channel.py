from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crd2d.channel import (CELLULAR, D2D, FadingParams, db_to_linear, draw_channel, path_loss_cellular,
                           path_loss_d2d)


@pytest.mark.parametrize("d_km, expected", [(1.0, 128.1), (0.5, 116.78127216303), (0.1, 90.5)])
def test_path_loss_cellular(d_km, expected):
    assert path_loss_cellular(d_km) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("d_km, expected", [(1.0, 148.0), (0.05, 95.95880017344), (0.025, 83.91760034688)])
def test_path_loss_d2d(d_km, expected):
    assert path_loss_d2d(d_km) == pytest.approx(expected, abs=1e-9)


def test_path_loss_clamps_and_counts():
    c = Counter()
    assert path_loss_d2d(0.0, counter=c) == path_loss_d2d(0.001)
    path_loss_cellular(np.array([0.0, 0.0005, 0.2]), counter=c)
    assert c["clamped"] == 3


@given(st.floats(0.001, 10.0), st.floats(0.001, 10.0))
def test_linear_gain_strictly_decreasing(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    for pl in (path_loss_cellular, path_loss_d2d):
        if db_to_linear(-pl(lo)) != db_to_linear(-pl(hi)):
            assert db_to_linear(-pl(lo)) > db_to_linear(-pl(hi))


def test_zero_sigma_gives_unit_shadowing():
    draw = draw_channel(D2D, np.full(100, 0.03), FadingParams(0.0, 1.0, 1.0), np.random.default_rng(0))
    assert np.all(draw.large_scale_gain == 1.0)


def test_draw_is_deterministic_per_stream_state():
    p = FadingParams(8.0, 1.0, 1.0)
    a = draw_channel(CELLULAR, 0.3, p, np.random.default_rng(4))
    b = draw_channel(CELLULAR, 0.3, p, np.random.default_rng(4))
    assert a == b
    assert a.path_loss_db == path_loss_cellular(0.3)
    assert a.large_scale_gain > 0 and a.small_scale_gain > 0


def test_gamma_unit_mean():
    draw = draw_channel(D2D, np.full(100_000, 0.02), FadingParams(4.0, 1.0, 1.0), np.random.default_rng(1))
    assert np.mean(draw.small_scale_gain) == pytest.approx(1.0, abs=0.01)


@pytest.mark.parametrize("shape, scale", [(1.0, 1.0), (2.0, 0.5), (4.0, 0.25)])
def test_gamma_moments(shape, scale):
    g = draw_channel(D2D, np.full(100_000, 0.02), FadingParams(0.0, shape, scale),
                     np.random.default_rng(2)).small_scale_gain
    assert np.mean(g) == pytest.approx(shape * scale, rel=0.02)
    assert np.var(g) == pytest.approx(shape * scale**2, rel=0.02)


@pytest.mark.parametrize("sigma", [2.0, 4.0, 8.0])
def test_lognormal_median_is_one(sigma):
    ls = draw_channel(CELLULAR, np.full(100_000, 0.2), FadingParams(sigma), np.random.default_rng(3)).large_scale_gain
    x_db = 10 * np.log10(ls)
    assert np.std(x_db) == pytest.approx(sigma, rel=0.02)
    assert np.median(ls) == pytest.approx(1.0, abs=0.02 * sigma)


def test_invalid_fading_params():
    with pytest.raises(ValueError):
        FadingParams(-1.0)
    with pytest.raises(ValueError):
        FadingParams(4.0, 0.0, 1.0)
