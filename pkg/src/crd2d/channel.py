"""Path loss models and per-link fading draws.

Gains are linear power ratios.  A link's total gain is
``small_scale * large_scale / l(R)`` where ``l(R)`` is the linear path loss.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

MIN_DISTANCE_KM = 0.001

CELLULAR = "cellular"
D2D = "d2d"


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def _clamp(distance_km, min_distance_km: float, counter: Counter | None):
    d = np.asarray(distance_km, dtype=float)
    low = d < min_distance_km
    if counter is not None:
        counter["clamped"] += int(np.count_nonzero(low))
    return np.where(low, min_distance_km, d)


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def path_loss_cellular(distance_km, min_distance_km: float = MIN_DISTANCE_KM,
                       counter: Counter | None = None):
    """BS-UE path loss in dB, ``128.1 + 37.6 log10(d[km])``."""
    d = _clamp(distance_km, min_distance_km, counter)
    return _scalar_or_array(128.1 + 37.6 * np.log10(d))


def path_loss_d2d(distance_km, min_distance_km: float = MIN_DISTANCE_KM,
                  counter: Counter | None = None):
    """Device-to-device path loss in dB, ``148 + 40 log10(d[km])``."""
    d = _clamp(distance_km, min_distance_km, counter)
    return _scalar_or_array(148.0 + 40.0 * np.log10(d))


PATH_LOSS = {CELLULAR: path_loss_cellular, D2D: path_loss_d2d}


@dataclass(frozen=True)
class FadingParams:
    shadow_sigma_db: float = 8.0
    gamma_shape: float = 1.0
    gamma_scale: float = 1.0

    def __post_init__(self):
        if self.shadow_sigma_db < 0:
            raise ValueError("shadow_sigma_db must be >= 0")
        if not (self.gamma_shape > 0 and self.gamma_scale > 0):
            raise ValueError("gamma shape and scale must be > 0")


@dataclass(frozen=True, eq=False)
class ChannelDraw:
    """Fading realization for one link, or an array of links of the same kind.

    Fields are floats for a single link and equally shaped arrays otherwise.
    """

    large_scale_gain: object
    small_scale_gain: object
    path_loss_db: object

    @property
    def gain(self):
        return self.large_scale_gain * self.small_scale_gain * 10.0 ** (-np.asarray(self.path_loss_db) / 10.0)

    def __eq__(self, other):
        if not isinstance(other, ChannelDraw):
            return NotImplemented
        return all(np.array_equal(getattr(self, f), getattr(other, f))
                   for f in ("large_scale_gain", "small_scale_gain", "path_loss_db"))


def draw_channel(link_kind: str, distance_km, params: FadingParams, rng: np.random.Generator,
                 min_distance_km: float = MIN_DISTANCE_KM, counter: Counter | None = None) -> ChannelDraw:
    """Draw log-normal shadowing and gamma small-scale fading for each link.

    Shadowing is ``10**(X/10)`` with ``X ~ N(0, sigma_db**2)``; small-scale
    power gain is ``Gamma(shape, scale)``.  Shadowing is drawn before fading,
    so the stream is consumed in a fixed order.
    """
    pl = PATH_LOSS[link_kind](distance_km, min_distance_km, counter)
    shape = np.shape(distance_km)
    x_db = rng.normal(0.0, 1.0, size=shape) * params.shadow_sigma_db
    large = 10.0 ** (x_db / 10.0)
    small = rng.gamma(params.gamma_shape, params.gamma_scale, size=shape)
    if shape == ():
        return ChannelDraw(float(large), float(small), float(pl))
    return ChannelDraw(large, small, np.asarray(pl))
