"""Interference aggregation and SINR of UEs and D2D receivers.

Scalar helpers (`aggregate_d2d_interference`, `sinr_ue`, ...) work on explicit
positions and `ChannelDraw` objects.  `CarrierScene` holds the same quantities
as gain matrices for one carrier and one TTI, which is what the admission loop
evaluates repeatedly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .channel import ChannelDraw


def dbm_to_watts(p_dbm: float) -> float:
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_w: float) -> float:
    return 10.0 * np.log10(p_w) + 30.0


@dataclass(frozen=True)
class PowerConfig:
    p_bs: float = 39.8
    p_d2d: float = 0.1
    p_ue_ul: float = 0.2
    noise_power: float = dbm_to_watts(-95.0)
    p_d_max: float = 0.1

    def __post_init__(self):
        for name in ("p_bs", "p_d2d", "p_ue_ul", "noise_power"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.p_d2d > self.p_d_max:
            raise ValueError("p_d2d exceeds p_d_max")


class Interferer(NamedTuple):
    position: tuple
    draw: ChannelDraw


def _dist(a, b) -> float:
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def aggregate_d2d_interference(victim, actives: Sequence[Interferer], power: float,
                               exclusion_radius: float) -> float:
    """Sum of ``G L P / l(R)`` over active D2D transmitters outside the exclusion disc."""
    total = 0.0
    for position, draw in actives:
        if _dist(victim, position) < exclusion_radius:
            continue
        total += float(draw.gain) * power
    return total


@dataclass(frozen=True)
class InterferenceField:
    exclusion_radius: float
    interferers: tuple = ()
    power: float = 0.1

    def at(self, victim) -> float:
        return aggregate_d2d_interference(victim, self.interferers, self.power, self.exclusion_radius)


def ue_interference(d2d_rx, ue_tx, draw: ChannelDraw, power: float) -> float:
    """Single-source interference at a D2D receiver.

    Under downlink traffic the source is the co-channel BS (``power = P_BS``);
    the uplink form passes the scheduled UE and ``P_u``.
    """
    return float(draw.gain) * power


def sinr_ue(bs_draw: ChannelDraw, powers: PowerConfig, i_d: float) -> float:
    return float(bs_draw.gain) * powers.p_bs / (powers.noise_power + i_d)


def sinr_d2d(own_draw: ChannelDraw, powers: PowerConfig, i_u: float, i_dd: float) -> float:
    return float(own_draw.gain) * powers.p_d2d / (powers.noise_power + i_u + i_dd)


@dataclass(frozen=True, eq=False)
class CarrierScene:
    """Everything needed to evaluate SINRs on one carrier for one TTI.

    ``link_gain[i, j]`` is the gain from D2D transmitter ``i`` to receiver
    ``j``; off-diagonal entries inside the exclusion radius are zero.
    ``ue_gain[i]`` is transmitter ``i`` to the scheduled UE, also
    exclusion-masked.  ``primary_interference[j]`` is the co-channel primary
    interference (I_u) at receiver ``j`` in watts.
    """

    ue_signal: float
    noise: float
    p_d2d: float
    ue_gain: np.ndarray
    link_gain: np.ndarray
    primary_interference: np.ndarray

    @property
    def ue_snr(self) -> float:
        return self.ue_signal / self.noise

    def ue_interference(self, active) -> float:
        active = np.asarray(active, dtype=int)
        return float(self.p_d2d * self.ue_gain[active].sum())

    def ue_sinr(self, active) -> float:
        return self.ue_signal / (self.noise + self.ue_interference(active))

    def d2d_sinr(self, active) -> np.ndarray:
        """SINR of each receiver in ``active`` with all of ``active`` transmitting."""
        active = np.asarray(active, dtype=int)
        if active.size == 0:
            return np.empty(0)
        g = self.link_gain[np.ix_(active, active)]
        own = np.diag(g).copy()
        np.fill_diagonal(g, 0.0)
        mutual = self.p_d2d * g.sum(axis=0)
        return self.p_d2d * own / (self.noise + self.primary_interference[active] + mutual)
