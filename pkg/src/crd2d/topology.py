"""Two-cell deployment, region classification and Poisson D2D demand."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Tuple

import numpy as np

if TYPE_CHECKING:
    from .config import ScenarioConfig


class Region(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class CellGeometry:
    bs_position: Tuple[float, float]
    bs_height: float
    coverage_radius: float
    region_a_outer: float
    region_b_outer: float

    def __post_init__(self):
        if not self.bs_height > 0:
            raise ValueError("bs_height must be > 0")
        if not 0 < self.region_a_outer:
            raise ValueError("region_a_outer must be > 0")
        if not self.region_a_outer < self.region_b_outer:
            raise ValueError("Region B is empty: region_a_outer must be < region_b_outer")
        if not self.region_b_outer < self.coverage_radius:
            raise ValueError("region_b_outer must be < coverage_radius")


def classify_region(point, geometry: CellGeometry) -> Region:
    """Region tag of ``point`` with half-open bands [0, a), [a, b), [b, R]."""
    dx = point[0] - geometry.bs_position[0]
    dy = point[1] - geometry.bs_position[1]
    dist = float(np.hypot(dx, dy))
    if dist < geometry.region_a_outer:
        return Region.A
    if dist < geometry.region_b_outer:
        return Region.B
    if dist <= geometry.coverage_radius:
        return Region.C
    return Region.OUTSIDE


@dataclass(frozen=True)
class D2DPair:
    tx: Tuple[float, float]
    rx: Tuple[float, float]
    region: Region

    @property
    def separation(self) -> float:
        return float(np.hypot(self.tx[0] - self.rx[0], self.tx[1] - self.rx[1]))


@dataclass(frozen=True)
class NodeSet:
    """One drop: BSs, UEs of both cells and the D2D demand of the serving cell.

    ``cr_d2d_pairs`` lists the indices of pairs whose transmitter is outside
    Region B; those can only be served on the neighbor carrier.
    """

    serving_bs: Tuple[float, float]
    neighbor_bs: Tuple[float, float]
    serving_ues: Tuple[Tuple[float, float], ...]
    neighbor_ues: Tuple[Tuple[float, float], ...]
    d2d_pairs: Tuple[D2DPair, ...]
    cr_d2d_pairs: Tuple[int, ...] = ()

    @property
    def d2d_tx(self) -> np.ndarray:
        return np.array([p.tx for p in self.d2d_pairs], dtype=float).reshape(-1, 2)

    @property
    def d2d_rx(self) -> np.ndarray:
        return np.array([p.rx for p in self.d2d_pairs], dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class ArrivalProcess:
    rate: float
    rng_seed: int = 0

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError("arrival rate must be > 0")


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``(seed, *key)``; the same key always replays."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


ARRIVAL_STREAM = 0


def draw_arrivals(process: ArrivalProcess, tti_index: int) -> int:
    rng = stream(process.rng_seed, tti_index, ARRIVAL_STREAM)
    return int(rng.poisson(process.rate))


def _uniform_annulus(rng: np.random.Generator, n: int, r_in: float, r_out: float,
                     center=(0.0, 0.0)) -> np.ndarray:
    # inverse CDF of the radius for uniform area density
    r = np.sqrt(rng.uniform(r_in**2, r_out**2, size=n))
    r = np.clip(r, r_in, np.nextafter(r_out, 0.0))
    phi = rng.uniform(0.0, 2 * np.pi, size=n)
    return np.column_stack([center[0] + r * np.cos(phi), center[1] + r * np.sin(phi)])


def _as_points(arr: np.ndarray) -> Tuple[Tuple[float, float], ...]:
    return tuple((float(x), float(y)) for x, y in arr)


def deploy_nodes(config: "ScenarioConfig", seed: int, d2d_demand: int | None = None) -> NodeSet:
    """Random drop of UEs in both cells and ``d2d_demand`` D2D pairs in the serving cell.

    UEs are uniform over their cell disc.  With ``d2d_placement = "region_b"``
    every transmitter is uniform over the Region B annulus; with ``"cell"`` it
    is uniform over the whole serving disc.  Receivers sit at a uniform angle
    and a uniform distance in ``[d2d_dist_min_m, d2d_dist_max_m]`` from their
    transmitter.  ``d2d_demand=None`` draws a Poisson count from the seed.
    """
    serving = config.serving_geometry
    neighbor = config.neighbor_geometry
    if d2d_demand is None:
        d2d_demand = draw_arrivals(ArrivalProcess(config.d2d_arrival_rate, seed), 0)
    if d2d_demand < 0:
        raise ValueError("d2d_demand must be >= 0")

    ue_rng, pair_rng = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    serving_ues = _uniform_annulus(ue_rng, config.ue_count, 0.0, serving.coverage_radius,
                                   serving.bs_position)
    neighbor_ues = _uniform_annulus(ue_rng, config.ue_count, 0.0, neighbor.coverage_radius,
                                    neighbor.bs_position)

    if config.d2d_placement == "region_b":
        r_in, r_out = serving.region_a_outer, serving.region_b_outer
    else:
        r_in, r_out = 0.0, serving.coverage_radius
    tx = _uniform_annulus(pair_rng, d2d_demand, r_in, r_out, serving.bs_position)
    sep = pair_rng.uniform(config.d2d_dist_min_m, config.d2d_dist_max_m, size=d2d_demand)
    phi = pair_rng.uniform(0.0, 2 * np.pi, size=d2d_demand)
    rx = tx + np.column_stack([sep * np.cos(phi), sep * np.sin(phi)])

    pairs = tuple(
        D2DPair((float(t[0]), float(t[1])), (float(r[0]), float(r[1])), classify_region(t, serving))
        for t, r in zip(tx, rx)
    )
    cr_only = tuple(i for i, p in enumerate(pairs) if p.region is not Region.B)
    return NodeSet(serving.bs_position, neighbor.bs_position, _as_points(serving_ues),
                   _as_points(neighbor_ues), pairs, cr_only)
