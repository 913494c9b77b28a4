"""Scenario configuration.

`ScenarioConfig` is flat on purpose: every field maps 1:1 to a ``key = value``
line of the config file format handled in :mod:`crd2d.cli`.  The grouped views
(`serving_geometry`, `powers`, `d2d_fading`, ...) are derived on demand.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Tuple

from .channel import FadingParams
from .radio import PowerConfig, dbm_to_watts
from .topology import ArrivalProcess, CellGeometry


class ConfigError(ValueError):
    """Invalid configuration value; ``key`` names the offending field."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


CANDIDATE_ORDERS = ("arrival", "nearest", "random")
SCHEDULERS = ("round_robin", "random")
INTERFERENCE_SOURCES = ("downlink", "uplink")
D2D_PLACEMENTS = ("region_b", "cell")
CR_UTILITY_MODES = ("cumulative", "cr_only")


@dataclass(frozen=True)
class ScenarioConfig:
    # geometry (per cell; both cells share the same shape)
    bs_height_m: float = 30.0
    coverage_radius_m: float = 500.0
    region_a_outer_m: float = 150.0
    region_b_outer_m: float = 350.0
    inter_bs_distance_m: float = 1000.0
    ue_count: int = 50
    d2d_dist_min_m: float = 10.0
    d2d_dist_max_m: float = 50.0
    d2d_placement: str = "region_b"
    # powers
    p_bs_w: float = 39.8
    p_d2d_max_w: float = 0.1
    p_d2d_w: float = 0.1
    p_ue_w: float = 0.2
    noise_dbm: float = -95.0
    # fading
    shadow_sigma_cell_db: float = 8.0
    shadow_sigma_d2d_db: float = 4.0
    gamma_shape_cell: float = 1.0
    gamma_scale_cell: float = 1.0
    gamma_shape_d2d: float = 1.0
    gamma_scale_d2d: float = 1.0
    min_distance_m: float = 1.0
    exclusion_radius_m: float = 5.0
    # traffic and rate
    d2d_arrival_rate: float = 20.0
    bandwidth_hz: float = 10e6
    cqi_table: str = ""
    zero_rate_penalty: float = -1e6
    # admission
    thresholds_db: Tuple[float, ...] = (0.0, 2.0, 4.0, 6.0, 8.0)
    candidate_order: str = "arrival"
    cr_enabled: bool = True
    cr_utility: str = "cumulative"
    interference_source: str = "downlink"
    # run control
    scheduler: str = "round_robin"
    fixed_drop: bool = False
    tti_count: int = 10_000
    seed: int = 1

    def __post_init__(self):
        object.__setattr__(self, "thresholds_db", tuple(float(t) for t in self.thresholds_db))
        self.validate()

    def validate(self) -> None:
        def need(ok: bool, key: str, msg: str) -> None:
            if not ok:
                raise ConfigError(key, msg)

        need(self.bs_height_m > 0, "bs_height_m", "must be > 0")
        need(self.region_a_outer_m > 0, "region_a_outer_m", "must be > 0")
        need(self.region_a_outer_m < self.region_b_outer_m, "region_b_outer_m",
             "requires region_a_outer_m < region_b_outer_m")
        need(self.region_b_outer_m < self.coverage_radius_m, "coverage_radius_m",
             "requires region_b_outer_m < coverage_radius_m")
        need(self.inter_bs_distance_m > 0, "inter_bs_distance_m", "must be > 0")
        need(self.ue_count >= 1, "ue_count", "must be >= 1")
        need(0 < self.d2d_dist_min_m <= self.d2d_dist_max_m, "d2d_dist_max_m",
             "requires 0 < d2d_dist_min_m <= d2d_dist_max_m")
        need(self.d2d_placement in D2D_PLACEMENTS, "d2d_placement", f"must be one of {D2D_PLACEMENTS}")
        for key in ("p_bs_w", "p_d2d_max_w", "p_d2d_w", "p_ue_w"):
            need(getattr(self, key) > 0, key, "must be > 0")
        need(self.p_d2d_w <= self.p_d2d_max_w, "p_d2d_w", "requires p_d2d_w <= p_d2d_max_w")
        for key in ("shadow_sigma_cell_db", "shadow_sigma_d2d_db"):
            need(getattr(self, key) >= 0, key, "must be >= 0")
        for key in ("gamma_shape_cell", "gamma_scale_cell", "gamma_shape_d2d", "gamma_scale_d2d"):
            need(getattr(self, key) > 0, key, "must be > 0")
        need(self.min_distance_m > 0, "min_distance_m", "must be > 0")
        need(self.exclusion_radius_m >= 0, "exclusion_radius_m", "must be >= 0")
        need(self.d2d_arrival_rate > 0, "d2d_arrival_rate", "must be > 0")
        need(self.bandwidth_hz > 0, "bandwidth_hz", "must be > 0")
        need(len(self.thresholds_db) >= 1, "thresholds_db", "needs at least one value")
        need(all(t >= 0 for t in self.thresholds_db), "thresholds_db", "values must be >= 0 dB")
        need(self.candidate_order in CANDIDATE_ORDERS, "candidate_order", f"must be one of {CANDIDATE_ORDERS}")
        need(self.cr_utility in CR_UTILITY_MODES, "cr_utility", f"must be one of {CR_UTILITY_MODES}")
        need(self.interference_source in INTERFERENCE_SOURCES, "interference_source",
             f"must be one of {INTERFERENCE_SOURCES}")
        need(self.scheduler in SCHEDULERS, "scheduler", f"must be one of {SCHEDULERS}")
        need(self.tti_count >= 1, "tti_count", "must be >= 1")
        need(0 <= self.seed < 2**64, "seed", "must fit in an unsigned 64-bit integer")

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    @property
    def serving_geometry(self) -> CellGeometry:
        return CellGeometry((0.0, 0.0), self.bs_height_m, self.coverage_radius_m,
                            self.region_a_outer_m, self.region_b_outer_m)

    @property
    def neighbor_geometry(self) -> CellGeometry:
        return CellGeometry((self.inter_bs_distance_m, 0.0), self.bs_height_m, self.coverage_radius_m,
                            self.region_a_outer_m, self.region_b_outer_m)

    @property
    def powers(self) -> PowerConfig:
        return PowerConfig(self.p_bs_w, self.p_d2d_w, self.p_ue_w, dbm_to_watts(self.noise_dbm),
                           p_d_max=self.p_d2d_max_w)

    @property
    def cellular_fading(self) -> FadingParams:
        return FadingParams(self.shadow_sigma_cell_db, self.gamma_shape_cell, self.gamma_scale_cell)

    @property
    def d2d_fading(self) -> FadingParams:
        return FadingParams(self.shadow_sigma_d2d_db, self.gamma_shape_d2d, self.gamma_scale_d2d)

    @property
    def arrivals(self) -> ArrivalProcess:
        return ArrivalProcess(self.d2d_arrival_rate, self.seed)


CONFIG_FIELDS = tuple(f.name for f in dataclasses.fields(ScenarioConfig))
