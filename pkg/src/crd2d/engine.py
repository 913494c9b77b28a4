"""TTI loop, metric aggregation and threshold sweeps.

Every random quantity of a TTI comes from a stream keyed by
``(seed, tti_index, purpose)``, so sweep points see identical drops, arrivals
and fading (common random numbers) and only the admission threshold differs.
"""
from __future__ import annotations

import dataclasses
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .admission import AdmissionPolicy, AdmissionResult, admit, link_rates
from .channel import CELLULAR, D2D, ChannelDraw, draw_channel
from .config import ScenarioConfig
from .radio import CarrierScene
from .rate import CqiTable, default_cqi_table, link_rate
from .topology import NodeSet, deploy_nodes, draw_arrivals, stream

PLACEMENT_STREAM = 1
FADING_STREAM = 2
SCHEDULER_STREAM = 3
ORDER_STREAM = 4
FIXED_DROP_KEY = 2**32


def load_table(config: ScenarioConfig) -> CqiTable:
    return CqiTable.load(config.cqi_table) if config.cqi_table else default_cqi_table()


def _derived_seed(seed: int, *key: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint64)[0])


def _distance_km(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.hypot(a[..., 0] - b[..., 0], a[..., 1] - b[..., 1]) / 1000.0


@dataclass(frozen=True, eq=False)
class TtiScene:
    """Drop, scheduling decision and fading of one TTI; threshold independent.

    ``draws`` keys: ``bs_ue`` and ``nbs_nue`` (BS to scheduled UE),
    ``d2d_ue`` / ``d2d_nue`` (each D2D transmitter to the serving / neighbor
    UE), ``d2d_d2d`` (transmitter ``i`` to receiver ``j``) and ``src_rx`` /
    ``nsrc_rx`` (primary interferer to each receiver on the serving /
    neighbor carrier).
    """

    tti_index: int
    nodes: NodeSet
    serving_ue: int
    neighbor_ue: int
    order: Tuple[int, ...]
    draws: Mapping[str, ChannelDraw]
    serving: CarrierScene
    neighbor: CarrierScene
    clamped: int = 0

    @property
    def arrivals(self) -> int:
        return len(self.nodes.d2d_pairs)


def _order(nodes: NodeSet, rule: str, rng: np.random.Generator) -> Tuple[int, ...]:
    n = len(nodes.d2d_pairs)
    if rule == "arrival":
        return tuple(range(n))
    if rule == "nearest":
        sep = np.array([p.separation for p in nodes.d2d_pairs])
        return tuple(int(i) for i in np.argsort(sep, kind="stable"))
    return tuple(int(i) for i in rng.permutation(n))


def _nodes_for_tti(config: ScenarioConfig, tti_index: int, arrivals: int) -> NodeSet:
    nodes = deploy_nodes(config, _derived_seed(config.seed, tti_index, PLACEMENT_STREAM), arrivals)
    if config.fixed_drop:
        base = deploy_nodes(config, _derived_seed(config.seed, FIXED_DROP_KEY, PLACEMENT_STREAM), 0)
        nodes = dataclasses.replace(nodes, serving_ues=base.serving_ues, neighbor_ues=base.neighbor_ues)
    return nodes


def build_scene(config: ScenarioConfig, tti_index: int) -> TtiScene:
    arrivals = draw_arrivals(config.arrivals, tti_index)
    nodes = _nodes_for_tti(config, tti_index, arrivals)

    if config.scheduler == "round_robin":
        s_ue = n_ue = tti_index % config.ue_count
    else:
        s_ue, n_ue = (int(i) for i in stream(config.seed, tti_index, SCHEDULER_STREAM).integers(
            config.ue_count, size=2))
    order = _order(nodes, config.candidate_order, stream(config.seed, tti_index, ORDER_STREAM))

    ue = np.asarray(nodes.serving_ues[s_ue])
    nue = np.asarray(nodes.neighbor_ues[n_ue])
    tx, rx = nodes.d2d_tx, nodes.d2d_rx
    min_km = config.min_distance_m / 1000.0
    rng = stream(config.seed, tti_index, FADING_STREAM)
    counter: Counter = Counter()
    cell_f, d2d_f = config.cellular_fading, config.d2d_fading

    def draw(kind, dist):
        return draw_channel(kind, dist, d2d_f if kind == D2D else cell_f, rng, min_km, counter)

    dist_ue = _distance_km(tx, ue)
    dist_nue = _distance_km(tx, nue)
    dist_dd = _distance_km(tx[:, None, :], rx[None, :, :])
    draws = {
        "bs_ue": draw(CELLULAR, _distance_km(nodes.serving_bs, ue)),
        "nbs_nue": draw(CELLULAR, _distance_km(nodes.neighbor_bs, nue)),
        "d2d_ue": draw(D2D, dist_ue),
        "d2d_nue": draw(D2D, dist_nue),
        "d2d_d2d": draw(D2D, dist_dd),
    }
    powers = config.powers
    if config.interference_source == "downlink":
        draws["src_rx"] = draw(CELLULAR, _distance_km(nodes.serving_bs, rx))
        draws["nsrc_rx"] = draw(CELLULAR, _distance_km(nodes.neighbor_bs, rx))
        p_src = powers.p_bs
    else:
        draws["src_rx"] = draw(D2D, _distance_km(ue, rx))
        draws["nsrc_rx"] = draw(D2D, _distance_km(nue, rx))
        p_src = powers.p_ue_ul

    excl_km = config.exclusion_radius_m / 1000.0
    link_gain = np.array(draws["d2d_d2d"].gain, dtype=float).reshape(arrivals, arrivals)
    off = ~np.eye(arrivals, dtype=bool)
    link_gain[off & (dist_dd < excl_km)] = 0.0
    ue_gain = np.where(dist_ue < excl_km, 0.0, draws["d2d_ue"].gain)
    nue_gain = np.where(dist_nue < excl_km, 0.0, draws["d2d_nue"].gain)

    serving = CarrierScene(float(draws["bs_ue"].gain) * powers.p_bs, powers.noise_power, powers.p_d2d,
                           np.asarray(ue_gain, dtype=float).reshape(arrivals), link_gain,
                           np.asarray(draws["src_rx"].gain * p_src, dtype=float).reshape(arrivals))
    neighbor = CarrierScene(float(draws["nbs_nue"].gain) * powers.p_bs, powers.noise_power, powers.p_d2d,
                            np.asarray(nue_gain, dtype=float).reshape(arrivals), link_gain,
                            np.asarray(draws["nsrc_rx"].gain * p_src, dtype=float).reshape(arrivals))
    return TtiScene(tti_index, nodes, s_ue, n_ue, order, draws, serving, neighbor, counter["clamped"])


@dataclass(frozen=True)
class TtiRecord:
    tti_index: int
    threshold_db: float
    serving_ue: int
    ue_snr_db: float
    ue_sinr_db: float
    ue_rate_bps: float
    ue_baseline_rate_bps: float
    neighbor_ue: int
    nbr_snr_db: float
    nbr_sinr_db: float
    nbr_rate_bps: float
    nbr_baseline_rate_bps: float
    arrivals: int
    d2d_served: int
    crd2d_served: int
    blocked: int
    max_utility: float
    max_utility_cr: float
    stop_serving: str
    stop_cr: str
    d2d_ids: Tuple[int, ...] = ()
    d2d_sinr_db: Tuple[float, ...] = ()
    d2d_rates_bps: Tuple[float, ...] = ()
    crd2d_ids: Tuple[int, ...] = ()
    crd2d_sinr_db: Tuple[float, ...] = ()
    crd2d_rates_bps: Tuple[float, ...] = ()
    clamped: int = 0

    @property
    def system_throughput(self) -> float:
        return self.ue_rate_bps + sum(self.d2d_rates_bps) + sum(self.crd2d_rates_bps)


def policy_for(config: ScenarioConfig, sinr_th_db: float) -> AdmissionPolicy:
    return AdmissionPolicy(sinr_th_db, config.candidate_order, config.cr_enabled, config.cr_utility,
                           config.zero_rate_penalty)


def _db(x) -> float:
    with np.errstate(divide="ignore"):
        return float(10.0 * np.log10(x))


def record_from(scene: TtiScene, result: AdmissionResult, sinr_th_db: float, table: CqiTable,
                bandwidth: float) -> TtiRecord:
    s, n = scene.serving, scene.neighbor
    ue_snr, ue_sinr = _db(s.ue_snr), _db(s.ue_sinr(result.d2d_ids))
    nbr_snr, nbr_sinr = _db(n.ue_snr), _db(n.ue_sinr(result.crd2d_ids))
    d2d_sinr = tuple(_db(x) for x in s.d2d_sinr(result.d2d_ids))
    cr_sinr = tuple(_db(x) for x in n.d2d_sinr(result.crd2d_ids))
    return TtiRecord(
        tti_index=scene.tti_index,
        threshold_db=float(sinr_th_db),
        serving_ue=scene.serving_ue,
        ue_snr_db=ue_snr,
        ue_sinr_db=ue_sinr,
        ue_rate_bps=float(link_rate(ue_sinr, bandwidth, table)),
        ue_baseline_rate_bps=float(link_rate(ue_snr, bandwidth, table)),
        neighbor_ue=scene.neighbor_ue,
        nbr_snr_db=nbr_snr,
        nbr_sinr_db=nbr_sinr,
        nbr_rate_bps=float(link_rate(nbr_sinr, bandwidth, table)),
        nbr_baseline_rate_bps=float(link_rate(nbr_snr, bandwidth, table)),
        arrivals=result.arrivals,
        d2d_served=result.d2d_served,
        crd2d_served=result.crd2d_served,
        blocked=result.blocked,
        max_utility=float(result.max_utility),
        max_utility_cr=float(result.max_utility_cr),
        stop_serving=result.stop_serving.value,
        stop_cr=result.stop_cr.value,
        d2d_ids=tuple(result.d2d_ids),
        d2d_sinr_db=d2d_sinr,
        d2d_rates_bps=tuple(float(r) for r in link_rates(result.d2d_ids, s, table, bandwidth)),
        crd2d_ids=tuple(result.crd2d_ids),
        crd2d_sinr_db=cr_sinr,
        crd2d_rates_bps=tuple(float(r) for r in link_rates(result.crd2d_ids, n, table, bandwidth)),
        clamped=scene.clamped,
    )


def admit_scene(scene: TtiScene, policy: AdmissionPolicy, table: CqiTable, bandwidth: float) -> AdmissionResult:
    return admit(scene.order, scene.nodes.cr_d2d_pairs, policy, scene.serving, scene.neighbor, table, bandwidth)


def run_tti(config: ScenarioConfig, tti_index: int, sinr_th_db: Optional[float] = None,
            table: Optional[CqiTable] = None) -> TtiRecord:
    """Simulate one TTI at one threshold (defaults to the first sweep value)."""
    th = config.thresholds_db[0] if sinr_th_db is None else sinr_th_db
    table = table or load_table(config)
    scene = build_scene(config, tti_index)
    result = admit_scene(scene, policy_for(config, th), table, config.bandwidth_hz)
    return record_from(scene, result, th, table, config.bandwidth_hz)


def simulate(config: ScenarioConfig, thresholds: Optional[Sequence[float]] = None,
             table: Optional[CqiTable] = None, tti_count: Optional[int] = None) -> Dict[float, List[TtiRecord]]:
    """Records per threshold; each TTI's scene is built once and shared by all thresholds."""
    thresholds = tuple(float(t) for t in (config.thresholds_db if thresholds is None else thresholds))
    table = table or load_table(config)
    n = config.tti_count if tti_count is None else tti_count
    policies = {th: policy_for(config, th) for th in thresholds}
    out: Dict[float, List[TtiRecord]] = {th: [] for th in thresholds}
    for tti in range(n):
        scene = build_scene(config, tti)
        for th, policy in policies.items():
            result = admit_scene(scene, policy, table, config.bandwidth_hz)
            out[th].append(record_from(scene, result, th, table, config.bandwidth_hz))
    return out


@dataclass(frozen=True, eq=False)
class CdfSeries:
    values: np.ndarray
    probabilities: np.ndarray

    @classmethod
    def from_samples(cls, samples: Iterable[float]) -> "CdfSeries":
        v = np.sort(np.asarray(list(samples), dtype=float))
        p = np.arange(1, v.size + 1, dtype=float) / v.size if v.size else np.empty(0)
        return cls(v, p)

    def __len__(self) -> int:
        return self.values.size

    def __call__(self, x) -> np.ndarray:
        """Empirical CDF evaluated at ``x``."""
        if self.values.size == 0:
            return np.zeros_like(np.asarray(x, dtype=float))
        return np.searchsorted(self.values, x, side="right") / self.values.size

    def median(self) -> float:
        return float(np.median(self.values)) if self.values.size else float("nan")


POPULATIONS = ("ue", "d2d", "nbr_ue", "crd2d")


@dataclass(frozen=True, eq=False)
class MetricBundle:
    threshold_db: float
    eta_mean: float
    eta_serving_mean: float
    blocking_mean: float
    blocking_series: np.ndarray
    cdfs: Mapping[str, CdfSeries]
    system_throughput_mean: float
    baseline_throughput_mean: float

    @property
    def gain_vs_no_d2d(self) -> float:
        return self.system_throughput_mean / self.baseline_throughput_mean

    def median(self, population: str) -> float:
        return self.cdfs[population].median()


def aggregate(records: Sequence[TtiRecord]) -> MetricBundle:
    """Per-TTI means and the four throughput CDFs.

    ``eta_mean`` counts D2D links reusing spectrum on either carrier;
    ``eta_serving_mean`` counts the serving carrier only, which equals what a
    CR-disabled run admits under the same random numbers.  The gain is total
    throughput (scheduled UE plus all D2D links) over the interference-free
    UE rate.
    """
    if not records:
        raise ValueError("aggregate needs at least one record")
    served = np.array([r.d2d_served + r.crd2d_served for r in records], dtype=float)
    blocked = np.array([r.blocked for r in records], dtype=float)
    cdfs = {
        "ue": CdfSeries.from_samples(r.ue_rate_bps for r in records),
        "d2d": CdfSeries.from_samples(x for r in records for x in r.d2d_rates_bps),
        "nbr_ue": CdfSeries.from_samples(r.nbr_rate_bps for r in records),
        "crd2d": CdfSeries.from_samples(x for r in records for x in r.crd2d_rates_bps),
    }
    return MetricBundle(
        threshold_db=records[0].threshold_db,
        eta_mean=float(served.mean()),
        eta_serving_mean=float(np.mean([r.d2d_served for r in records])),
        blocking_mean=float(blocked.mean()),
        blocking_series=blocked,
        cdfs=cdfs,
        system_throughput_mean=float(np.mean([r.system_throughput for r in records])),
        baseline_throughput_mean=float(np.mean([r.ue_baseline_rate_bps for r in records])),
    )


def sweep(config: ScenarioConfig, thresholds: Optional[Sequence[float]] = None,
          table: Optional[CqiTable] = None) -> Dict[float, MetricBundle]:
    return {th: aggregate(recs) for th, recs in simulate(config, thresholds, table).items()}
