"""Greedy two-phase D2D admission (serving carrier, then neighbor carrier).

Both phases walk an ordered candidate list and stop at the first candidate
that either pushes the protected UE's SINR below ``SNR - SINR_th`` (dB) or
lowers the log-sum utility.  Rejected candidates are blocked for the TTI.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .radio import CarrierScene
from .rate import DEFAULT_ZERO_RATE_PENALTY, CqiTable, link_rate, utility


class StopReason(str, enum.Enum):
    DEMAND_EXHAUSTED = "demand_exhausted"
    SINR_GUARD = "sinr_guard"
    UTILITY_DECREASE = "utility_decrease"
    DISABLED = "disabled"


@dataclass(frozen=True)
class AdmissionPolicy:
    """Admission knobs for one sweep point.

    ``cr_utility="cumulative"`` scores the neighbor-carrier phase with the
    serving links' utility included, so the first CR candidate is compared
    with the serving phase's final utility.  ``"cr_only"`` scores CR links
    alone but still compares the first one against that serving value.
    """

    sinr_th_db: float
    candidate_order: str = "arrival"
    cr_enabled: bool = True
    cr_utility: str = "cumulative"
    zero_rate_penalty: float = DEFAULT_ZERO_RATE_PENALTY

    def __post_init__(self):
        if self.sinr_th_db < 0:
            raise ValueError("sinr_th_db must be >= 0")
        if self.candidate_order not in ("arrival", "nearest", "random"):
            raise ValueError(f"unknown candidate_order {self.candidate_order!r}")
        if self.cr_utility not in ("cumulative", "cr_only"):
            raise ValueError(f"unknown cr_utility {self.cr_utility!r}")


@dataclass(frozen=True)
class PhaseResult:
    served: Tuple[int, ...]
    utility: float
    trace: Tuple[float, ...]  # utility after each admitted candidate
    stop_reason: StopReason


@dataclass(frozen=True)
class AdmissionResult:
    arrivals: int
    d2d_ids: Tuple[int, ...]
    crd2d_ids: Tuple[int, ...]
    max_utility: float
    max_utility_cr: float
    stop_serving: StopReason
    stop_cr: StopReason
    trace: Tuple[float, ...] = ()
    trace_cr: Tuple[float, ...] = ()

    @property
    def d2d_served(self) -> int:
        return len(self.d2d_ids)

    @property
    def crd2d_served(self) -> int:
        return len(self.crd2d_ids)

    @property
    def blocked(self) -> int:
        return self.arrivals - self.d2d_served - self.crd2d_served


def link_rates(admitted: Sequence[int], scene: CarrierScene, table: CqiTable, bandwidth: float) -> np.ndarray:
    sinr = scene.d2d_sinr(admitted)
    if sinr.size == 0:
        return sinr
    with np.errstate(divide="ignore"):
        return link_rate(10.0 * np.log10(sinr), bandwidth, table)


def evaluate_utility(admitted: Sequence[int], scene: CarrierScene, table: CqiTable, bandwidth: float,
                     zero_rate_penalty: float = DEFAULT_ZERO_RATE_PENALTY) -> float:
    """Log-sum rate of ``admitted`` with all of them sharing the carrier."""
    return utility(link_rates(admitted, scene, table, bandwidth), zero_rate_penalty)


def _guard_fails(scene: CarrierScene, trial, ue_snr_db: float, sinr_th_db: float) -> bool:
    return 10.0 * np.log10(scene.ue_sinr(trial)) < ue_snr_db - sinr_th_db


def _greedy(candidates, ue_snr_db, policy, scene, table, bandwidth, base, previous) -> PhaseResult:
    served: list[int] = []
    trace: list[float] = []
    for cand in candidates:
        trial = served + [cand]
        if _guard_fails(scene, trial, ue_snr_db, policy.sinr_th_db):
            return PhaseResult(tuple(served), previous, tuple(trace), StopReason.SINR_GUARD)
        u = base + evaluate_utility(trial, scene, table, bandwidth, policy.zero_rate_penalty)
        if u < previous:
            return PhaseResult(tuple(served), previous, tuple(trace), StopReason.UTILITY_DECREASE)
        served = trial
        previous = u
        trace.append(u)
    return PhaseResult(tuple(served), previous, tuple(trace), StopReason.DEMAND_EXHAUSTED)


def admit_serving_phase(candidates: Sequence[int], ue_snr_db: float, policy: AdmissionPolicy,
                        scene: CarrierScene, table: CqiTable, bandwidth: float) -> PhaseResult:
    return _greedy(candidates, ue_snr_db, policy, scene, table, bandwidth, 0.0, 0.0)


def admit_cr_phase(remaining: Sequence[int], neighbor_ue_snr_db: float, policy: AdmissionPolicy,
                   scene: CarrierScene, table: CqiTable, bandwidth: float,
                   serving_utility: float) -> PhaseResult:
    base = serving_utility if policy.cr_utility == "cumulative" else 0.0
    result = _greedy(remaining, neighbor_ue_snr_db, policy, scene, table, bandwidth, base, serving_utility)
    if not result.served:
        # nothing admitted: report the utility of the (empty) CR set under this scoring
        result = PhaseResult((), base, (), result.stop_reason)
    return result


def admit(order: Sequence[int], cr_only: Sequence[int], policy: AdmissionPolicy,
          serving: CarrierScene, neighbor: CarrierScene, table: CqiTable, bandwidth: float) -> AdmissionResult:
    """Run both phases for one TTI.

    ``order`` is the candidate order over all arrivals; ``cr_only`` marks
    candidates that may not use the serving carrier.  Serving-eligible
    candidates go first, keeping their relative order.
    """
    excluded = set(cr_only)
    eligible = [i for i in order if i not in excluded]
    ordered = eligible + [i for i in order if i in excluded]
    arrivals = len(ordered)

    first = admit_serving_phase(eligible, 10.0 * np.log10(serving.ue_snr), policy, serving, table, bandwidth)
    n_served = len(first.served)
    if not policy.cr_enabled:
        return AdmissionResult(arrivals, first.served, (), first.utility, 0.0, first.stop_reason,
                               StopReason.DISABLED, first.trace, ())
    if n_served >= arrivals:
        base = first.utility if policy.cr_utility == "cumulative" else 0.0
        return AdmissionResult(arrivals, first.served, (), first.utility, base, first.stop_reason,
                               StopReason.DEMAND_EXHAUSTED, first.trace, ())
    second = admit_cr_phase(ordered[n_served:], 10.0 * np.log10(neighbor.ue_snr), policy, neighbor,
                            table, bandwidth, first.utility)
    return AdmissionResult(arrivals, first.served, second.served, first.utility, second.utility,
                           first.stop_reason, second.stop_reason, first.trace, second.trace)
