"""SINR to spectral efficiency mapping, link rates and the log-sum utility."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence, Tuple

import numpy as np

DEFAULT_ZERO_RATE_PENALTY = -1e6


@dataclass(frozen=True)
class CqiTable:
    """Rows of (minimum SINR in dB, spectral efficiency in bit/s/Hz).

    Below the lowest threshold the efficiency is 0.
    """

    thresholds_db: Tuple[float, ...]
    efficiencies: Tuple[float, ...]

    def __post_init__(self):
        th = np.asarray(self.thresholds_db, dtype=float)
        eff = np.asarray(self.efficiencies, dtype=float)
        if th.size == 0 or th.shape != eff.shape:
            raise ValueError("CQI table needs matching, non-empty threshold and efficiency columns")
        if np.any(np.diff(th) <= 0):
            raise ValueError("CQI thresholds must be strictly increasing")
        if np.any(np.diff(eff) <= 0):
            raise ValueError("CQI efficiencies must be strictly increasing")
        if np.any(eff < 0):
            raise ValueError("CQI efficiencies must be >= 0")
        object.__setattr__(self, "_th", th)
        object.__setattr__(self, "_eff", np.concatenate([[0.0], eff]))

    def __len__(self) -> int:
        return len(self.thresholds_db)

    def index(self, sinr_db):
        """CQI index (1-based row number, 0 below the table) for each SINR."""
        return np.searchsorted(self._th, sinr_db, side="right")

    def efficiency(self, sinr_db):
        return self._eff[self.index(sinr_db)]

    @classmethod
    def parse(cls, text: str) -> "CqiTable":
        rows = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"CQI table line {lineno}: expected 'threshold_db efficiency'")
            rows.append((float(parts[0]), float(parts[1])))
        if not rows:
            raise ValueError("CQI table has no rows")
        th, eff = zip(*rows)
        return cls(tuple(th), tuple(eff))

    @classmethod
    def load(cls, path: str | Path) -> "CqiTable":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "".join(f"{t!r} {e!r}\n" for t, e in zip(self.thresholds_db, self.efficiencies))


def default_cqi_table() -> CqiTable:
    return CqiTable.parse(resources.files("crd2d").joinpath("data/lte_cqi.txt").read_text())


def efficiency_of_sinr(sinr_db, table: CqiTable):
    eff = table.efficiency(sinr_db)
    return float(eff) if np.ndim(eff) == 0 else eff


def link_rate(sinr_db, bandwidth: float, table: CqiTable):
    if not bandwidth > 0:
        raise ValueError("bandwidth must be > 0")
    return bandwidth * efficiency_of_sinr(sinr_db, table)


def utility(rates: Iterable[float], zero_rate_penalty: float = DEFAULT_ZERO_RATE_PENALTY) -> float:
    """Sum of natural-log rates; zero-rate links add ``zero_rate_penalty`` each."""
    r = np.asarray(list(rates) if not isinstance(rates, np.ndarray) else rates, dtype=float)
    if r.size == 0:
        return 0.0
    positive = r > 0
    return float(np.log(r[positive]).sum() + zero_rate_penalty * np.count_nonzero(~positive))


def ergodic_rate(sinr_samples: Sequence[float]) -> float:
    """Mean of ``ln(1 + SINR)`` over fading samples, in nats per channel use."""
    s = np.asarray(sinr_samples, dtype=float)
    if s.size == 0:
        raise ValueError("ergodic_rate needs at least one sample")
    return float(np.mean(np.log1p(s)))
