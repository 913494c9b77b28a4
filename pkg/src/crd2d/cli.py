"""Config files, experiment runs and CSV output.

Config format: one ``key = value`` per line, ``#`` starts a comment, keys are
the field names of `ScenarioConfig`.  Missing keys keep their defaults.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .config import CONFIG_FIELDS, ConfigError, ScenarioConfig
from .engine import POPULATIONS, TtiRecord, aggregate, load_table, simulate

_DEFAULTS = ScenarioConfig()
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}

RECORD_COLUMNS = tuple(f.name for f in dataclasses.fields(TtiRecord))
SUMMARY_COLUMNS = ("threshold_db", "eta_mean", "blocking_mean", "ue_rate_p50", "d2d_rate_p50",
                   "nbr_ue_rate_p50", "crd2d_rate_p50", "system_throughput_mean", "gain_vs_no_d2d",
                   "eta_serving_only_mean")
CDF_COLUMNS = ("value_bps", "cum_prob")
GAIN_DEFINITION = ("mean(serving UE rate + D2D rates + CR-D2D rates) / "
                   "mean(interference-free serving UE rate)")


def _parse_value(key: str, text: str):
    default = getattr(_DEFAULTS, key)
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        text = text[1:-1]
    try:
        if isinstance(default, bool):
            low = text.lower()
            if low in _TRUE:
                return True
            if low in _FALSE:
                return False
            raise ValueError(f"not a boolean: {text!r}")
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        if isinstance(default, tuple):
            return tuple(float(v) for v in text.split(",") if v.strip())
        return text
    except ValueError as exc:
        raise ConfigError(key, f"cannot parse {text!r}: {exc}") from None


def parse_config(text: str, **overrides) -> ScenarioConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_FIELDS:
            raise ConfigError(key, "unknown key")
        values[key] = _parse_value(key, value)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ScenarioConfig(**values)


def load_config(path: str | Path, **overrides) -> ScenarioConfig:
    """Read a config file; keyword overrides (e.g. from CLI flags) win over the file."""
    return parse_config(Path(path).read_text(), **overrides)


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(repr(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(config: ScenarioConfig) -> str:
    return "".join(f"{name} = {_format_value(getattr(config, name))}\n" for name in CONFIG_FIELDS)


def _cell(value) -> str:
    if isinstance(value, tuple):
        return ";".join(_cell(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _threshold_tag(th: float) -> str:
    return str(int(th)) if float(th).is_integer() else repr(float(th))


def _write_csv(path: Path, header: Sequence[str], rows) -> int:
    n = 0
    with path.open("w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
            n += 1
    return n


def _validate_csv(path: Path, header: Sequence[str], n_rows: int) -> None:
    with path.open(newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != tuple(header) or len(rows) - 1 != n_rows:
        raise OSError(f"output validation failed for {path}")


@dataclass(frozen=True)
class RunManifest:
    config_sha256: str
    seed: int
    version: str
    duration_s: float
    outputs: Tuple[str, ...]
    tti_count: int = 0
    thresholds_db: Tuple[float, ...] = ()

    def dumps(self) -> str:
        lines = [
            f"config_sha256 = {self.config_sha256}",
            f"seed = {self.seed}",
            f"version = {self.version}",
            f"duration_s = {self.duration_s!r}",
            f"tti_count = {self.tti_count}",
            f"thresholds_db = {','.join(repr(t) for t in self.thresholds_db)}",
            f"gain_definition = {GAIN_DEFINITION}",
            f"outputs = {','.join(self.outputs)}",
        ]
        return "\n".join(lines) + "\n"


def run_experiment(config: ScenarioConfig, out_dir: str | Path, config_bytes: bytes = b"") -> RunManifest:
    """Run the threshold sweep and write per-threshold CSVs, summary.csv and manifest.txt."""
    start = time.perf_counter()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = load_table(config)
    records = simulate(config, table=table)

    outputs: List[str] = []
    summary_rows = []

    def emit(name: str, header, rows) -> None:
        path = out / name
        n = _write_csv(path, header, rows)
        _validate_csv(path, header, n)
        outputs.append(name)

    for th, recs in records.items():
        tag = _threshold_tag(th)
        emit(f"tti_records_th{tag}.csv", RECORD_COLUMNS,
             ([getattr(r, c) for c in RECORD_COLUMNS] for r in recs))
        bundle = aggregate(recs)
        for pop in POPULATIONS:
            cdf = bundle.cdfs[pop]
            emit(f"cdf_{pop}_th{tag}.csv", CDF_COLUMNS, zip(cdf.values.tolist(), cdf.probabilities.tolist()))
        summary_rows.append((
            float(th), bundle.eta_mean, bundle.blocking_mean,
            *(bundle.median(p) for p in POPULATIONS),
            bundle.system_throughput_mean, bundle.gain_vs_no_d2d, bundle.eta_serving_mean,
        ))
    emit("summary.csv", SUMMARY_COLUMNS, summary_rows)

    manifest = RunManifest(hashlib.sha256(config_bytes).hexdigest(), config.seed, __version__,
                           time.perf_counter() - start, tuple(outputs), config.tti_count,
                           config.thresholds_db)
    (out / "manifest.txt").write_text(manifest.dumps(), encoding="ascii")
    return manifest


def _thresholds(text: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad threshold list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty threshold list")
    return values


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simulate", description=__doc__.splitlines()[0])
    p.add_argument("--config", required=True, help="key = value scenario file (may be empty)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--ttis", type=int, help="TTIs per threshold")
    p.add_argument("--thresholds", type=_thresholds, help="comma-separated SINR_th values in dB")
    p.add_argument("--no-cr", action="store_true", help="disable the neighbor-carrier phase")
    p.add_argument("--order", choices=("arrival", "nearest", "random"))
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = Path(args.config).read_bytes()
        config = parse_config(raw.decode("utf-8"), seed=args.seed, tti_count=args.ttis,
                              thresholds_db=args.thresholds, candidate_order=args.order,
                              cr_enabled=False if args.no_cr else None)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"simulate: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"simulate: invalid config: {exc}", file=sys.stderr)
        return 2
    try:
        manifest = run_experiment(config, args.out, raw)
    except OSError as exc:
        print(f"simulate: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(manifest.outputs)} files to {args.out} in {manifest.duration_s:.1f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
