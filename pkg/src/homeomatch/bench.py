"""Benchmark harness: seeded experiment sweeps with CSV output.

An experiment spec is a JSON object:

    {
      "name": "exp1_data_scale",
      "pattern": {"n1": 4, "m1": 3, "labels": "unique"},   or {"file": "..."}
      "data":    {"n2": 500, "m2": 4, "labels": 20},       or {"file": "..."}
      "l": 1, "h": 3,
      "algo": "both",                  ndshd1 | ndshd2 | both
      "repetitions": 5,
      "seed_base": 1,
      "sweep": {"variable": "n2", "values": [200, 400]},   optional
      "timeout_s": 60,
      "order": "mcf"
    }

Pattern and data graphs are regenerated per repetition from seeds
derived deterministically from ``seed_base``, the sweep point index and
the repetition index, so reruns of the same spec produce identical
instances.  The data graph's ``labels`` value fixes the shared label
universe ``L0..L{k-1}``; a generated pattern draws its labels from that
universe, either uniformly (``"random"``) or as distinct tokens
(``"unique"``).

One CSV row is written per (sweep point x repetition x algorithm) with
the search timed separately from setup (matrix construction plus path
enumeration).  Runs hitting the per-run wall-clock guard report the
outcome ``timeout``.  A second CSV carries per-algorithm summary
statistics (max / mean / standard deviation of search time and of
recursion calls).  Timing columns can be suppressed for byte-stable
regression diffing.
"""

from __future__ import annotations

import csv
import json
import random
import statistics
import time
from dataclasses import dataclass, field

from .graph import LabeledGraph, load_graph, random_labeled_graph
from .search import SearchConfig, SearchStats, SearchTimeout, ndshd1, ndshd2

__all__ = [
    "PatternSource",
    "DataSource",
    "ExperimentSpec",
    "RUN_FIELDS",
    "SUMMARY_FIELDS",
    "run_experiment",
    "write_runs_csv",
    "write_summary_csv",
    "format_summary_table",
]

RUN_FIELDS = [
    "experiment", "sweep_variable", "sweep_value", "repetition", "algo",
    "order", "n1", "m1", "n2", "m2", "labels", "l", "h",
    "pattern_seed", "data_seed", "outcome", "setup_s", "search_s",
    "recursion_calls", "max_depth", "mean_backtrack_depth", "states_explored",
]

SUMMARY_FIELDS = [
    "experiment", "algo", "runs", "true_count", "false_count", "timeout_count",
    "search_s_max", "search_s_mean", "search_s_std",
    "calls_max", "calls_mean", "calls_std",
]

_SWEEPABLE = ("n1", "m1", "n2", "m2", "labels", "l", "h")


@dataclass(frozen=True)
class PatternSource:
    n1: int = 4
    m1: float = 3.0
    labels: str = "unique"          # "unique" | "random"
    file: str | None = None


@dataclass(frozen=True)
class DataSource:
    n2: int = 100
    m2: float = 4.0
    labels: int = 10
    file: str | None = None


@dataclass
class ExperimentSpec:
    name: str
    pattern: PatternSource = field(default_factory=PatternSource)
    data: DataSource = field(default_factory=DataSource)
    l: int = 1
    h: int = 3
    algo: str = "both"
    repetitions: int = 1
    seed_base: int = 1
    sweep_variable: str | None = None
    sweep_values: tuple = ()
    timeout_s: float = 60.0
    order: str = "mcf"

    def validate(self):
        if self.algo not in ("ndshd1", "ndshd2", "both"):
            raise ValueError(f"algo must be ndshd1, ndshd2 or both; got {self.algo!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.l < 1 or self.h < self.l:
            raise ValueError("need 1 <= l <= h")
        if self.order not in ("mcf", "ascending"):
            raise ValueError(f"unknown order {self.order!r}")
        if self.sweep_variable is not None:
            if self.sweep_variable not in _SWEEPABLE:
                raise ValueError(f"sweep variable must be one of {_SWEEPABLE}")
            if not self.sweep_values:
                raise ValueError("sweep values must be nonempty")
        if self.pattern.file is None and self.pattern.labels not in ("unique", "random"):
            raise ValueError("pattern labels policy must be 'unique' or 'random'")
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")

    def algorithms(self) -> list[str]:
        return ["ndshd1", "ndshd2"] if self.algo == "both" else [self.algo]

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentSpec":
        pattern = obj.get("pattern", {})
        data = obj.get("data", {})
        sweep = obj.get("sweep") or {}
        spec = cls(
            name=obj["name"],
            pattern=PatternSource(
                n1=int(pattern.get("n1", 4)),
                m1=float(pattern.get("m1", 3.0)),
                labels=pattern.get("labels", "unique"),
                file=pattern.get("file"),
            ),
            data=DataSource(
                n2=int(data.get("n2", 100)),
                m2=float(data.get("m2", 4.0)),
                labels=int(data.get("labels", 10)),
                file=data.get("file"),
            ),
            l=int(obj.get("l", 1)),
            h=int(obj.get("h", 3)),
            algo=obj.get("algo", "both"),
            repetitions=int(obj.get("repetitions", 1)),
            seed_base=int(obj.get("seed_base", 1)),
            sweep_variable=sweep.get("variable"),
            sweep_values=tuple(sweep.get("values", ())),
            timeout_s=float(obj.get("timeout_s", 60.0)),
            order=obj.get("order", "mcf"),
        )
        spec.validate()
        return spec

    @classmethod
    def load(cls, path) -> "ExperimentSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _apply_sweep(spec: ExperimentSpec, value):
    """Spec parameters for one sweep point."""
    p, d, l, h = spec.pattern, spec.data, spec.l, spec.h
    if value is None:
        return p, d, l, h
    var = spec.sweep_variable
    if var == "n1":
        p = PatternSource(int(value), p.m1, p.labels, p.file)
    elif var == "m1":
        p = PatternSource(p.n1, float(value), p.labels, p.file)
    elif var == "n2":
        d = DataSource(int(value), d.m2, d.labels, d.file)
    elif var == "m2":
        d = DataSource(d.n2, float(value), d.labels, d.file)
    elif var == "labels":
        d = DataSource(d.n2, d.m2, int(value), d.file)
    elif var == "l":
        l = int(value)
    elif var == "h":
        h = int(value)
    return p, d, l, h


def _generated_pattern(src: PatternSource, universe: int, seed: int) -> LabeledGraph:
    g = random_labeled_graph(src.n1, src.m1, universe, seed)
    if src.labels == "unique":
        if universe < src.n1:
            raise ValueError("unique pattern labels need a label universe >= n1")
        rng = random.Random(f"{seed}-pattern-labels")
        tokens = rng.sample([f"L{i}" for i in range(universe)], src.n1)
        g = LabeledGraph(g.n, {v: tokens[v - 1] for v in g.vertices}, g.edges)
    return g


def _instance(psrc: PatternSource, dsrc: DataSource, pattern_seed: int,
              data_seed: int):
    if psrc.file is not None:
        g1 = load_graph(psrc.file)
    else:
        g1 = _generated_pattern(psrc, dsrc.labels, pattern_seed)
    if dsrc.file is not None:
        g2 = load_graph(dsrc.file)
    else:
        g2 = random_labeled_graph(dsrc.n2, dsrc.m2, dsrc.labels, data_seed)
    return g1, g2


def run_experiment(spec: ExperimentSpec, include_timing: bool = True,
                   progress=None):
    """Execute the whole sweep; returns (run rows, summary rows).

    Rows come back in deterministic sweep order.  ``progress``, when
    given, is called with each finished run row.
    """
    spec.validate()
    points = spec.sweep_values if spec.sweep_variable else (None,)
    rows = []
    for idx, value in enumerate(points):
        psrc, dsrc, l, h = _apply_sweep(spec, value)
        for rep in range(spec.repetitions):
            base = spec.seed_base + 7919 * idx + 104729 * rep
            pattern_seed, data_seed = 2 * base + 1, 2 * base
            g1, g2 = _instance(psrc, dsrc, pattern_seed, data_seed)
            for algo in spec.algorithms():
                config = SearchConfig(order=spec.order,
                                      deadline=time.monotonic() + spec.timeout_s)
                stats = SearchStats()
                fn = ndshd1 if algo == "ndshd1" else ndshd2
                try:
                    mapping = fn(g1, g2, l, h, config=config, stats=stats)
                    outcome = "true" if mapping is not None else "false"
                except SearchTimeout:
                    outcome = "timeout"
                row = {
                    "experiment": spec.name,
                    "sweep_variable": spec.sweep_variable or "",
                    "sweep_value": "" if value is None else value,
                    "repetition": rep,
                    "algo": algo,
                    "order": spec.order,
                    "n1": g1.n,
                    "m1": psrc.m1 if psrc.file is None else g1.m,
                    "n2": dsrc.n2 if dsrc.file is None else g2.n,
                    "m2": dsrc.m2 if dsrc.file is None else g2.m,
                    "labels": dsrc.labels,
                    "l": l,
                    "h": h,
                    "pattern_seed": pattern_seed,
                    "data_seed": data_seed,
                    "outcome": outcome,
                    "setup_s": stats.setup_time,
                    "search_s": stats.wall_time,
                    "recursion_calls": stats.recursion_calls,
                    "max_depth": stats.max_depth,
                    "mean_backtrack_depth": stats.mean_backtrack_depth,
                    "states_explored": stats.states_explored,
                }
                rows.append(row)
                if progress is not None:
                    progress(row)
    return rows, summarize(spec.name, rows)


def summarize(name: str, rows) -> list[dict]:
    """Per-algorithm outcome counts plus max/mean/std of time and calls.

    Timed-out runs are counted but excluded from the time statistics.
    """
    out = []
    for algo in sorted({r["algo"] for r in rows}):
        sub = [r for r in rows if r["algo"] == algo]
        times = [r["search_s"] for r in sub if r["outcome"] != "timeout"]
        calls = [r["recursion_calls"] for r in sub]
        out.append({
            "experiment": name,
            "algo": algo,
            "runs": len(sub),
            "true_count": sum(r["outcome"] == "true" for r in sub),
            "false_count": sum(r["outcome"] == "false" for r in sub),
            "timeout_count": sum(r["outcome"] == "timeout" for r in sub),
            "search_s_max": max(times, default=0.0),
            "search_s_mean": statistics.fmean(times) if times else 0.0,
            "search_s_std": statistics.stdev(times) if len(times) > 1 else 0.0,
            "calls_max": max(calls, default=0),
            "calls_mean": statistics.fmean(calls) if calls else 0.0,
            "calls_std": statistics.stdev(calls) if len(calls) > 1 else 0.0,
        })
    return out


_TIMING_RUN_FIELDS = ("setup_s", "search_s")
_TIMING_SUMMARY_FIELDS = ("search_s_max", "search_s_mean", "search_s_std")


def _format_cell(name: str, value, include_timing: bool) -> str:
    if name in _TIMING_RUN_FIELDS or name in _TIMING_SUMMARY_FIELDS:
        return f"{value:.6f}" if include_timing else ""
    if name in ("mean_backtrack_depth", "calls_mean", "calls_std"):
        return f"{value:.4f}"
    return str(value)


def _write_csv(path, fields, rows, include_timing):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_format_cell(f, row[f], include_timing) for f in fields])


def write_runs_csv(path, rows, include_timing: bool = True):
    _write_csv(path, RUN_FIELDS, rows, include_timing)


def write_summary_csv(path, summaries, include_timing: bool = True):
    _write_csv(path, SUMMARY_FIELDS, summaries, include_timing)


def format_summary_table(summaries) -> str:
    lines = ["algo      runs  true  false  timeout  t_max[s]  t_mean[s]  t_std[s]  calls_mean"]
    for s in summaries:
        lines.append(
            f"{s['algo']:<8}  {s['runs']:>4}  {s['true_count']:>4}  {s['false_count']:>5}"
            f"  {s['timeout_count']:>7}  {s['search_s_max']:>8.3f}  {s['search_s_mean']:>9.4f}"
            f"  {s['search_s_std']:>8.4f}  {s['calls_mean']:>10.1f}")
    return "\n".join(lines)
