"""Scaling benchmarks: time one top-level combine per size, fit a log-log slope."""
from __future__ import annotations

import csv
import gc
import io
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, TextIO

import numpy as np

from .circuits import family as get_family
from .io import MAGIC

HEADER = ["k", "K", "reps", "mean_ns", "min_ns", "max_ns", "omitted"]


@dataclass
class BenchRecord:
    family: str
    k: int
    K: int
    reps: int
    times_ns: list[int] = field(default_factory=list)
    omitted: bool = False

    @property
    def mean_ns(self) -> float:
        return float(np.mean(self.times_ns)) if self.times_ns else float("nan")

    @property
    def min_ns(self) -> int:
        return min(self.times_ns) if self.times_ns else 0

    @property
    def max_ns(self) -> int:
        return max(self.times_ns) if self.times_ns else 0


def _timed(fn: Callable[[], object]) -> tuple[int, object]:
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter_ns()
        out = fn()
        elapsed = time.perf_counter_ns() - t0
    finally:
        if gc_was_enabled:
            gc.enable()
    return elapsed, out


def run_benchmark(family: str, max_k: int, reps: int = 10, timeout_s: float = 60.0,
                  min_k: int = 1,
                  progress: Callable[[BenchRecord], None] | None = None) -> list[BenchRecord]:
    """Time ``reps`` combines per ``k`` after one discarded warm-up.

    Building the operands is not timed. A build or combine slower than
    ``timeout_s`` marks the row omitted and stops the sweep.
    """
    fam = get_family(family)
    limit = int(timeout_s * 1e9)
    records = []
    for k in range(min_k, max_k + 1):
        t0 = time.perf_counter_ns()
        f, g = fam.build(k)
        build_ns = time.perf_counter_ns() - t0
        rec = BenchRecord(family, k, fam.result_size(f, g), reps)
        if build_ns > limit:
            rec.omitted = True
        else:
            warm, result = _timed(lambda: fam.combine(f, g))
            assert result.K == rec.K
            del result
            if warm > limit:
                rec.omitted = True
            else:
                for _ in range(reps):
                    elapsed, result = _timed(lambda: fam.combine(f, g))
                    del result
                    rec.times_ns.append(elapsed)
                    if elapsed > limit:
                        rec.omitted = True
                        break
        records.append(rec)
        if progress is not None:
            progress(rec)
        if rec.omitted:
            break
    return records


def write_csv(records: Iterable[BenchRecord], out: TextIO, family: str, seed: int = 0) -> None:
    out.write(f"# {MAGIC} family={family} seed={seed}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        if r.times_ns:
            timing = [f"{r.mean_ns:.1f}", r.min_ns, r.max_ns]
        else:
            timing = ["", "", ""]
        w.writerow([r.k, r.K, len(r.times_ns), *timing, int(r.omitted)])


def read_csv(source: str | Path | TextIO) -> list[dict]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = []
    for row in csv.DictReader(io.StringIO("\n".join(lines))):
        rows.append({
            "k": int(row["k"]),
            "K": int(row["K"]),
            "reps": int(row["reps"]),
            "mean_ns": float(row["mean_ns"]) if row["mean_ns"] else None,
            "min_ns": int(row["min_ns"]) if row["min_ns"] else None,
            "max_ns": int(row["max_ns"]) if row["max_ns"] else None,
            "omitted": row["omitted"] == "1",
        })
    return rows


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual: float
    points: int


def slope_fit(rows: list[dict] | str | Path, k_min: int | None = None,
              k_max: int | None = None) -> SlopeFit:
    """Least-squares slope of log2(mean time) against log2(K).

    ``residual`` is the root-mean-square deviation from the fitted line in
    log2 units.
    """
    if not isinstance(rows, list):
        rows = read_csv(rows)
    pts = [(r["K"], r["mean_ns"]) for r in rows
           if not r["omitted"] and r["mean_ns"]
           and (k_min is None or r["k"] >= k_min) and (k_max is None or r["k"] <= k_max)]
    if len(pts) < 2:
        raise ValueError("need at least two timed rows to fit a slope")
    x = np.log2([p[0] for p in pts])
    y = np.log2([p[1] for p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return SlopeFit(float(slope), float(intercept), resid, len(pts))


def top_k_fit(rows: list[dict], count: int = 6) -> SlopeFit:
    timed = sorted(r["k"] for r in rows if not r["omitted"] and r["mean_ns"])
    if not timed:
        raise ValueError("no timed rows")
    chosen = timed[-count:]
    return slope_fit(rows, chosen[0], chosen[-1])


def gnuplot_script(csv_path: str, family: str) -> str:
    return "\n".join([
        "set datafile separator ','",
        "set logscale xy 2",
        "set xlabel 'nodes K'",
        "set ylabel 'time (ns)'",
        f"set title '{family}'",
        f"plot '{csv_path}' every ::1 using 2:4:5:6 with yerrorlines title 'mean (min/max)'",
        "",
    ])
