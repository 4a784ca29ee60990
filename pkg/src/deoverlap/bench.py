"""Random instance generation and the benchmark harness.

Instances are built from a seed alone: rectangle sizes are log-uniform in a
configured range and centers are uniform in a square whose side is solved
(by bisection on the fixed unit-square positions) so that the requested
fraction of nodes starts out overlapping something. Each trial's seed is
derived from (spec seed, node count, trial index), so trials are independent
of each other and of how the loops are ordered, and both growth modes see
identical instances.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .core import RemovalConfig, remove_overlaps
from .geometry import Point, Rect
from .layout import Layout
from .metrics import area_growth

_DENSITY_TOL = 0.02    # acceptable miss on the target overlap fraction
_MAX_BISECTIONS = 40


@dataclass
class BenchmarkSpec:
    node_counts: list[int]
    overlap_density: float = 0.3          # target fraction of nodes with an overlap
    trials: int = 3
    seed: int = 0
    modes: tuple[float | None, ...] = (None, 1.5)  # growth caps, None = uncapped

    def __post_init__(self) -> None:
        if not self.node_counts or any(n < 1 for n in self.node_counts):
            raise ValueError(f"node_counts must be positive, got {self.node_counts}")
        if not 0.0 <= self.overlap_density <= 1.0:
            raise ValueError(f"overlap_density must be in [0, 1], got {self.overlap_density}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.modes:
            raise ValueError("modes must not be empty")
        for cap in self.modes:
            if cap is not None and not cap >= 1.0:
                raise ValueError(f"growth cap must be >= 1 or None, got {cap}")


@dataclass(frozen=True)
class BenchRow:
    n: int
    mode: str
    mean_iterations: float
    mean_wall_time: float
    mean_area_ratio: float
    converged_fraction: float


def mode_label(cap: float | None) -> str:
    return "uncapped" if cap is None else f"capped:{cap:g}"


def parse_mode(label: str) -> float | None:
    if label == "uncapped":
        return None
    if label.startswith("capped:"):
        return float(label.split(":", 1)[1])
    raise ValueError(f"unknown mode {label!r}; use 'uncapped' or 'capped:<cap>'")


def _overlap_fraction(centers: np.ndarray, halves: np.ndarray) -> float:
    """Fraction of nodes overlapping at least one other, O(n^2) chunked."""
    n = len(centers)
    involved = np.zeros(n, dtype=bool)
    chunk = max(1, 2 ** 22 // max(n, 1))
    for start in range(0, n, chunk):
        block = slice(start, min(start + chunk, n))
        dx = np.abs(centers[block, 0][:, None] - centers[None, :, 0])
        dy = np.abs(centers[block, 1][:, None] - centers[None, :, 1])
        hits = (dx < halves[block, 0][:, None] + halves[None, :, 0]) & (
            dy < halves[block, 1][:, None] + halves[None, :, 1]
        )
        hits[np.arange(block.stop - block.start), np.arange(start, block.stop)] = False
        involved[block] |= hits.any(axis=1)
        involved |= hits.any(axis=0)
    return float(np.mean(involved))


def generate_layout(
    n: int,
    density: float,
    seed: int,
    size_range: tuple[float, float] = (20.0, 60.0),
) -> Layout:
    """Seeded random instance with roughly the requested overlap density."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    lo, hi = size_range
    if not (0.0 < lo <= hi):
        raise ValueError(f"invalid size range {size_range}")
    rng = np.random.default_rng(seed)
    halves = np.exp(rng.uniform(math.log(lo), math.log(hi), size=(n, 2))) / 2.0
    unit = rng.random((n, 2))
    if n == 1:
        return Layout.from_rects([_rect(unit[0] * lo, halves[0])])

    # The unit positions stay fixed; only the square's side L is solved.
    # Shrinking L only ever adds overlaps, so the fraction is monotone in L
    # and bisection applies.
    side_lo = 0.0
    side_hi = 4.0 * math.sqrt(float(np.sum(4.0 * halves[:, 0] * halves[:, 1])))
    while _overlap_fraction(unit * side_hi, halves) > density and side_hi < 1e12:
        side_lo = side_hi
        side_hi *= 4.0
    side = side_hi
    for _ in range(_MAX_BISECTIONS):
        mid = (side_lo + side_hi) / 2.0
        frac = _overlap_fraction(unit * mid, halves)
        if abs(frac - density) <= _DENSITY_TOL:
            side = mid
            break
        if frac > density:
            side_lo = mid
        else:
            side_hi = mid
            side = mid
    centers = unit * side
    return Layout.from_rects([_rect(c, h) for c, h in zip(centers, halves)])


def _rect(center: np.ndarray, half: np.ndarray) -> Rect:
    return Rect(Point(float(center[0]), float(center[1])), float(half[0]), float(half[1]))


def trial_seed(base_seed: int, n: int, trial: int) -> int:
    """Stable per-trial seed, independent of loop order."""
    return int(np.random.SeedSequence([base_seed, n, trial]).generate_state(1)[0])


def run_benchmark(spec: BenchmarkSpec) -> list[BenchRow]:
    """Run every (node count, mode) cell and aggregate over trials.

    Trials are independent by construction, so results do not depend on
    execution order and the cells could equally be run concurrently.
    """
    rows: list[BenchRow] = []
    for n in spec.node_counts:
        layouts = [
            generate_layout(n, spec.overlap_density, trial_seed(spec.seed, n, t))
            for t in range(spec.trials)
        ]
        for cap in spec.modes:
            iterations: list[int] = []
            wall_times: list[float] = []
            ratios: list[float] = []
            converged = 0
            for before in layouts:
                after, stats = remove_overlaps(before, RemovalConfig(growth_cap=cap))
                iterations.append(stats.iterations_phase1 + stats.iterations_phase2)
                wall_times.append(stats.wall_time)
                ratios.append(area_growth(before, after)[0])
                converged += int(stats.converged)
            rows.append(
                BenchRow(
                    n=n,
                    mode=mode_label(cap),
                    mean_iterations=float(np.mean(iterations)),
                    mean_wall_time=float(np.mean(wall_times)),
                    mean_area_ratio=float(np.mean(ratios)),
                    converged_fraction=converged / len(layouts),
                )
            )
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    """CSV with a header row; numbers use '.' decimals regardless of locale."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["n", "mode", "mean_iterations", "mean_wall_time", "mean_area_ratio", "converged_fraction"]
    )
    for r in rows:
        writer.writerow(
            [
                r.n,
                r.mode,
                format(r.mean_iterations, ".6g"),
                format(r.mean_wall_time, ".6g"),
                format(r.mean_area_ratio, ".6g"),
                format(r.converged_fraction, ".6g"),
            ]
        )
    return out.getvalue()
