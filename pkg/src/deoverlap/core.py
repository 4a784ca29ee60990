"""Overlap removal by repeatedly growing a spanning tree of the layout.

Each iteration triangulates the current node centers, costs the edges so
that overlapping neighbors get negative cost, extracts a minimum spanning
tree, and stretches every tree edge to its touching parameter. Overlapping
neighbors become exactly separated, while the tree structure keeps the
relative arrangement of the drawing.

The driver runs two phases. Phase 1 iterates on the Delaunay edges alone
until none of them overlap. Because non-adjacent nodes can still intersect
at that point, phase 2 re-runs the same step on the triangulation augmented
with every remaining overlapping pair (found by a sweep line) until the
layout is overlap free.

A layout whose centers coincide has no usable edge direction, so the driver
first applies a tiny deterministic jitter whenever exact duplicates are
present.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .layout import Layout
from .spanning_tree import (
    RootedTree,
    central_node,
    cost_edges,
    minimum_spanning_tree,
)
from .sweep import find_all_overlapping_pairs
from .triangulation import augment_with_overlaps, delaunay

__all__ = [
    "RemovalConfig",
    "RunStats",
    "IterationEvent",
    "grow",
    "grow_positions",
    "remove_overlaps",
    "single_iteration",
    "find_all_overlapping_pairs",
]

# Jitter magnitude used when coincident centers must be separated but the
# configured jitter_rel is 0.
_FALLBACK_JITTER_REL = 1e-9


@dataclass
class RemovalConfig:
    growth_cap: float | None = None  # clamp on the per-edge growth factor (>= 1), None = uncapped
    max_iterations: int = 1000       # total iteration budget across both phases
    jitter_rel: float = 1e-6         # jitter half-width as a fraction of the bbox diagonal
    rng_seed: int = 0                # seed for the jitter PRNG
    eps_overlap: float = 0.0         # overlap depth to ignore when testing convergence

    def __post_init__(self) -> None:
        if self.growth_cap is not None and not self.growth_cap >= 1.0:
            raise ValueError(f"growth_cap must be >= 1 or None, got {self.growth_cap}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not (math.isfinite(self.jitter_rel) and self.jitter_rel >= 0.0):
            raise ValueError(f"jitter_rel must be finite and >= 0, got {self.jitter_rel}")
        if not (math.isfinite(self.eps_overlap) and self.eps_overlap >= 0.0):
            raise ValueError(f"eps_overlap must be finite and >= 0, got {self.eps_overlap}")


@dataclass
class RunStats:
    iterations_phase1: int
    iterations_phase2: int
    converged: bool
    wall_time: float  # seconds


@dataclass(frozen=True)
class IterationEvent:
    """Snapshot handed to an observer at the start of every iteration."""

    phase: int                # 1 = triangulation edges only, 2 = augmented
    index: int                # 1-based across both phases
    overlapping_edges: int    # overlapping proximity edges seen this iteration
    layout: Layout            # positions entering the iteration
    tree: RootedTree | None   # tree about to be grown, None on the final check


Observer = Callable[[IterationEvent], None]


def grow_positions(
    centers: np.ndarray, tree: RootedTree, cap: float | None = None
) -> tuple[np.ndarray, int]:
    """Apply one tree-growing pass to raw center positions.

    Walks the tree from the root with an explicit stack (layouts can be one
    long chain, so recursion is out) and places each child at

        new[child] = new[parent] + f * (old[child] - old[parent])

    with f the edge's touching parameter, clamped to cap when given. Returns
    the new centers and the number of position updates, which is exactly the
    node count: the root is pinned and every other node is written once.
    """
    if cap is not None and not cap >= 1.0:
        raise ValueError(f"cap must be >= 1 or None, got {cap}")
    new = np.empty_like(centers)
    new[tree.root] = centers[tree.root]
    updates = 1
    stack = [tree.root]
    while stack:
        u = stack.pop()
        for v in tree.children[u]:
            f = tree.edge_t[v]
            if cap is not None and f > cap:
                f = cap
            new[v] = new[u] + f * (centers[v] - centers[u])
            updates += 1
            stack.append(v)
    return new, updates


def grow(layout: Layout, tree: RootedTree, cap: float | None = None) -> Layout:
    """Layout after one growing pass. Non-overlapping trees come back unchanged."""
    if len(tree.parent) != len(layout):
        raise ValueError(
            f"tree spans {len(tree.parent)} nodes but layout has {len(layout)}"
        )
    if cap is not None and not cap >= 1.0:
        raise ValueError(f"cap must be >= 1 or None, got {cap}")
    new_centers, updates = grow_positions(layout.centers(), tree, cap)
    assert updates == len(layout)
    return layout.with_centers(new_centers)


def _duplicate_center_indices(centers: np.ndarray) -> list[int]:
    seen: dict[tuple[float, float], list[int]] = {}
    for i, (x, y) in enumerate(centers):
        seen.setdefault((float(x), float(y)), []).append(i)
    return sorted(i for g in seen.values() if len(g) > 1 for i in g)


def _jittered(layout: Layout, config: RemovalConfig, rng: np.random.Generator) -> Layout:
    """Separate exactly coincident centers with a small seeded displacement.

    Layouts without coincident centers pass through untouched, keeping
    already resolved inputs bit-identical. When duplicates exist, every node
    is jittered (only the duplicates themselves if jitter_rel is 0) by a
    uniform offset of at most jitter_rel times the bbox diagonal.
    """
    centers = layout.centers()
    dupes = _duplicate_center_indices(centers)
    if not dupes:
        return layout
    min_x, min_y, max_x, max_y = layout.bounding_box()
    diag = math.hypot(max_x - min_x, max_y - min_y)
    rel = config.jitter_rel if config.jitter_rel > 0.0 else _FALLBACK_JITTER_REL
    radius = rel * diag
    targets = list(range(len(layout))) if config.jitter_rel > 0.0 else dupes
    for _ in range(16):
        offsets = rng.uniform(-radius, radius, size=(len(targets), 2))
        centers[targets] += offsets
        if not _duplicate_center_indices(centers):
            return layout.with_centers(centers)
        # Astronomically unlikely: a draw recreated a collision. Redraw for
        # everything still involved.
        targets = _duplicate_center_indices(centers)
    raise RuntimeError("could not separate coincident centers by jittering")


def remove_overlaps(
    layout: Layout,
    config: RemovalConfig | None = None,
    observer: Observer | None = None,
) -> tuple[Layout, RunStats]:
    """Remove all rectangle overlaps from the layout.

    Returns the resolved layout and run statistics; the input layout is not
    modified. With a fixed seed and input the result is bit-identical across
    runs. converged is False only when max_iterations ran out first.
    """
    if config is None:
        config = RemovalConfig()
    if len(layout) == 0:
        raise ValueError("cannot remove overlaps from an empty layout")
    started = time.perf_counter()
    if len(layout) == 1:
        stats = RunStats(1, 0, True, time.perf_counter() - started)
        return layout, stats

    rng = np.random.default_rng(config.rng_seed)
    work = _jittered(layout, config, rng)
    n = len(work)
    iterations_phase1 = 0
    iterations_phase2 = 0
    converged = False
    phase1_clean = False

    def budget_left() -> bool:
        return iterations_phase1 + iterations_phase2 < config.max_iterations

    while budget_left():
        iterations_phase1 += 1
        graph = delaunay(work.centers())
        costed = cost_edges(work, graph)
        overlapping = sum(1 for e in costed if e.t > 1.0)
        if overlapping == 0:
            if observer is not None:
                observer(IterationEvent(1, iterations_phase1, 0, work, None))
            phase1_clean = True
            break
        tree = minimum_spanning_tree(n, costed, central_node(work))
        if observer is not None:
            observer(IterationEvent(1, iterations_phase1, overlapping, work, tree))
        work = grow(work, tree, config.growth_cap)

    while phase1_clean and budget_left():
        pairs = find_all_overlapping_pairs(work, config.eps_overlap)
        if not pairs:
            converged = True
            break
        iterations_phase2 += 1
        graph = augment_with_overlaps(delaunay(work.centers()), pairs)
        costed = cost_edges(work, graph)
        overlapping = sum(1 for e in costed if e.t > 1.0)
        tree = minimum_spanning_tree(n, costed, central_node(work))
        if observer is not None:
            observer(
                IterationEvent(
                    2, iterations_phase1 + iterations_phase2, overlapping, work, tree
                )
            )
        work = grow(work, tree, config.growth_cap)

    if not converged:
        # The budget ran out right after a grow; the layout may be resolved.
        converged = not find_all_overlapping_pairs(work, config.eps_overlap)
    stats = RunStats(
        iterations_phase1,
        iterations_phase2,
        converged,
        time.perf_counter() - started,
    )
    return work, stats


def single_iteration(
    layout: Layout,
    config: RemovalConfig | None = None,
    augment: bool = False,
) -> tuple[Layout, int]:
    """One triangulate-cost-tree-grow pass, for tracing and tests.

    Returns the grown layout and the number of overlapping proximity edges
    seen before growing. With augment=True the proximity graph additionally
    contains every overlapping pair, as in phase 2 of remove_overlaps.
    """
    if config is None:
        config = RemovalConfig()
    if len(layout) < 2:
        return layout, 0
    rng = np.random.default_rng(config.rng_seed)
    work = _jittered(layout, config, rng)
    graph = delaunay(work.centers())
    if augment:
        graph = augment_with_overlaps(
            graph, find_all_overlapping_pairs(work, config.eps_overlap)
        )
    costed = cost_edges(work, graph)
    overlapping = sum(1 for e in costed if e.t > 1.0)
    if overlapping == 0:
        return work, 0
    tree = minimum_spanning_tree(len(work), costed, central_node(work))
    return grow(work, tree, config.growth_cap), overlapping
