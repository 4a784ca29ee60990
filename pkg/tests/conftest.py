"""Shared random-instance helpers for the test suite."""

from __future__ import annotations

import numpy as np

from deoverlap import Layout, Point, Rect


def random_rect(rng: np.random.Generator, span: float = 10.0) -> Rect:
    x, y = rng.uniform(-span, span, size=2)
    hw, hh = rng.uniform(0.2, 2.5, size=2)
    return Rect(Point(float(x), float(y)), float(hw), float(hh))


def random_layout(rng: np.random.Generator, n: int, span: float = 10.0) -> Layout:
    return Layout.from_rects([random_rect(rng, span) for _ in range(n)])


def random_overlapping_pair(rng: np.random.Generator) -> tuple[Rect, Rect]:
    """Overlapping pair with distinct centers, at a random scale."""
    while True:
        a = random_rect(rng)
        # Place b's center strictly inside the sum box so they must overlap.
        hw, hh = rng.uniform(0.2, 2.5, size=2)
        dx = rng.uniform(-0.999, 0.999) * (a.half_width + hw)
        dy = rng.uniform(-0.999, 0.999) * (a.half_height + hh)
        if dx == 0.0 and dy == 0.0:
            continue
        b = Rect(Point(a.center.x + dx, a.center.y + dy), float(hw), float(hh))
        return a, b


def brute_force_pairs(layout: Layout, eps: float = 0.0) -> list[tuple[int, int]]:
    """O(n^2) overlap pair oracle on the raw predicate."""
    from deoverlap import overlaps

    rects = layout.nodes
    return [
        (i, j)
        for i in range(len(rects))
        for j in range(i + 1, len(rects))
        if overlaps(rects[i], rects[j], eps)
    ]
