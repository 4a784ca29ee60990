"""All overlapping pairs of a layout via a sweep line.

The sweep runs over x. Active rectangles are indexed by their y-interval in
a static segment tree built over all 2n interval endpoints, which makes the
per-rectangle query output sensitive: a rectangle entering the sweep reports
exactly the active rectangles whose y-interval overlaps its own, in
O(log n + matches). Total cost is O((n + k) log n) for k reported pairs.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort

from .geometry import overlaps
from .layout import Layout


class _IntervalIndex:
    """Dynamic set of half-open intervals over a fixed endpoint universe.

    Supports stab(y) (all stored intervals with lo <= y < hi) and
    low_in_range(lo, hi) (all stored intervals with lo < lo_i < hi), both
    output sensitive.
    """

    def __init__(self, coords: list[float]):
        self._rank = {v: r for r, v in enumerate(coords)}
        size = 1
        while size < max(len(coords), 2):
            size *= 2
        self._size = size
        self._nodes: list[dict[int, None]] = [{} for _ in range(2 * size)]
        self._placed: dict[int, list[int]] = {}  # ident -> node indices
        self._lows: list[tuple[float, int]] = []  # sorted (lo, ident)

    def insert(self, ident: int, lo: float, hi: float) -> None:
        left = self._rank[lo] + self._size
        right = self._rank[hi] + self._size
        where = []
        while left < right:
            if left & 1:
                self._nodes[left][ident] = None
                where.append(left)
                left += 1
            if right & 1:
                right -= 1
                self._nodes[right][ident] = None
                where.append(right)
            left >>= 1
            right >>= 1
        self._placed[ident] = where
        insort(self._lows, (lo, ident))

    def remove(self, ident: int, lo: float) -> None:
        for v in self._placed.pop(ident):
            del self._nodes[v][ident]
        del self._lows[bisect_left(self._lows, (lo, ident))]

    def stab(self, y: float) -> list[int]:
        v = self._rank[y] + self._size
        found: list[int] = []
        while v >= 1:
            found.extend(self._nodes[v])
            v >>= 1
        return found

    def low_in_range(self, lo: float, hi: float, sentinel: int) -> list[int]:
        start = bisect_right(self._lows, (lo, sentinel))
        stop = bisect_left(self._lows, (hi, -1))
        return [ident for _, ident in self._lows[start:stop]]


def find_all_overlapping_pairs(
    layout: Layout, eps: float = 0.0
) -> list[tuple[int, int]]:
    """Every pair of nodes whose rectangles overlap, as sorted index pairs.

    The sweep itself finds pairs with strictly overlapping interiors; with
    eps > 0 those are then filtered down to pairs overlapping by more than
    eps per axis (geometry.overlaps semantics).
    """
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    n = len(layout)
    if n < 2:
        return []
    rects = layout.nodes
    y_lo = [r.min_y for r in rects]
    y_hi = [r.max_y for r in rects]
    # (x, kind, index): exits sort before enters so pairs that only touch
    # in x never coexist in the active set.
    events: list[tuple[float, int, int]] = []
    for i, r in enumerate(rects):
        events.append((r.min_x, 1, i))
        events.append((r.max_x, 0, i))
    events.sort()

    index = _IntervalIndex(sorted({*y_lo, *y_hi}))
    pairs: list[tuple[int, int]] = []
    for _, kind, i in events:
        if kind == 0:
            index.remove(i, y_lo[i])
            continue
        # Active j overlapping i in y, split by which interval starts lower:
        # stab covers y_lo_j <= y_lo_i < y_hi_j, the range scan covers
        # y_lo_i < y_lo_j < y_hi_i. Both sides are exact, so no filtering.
        for j in index.stab(y_lo[i]):
            pairs.append((j, i) if j < i else (i, j))
        for j in index.low_in_range(y_lo[i], y_hi[i], sentinel=n):
            pairs.append((j, i) if j < i else (i, j))
        index.insert(i, y_lo[i], y_hi[i])

    if eps > 0.0:
        pairs = [(i, j) for i, j in pairs if overlaps(rects[i], rects[j], eps)]
    pairs.sort()
    return pairs
