"""Proximity graphs: Delaunay triangulation plus overlap augmentation.

The triangulation itself is delegated to Qhull (scipy.spatial.Delaunay),
which is deterministic for identical input. This module owns the parts
Qhull does not cover for our purposes: duplicate detection, inputs that
are too small or collinear (which Qhull rejects as flat), and vertices
Qhull merges away because they sit within its precision tolerance of
another point. The result is always a connected graph over all nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay as _SciPyDelaunay
from scipy.spatial import QhullError

# Cross products below this fraction of the squared point spread count as
# collinear and route to the path-graph fallback instead of Qhull.
_COLLINEAR_REL_TOL = 1e-12


class DuplicatePointsError(ValueError):
    """Raised when two input points are bitwise identical."""

    def __init__(self, groups: list[list[int]]):
        self.groups = groups
        flat = ", ".join(str(g) for g in groups)
        super().__init__(f"duplicate points at indices {flat}; jitter the layout first")


@dataclass(frozen=True)
class ProximityGraph:
    node_count: int
    edges: tuple[tuple[int, int], ...]  # sorted pairs (i, j with i < j), sorted list
    augmented: bool = False             # True once overlap pairs were merged in


def _check_points(points: np.ndarray) -> None:
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {points.shape}")
    if len(points) < 2:
        raise ValueError(f"need at least 2 points to triangulate, got {len(points)}")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must be finite")
    seen: dict[tuple[float, float], list[int]] = {}
    for i, (x, y) in enumerate(points):
        seen.setdefault((float(x), float(y)), []).append(i)
    groups = [g for g in seen.values() if len(g) > 1]
    if groups:
        raise DuplicatePointsError(groups)


def _collinear_order(points: np.ndarray) -> list[int] | None:
    """Indices sorted along the common line if all points are collinear, else None."""
    p0 = points[0]
    rel = points - p0
    far = int(np.argmax(np.einsum("ij,ij->i", rel, rel)))
    d = rel[far]
    scale2 = float(d @ d)
    if scale2 == 0.0:  # unreachable once duplicates are rejected
        return None
    cross = rel[:, 0] * d[1] - rel[:, 1] * d[0]
    if np.max(np.abs(cross)) > _COLLINEAR_REL_TOL * scale2:
        return None
    proj = rel @ d
    return sorted(range(len(points)), key=lambda i: (proj[i], i))


def _path_edges(order: list[int]) -> list[tuple[int, int]]:
    pairs = zip(order, order[1:])
    return [(i, j) if i < j else (j, i) for i, j in pairs]


def _faces(points: np.ndarray) -> list[tuple[int, int, int]] | None:
    """Triangle list from Qhull, or None when the input is flat."""
    try:
        tri = _SciPyDelaunay(points)
    except QhullError:
        # Qhull judged the point set flat (collinear beyond our own tolerance).
        return None
    return [tuple(sorted(int(v) for v in s)) for s in tri.simplices]


def _stitch_dropped(points: np.ndarray, edges: set[tuple[int, int]]) -> None:
    """Connect vertices Qhull merged away to their nearest kept vertex."""
    kept = {i for e in edges for i in e}
    for m in range(len(points)):
        if m in kept:
            continue
        d2 = np.einsum("ij,ij->i", points - points[m], points - points[m])
        d2[m] = np.inf
        best = min((float(d2[i]), i) for i in kept)[1]
        edges.add((m, best) if m < best else (best, m))


def delaunay(points: np.ndarray) -> ProximityGraph:
    """Delaunay edge graph of the given centers.

    Degenerate inputs still produce a connected graph: two points become a
    single edge and collinear points become a path along their line. Exact
    duplicates raise DuplicatePointsError.
    """
    points = np.asarray(points, dtype=float)
    _check_points(points)
    n = len(points)
    if n == 2:
        return ProximityGraph(2, ((0, 1),))
    order = _collinear_order(points)
    if order is None:
        faces = _faces(points)
        if faces is not None:
            edges: set[tuple[int, int]] = set()
            for a, b, c in faces:
                edges.add((a, b))
                edges.add((a, c))
                edges.add((b, c))
            _stitch_dropped(points, edges)
            return ProximityGraph(n, tuple(sorted(edges)))
        order = sorted(range(n), key=lambda i: (points[i][0], points[i][1], i))
    return ProximityGraph(n, tuple(sorted(_path_edges(order))))


def delaunay_faces(points: np.ndarray) -> list[tuple[int, int, int]]:
    """Triangles of the Delaunay triangulation, empty for flat inputs."""
    points = np.asarray(points, dtype=float)
    _check_points(points)
    if len(points) == 2 or _collinear_order(points) is not None:
        return []
    faces = _faces(points)
    return sorted(faces) if faces is not None else []


def augment_with_overlaps(
    graph: ProximityGraph, pairs: list[tuple[int, int]]
) -> ProximityGraph:
    """Graph with the given overlapping pairs merged into the edge set."""
    if not pairs:
        return graph
    edges = set(graph.edges)
    for i, j in pairs:
        if not (0 <= i < graph.node_count and 0 <= j < graph.node_count):
            raise ValueError(f"pair ({i}, {j}) out of range for {graph.node_count} nodes")
        if i == j:
            raise ValueError(f"pair ({i}, {j}) is a self loop")
        edges.add((i, j) if i < j else (j, i))
    return ProximityGraph(graph.node_count, tuple(sorted(edges)), augmented=True)
