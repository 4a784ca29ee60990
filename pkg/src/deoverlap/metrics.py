"""Layout quality metrics comparing an original layout with its resolved one.

All metrics pair nodes by index, so both layouts must list the same nodes in
the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .layout import Layout
from .triangulation import delaunay

# One-line identification of each reported number, emitted next to the
# values by the CLI so consumers know what they are looking at.
FORMULA_NOTES = {
    "sigma_edge": (
        "rms relative deviation of triangulation edge lengths from a uniform "
        "rescaling (median length ratio)"
    ),
    "sigma_disp": (
        "residual of the best similarity fit (rotation + scale + shift) of the "
        "original onto the result, relative to the centered original spread"
    ),
    "knn_distortion": (
        "mean squared number of lost k-nearest-neighbors (center distance, "
        "index ties low)"
    ),
    "area_ratio": "bounding box area of the result over the original",
    "log_area_ratio": "natural log of area_ratio",
}


@dataclass(frozen=True)
class MetricsReport:
    sigma_edge: float
    sigma_disp: float
    knn_distortion: dict[int, float]  # k -> distortion
    area_ratio: float
    log_area_ratio: float


def _check_pair(before: Layout, after: Layout, minimum: int) -> None:
    if len(before) != len(after):
        raise ValueError(
            f"layouts differ in size: {len(before)} vs {len(after)} nodes"
        )
    if len(before) < minimum:
        raise ValueError(f"metric needs at least {minimum} nodes, got {len(before)}")


def edge_length_dissimilarity(before: Layout, after: Layout) -> float:
    """How unevenly edge lengths changed, 0 for any uniform rescaling.

    Uses the Delaunay edges of the original layout. With r the median of
    after/before length ratios, returns

        sqrt(mean(((len_after - r * len_before) / (r * len_before))^2))
    """
    _check_pair(before, after, 3)
    graph = delaunay(before.centers())
    e = np.asarray(graph.edges, dtype=int)
    b, a = before.centers(), after.centers()
    len_before = np.hypot(*(b[e[:, 0]] - b[e[:, 1]]).T)
    len_after = np.hypot(*(a[e[:, 0]] - a[e[:, 1]]).T)
    if np.any(len_before == 0.0):  # delaunay rejects duplicate centers already
        raise ValueError("original layout has a zero-length triangulation edge")
    r = float(np.median(len_after / len_before))
    if r == 0.0:
        raise ValueError("median edge length ratio is 0; result is degenerate")
    rel = (len_after - r * len_before) / (r * len_before)
    return float(np.sqrt(np.mean(rel * rel)))


def procrustes_statistic(before: Layout, after: Layout) -> float:
    """Distance of the movement from a pure similarity transform.

    Centers both point sets, fits scale s and rotation R (det +1, via SVD of
    the cross covariance) minimizing sum ||after_i - (s R before_i + t)||^2,
    and returns that residual divided by the centered original's sum of
    squares. 0 means the layout only rotated, scaled, and shifted.
    """
    _check_pair(before, after, 2)
    x = before.centers()
    y = after.centers()
    x -= x.mean(axis=0)
    y -= y.mean(axis=0)
    norm_x = float(np.einsum("ij,ij->", x, x))
    norm_y = float(np.einsum("ij,ij->", y, y))
    if norm_x == 0.0:
        raise ValueError("all original centers coincide; fit is undefined")
    u, s, vt = np.linalg.svd(x.T @ y)
    sign = float(np.sign(np.linalg.det(u) * np.linalg.det(vt)))
    trace = s[0] + (sign if sign != 0.0 else 1.0) * s[1]
    residual = norm_y - trace * trace / norm_x
    return float(max(residual, 0.0)) / norm_x


def _neighbor_sets(centers: np.ndarray, k: int) -> list[frozenset[int]]:
    n = len(centers)
    sets: list[frozenset[int]] = []
    chunk = max(1, min(n, 2 ** 22 // max(n, 1)))
    for start in range(0, n, chunk):
        block = centers[start : start + chunk]
        diff = block[:, None, :] - centers[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        for row in range(len(block)):
            d2[row, start + row] = np.inf
        # Stable sort on distance keeps index order inside ties.
        order = np.argsort(d2, axis=1, kind="stable")[:, :k]
        sets.extend(frozenset(int(v) for v in row) for row in order)
    return sets


def knn_distortion(before: Layout, after: Layout, k: int) -> float:
    """Mean over nodes of (k - m)^2, m = surviving k-nearest-neighbors.

    Neighborhoods are by center distance with ties broken toward the lower
    index. 0 iff every node keeps its full neighborhood.
    """
    _check_pair(before, after, 2)
    if not (1 <= k < len(before)):
        raise ValueError(f"k must satisfy 1 <= k < node count, got k={k}")
    old = _neighbor_sets(before.centers(), k)
    new = _neighbor_sets(after.centers(), k)
    losses = [(k - len(o & m)) ** 2 for o, m in zip(old, new)]
    return float(np.mean(losses))


def area_growth(before: Layout, after: Layout) -> tuple[float, float]:
    """Bounding box area ratio after/before and its natural log."""
    _check_pair(before, after, 1)

    def bbox_area(layout: Layout) -> float:
        min_x, min_y, max_x, max_y = layout.bounding_box()
        return (max_x - min_x) * (max_y - min_y)

    area_before = bbox_area(before)
    if area_before <= 0.0:
        raise ValueError("original bounding box has zero area")
    ratio = bbox_area(after) / area_before
    return ratio, math.log(ratio)


def compute_metrics(
    before: Layout, after: Layout, ks: tuple[int, ...] = (8, 9, 10, 11, 12)
) -> MetricsReport:
    """All metrics in one report; see FORMULA_NOTES for what each number is."""
    ratio, log_ratio = area_growth(before, after)
    return MetricsReport(
        sigma_edge=edge_length_dissimilarity(before, after),
        sigma_disp=procrustes_statistic(before, after),
        knn_distortion={k: knn_distortion(before, after, k) for k in ks},
        area_ratio=ratio,
        log_area_ratio=log_ratio,
    )
