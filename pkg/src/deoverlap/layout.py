"""Layout container shared by the removal pipeline, metrics, and I/O."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Point, Rect


@dataclass(frozen=True)
class Layout:
    nodes: list[Rect]
    ids: list[str]                                      # stable, unique per node
    graph_edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.ids) != len(self.nodes):
            raise ValueError(
                f"ids and nodes length mismatch: {len(self.ids)} != {len(self.nodes)}"
            )
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("node ids must be unique")
        n = len(self.nodes)
        for i, j in self.graph_edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"graph edge ({i}, {j}) out of range for {n} nodes")

    @classmethod
    def from_rects(
        cls,
        rects: list[Rect],
        ids: list[str] | None = None,
        graph_edges: list[tuple[int, int]] | None = None,
    ) -> "Layout":
        if ids is None:
            ids = [str(i) for i in range(len(rects))]
        return cls(rects, ids, list(graph_edges or []))

    def __len__(self) -> int:
        return len(self.nodes)

    def centers(self) -> np.ndarray:
        """Node centers as an (n, 2) float array."""
        return np.array([(r.center.x, r.center.y) for r in self.nodes], dtype=float)

    def half_extents(self) -> np.ndarray:
        """Half widths and heights as an (n, 2) float array."""
        return np.array([(r.half_width, r.half_height) for r in self.nodes], dtype=float)

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) over all rectangles."""
        if not self.nodes:
            raise ValueError("bounding box of an empty layout is undefined")
        return (
            min(r.min_x for r in self.nodes),
            min(r.min_y for r in self.nodes),
            max(r.max_x for r in self.nodes),
            max(r.max_y for r in self.nodes),
        )

    def with_centers(self, centers: np.ndarray) -> "Layout":
        """Copy of the layout with node centers replaced, sizes and ids kept."""
        if centers.shape != (len(self.nodes), 2):
            raise ValueError(f"expected centers of shape ({len(self.nodes)}, 2)")
        nodes = [
            Rect(Point(float(c[0]), float(c[1])), r.half_width, r.half_height)
            for r, c in zip(self.nodes, centers)
        ]
        return Layout(nodes, list(self.ids), list(self.graph_edges))
