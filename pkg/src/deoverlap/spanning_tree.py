"""Edge costing and minimum spanning trees over proximity graphs."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import SEPARATION_SLACK, CoincidentCentersError
from .layout import Layout
from .triangulation import ProximityGraph


class DisconnectedGraphError(ValueError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"graph does not span all nodes; node {node} is unreachable")


class CostedEdge(NamedTuple):
    i: int
    j: int
    cost: float  # negative iff the endpoints overlap
    t: float     # touching parameter, 1.0 for non-overlapping endpoints


@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: list[int]    # parent[v], -1 at the root
    children: list[list[int]]
    edge_t: list[float]  # t of the edge to parent[v], 1.0 at the root


def central_node(layout: Layout) -> int:
    """Node whose center is nearest the bbox center, lowest index on ties.

    The standard root for growing: growth radiates outward, so a central
    root keeps the drawing roughly in place.
    """
    min_x, min_y, max_x, max_y = layout.bounding_box()
    mid = np.array([(min_x + max_x) / 2.0, (min_y + max_y) / 2.0])
    rel = layout.centers() - mid
    return int(np.argmin(np.einsum("ij,ij->i", rel, rel)))


def cost_edges(layout: Layout, graph: ProximityGraph) -> list[CostedEdge]:
    """Cost every edge of the graph on the current layout positions.

    Vectorized equivalent of geometry.edge_cost applied per edge: separation
    distance for disjoint endpoints, -(t - 1) * center_distance for
    overlapping ones.
    """
    if graph.node_count != len(layout):
        raise ValueError(
            f"graph has {graph.node_count} nodes but layout has {len(layout)}"
        )
    if not graph.edges:
        return []
    centers = layout.centers()
    halves = layout.half_extents()
    e = np.asarray(graph.edges, dtype=int)
    i, j = e[:, 0], e[:, 1]
    delta = centers[j] - centers[i]
    adelta = np.abs(delta)
    sums = halves[i] + halves[j]
    coincident = (adelta[:, 0] == 0.0) & (adelta[:, 1] == 0.0)
    if np.any(coincident):
        k = int(np.argmax(coincident))
        raise CoincidentCentersError(
            f"nodes {int(i[k])} and {int(j[k])} have identical centers; "
            "jitter the layout before costing"
        )
    gaps = adelta - sums
    overlapping = (gaps[:, 0] < 0.0) & (gaps[:, 1] < 0.0)
    dist = np.hypot(np.maximum(gaps[:, 0], 0.0), np.maximum(gaps[:, 1], 0.0))
    ratios = np.divide(
        sums, adelta, out=np.full_like(sums, np.inf), where=adelta > 0.0
    )
    t = np.min(ratios, axis=1) * (1.0 + SEPARATION_SLACK)
    s = np.hypot(delta[:, 0], delta[:, 1])
    cost = np.where(overlapping, -(t - 1.0) * s, dist)
    t = np.where(overlapping, t, 1.0)
    return [
        CostedEdge(int(a), int(b), float(c), float(tt))
        for a, b, c, tt in zip(i, j, cost, t)
    ]


def minimum_spanning_tree(
    node_count: int, edges: list[CostedEdge], root: int
) -> RootedTree:
    """Prim's algorithm, rooted at the given node.

    Ties are broken by (cost, min endpoint, max endpoint) so the tree is
    deterministic. Raises DisconnectedGraphError when the edges do not reach
    every node.
    """
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if not (0 <= root < node_count):
        raise ValueError(f"root {root} out of range for {node_count} nodes")
    adjacency: list[list[tuple[float, int, float]]] = [[] for _ in range(node_count)]
    for a, b, cost, t in edges:
        adjacency[a].append((cost, b, t))
        adjacency[b].append((cost, a, t))

    in_tree = [False] * node_count
    in_tree[root] = True
    heap: list[tuple[float, int, int, int, int, float]] = []

    def push_from(u: int) -> None:
        for cost, v, t in adjacency[u]:
            if not in_tree[v]:
                lo, hi = (u, v) if u < v else (v, u)
                heapq.heappush(heap, (cost, lo, hi, u, v, t))

    push_from(root)
    tree_edges: list[CostedEdge] = []
    while heap and len(tree_edges) < node_count - 1:
        cost, lo, hi, _, v, t = heapq.heappop(heap)
        if in_tree[v]:
            continue
        in_tree[v] = True
        tree_edges.append(CostedEdge(lo, hi, cost, t))
        push_from(v)
    if len(tree_edges) < node_count - 1:
        raise DisconnectedGraphError(in_tree.index(False))
    return root_tree(node_count, tree_edges, root)


def root_tree(node_count: int, edges: list[CostedEdge], root: int) -> RootedTree:
    """Orient a spanning edge set away from the chosen root.

    The same edge set can be rerooted at any node; growing the result moves
    every node to the same relative position, so reroots differ only by a
    translation.
    """
    if not (0 <= root < node_count):
        raise ValueError(f"root {root} out of range for {node_count} nodes")
    if len(edges) != node_count - 1:
        raise ValueError(
            f"spanning tree over {node_count} nodes needs {node_count - 1} edges, "
            f"got {len(edges)}"
        )
    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(node_count)]
    for a, b, _, t in edges:
        adjacency[a].append((b, t))
        adjacency[b].append((a, t))
    for nbrs in adjacency:
        nbrs.sort()

    parent = [-1] * node_count
    children: list[list[int]] = [[] for _ in range(node_count)]
    edge_t = [1.0] * node_count
    seen = [False] * node_count
    seen[root] = True
    stack = [root]
    while stack:
        u = stack.pop()
        for v, t in adjacency[u]:
            if seen[v]:
                continue
            seen[v] = True
            parent[v] = u
            children[u].append(v)
            edge_t[v] = t
            stack.append(v)
    if not all(seen):
        raise DisconnectedGraphError(seen.index(False))
    return RootedTree(root, parent, children, edge_t)
