"""Rectangle overlap removal by growing a minimum spanning tree.

Given a layout of axis-aligned rectangles, `remove_overlaps` moves the
rectangles apart until none overlap while preserving the overall structure
of the arrangement. The package also ships layout-quality metrics, JSON and
SVG I/O, and a benchmark harness; the `deoverlap` command exposes all of it.
"""

from .bench import (
    BenchmarkSpec,
    BenchRow,
    generate_layout,
    mode_label,
    parse_mode,
    rows_to_csv,
    run_benchmark,
)
from .core import (
    IterationEvent,
    RemovalConfig,
    RunStats,
    find_all_overlapping_pairs,
    grow,
    grow_positions,
    remove_overlaps,
    single_iteration,
)
from .geometry import (
    CoincidentCentersError,
    Point,
    Rect,
    edge_cost,
    overlaps,
    rect_distance,
    touching_parameter,
)
from .layout import Layout
from .layout_io import (
    DocumentNode,
    LayoutDocument,
    LayoutParseError,
    LayoutValidationError,
    document_to_layout,
    emit_layout,
    layout_to_document,
    parse_layout,
)
from .metrics import (
    FORMULA_NOTES,
    MetricsReport,
    area_growth,
    compute_metrics,
    edge_length_dissimilarity,
    knn_distortion,
    procrustes_statistic,
)
from .spanning_tree import (
    CostedEdge,
    DisconnectedGraphError,
    RootedTree,
    central_node,
    cost_edges,
    minimum_spanning_tree,
    root_tree,
)
from .svg import render_svg
from .triangulation import (
    DuplicatePointsError,
    ProximityGraph,
    augment_with_overlaps,
    delaunay,
    delaunay_faces,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkSpec",
    "BenchRow",
    "CoincidentCentersError",
    "CostedEdge",
    "DisconnectedGraphError",
    "DocumentNode",
    "DuplicatePointsError",
    "FORMULA_NOTES",
    "IterationEvent",
    "Layout",
    "LayoutDocument",
    "LayoutParseError",
    "LayoutValidationError",
    "MetricsReport",
    "Point",
    "ProximityGraph",
    "Rect",
    "RemovalConfig",
    "RootedTree",
    "RunStats",
    "area_growth",
    "augment_with_overlaps",
    "central_node",
    "compute_metrics",
    "cost_edges",
    "delaunay",
    "delaunay_faces",
    "document_to_layout",
    "edge_cost",
    "edge_length_dissimilarity",
    "emit_layout",
    "find_all_overlapping_pairs",
    "generate_layout",
    "grow",
    "grow_positions",
    "knn_distortion",
    "layout_to_document",
    "minimum_spanning_tree",
    "mode_label",
    "overlaps",
    "parse_mode",
    "parse_layout",
    "procrustes_statistic",
    "rect_distance",
    "remove_overlaps",
    "render_svg",
    "root_tree",
    "rows_to_csv",
    "run_benchmark",
    "single_iteration",
    "touching_parameter",
]
