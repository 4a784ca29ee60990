"""SVG rendering of layout documents."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .layout_io import LayoutDocument, document_to_layout
from .spanning_tree import central_node, cost_edges, minimum_spanning_tree
from .sweep import find_all_overlapping_pairs
from .triangulation import augment_with_overlaps, delaunay

_PAD_FRACTION = 0.03  # viewBox padding relative to the larger bbox side


def _fmt(v: float) -> str:
    return format(v, ".6g")


def render_svg(
    doc: LayoutDocument,
    show_edges: bool = False,
    show_tree: bool = False,
    scale: float = 1.0,
) -> bytes:
    """Render the document as standalone SVG 1.1.

    show_edges draws the document's own graph edges under the rectangles.
    show_tree overlays the spanning tree a removal step would grow (every
    overlapping pair included): tree edges between overlapping rectangles
    are thick and solid, already resolved ones are dashed. The y axis points
    up, as in the layout data.
    """
    if not doc.nodes:
        raise ValueError("cannot render an empty document")
    if scale <= 0.0:
        raise ValueError(f"scale must be > 0, got {scale}")
    layout = document_to_layout(doc)
    min_x, min_y, max_x, max_y = layout.bounding_box()
    pad = _PAD_FRACTION * max(max_x - min_x, max_y - min_y, 1.0)
    width = (max_x - min_x) + 2.0 * pad
    height = (max_y - min_y) + 2.0 * pad

    def sx(x: float) -> str:
        return _fmt(x - min_x + pad)

    def sy(y: float) -> str:
        return _fmt(max_y + pad - y)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width * scale)}" height="{_fmt(height * scale)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    centers = layout.centers()

    if show_edges and layout.graph_edges:
        parts.append('<g stroke="#b5b5b5" stroke-width="0.8" class="graph-edges">')
        for i, j in layout.graph_edges:
            parts.append(
                f'<line x1="{sx(centers[i][0])}" y1="{sy(centers[i][1])}" '
                f'x2="{sx(centers[j][0])}" y2="{sy(centers[j][1])}"/>'
            )
        parts.append("</g>")

    parts.append(
        '<g fill="#cfe1f2" fill-opacity="0.75" stroke="#3d6d9e" '
        'stroke-width="0.6" class="nodes">'
    )
    for node_id, rect in zip(layout.ids, layout.nodes):
        parts.append(
            f'<rect x="{sx(rect.min_x)}" y="{sy(rect.max_y)}" '
            f'width="{_fmt(2 * rect.half_width)}" height="{_fmt(2 * rect.half_height)}">'
            f"<title>{escape(node_id)}</title></rect>"
        )
    parts.append("</g>")

    if show_tree and len(layout) >= 2:
        graph = augment_with_overlaps(
            delaunay(centers), find_all_overlapping_pairs(layout)
        )
        costed = cost_edges(layout, graph)
        tree = minimum_spanning_tree(len(layout), costed, central_node(layout))
        t_of = {(e.i, e.j): e.t for e in costed}
        parts.append('<g stroke="#2167ae" fill="none" class="tree-edges">')
        for child, parent in enumerate(tree.parent):
            if parent < 0:
                continue
            key = (parent, child) if parent < child else (child, parent)
            style = (
                'stroke-width="1.8"'
                if t_of[key] > 1.0
                else 'stroke-width="0.9" stroke-dasharray="2.4 1.6"'
            )
            parts.append(
                f'<line x1="{sx(centers[parent][0])}" y1="{sy(centers[parent][1])}" '
                f'x2="{sx(centers[child][0])}" y2="{sy(centers[child][1])}" {style}/>'
            )
        parts.append("</g>")

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
