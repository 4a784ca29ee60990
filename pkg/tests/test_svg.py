"""SVG rendering of layout documents."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from deoverlap import DocumentNode, LayoutDocument, render_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def svg_root(blob: bytes) -> ET.Element:
    return ET.fromstring(blob)  # raises on malformed XML


def elements(root: ET.Element, tag: str) -> list[ET.Element]:
    return root.findall(f".//{SVG_NS}{tag}")


def single_node_doc() -> LayoutDocument:
    return LayoutDocument(nodes=[DocumentNode("only", 1.0, 2.0, 4.0, 2.0)])


def triangle_doc() -> LayoutDocument:
    return LayoutDocument(
        nodes=[
            DocumentNode("a", 0.0, 0.0, 2.0, 2.0),
            DocumentNode("b", 1.0, 0.0, 2.0, 2.0),
            DocumentNode("c", 0.5, 1.0, 2.0, 2.0),
        ],
        edges=[("a", "b"), ("b", "c")],
    )


def test_single_node_renders_one_rect():
    root = svg_root(render_svg(single_node_doc()))
    rects = elements(root, "rect")
    assert len(rects) == 1
    # Full width/height carried through; y axis points up in the document.
    assert float(rects[0].get("width")) == pytest.approx(4.0)
    assert float(rects[0].get("height")) == pytest.approx(2.0)
    titles = elements(root, "title")
    assert [t.text for t in titles] == ["only"]


def test_viewbox_covers_all_rects():
    root = svg_root(render_svg(triangle_doc()))
    _, _, w, h = map(float, root.get("viewBox").split())
    # Content spans 3 x 3; the viewBox adds padding beyond it.
    assert w > 3.0
    assert h > 3.0
    assert len(elements(root, "rect")) == 3


def test_graph_edges_rendered_when_requested():
    plain = svg_root(render_svg(triangle_doc()))
    with_edges = svg_root(render_svg(triangle_doc(), show_edges=True))
    assert len(elements(plain, "line")) == 0
    assert len(elements(with_edges, "line")) == 2


def test_tree_overlay_draws_spanning_tree():
    root = svg_root(render_svg(triangle_doc(), show_tree=True))
    lines = elements(root, "line")
    # A spanning tree over three nodes has exactly two edges.
    assert len(lines) == 2
    # All three rects overlap here, so the tree edges render in the
    # "still overlapping" style: solid, no dash pattern.
    assert all(l.get("stroke-dasharray") is None for l in lines)


def test_tree_overlay_marks_resolved_edges_dashed():
    doc = LayoutDocument(
        nodes=[
            DocumentNode("a", 0.0, 0.0, 1.0, 1.0),
            DocumentNode("b", 5.0, 0.0, 1.0, 1.0),
            DocumentNode("c", 0.0, 5.0, 1.0, 1.0),
        ]
    )
    root = svg_root(render_svg(doc, show_tree=True))
    lines = elements(root, "line")
    assert len(lines) == 2
    assert all(l.get("stroke-dasharray") for l in lines)


def test_scale_multiplies_pixel_size():
    base = svg_root(render_svg(single_node_doc(), scale=1.0))
    doubled = svg_root(render_svg(single_node_doc(), scale=2.0))
    assert float(doubled.get("width")) == pytest.approx(2.0 * float(base.get("width")))
    # The coordinate system itself is unchanged.
    assert doubled.get("viewBox") == base.get("viewBox")


def test_render_is_deterministic():
    blob = render_svg(triangle_doc(), show_edges=True, show_tree=True)
    for _ in range(5):
        assert render_svg(triangle_doc(), show_edges=True, show_tree=True) == blob


def test_id_text_is_escaped():
    doc = LayoutDocument(nodes=[DocumentNode('it<s> & "q"', 0.0, 0.0, 1.0, 1.0)])
    root = svg_root(render_svg(doc))  # parse failure would mean bad escaping
    (title,) = elements(root, "title")
    assert title.text == 'it<s> & "q"'


def test_empty_document_rejected():
    with pytest.raises(ValueError):
        render_svg(LayoutDocument(nodes=[]))


def test_bad_scale_rejected():
    with pytest.raises(ValueError):
        render_svg(single_node_doc(), scale=0.0)
