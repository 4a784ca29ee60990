"""Geometry primitives: overlap predicate, distances, touching parameter."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import random_overlapping_pair, random_rect
from deoverlap import (
    CoincidentCentersError,
    Point,
    Rect,
    edge_cost,
    overlaps,
    rect_distance,
    touching_parameter,
)


def unit_square(x: float, y: float) -> Rect:
    return Rect(Point(x, y), 0.5, 0.5)


def moved(a: Rect, b: Rect, t: float) -> Rect:
    """b with its center at a.center + t * (b.center - a.center)."""
    return Rect(
        Point(
            a.center.x + t * (b.center.x - a.center.x),
            a.center.y + t * (b.center.y - a.center.y),
        ),
        b.half_width,
        b.half_height,
    )


def oracle_touching_parameter(a: Rect, b: Rect) -> float:
    """Binary search for the smallest t >= 1 with moved(a, b, t) not overlapping.

    Independent of the closed form: only drives the overlap predicate. The
    overlap along the ray is monotone per axis, so bisection applies.
    """
    lo, hi = 1.0, 2.0
    while overlaps(a, moved(a, b, hi)):
        lo = hi
        hi *= 2.0
        assert hi < 1e9, "runaway oracle search"
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if overlaps(a, moved(a, b, mid)):
            lo = mid
        else:
            hi = mid
    return hi


def oracle_boundary_distance(a: Rect, b: Rect, samples: int = 600) -> float:
    """Min distance between densely sampled boundary points of a and b."""

    def boundary(r: Rect) -> np.ndarray:
        ts = np.linspace(0.0, 1.0, samples // 4, endpoint=False)
        xs = r.min_x + ts * 2 * r.half_width
        ys = r.min_y + ts * 2 * r.half_height
        bottom = np.stack([xs, np.full_like(xs, r.min_y)], axis=1)
        top = np.stack([xs, np.full_like(xs, r.max_y)], axis=1)
        left = np.stack([np.full_like(ys, r.min_x), ys], axis=1)
        right = np.stack([np.full_like(ys, r.max_x), ys], axis=1)
        return np.concatenate([bottom, top, left, right])

    pa, pb = boundary(a), boundary(b)
    d2 = np.sum((pa[:, None, :] - pb[None, :, :]) ** 2, axis=2)
    return float(math.sqrt(d2.min()))


# --- overlap predicate -------------------------------------------------------

def test_overlaps_touching_is_false():
    assert not overlaps(unit_square(0, 0), unit_square(1, 0))


def test_overlaps_half_overlap_is_true():
    assert overlaps(unit_square(0, 0), unit_square(0.5, 0))


def test_overlaps_requires_both_axes():
    assert not overlaps(unit_square(0, 0), unit_square(0.99, 2.0))


def test_overlaps_eps_tolerates_shallow_overlap():
    a, b = unit_square(0, 0), unit_square(0.9, 0)
    assert overlaps(a, b)
    assert not overlaps(a, b, eps=0.2)


def test_overlaps_rejects_negative_eps():
    with pytest.raises(ValueError):
        overlaps(unit_square(0, 0), unit_square(1, 0), eps=-0.1)


def test_overlaps_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b = random_rect(rng), random_rect(rng)
        assert overlaps(a, b) == overlaps(b, a)


# --- rect_distance -----------------------------------------------------------

def test_distance_diagonal_gap():
    d = rect_distance(unit_square(0, 0), unit_square(3, 4))
    assert d == pytest.approx(math.sqrt(13), abs=1e-9)


def test_distance_touching_is_zero():
    assert rect_distance(unit_square(0, 0), unit_square(1, 0)) == 0.0


def test_distance_single_axis_gap():
    assert rect_distance(unit_square(0, 0), unit_square(2, 0.5)) == pytest.approx(1.0, abs=1e-9)


def test_distance_matches_boundary_sampling_oracle():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 40:
        a, b = random_rect(rng), random_rect(rng)
        if overlaps(a, b):
            assert rect_distance(a, b) == 0.0
            continue
        # Sampling resolution bounds the oracle's own error.
        step = max(a.half_width, a.half_height, b.half_width, b.half_height) / 75.0
        assert rect_distance(a, b) == pytest.approx(
            oracle_boundary_distance(a, b), abs=2.0 * step
        )
        checked += 1


def test_distance_symmetric():
    rng = np.random.default_rng(13)
    for _ in range(200):
        a, b = random_rect(rng), random_rect(rng)
        assert rect_distance(a, b) == rect_distance(b, a)


# --- touching parameter ------------------------------------------------------

def test_touching_parameter_half_overlap():
    assert touching_parameter(unit_square(0, 0), unit_square(0.5, 0)) == pytest.approx(
        2.0, abs=1e-9
    )


def test_touching_parameter_diagonal():
    a = Rect(Point(0, 0), 1.0, 1.0)
    b = Rect(Point(0.5, 0.5), 1.0, 1.0)
    assert touching_parameter(a, b) == pytest.approx(4.0, abs=1e-9)


def test_touching_parameter_binding_axis():
    a = Rect(Point(0, 0), 2.0, 0.5)
    b = Rect(Point(1, 0.25), 2.0, 0.5)
    # min(4/1, 1/0.25) = 4: both axes bind simultaneously here.
    assert touching_parameter(a, b) == pytest.approx(4.0, abs=1e-9)


def test_touching_parameter_against_binary_search_oracle():
    rng = np.random.default_rng(101)
    for _ in range(1000):
        a, b = random_overlapping_pair(rng)
        t = touching_parameter(a, b)
        assert t > 1.0
        assert t == pytest.approx(oracle_touching_parameter(a, b), abs=1e-9)
        shifted = moved(a, b, t)
        assert not overlaps(a, shifted)
        assert rect_distance(a, shifted) == pytest.approx(0.0, abs=1e-9)


def test_touching_parameter_coincident_centers():
    with pytest.raises(CoincidentCentersError):
        touching_parameter(unit_square(0, 0), Rect(Point(0, 0), 1.0, 1.0))


def test_touching_parameter_requires_overlap():
    with pytest.raises(ValueError):
        touching_parameter(unit_square(0, 0), unit_square(3, 0))


# --- edge cost ---------------------------------------------------------------

def test_cost_overlapping_pair():
    cost, t = edge_cost(unit_square(0, 0), unit_square(0.5, 0))
    assert cost == pytest.approx(-0.5, abs=1e-9)
    assert t == pytest.approx(2.0, abs=1e-9)


def test_cost_disjoint_pair_is_distance():
    cost, t = edge_cost(unit_square(0, 0), unit_square(3, 4))
    assert cost == pytest.approx(math.sqrt(13), abs=1e-9)
    assert t == 1.0


def test_cost_touching_pair_is_zero():
    cost, t = edge_cost(unit_square(0, 0), unit_square(1, 0))
    assert cost == 0.0
    assert t == 1.0


def test_cost_sign_matches_overlap():
    rng = np.random.default_rng(23)
    for _ in range(500):
        a, b = random_rect(rng), random_rect(rng)
        if a.center.x == b.center.x and a.center.y == b.center.y:
            continue
        cost, t = edge_cost(a, b)
        if overlaps(a, b):
            assert cost < 0.0 and t > 1.0
        else:
            assert cost >= 0.0 and t == 1.0


def test_cost_is_separation_deficit():
    # For overlapping pairs cost = s - d with d = t * s: the difference
    # between the current center distance and the touching distance.
    rng = np.random.default_rng(29)
    for _ in range(500):
        a, b = random_overlapping_pair(rng)
        cost, t = edge_cost(a, b)
        s = math.hypot(b.center.x - a.center.x, b.center.y - a.center.y)
        assert cost == pytest.approx(s - t * s, abs=1e-9)


def test_cost_symmetric():
    rng = np.random.default_rng(31)
    for _ in range(300):
        a, b = random_rect(rng), random_rect(rng)
        if a.center.x == b.center.x and a.center.y == b.center.y:
            continue
        ca, ta = edge_cost(a, b)
        cb, tb = edge_cost(b, a)
        assert ca == pytest.approx(cb, rel=1e-12, abs=1e-12)
        assert ta == pytest.approx(tb, rel=1e-12, abs=1e-12)


# --- validation --------------------------------------------------------------

def test_rect_rejects_nonpositive_extents():
    with pytest.raises(ValueError):
        Rect(Point(0, 0), 0.0, 1.0)
    with pytest.raises(ValueError):
        Rect(Point(0, 0), 1.0, -2.0)


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Point(0.0, float("inf"))
