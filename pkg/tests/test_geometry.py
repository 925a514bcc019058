import math
import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from planar_cayley.errors import DomainError, MalformedVector, NeedsMorePrecision, NoSolution
from planar_cayley.geometry import (
    RESIDUAL_TOL,
    GeometryClass,
    ModelPoint,
    angle_sum_over_pi,
    apply,
    base_point,
    certified_equal,
    classify,
    compose,
    distance,
    generator_frames,
    identity,
    interior_angle,
    solve_edge_length,
    word_isometry,
)
from planar_cayley.scheme import INFINITY, TypeVector, smallest_valid_vector

from strategies import schemes

S, E, H = GeometryClass.SPHERICAL, GeometryClass.EUCLIDEAN, GeometryClass.HYPERBOLIC


def tv(*xs):
    return TypeVector(xs)


@pytest.mark.parametrize("vec,geom", [
    ((3, 3, 3, 3, 4), S),
    ((4, 4, 4, 4), E),
    ((3, 4, 4, 3, 4, 3, 4, 3), H),
    ((3, 6, 3, 6), E),
    ((3, 3, 3, 3, 3, 3), E),
    ((7, 7, 7), H),
    ((INFINITY, 3, 4, 4), H),
    ((INFINITY, 4, 4), E),
])
def test_classify(vec, geom):
    assert classify(tv(*vec)) is geom


def test_angle_sum_is_exact():
    assert angle_sum_over_pi(tv(3, 4, 4, 3, 4, 3, 4, 3)) == Fraction(10, 3)
    assert angle_sum_over_pi(tv(INFINITY, 4)) == Fraction(3, 2)


# [DERIVED] closed forms for regular polyhedra and regular {p,q} tilings
SPHERICAL_LENGTHS = [
    ((3, 3, 3), math.acos(-1 / 3)),                 # tetrahedron
    ((4, 4, 4), math.acos(1 / 3)),                  # cube
    ((3, 3, 3, 3), math.pi / 2),                    # octahedron
    ((3, 3, 3, 3, 3), math.atan(2)),                # icosahedron
    ((5, 5, 5), math.acos(math.sqrt(5) / 3)),       # dodecahedron
    # snub cube, circumradius / edge = 1.3437133737446017
    ((3, 3, 3, 3, 4), 2 * math.asin(1 / (2 * 1.3437133737446017))),
]


@pytest.mark.parametrize("vec,length", SPHERICAL_LENGTHS)
def test_spherical_edge_lengths(vec, length):
    sol = solve_edge_length(tv(*vec))
    assert sol.geometry is S
    assert sol.edge_length == pytest.approx(length, abs=1e-10)


@pytest.mark.parametrize("p,q", [(7, 3), (4, 5), (5, 4), (3, 7), (8, 8)])
def test_regular_hyperbolic_edge_lengths(p, q):
    # q regular p-gons at each vertex: cosh(l/2) = cos(pi/p) / sin(pi/q)
    sol = solve_edge_length(tv(*([p] * q)))
    expected = 2 * math.acosh(math.cos(math.pi / p) / math.sin(math.pi / q))
    assert sol.edge_length == pytest.approx(expected, rel=1e-10)


def test_tree_edge_length():
    sol = solve_edge_length(tv(INFINITY, INFINITY, INFINITY))
    assert sol.edge_length == pytest.approx(2 * math.acosh(2 / math.sqrt(3)), rel=1e-10)


def test_euclidean_is_unit_length():
    sol = solve_edge_length(tv(3, 6, 3, 6))
    assert sol.edge_length == 1.0
    assert sol.angles == pytest.approx((math.pi / 3, 2 * math.pi / 3) * 2)


@pytest.mark.parametrize("vec", [(3, 3, 5), (3, 4, 7)])
def test_footnote_cases_have_no_solution(vec):
    with pytest.raises(NoSolution):
        solve_edge_length(tv(*vec))


@pytest.mark.parametrize("vec", [(3, 3, 4), (3, 4, 6), (3, 5, 10)])
def test_degenerate_boundary_cases_have_no_solution(vec):
    # the sum reaches 2 pi only when a face becomes a great circle
    with pytest.raises(NoSolution):
        solve_edge_length(tv(*vec))


def test_three_five_nine_has_a_genuine_root():
    # the spherical equation does close for [3,5,9]; see the ledger
    sol = solve_edge_length(tv(3, 5, 9))
    assert sol.residual <= RESIDUAL_TOL
    assert all(a < math.pi - 0.01 for a in sol.angles)


def test_infinite_face_cannot_be_spherical():
    # the angle sum is below 2 pi, but a finite graph has no infinite face
    assert classify(tv(INFINITY, 3, 3)) is S
    with pytest.raises(NoSolution):
        solve_edge_length(tv(INFINITY, 3, 3))


def test_malformed_vector():
    with pytest.raises(MalformedVector):
        solve_edge_length(tv(2, 4, 4))


def test_interior_angle_domain():
    with pytest.raises(DomainError):
        interior_angle(S, 3, 4.0)
    with pytest.raises(DomainError):
        interior_angle(H, 3, -1.0)


@st.composite
def solvable_vectors(draw):
    n = draw(st.integers(3, 8))
    entries = draw(st.lists(st.sampled_from([3, 4, 5, 6, 7, 8, 10, 12, INFINITY]), min_size=n, max_size=n))
    return TypeVector(tuple(entries))


@given(solvable_vectors())
def test_solutions_close_the_corner(vec):
    try:
        sol = solve_edge_length(vec)
    except NoSolution:
        assert classify(vec) is S
        return
    assert sol.residual <= RESIDUAL_TOL
    assert math.fsum(sol.angles) == pytest.approx(2 * math.pi, abs=1e-11)
    assert sol.edge_length > 0


def test_solve_is_fast():
    vectors = [tv(3, 3, 3, 3, 4), tv(4, 4, 4, 4), tv(3, 4, 4, 3, 4, 3, 4, 3)]
    for v in vectors:
        best = min(_timed(v) for _ in range(5))
        assert best < 1e-3


def _timed(v):
    t = time.perf_counter()
    solve_edge_length(v)
    return time.perf_counter() - t


# ---------------------------------------------------------------- isometries


def _form(geom):
    if geom is H:
        return np.diag([1.0, 1.0, -1.0])
    return np.eye(3)


@given(schemes(max_degree=6))
def test_crossings_are_model_isometries(s):
    vec = smallest_valid_vector(s)
    try:
        sol = solve_edge_length(vec)
    except NoSolution:
        return
    frames = generator_frames(s, sol)
    for i in range(1, s.degree + 1):
        m = frames.cross(i).matrix
        if sol.geometry is not E:
            J = _form(sol.geometry)
            assert np.allclose(m.T @ J @ m, J, atol=1e-9)
        # crossing back along the same edge undoes the crossing
        back = compose(frames.cross(i), frames.cross(s.inv(i))).matrix
        assert np.allclose(back, np.eye(3), atol=1e-9)
        moved = apply(frames.cross(i), base_point(sol.geometry))
        assert distance(moved, base_point(sol.geometry)) == pytest.approx(sol.edge_length, abs=1e-9)


def test_face_relators_close_up(chaboud, chaboud_tv):
    from planar_cayley.scheme import canonical_presentation

    sol = solve_edge_length(chaboud_tv)
    frames = generator_frames(chaboud, sol)
    origin = base_point(sol.geometry)
    for w in canonical_presentation(chaboud, chaboud_tv).relators:
        end = apply(word_isometry(frames, w), origin)
        assert distance(end, origin) < 1e-9


def test_high_precision_frames_agree(snub, snub_tv):
    sol = solve_edge_length(snub_tv)
    lo = generator_frames(snub, sol)
    hi = generator_frames(snub, sol, prec=212)
    for i in range(1, 6):
        assert np.allclose(hi.cross(i).matrix.astype(float), lo.cross(i).matrix, atol=1e-12)
        assert hi.cross(i).error < 1e-50


def test_certified_equal():
    origin = base_point(H)
    near = ModelPoint(np.array([0.01, 0.0, math.sqrt(1.0001)]), 1e-15, H)
    far = ModelPoint(np.array([math.sinh(2.0), 0.0, math.cosh(2.0)]), 1e-15, H)
    assert certified_equal(near, origin, 1.0)
    assert not certified_equal(far, origin, 1.0)
    blurry = ModelPoint(far.coords, 10.0, H)
    with pytest.raises(NeedsMorePrecision):
        certified_equal(blurry, origin, 1.0)


def test_identity_isometry():
    for g in (S, E, H):
        assert apply(identity(g), base_point(g)).as_float().tolist() == [0.0, 0.0, 1.0]
