"""Geometry selection, edge-length solving and isometries of the three model planes.

Points live on a model surface in R^3 and isometries are 3x3 matrices:

* SPHERICAL: the unit sphere, isometries are orthogonal matrices;
* EUCLIDEAN: the affine plane z = 1, isometries are affine maps;
* HYPERBOLIC: the upper sheet of x^2 + y^2 - z^2 = -1, isometries are
  Lorentz transformations.

In all three models the base vertex sits at (0, 0, 1).

Matrices are float64 numpy arrays at the default 53-bit precision and
object arrays of ``mpmath.mpf`` above it.  Every matrix and point carries
an upper bound on its accumulated error (max-norm on entries), which is
what :func:`certified_equal` relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainError, NeedsMorePrecision, NoSolution
from .scheme import INFINITY, LabelingScheme, TypeVector, check_well_formed, is_infinite

FLOAT_PREC = 53
RESIDUAL_TOL = 1e-12

# slack on top of the textbook rounding bounds
_GEN_ERR_FACTOR = 64.0
_MUL_ERR_FACTOR = 4.0


class GeometryClass(Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


def angle_sum_over_pi(tv) -> Fraction:
    """Sum of the Euclidean corner angles divided by pi, computed exactly."""
    total = Fraction(0)
    for k in tv:
        total += 1 if is_infinite(k) else Fraction(k - 2, k)
    return total


def classify(tv) -> GeometryClass:
    s = angle_sum_over_pi(tv)
    if s == 2:
        return GeometryClass.EUCLIDEAN
    return GeometryClass.SPHERICAL if s < 2 else GeometryClass.HYPERBOLIC


def _cos_pi_over(k, ctx=math):
    return 1 if is_infinite(k) else ctx.cos(ctx.pi / k)


def interior_angle(geometry: GeometryClass, k, l: float) -> float:
    """Interior angle of the regular k-gon with side l (k may be infinite)."""
    if geometry is GeometryClass.EUCLIDEAN:
        return math.pi if is_infinite(k) else (k - 2) * math.pi / k
    if l < 0:
        raise DomainError("edge length must be non-negative")
    if geometry is GeometryClass.SPHERICAL:
        if l >= math.pi:
            raise DomainError("spherical edge length must be below pi")
        arg = _cos_pi_over(k) / math.cos(l / 2)
    else:
        arg = _cos_pi_over(k) / math.cosh(l / 2)
    if arg > 1:
        if arg > 1 + 1e-12:
            raise DomainError(f"arcsin argument {arg} exceeds 1")
        arg = 1.0
    return 2 * math.asin(arg)


def _interior_angle_mp(geometry: GeometryClass, k, l):
    if geometry is GeometryClass.EUCLIDEAN:
        return mpmath.pi if is_infinite(k) else (k - 2) * mpmath.pi / k
    c = _cos_pi_over(k, mpmath)
    arg = c / (mpmath.cos(l / 2) if geometry is GeometryClass.SPHERICAL else mpmath.cosh(l / 2))
    return 2 * mpmath.asin(min(arg, mpmath.mpf(1)))


@dataclass(frozen=True)
class AngleSolution:
    geometry: GeometryClass
    edge_length: float
    angles: tuple[float, ...]
    residual: float
    type_vector: TypeVector = field(compare=False, default=None)
    # width of the final bisection bracket, a bound on the error of edge_length
    length_error: float = 0.0

    @property
    def sum_over_pi(self) -> Fraction:
        return angle_sum_over_pi(self.type_vector)


def _spherical_lmax(tv, ctx=math):
    c = max(_cos_pi_over(k, ctx) for k in tv)
    return 2 * ctx.acos(c) if c < 1 else ctx.mpf(0) if ctx is mpmath else 0.0


def _bracket(tv, geometry, angle_sum, zero, two_pi):
    """Return (lo, hi) with angle_sum - 2pi changing sign on it, or raise NoSolution."""
    if geometry is GeometryClass.SPHERICAL:
        ctx = mpmath if isinstance(zero, mpmath.mpf) else math
        hi = _spherical_lmax(tv, ctx)
        # reaching 2pi only at l_max means a finite face degenerates to a great circle
        if hi <= 0 or angle_sum(hi) <= two_pi + RESIDUAL_TOL:
            raise NoSolution(f"no spherical edge length closes the corner angles of {tv}")
        return zero, hi
    hi = zero + 1
    while angle_sum(hi) > two_pi:
        hi *= 2
        if hi > 1e6:
            raise NoSolution(f"no hyperbolic edge length found for {tv}")
    return zero, hi


def solve_edge_length(tv: TypeVector) -> AngleSolution:
    check_well_formed(len(tv), tv)
    geom = classify(tv)
    if geom is GeometryClass.EUCLIDEAN:
        angles = tuple(interior_angle(geom, k, 1.0) for k in tv)
        return AngleSolution(geom, 1.0, angles, abs(sum(angles) - 2 * math.pi), tv)

    def angle_sum(l):
        return math.fsum(interior_angle(geom, k, l) for k in tv)

    two_pi = 2 * math.pi
    lo, hi = _bracket(tv, geom, angle_sum, 0.0, two_pi)
    increasing = geom is GeometryClass.SPHERICAL
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if (angle_sum(mid) < two_pi) == increasing:
            lo = mid
        else:
            hi = mid
    l = lo if abs(angle_sum(lo) - two_pi) <= abs(angle_sum(hi) - two_pi) else hi
    residual = abs(angle_sum(l) - two_pi)
    if residual > RESIDUAL_TOL:
        raise NoSolution(f"bisection for {tv} stalled at residual {residual:.3g}")
    angles = tuple(interior_angle(geom, k, l) for k in tv)
    return AngleSolution(geom, l, angles, residual, tv, hi - lo)


@lru_cache(maxsize=256)
def _solve_mp(tv: TypeVector, prec: int):
    """Edge length and corner angles as mpf at ``prec`` bits, plus the bracket width."""
    geom = classify(tv)
    with mpmath.workprec(prec + 20):
        if geom is GeometryClass.EUCLIDEAN:
            l = mpmath.mpf(1)
            err = mpmath.mpf(0)
        else:
            def angle_sum(x):
                return mpmath.fsum(_interior_angle_mp(geom, k, x) for k in tv)

            two_pi = 2 * mpmath.pi
            lo, hi = _bracket(tv, geom, angle_sum, mpmath.mpf(0), two_pi)
            increasing = geom is GeometryClass.SPHERICAL
            for _ in range(prec + 40):
                mid = (lo + hi) / 2
                if (angle_sum(mid) < two_pi) == increasing:
                    lo = mid
                else:
                    hi = mid
            l = (lo + hi) / 2
            err = hi - lo
        angles = tuple(_interior_angle_mp(geom, k, l) for k in tv)
    return l, angles, err


# ---------------------------------------------------------------------------
# Isometries


def _unit_roundoff(prec: int):
    # an mpf beyond double precision, where 2.0**-prec would underflow to zero
    if prec <= FLOAT_PREC:
        return 2.0 ** -prec
    return mpmath.ldexp(1, -prec)


@dataclass(frozen=True)
class ModelPoint:
    coords: np.ndarray
    error: float
    geometry: GeometryClass
    prec: int = FLOAT_PREC

    def as_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.coords])


@dataclass(frozen=True)
class Isometry:
    matrix: np.ndarray
    error: float
    geometry: GeometryClass
    prec: int = FLOAT_PREC

    @property
    def norm(self) -> float:
        return _norm(self.matrix)


def _norm(m: np.ndarray):
    # object arrays keep mpf norms so that large entries cannot overflow
    if m.dtype == object:
        return mpmath.mpf(max(abs(x) for x in m) if m.ndim == 1 else max(sum(abs(x) for x in row) for row in m))
    with np.errstate(over="ignore", invalid="ignore"):
        return float(np.abs(m).max() if m.ndim == 1 else np.abs(m).sum(axis=1).max())


def _backend(prec: int):
    return math if prec <= FLOAT_PREC else mpmath


def _array(rows, prec: int) -> np.ndarray:
    if prec <= FLOAT_PREC:
        return np.array(rows, dtype=float)
    return np.array([[mpmath.mpf(x) for x in row] for row in rows], dtype=object)


def identity(geometry: GeometryClass, prec: int = FLOAT_PREC) -> Isometry:
    return Isometry(_array(np.eye(3).tolist(), prec), 0.0, geometry, prec)


def base_point(geometry: GeometryClass, prec: int = FLOAT_PREC) -> ModelPoint:
    if prec <= FLOAT_PREC:
        c = np.array([0.0, 0.0, 1.0])
    else:
        c = np.array([mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)], dtype=object)
    return ModelPoint(c, 0.0, geometry, prec)


def _rotation_rows(alpha, ctx):
    c, s = ctx.cos(alpha), ctx.sin(alpha)
    return [[c, -s, 0], [s, c, 0], [0, 0, 1]]


def _translation_rows(geometry, l, ctx):
    if geometry is GeometryClass.EUCLIDEAN:
        return [[1, 0, l], [0, 1, 0], [0, 0, 1]]
    if geometry is GeometryClass.SPHERICAL:
        c, s = ctx.cos(l), ctx.sin(l)
        return [[c, 0, s], [0, 1, 0], [-s, 0, c]]
    c, s = ctx.cosh(l), ctx.sinh(l)
    return [[c, 0, s], [0, 1, 0], [s, 0, c]]


_REFLECT = [[1, 0, 0], [0, -1, 0], [0, 0, 1]]


def _raw_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float overflow gives inf/nan, which certified_equal reports as inconclusive
    with np.errstate(over="ignore", invalid="ignore"):
        return a @ b


def compose(a: Isometry, b: Isometry) -> Isometry:
    """The isometry ``a o b`` (apply b first)."""
    prec = max(a.prec, b.prec)
    na, nb = a.norm, b.norm
    if prec <= FLOAT_PREC:
        m = _raw_product(a.matrix, b.matrix)
    else:
        with mpmath.workprec(prec):
            m = _raw_product(_lift(a.matrix), _lift(b.matrix))
    err = na * b.error + a.error * nb + a.error * b.error + _MUL_ERR_FACTOR * _unit_roundoff(prec) * na * nb
    return Isometry(m, err, a.geometry, prec)


def _lift(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return m
    return np.array([[mpmath.mpf(float(x)) for x in row] for row in m], dtype=object)


def apply(a: Isometry, p: ModelPoint) -> ModelPoint:
    prec = max(a.prec, p.prec)
    if prec <= FLOAT_PREC:
        q = _raw_product(a.matrix, p.coords)
    else:
        with mpmath.workprec(prec):
            q = _lift(a.matrix) @ np.array([mpmath.mpf(x) for x in p.coords], dtype=object)
    na, npn = a.norm, _norm(p.coords)
    err = na * p.error + a.error * npn + a.error * p.error + _MUL_ERR_FACTOR * _unit_roundoff(prec) * na * npn
    return ModelPoint(q, err, a.geometry, prec)


def distance(p: ModelPoint, q: ModelPoint) -> float:
    a, b = p.as_float(), q.as_float()
    if p.geometry is GeometryClass.EUCLIDEAN:
        return float(math.hypot(a[0] / a[2] - b[0] / b[2], a[1] / a[2] - b[1] / b[2]))
    if p.geometry is GeometryClass.SPHERICAL:
        return float(math.acos(max(-1.0, min(1.0, float(a @ b)))))
    inner = a[2] * b[2] - a[0] * b[0] - a[1] * b[1]
    return float(math.acosh(max(1.0, inner)))


def certified_equal(p: ModelPoint, q: ModelPoint, separation: float) -> bool:
    """Decide whether p and q are closer than separation/2.

    Raises NeedsMorePrecision when the error bounds straddle the threshold.
    """
    geom = p.geometry
    prec = max(p.prec, q.prec)
    u = _unit_roundoff(prec)
    ep, eq = p.error, q.error
    if prec <= FLOAT_PREC:
        a, b = p.coords, q.coords
    else:
        a = np.array([mpmath.mpf(x) for x in p.coords], dtype=object)
        b = np.array([mpmath.mpf(x) for x in q.coords], dtype=object)
    ctx = _backend(prec)
    with mpmath.workprec(max(prec, FLOAT_PREC)):
        if geom is GeometryClass.EUCLIDEAN:
            dx, dy = a[0] - b[0], a[1] - b[1]
            value = dx * dx + dy * dy
            e = ep + eq
            err = 2 * (abs(dx) + abs(dy)) * e + 2 * e * e + 4 * u * value
            thr = (separation / 2) ** 2
            near = value + err < thr
            far = value - err > thr
        else:
            if geom is GeometryClass.SPHERICAL:
                value = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
            else:
                value = a[2] * b[2] - a[0] * b[0] - a[1] * b[1]
            sa = sum(abs(x) for x in a)
            sb = sum(abs(x) for x in b)
            err = sa * eq + sb * ep + 3 * ep * eq + 4 * u * sa * sb
            if geom is GeometryClass.SPHERICAL:
                thr = ctx.cos(separation / 2)
                near = value - err > thr
                far = value + err < thr
            else:
                thr = ctx.cosh(separation / 2)
                near = value + err < thr
                far = value - err > thr
    if near:
        return True
    if far:
        return False
    raise NeedsMorePrecision(f"distance bound inconclusive at {prec} bits (error {mpmath.nstr(err, 3)})")


@dataclass(frozen=True)
class GeneratorFrames:
    """Per-slot isometries of a solved scheme.

    ``crossing[i]`` carries the base vertex frame across the edge in slot
    i (1-indexed; index 0 unused); ``rotation[i]`` turns slot i onto slot
    i + 1 around the base vertex.
    """

    scheme: LabelingScheme
    solution: AngleSolution
    crossing: tuple
    rotation: tuple
    directions: tuple
    prec: int

    def cross(self, slot: int) -> Isometry:
        return self.crossing[slot]

    def letter(self, generator: int) -> Isometry:
        """Isometry of right multiplication by a_generator (edge slot sigma(g))."""
        return self.crossing[self.scheme.inv(generator)]


def generator_frames(scheme: LabelingScheme, solution: AngleSolution,
                     prec: int = FLOAT_PREC) -> GeneratorFrames:
    return _frames_cached(scheme, solution, prec)


@lru_cache(maxsize=512)
def _frames_cached(scheme: LabelingScheme, solution: AngleSolution, prec: int) -> GeneratorFrames:
    geom = solution.geometry
    d = scheme.degree
    if prec <= FLOAT_PREC:
        ctx = math
        l = solution.edge_length
        angles = solution.angles
        dl = solution.length_error
    else:
        ctx = mpmath
        l, angles, dl = _solve_mp(solution.type_vector, prec)
    u = _unit_roundoff(prec)
    crossing = [None]
    rotation = [None]
    with mpmath.workprec(max(prec, FLOAT_PREC) + 10):
        alpha = [None, ctx.mpf(0) if ctx is mpmath else 0.0]
        for i in range(1, d):
            alpha.append(alpha[-1] + angles[i - 1])
        pi = ctx.pi
        for i in range(1, d + 1):
            j = scheme.inv(i)
            parts = [
                _array(_rotation_rows(alpha[i], ctx), prec),
                _array(_translation_rows(geom, l, ctx), prec),
                _array(_rotation_rows(pi, ctx), prec),
            ]
            if not scheme.is_direct(i):
                parts.append(_array(_REFLECT, prec))
            parts.append(_array(_rotation_rows(-alpha[j], ctx), prec))
            m = parts[0]
            for part in parts[1:]:
                m = m @ part
            crossing.append(Isometry(m, _GEN_ERR_FACTOR * (u + dl) * _norm(m), geom, prec))
            r = _array(_rotation_rows(angles[i - 1], ctx), prec)
            rotation.append(Isometry(r, _GEN_ERR_FACTOR * (u + dl) * _norm(r), geom, prec))
    directions = tuple(float(a) for a in alpha[1:])
    return GeneratorFrames(scheme, solution, tuple(crossing), tuple(rotation), directions, prec)


def word_isometry(frames: GeneratorFrames, word) -> Isometry:
    """Left-to-right product of the letter isometries of ``word``."""
    acc = identity(frames.solution.geometry, frames.prec)
    for g in word:
        acc = compose(acc, frames.letter(g))
    return acc


def hyperboloid_to_disk(p) -> tuple[float, float]:
    x, y, z = (float(c) for c in p)
    return x / (1 + z), y / (1 + z)
