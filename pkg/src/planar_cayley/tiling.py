"""Combinatorial construction of balls of a planar Cayley graph.

The graph is grown vertex by vertex.  Completing a vertex means walking
every face incident to it with the dart automaton and closing the face
once it has the right number of edges; the closing edge may land on a
slot that is already occupied, in which case the two endpoints are
identified.  Identifications are processed through a work queue until
nothing changes, so the result does not depend on the order in which
faces were closed.  Coordinates are attached afterwards and are never
used to decide whether two vertices are the same.

Conventions: slots are 0-indexed internally; slot ``s`` of vertex ``v``
is the edge from ``v`` to ``v * a_{sigma(s)}``, and it is glued to slot
``sigma(s)`` of the other endpoint.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from .errors import IncompleteBall, MalformedVector, ResourceLimit
from .geometry import (
    AngleSolution,
    GeometryClass,
    Isometry,
    ModelPoint,
    generator_frames,
    solve_edge_length,
)
from .scheme import (
    LabelingScheme,
    TypeVector,
    format_entry,
    is_infinite,
    is_valid_type_vector,
    orbits,
)

DEFAULT_VERTEX_CAP = 2_000_000


class Orientation(Enum):
    CCW = 1
    CW = -1


@dataclass(frozen=True)
class Face:
    face_class: int
    length: object  # int or INFINITY
    darts: tuple[tuple[int, int], ...]  # (vertex, slot) states in walking order
    closed: bool

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.darts)


@dataclass(frozen=True)
class VertexRecord:
    slots: tuple[int | None, ...]
    orientation: Orientation
    position: ModelPoint
    frame: Isometry


class _Builder:
    """Mutable partial Cayley graph; see the module docstring."""

    def __init__(self, scheme: LabelingScheme, tv: TypeVector, cap: int):
        self.d = d = scheme.degree
        self.inv = [scheme.sigma[s] - 1 for s in range(d)]
        self.tau = list(scheme.tau)
        self.corner_len = [None if is_infinite(x) else int(x) for x in tv]
        self.cap = cap
        self.nbr: list[list[int]] = []
        self.orient: list[int] = []
        self.parent: list[int] = []
        self.processed = bytearray()
        self.root = self._new(1)

    def _new(self, o: int) -> int:
        v = len(self.parent)
        if v >= self.cap:
            raise ResourceLimit(f"vertex cap of {self.cap} exceeded")
        self.nbr.append([-1] * self.d)
        self.orient.append(o)
        self.parent.append(v)
        self.processed.append(0)
        return v

    def find(self, v: int) -> int:
        parent = self.parent
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            parent[v], v = r, parent[v]
        return r

    def get(self, v: int, s: int) -> int:
        w = self.nbr[v][s]
        if w >= 0 and self.parent[w] != w:
            w = self.find(w)
            self.nbr[v][s] = w
        return w

    def _define(self, v: int, s: int) -> int:
        w = self._new(self.orient[v] * self.tau[s])
        self.nbr[v][s] = w
        self.nbr[w][self.inv[s]] = v
        return w

    def coincidence(self, a: int, b: int) -> None:
        queue = [(a, b)]
        nbr, orient, parent = self.nbr, self.orient, self.parent
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if orient[a] != orient[b]:
                raise RuntimeError("face closure identified vertices of opposite orientation")
            keep, drop = (a, b) if a < b else (b, a)
            parent[drop] = keep
            self.processed[keep] |= self.processed[drop]
            for s in range(self.d):
                w = nbr[drop][s]
                if w < 0:
                    continue
                x = nbr[keep][s]
                if x < 0:
                    nbr[keep][s] = w
                else:
                    queue.append((x, w))

    def _close_face(self, v: int, s: int, length: int) -> None:
        d, inv, orient = self.d, self.inv, self.orient
        fv, fs, i = v, s, 0
        while i < length:
            sp = (fs + orient[fv]) % d
            w = self.get(fv, sp)
            if w < 0:
                break
            fv, fs, i = w, inv[sp], i + 1
        if i == length:
            if fv != v:
                self.coincidence(fv, v)
            return
        bv, bs, j = v, s, 0
        while i + j < length:
            u = self.get(bv, bs)
            if u < 0:
                break
            bv, bs, j = u, (inv[bs] - orient[u]) % d, j + 1
        while True:
            if i + j == length:
                if fv != bv:
                    self.coincidence(fv, bv)
                return
            sp = (fs + orient[fv]) % d
            if i + j == length - 1:
                if orient[bv] != orient[fv] * self.tau[sp] or inv[sp] != bs:
                    raise RuntimeError("inconsistent face closure")
                self.nbr[fv][sp] = bv
                self.nbr[bv][bs] = fv
                return
            fv, fs, i = self._define(fv, sp), inv[sp], i + 1

    def process(self, v: int) -> None:
        d = self.d
        for c in range(d):
            v = self.find(v)
            length = self.corner_len[c]
            if length is None:
                continue
            s = c if self.orient[v] == 1 else (c + 1) % d
            self._close_face(v, s, length)
        v = self.find(v)
        for s in range(d):
            if self.get(v, s) < 0:
                self._define(v, s)
        self.processed[self.find(v)] = 1

    def distances(self) -> dict[int, int]:
        root = self.find(self.root)
        dist = {root: 0}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for s in range(self.d):
                w = self.get(v, s)
                if w >= 0 and w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def grow(self, radius: int | None) -> None:
        """Process every vertex within ``radius`` (all vertices if None)."""
        while True:
            dist = self.distances()
            todo = sorted((dv, v) for v, dv in dist.items()
                          if not self.processed[v] and (radius is None or dv <= radius))
            if not todo:
                return
            for _, v in todo:
                if self.parent[v] == v and not self.processed[v]:
                    self.process(v)


@dataclass
class Ball:
    scheme: LabelingScheme
    type_vector: TypeVector
    radius: int | None
    solution: AngleSolution
    neighbors: list[tuple[int, ...]]  # -1 where the edge leaves the ball
    orientation: list[int]
    distance: list[int]
    positions: np.ndarray
    frames: np.ndarray
    faces: list[Face] = field(default_factory=list)

    @property
    def root(self) -> int:
        return 0

    @property
    def geometry(self) -> GeometryClass:
        return self.solution.geometry

    @property
    def n_vertices(self) -> int:
        return len(self.neighbors)

    @property
    def complete(self) -> bool:
        return all(w >= 0 for nb in self.neighbors for w in nb)

    def edges(self) -> list[tuple[int, int, int, int]]:
        """Undirected edges as (u, slot_u, v, slot_v), 0-indexed slots, each listed once."""
        inv = [s - 1 for s in self.scheme.sigma]
        out = []
        for u, nb in enumerate(self.neighbors):
            for s, v in enumerate(nb):
                if v >= 0 and (u, s) < (v, inv[s]):
                    out.append((u, s, v, inv[s]))
        return out

    @property
    def n_edges(self) -> int:
        return len(self.edges())

    def closed_faces(self) -> list[Face]:
        return [f for f in self.faces if f.closed]

    def vertex(self, v: int) -> VertexRecord:
        slots = tuple(None if w < 0 else w for w in self.neighbors[v])
        o = Orientation.CCW if self.orientation[v] == 1 else Orientation.CW
        geom = self.geometry
        return VertexRecord(slots, o, ModelPoint(self.positions[v], 0.0, geom),
                            Isometry(self.frames[v], 0.0, geom))

    def follow(self, v: int, generator: int) -> int:
        """Neighbor ``v * a_generator``, or -1 if it lies outside the ball."""
        return self.neighbors[v][self.scheme.sigma[generator - 1] - 1]

    def trace(self, word) -> int:
        v = 0
        for g in word:
            v = self.follow(v, g)
            if v < 0:
                return -1
        return v

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme.to_json(),
            "type_vector": self.type_vector.to_json(),
            "radius": self.radius,
            "geometry": self.geometry.value,
            "edge_length": self.solution.edge_length,
            "vertices": [
                {"id": v, "orientation": "ccw" if self.orientation[v] == 1 else "cw",
                 "position": [float(x) for x in self.positions[v]]}
                for v in range(self.n_vertices)
            ],
            "edges": [
                {"endpoints": [u, v], "generator": self.scheme.sigma[su] , "slots": [su + 1, sv + 1]}
                for u, su, v, sv in self.edges()
            ],
            "faces": [
                {"class": f.face_class, "length": format_entry(f.length) if is_infinite(f.length) else f.length,
                 "closed": f.closed, "vertices": list(f.vertices)}
                for f in self.faces
            ],
        }


def _coincident_pairs(ball: "Ball") -> int:
    """Number of pairs of distinct ball vertices sitting at the same model point."""
    if ball.n_vertices < 2:
        return 0
    tol = 1e-6 * max(1.0, float(np.abs(ball.positions).max()))
    return len(cKDTree(ball.positions).query_pairs(tol))


def build_ball(scheme: LabelingScheme, tv: TypeVector, radius: int | None,
               vertex_cap: int = DEFAULT_VERTEX_CAP, margin: int = 0) -> Ball:
    """Radius-``radius`` ball around the identity, with model coordinates.

    Spherical graphs are finite and are always constructed completely;
    ``radius=None`` returns the whole graph, otherwise the returned ball is
    still cut at ``radius``.

    Vertices are first processed out to ``radius + margin``.  Two copies of
    one group element can survive at the boundary when no face closure has
    linked them yet; they would land on the same model point, so the
    embedding is checked for coincident vertices and processing continues
    one layer further until there are none.
    """
    if not is_valid_type_vector(scheme, tv):
        raise MalformedVector(f"{tv} is not valid for {scheme}")
    if radius is not None and radius < 0:
        raise ValueError("radius must be non-negative")
    solution = solve_edge_length(tv)
    spherical = solution.geometry is GeometryClass.SPHERICAL
    if radius is None and not spherical:
        raise ValueError("only spherical (finite) graphs can be built without a radius")
    builder = _Builder(scheme, tv, vertex_cap)
    if spherical:
        builder.grow(None)
        return _extract(builder, scheme, tv, radius, solution)
    depth = radius + margin
    while True:
        builder.grow(depth)
        ball = _extract(builder, scheme, tv, radius, solution)
        if not _coincident_pairs(ball):
            return ball
        depth += 1


def _extract(b: _Builder, scheme, tv, radius, solution) -> Ball:
    d = b.d
    root = b.find(b.root)
    order = [root]
    index = {root: 0}
    dist = [0]
    parent_slot = [(-1, -1)]
    head = 0
    while head < len(order):
        v = order[head]
        dv = dist[head]
        head += 1
        if radius is not None and dv >= radius:
            continue
        for s in range(d):
            w = b.get(v, s)
            if w >= 0 and w not in index:
                index[w] = len(order)
                order.append(w)
                dist.append(dv + 1)
                parent_slot.append((index[v], s))
    neighbors = []
    for v in order:
        row = []
        for s in range(d):
            w = b.get(v, s)
            row.append(index.get(w, -1) if w >= 0 else -1)
        neighbors.append(tuple(row))
    orientation = [b.orient[v] for v in order]

    frames_table = generator_frames(scheme, solution)
    mats = [None] + [np.asarray(frames_table.cross(s).matrix, dtype=float) for s in range(1, d + 1)]
    n = len(order)
    frames = np.empty((n, 3, 3))
    frames[0] = np.eye(3)
    for i in range(1, n):
        p, s = parent_slot[i]
        frames[i] = frames[p] @ mats[s + 1]
    positions = frames[:, :, 2].copy()

    ball = Ball(scheme, tv, radius, solution, neighbors, orientation, dist, positions, frames)
    ball.faces = _trace_faces(ball)
    return ball


def _trace_faces(ball: Ball) -> list[Face]:
    scheme = ball.scheme
    d = scheme.degree
    inv = [s - 1 for s in scheme.sigma]
    part = orbits(scheme)
    nbr, orient = ball.neighbors, ball.orientation

    def step(v, s):
        sp = (s + orient[v]) % d
        w = nbr[v][sp]
        return (w, inv[sp]) if w >= 0 else None

    def back(v, s):
        u = nbr[v][s]
        return (u, (inv[s] - orient[u]) % d) if u >= 0 else None

    seen = set()
    faces = []
    for v in range(ball.n_vertices):
        for c in range(d):
            s = c if orient[v] == 1 else (c + 1) % d
            if (v, s) in seen:
                continue
            length = ball.type_vector[c]
            fclass = part.face_class[c]
            walk = [(v, s)]
            closed = False
            state = (v, s)
            limit = ball.n_vertices * d + 1
            while len(walk) <= limit:
                state = step(*state)
                if state is None:
                    break
                if state == walk[0]:
                    closed = True
                    break
                walk.append(state)
            if not closed:
                state = walk[0]
                prefix = []
                while True:
                    state = back(*state)
                    if state is None or state in seen or state == walk[-1]:
                        break
                    prefix.append(state)
                walk = prefix[::-1] + walk
            seen.update(walk)
            if closed and not is_infinite(length) and len(walk) != length:
                raise RuntimeError(f"closed face of class {fclass} has {len(walk)} edges, expected {length}")
            faces.append(Face(fclass, length, tuple(walk), closed))
    return faces


def euler_characteristic(ball: Ball) -> int:
    if not ball.complete:
        raise IncompleteBall("ball still has open slots")
    return ball.n_vertices - ball.n_edges + len(ball.closed_faces())


@lru_cache(maxsize=64)
def _ball_for_words(scheme: LabelingScheme, tv: TypeVector, radius: int, vertex_cap: int) -> Ball:
    return build_ball(scheme, tv, radius, vertex_cap)


def word_ball(scheme: LabelingScheme, tv: TypeVector, length: int,
              vertex_cap: int = DEFAULT_VERTEX_CAP) -> Ball:
    """A ball large enough to decide triviality of words up to ``length`` letters."""
    if solve_edge_length(tv).geometry is GeometryClass.SPHERICAL:
        return _ball_for_words(scheme, tv, None, vertex_cap)
    # a closed walk of length n never gets further than n // 2 from its start;
    # round radii up to even numbers so that nearby lengths share one build
    need = (length // 2 + 1) // 2 * 2
    return _ball_for_words(scheme, tv, max(need, 2), vertex_cap)


def wp_combinatorial(scheme: LabelingScheme, tv: TypeVector, word,
                     vertex_cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """Whether ``word`` (1-indexed generators) is the identity, by tracing it in a built ball."""
    word = tuple(word)
    for g in word:
        if not 1 <= g <= scheme.degree:
            raise ValueError(f"generator index {g} out of range")
    ball = word_ball(scheme, tv, len(word), vertex_cap)
    return ball.trace(word) == 0
