"""Labeling schemes, the dart automaton and type vectors.

A labeling scheme of degree ``d`` is stored as ``(d, sigma, tau)``: the
cyclic order of the generators around a vertex is always ``1, 2, ..., d``,
``sigma`` pairs each generator with its inverse and ``tau`` marks it
direct (+1) or indirect (-1).  Generators are 1-indexed throughout the
public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Sequence

from .errors import InvalidScheme, MalformedVector

INFINITY = math.inf

Word = tuple[int, ...]


def is_infinite(x) -> bool:
    return x == INFINITY


class Side(IntEnum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True, order=True)
class Dart:
    generator: int
    side: Side

    def __str__(self) -> str:
        return f"{self.generator}{'+' if self.side is Side.PLUS else '-'}"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Dart":
        text = text.strip()
        side = {"+": Side.PLUS, "-": Side.MINUS}[text[-1]]
        return cls(int(text[:-1]), side)


def plus(i: int) -> Dart:
    return Dart(i, Side.PLUS)


def minus(i: int) -> Dart:
    return Dart(i, Side.MINUS)


@dataclass(frozen=True)
class LabelingScheme:
    degree: int
    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        object.__setattr__(self, "tau", tuple(int(t) for t in self.tau))
        d = self.degree
        if d < 2:
            raise InvalidScheme(f"degree must be at least 2, got {d}")
        if len(self.sigma) != d or len(self.tau) != d:
            raise InvalidScheme("sigma and tau must both have length d")
        for i, s in enumerate(self.sigma, start=1):
            if not 1 <= s <= d:
                raise InvalidScheme(f"sigma({i}) = {s} out of range 1..{d}")
            if self.sigma[s - 1] != i:
                raise InvalidScheme(f"sigma is not an involution at {i}")
        for i, t in enumerate(self.tau, start=1):
            if t not in (1, -1):
                raise InvalidScheme(f"tau({i}) must be +1 or -1")
            if self.tau[self.sigma[i - 1] - 1] != t:
                raise InvalidScheme(f"tau(sigma({i})) != tau({i})")

    def inv(self, i: int) -> int:
        return self.sigma[i - 1]

    def is_direct(self, i: int) -> bool:
        return self.tau[i - 1] == 1

    def succ(self, i: int) -> int:
        return i % self.degree + 1

    def pred(self, i: int) -> int:
        return (i - 2) % self.degree + 1

    def darts(self) -> list[Dart]:
        return [Dart(i, s) for s in (Side.PLUS, Side.MINUS) for i in range(1, self.degree + 1)]

    def sigma_pairs(self) -> list[tuple[int, int]]:
        return [(i, s) for i, s in enumerate(self.sigma, start=1) if i <= s]

    def to_json(self) -> dict:
        return {"degree": self.degree, "sigma": list(self.sigma), "tau": list(self.tau)}

    @classmethod
    def from_json(cls, obj: dict) -> "LabelingScheme":
        return cls(int(obj["degree"]), tuple(obj["sigma"]), tuple(obj["tau"]))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]],
                    indirect: Iterable[int] = ()) -> "LabelingScheme":
        """Build a scheme from the cycles of sigma and the set of indirect generators."""
        sigma = list(range(1, degree + 1))
        for cyc in cycles:
            if len(cyc) == 2:
                a, b = cyc
                sigma[a - 1], sigma[b - 1] = b, a
            elif len(cyc) != 1:
                raise InvalidScheme(f"sigma cycle {cyc} is not of length 1 or 2")
        bad = set(indirect)
        tau = [-1 if i in bad else 1 for i in range(1, degree + 1)]
        return cls(degree, tuple(sigma), tuple(tau))

    def __str__(self) -> str:
        cyc = "".join(f"({i})" if i == s else f"({i} {s})" for i, s in self.sigma_pairs())
        ind = ",".join(str(i) for i in range(1, self.degree + 1) if self.tau[i - 1] < 0)
        return f"d={self.degree} sigma={cyc} indirect={{{ind}}}"


def dart_step(scheme: LabelingScheme, dart: Dart) -> Dart:
    """Image of a dart under the generator of the Z-action."""
    if dart.side is Side.PLUS:
        t = scheme.inv(scheme.succ(dart.generator))
        return Dart(t, Side.PLUS if scheme.is_direct(t) else Side.MINUS)
    t = scheme.inv(scheme.pred(dart.generator))
    return Dart(t, Side.MINUS if scheme.is_direct(t) else Side.PLUS)


def dart_step_inv(scheme: LabelingScheme, dart: Dart) -> Dart:
    # t^+ comes from s^+ (t direct) or s^- (t indirect); t^- symmetrically
    g = dart.generator
    came_from_plus = (dart.side is Side.PLUS) == scheme.is_direct(g)
    if came_from_plus:
        return Dart(scheme.pred(scheme.inv(g)), Side.PLUS)
    return Dart(scheme.succ(scheme.inv(g)), Side.MINUS)


def dual_dart(scheme: LabelingScheme, dart: Dart) -> Dart:
    """The dart reading the same corner in the opposite rotation direction."""
    if dart.side is Side.PLUS:
        return Dart(scheme.succ(dart.generator), Side.MINUS)
    return Dart(scheme.pred(dart.generator), Side.PLUS)


@dataclass(frozen=True)
class FacePartition:
    orbits: tuple[tuple[Dart, ...], ...]
    dual: tuple[int, ...]
    face_class: tuple[int, ...]
    orbit_index: dict = field(compare=False, repr=False)

    def orbit_of(self, dart: Dart) -> tuple[Dart, ...]:
        return self.orbits[self.orbit_index[dart]]

    def class_of(self, generator: int) -> int:
        return self.face_class[generator - 1]

    @property
    def n_classes(self) -> int:
        return max(self.face_class) + 1

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_classes)]
        for g, c in enumerate(self.face_class, start=1):
            out[c].append(g)
        return out


def orbits(scheme: LabelingScheme) -> FacePartition:
    seen: dict[Dart, int] = {}
    orbs: list[tuple[Dart, ...]] = []
    # PLUS darts first so that orbit 0 contains 1+
    for start in scheme.darts():
        if start in seen:
            continue
        cyc = [start]
        x = dart_step(scheme, start)
        while x != start:
            cyc.append(x)
            x = dart_step(scheme, x)
        for x in cyc:
            seen[x] = len(orbs)
        orbs.append(tuple(cyc))
    dual = tuple(seen[dual_dart(scheme, o[0])] for o in orbs)

    face_class = [-1] * scheme.degree
    n = 0
    for i in range(1, scheme.degree + 1):
        if face_class[i - 1] >= 0:
            continue
        o = seen[plus(i)]
        for j in range(i, scheme.degree + 1):
            if seen[plus(j)] in (o, dual[o]):
                face_class[j - 1] = n
        n += 1
    return FacePartition(tuple(orbs), dual, tuple(face_class), seen)


class VectorKind(Enum):
    PRIMITIVE = "primitive"
    VALID = "valid"


@dataclass(frozen=True)
class TypeVector:
    entries: tuple
    kind: VectorKind = VectorKind.VALID

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(_entry(x) for x in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return "[" + ",".join(format_entry(x) for x in self.entries) + "]"

    @property
    def is_finite(self) -> bool:
        return not any(is_infinite(x) for x in self.entries)

    def to_json(self) -> list:
        return ["inf" if is_infinite(x) else x for x in self.entries]

    @classmethod
    def from_json(cls, obj) -> "TypeVector":
        return cls(tuple(obj))

    @classmethod
    def parse(cls, text: str) -> "TypeVector":
        text = text.strip().strip("[]")
        return cls(tuple(tok for tok in text.replace(" ", "").split(",") if tok))


def _entry(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INFINITY
        x = int(x)
    if is_infinite(x):
        return INFINITY
    if isinstance(x, float):
        if not x.is_integer():
            raise MalformedVector(f"non-integer entry {x}")
        x = int(x)
    return int(x)


def format_entry(x) -> str:
    return "inf" if is_infinite(x) else str(x)


def primitive_vector(scheme: LabelingScheme) -> TypeVector:
    part = orbits(scheme)
    return TypeVector(tuple(len(part.orbit_of(plus(i))) for i in range(1, scheme.degree + 1)),
                      VectorKind.PRIMITIVE)


def check_well_formed(degree: int, tv: TypeVector) -> None:
    if len(tv) != degree:
        raise MalformedVector(f"type vector has {len(tv)} entries, expected {degree}")
    for i, x in enumerate(tv, start=1):
        if not is_infinite(x) and x < 3:
            raise MalformedVector(f"entry {i} is {x}; faces need at least 3 sides")


def is_valid_type_vector(scheme: LabelingScheme, tv: TypeVector) -> bool:
    check_well_formed(scheme.degree, tv)
    part = orbits(scheme)
    prim = primitive_vector(scheme)
    for i, (l, k) in enumerate(zip(tv, prim)):
        if not is_infinite(l) and l % k:
            return False
    for cls in part.classes():
        if len({tv[g - 1] for g in cls}) > 1:
            return False
    return True


def smallest_valid_vector(scheme: LabelingScheme) -> TypeVector:
    """Scale each face class's primitive length to its least multiple >= 3."""
    prim = primitive_vector(scheme)
    return TypeVector(tuple(k * math.ceil(3 / k) for k in prim))


def face_length(scheme: LabelingScheme, tv: TypeVector, generator: int):
    return tv[generator - 1]


@dataclass(frozen=True)
class FaceRelator:
    base: Word
    power: int
    face_class: int

    @property
    def word(self) -> Word:
        return self.base * self.power


@dataclass(frozen=True)
class Presentation:
    generators: int
    inverse_pairs: tuple[tuple[int, int], ...]
    face_relators: tuple[FaceRelator, ...] = ()
    extra_relators: tuple[Word, ...] = ()

    @property
    def relators(self) -> tuple[Word, ...]:
        inv = tuple((i, j) for i, j in self.inverse_pairs)
        return tuple(r.word for r in self.face_relators) + inv + tuple(self.extra_relators)

    def sigma(self) -> tuple[int, ...]:
        s = list(range(1, self.generators + 1))
        for i, j in self.inverse_pairs:
            s[i - 1], s[j - 1] = j, i
        return tuple(s)

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "inverses": [list(p) for p in self.inverse_pairs],
            "relators": [list(r) for r in self.relators],
        }

    def __str__(self) -> str:
        return "< a1..a%d | %s >" % (self.generators, ", ".join(format_word(r) for r in self.relators))


def format_word(word: Sequence[int]) -> str:
    if not word:
        return "1"
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        out.append(f"a{word[i]}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return " ".join(out)


def parse_word(text: str) -> Word:
    """Parse ``"a3 a3"`` (or bare ``"3 3"``) into a tuple of generator indices."""
    out = []
    for tok in text.replace(",", " ").split():
        tok = tok.strip()
        if tok[0] in "aA":
            tok = tok[1:]
        out.append(int(tok))
    return tuple(out)


def canonical_presentation(scheme: LabelingScheme, tv: TypeVector) -> Presentation:
    if not is_valid_type_vector(scheme, tv):
        raise MalformedVector(f"{tv} is not valid for {scheme}")
    part = orbits(scheme)
    rels = []
    for c, cls in enumerate(part.classes()):
        length = tv[cls[0] - 1]
        if is_infinite(length):
            continue
        orbit = part.orbit_of(plus(cls[0]))
        base = tuple(scheme.inv(x.generator) for x in reversed(orbit))
        rels.append(FaceRelator(base, length // len(orbit), c))
    return Presentation(scheme.degree, tuple(scheme.sigma_pairs()), tuple(rels))


def invert_word(word: Sequence[int], sigma: Sequence[int]) -> Word:
    return tuple(sigma[g - 1] for g in reversed(word))


def least_rotation(word: Sequence[int]) -> Word:
    word = tuple(word)
    if not word:
        return word
    return min(word[k:] + word[:k] for k in range(len(word)))


def normalize_relator(word: Sequence[int], sigma: Sequence[int]) -> Word:
    return min(least_rotation(word), least_rotation(invert_word(word, sigma)))


def relabel_word(word: Sequence[int], mapping) -> Word:
    """Rename each letter ``g`` to ``mapping[g]`` (a dict or 1-indexed sequence)."""
    if isinstance(mapping, dict):
        return tuple(mapping[g] for g in word)
    return tuple(mapping[g - 1] for g in word)
