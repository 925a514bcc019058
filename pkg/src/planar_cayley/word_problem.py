"""Word problem by tracking positions in the model plane.

A word is followed edge by edge as a product of crossing isometries, so
the endpoint costs one matrix product per letter.  It is the identity iff
the endpoint is the base vertex.  Distinct vertices of the tiling are at
least one edge length apart, so deciding between "within l/2" and
"beyond l/2" is enough; when the error bounds do not separate the two
the computation is repeated at twice the precision.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NeedsMorePrecision
from .geometry import (
    FLOAT_PREC,
    GeometryClass,
    Isometry,
    ModelPoint,
    apply,
    base_point,
    certified_equal,
    generator_frames,
    solve_edge_length,
    word_isometry,
)
from .scheme import LabelingScheme, TypeVector, format_word, invert_word, parse_word

MAX_PREC = 53 * 2**10


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        return cls(parse_word(text))

    def check(self, degree: int) -> None:
        for g in self.letters:
            if not 1 <= g <= degree:
                raise ValueError(f"generator a{g} out of range 1..{degree}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)


def _letters(scheme: LabelingScheme, word) -> tuple[int, ...]:
    w = word if isinstance(word, GroupWord) else GroupWord(tuple(word))
    w.check(scheme.degree)
    return w.letters


def position(scheme: LabelingScheme, tv: TypeVector, word,
             prec: int = FLOAT_PREC) -> tuple[ModelPoint, Isometry]:
    """Endpoint of ``word`` read from the base vertex, and the isometry that carries it there."""
    letters = _letters(scheme, word)
    solution = solve_edge_length(tv)
    frames = generator_frames(scheme, solution, prec)
    iso = word_isometry(frames, letters)
    return apply(iso, base_point(solution.geometry, prec)), iso


def is_trivial(scheme: LabelingScheme, tv: TypeVector, word) -> bool:
    letters = _letters(scheme, word)
    if not letters:
        return True
    if solve_edge_length(tv).geometry is GeometryClass.SPHERICAL:
        # finite graph: trace the word in the complete build instead
        from .tiling import wp_combinatorial

        return wp_combinatorial(scheme, tv, letters)
    return is_trivial_geometric(scheme, tv, letters)


def is_trivial_geometric(scheme: LabelingScheme, tv: TypeVector, word) -> bool:
    """The certified numeric decision, in every geometry (no shortcut through a build)."""
    letters = _letters(scheme, word)
    solution = solve_edge_length(tv)
    prec = FLOAT_PREC
    while True:
        end, _ = position(scheme, tv, letters, prec)
        try:
            return certified_equal(end, base_point(solution.geometry, prec), solution.edge_length)
        except NeedsMorePrecision:
            if prec >= MAX_PREC:
                raise
            prec *= 2


def are_equal(scheme: LabelingScheme, tv: TypeVector, w1, w2) -> bool:
    a = _letters(scheme, w1)
    b = _letters(scheme, w2)
    return is_trivial(scheme, tv, a + invert_word(b, scheme.sigma))

