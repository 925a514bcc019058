"""Enumeration of labeling schemes up to cyclic relabeling of the generators."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import DegreeTooSmall
from .scheme import (
    LabelingScheme,
    TypeVector,
    check_well_formed,
    is_infinite,
    is_valid_type_vector,
    orbits,
    primitive_vector,
)


@dataclass(frozen=True)
class SchemeClass:
    representative: LabelingScheme
    class_size: int


@dataclass(frozen=True)
class FamilyDescriptor:
    """Symbolic family of valid type vectors: entry i is ``coefficients[i] * x[variables[i]]``."""

    coefficients: tuple[int, ...]
    variables: tuple[int, ...]
    names: tuple[str, ...]

    def floor(self, i: int) -> int:
        """Smallest admissible value of the variable multiplying entry ``i``."""
        return math.ceil(3 / self.coefficients[i])

    @property
    def pattern(self) -> tuple[str, ...]:
        out = []
        for c, v in zip(self.coefficients, self.variables):
            name = self.names[v]
            out.append(name if c == 1 else f"{c}{name}")
        return tuple(out)

    def substitute(self, values) -> TypeVector:
        return TypeVector(tuple(c * values[v] for c, v in zip(self.coefficients, self.variables)))

    def __str__(self) -> str:
        return "[" + ",".join(self.pattern) + "]"


def rotate(scheme: LabelingScheme, k: int) -> LabelingScheme:
    """Relabel generator ``i`` as ``i + k`` (mod d)."""
    d = scheme.degree
    sigma = [0] * d
    tau = [0] * d
    for i in range(d):
        j = (i + k) % d
        sigma[j] = (scheme.sigma[i] - 1 + k) % d + 1
        tau[j] = scheme.tau[i]
    return LabelingScheme(d, tuple(sigma), tuple(tau))


def _key(s: LabelingScheme):
    return (s.sigma, s.tau)


def canonical_form(scheme: LabelingScheme) -> LabelingScheme:
    return min((rotate(scheme, k) for k in range(scheme.degree)), key=_key)


def canonical_rotation(scheme: LabelingScheme) -> int:
    """The smallest shift ``k`` with ``rotate(scheme, k) == canonical_form(scheme)``."""
    best = canonical_form(scheme)
    return next(k for k in range(scheme.degree) if rotate(scheme, k) == best)


def involutions(d: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """All involutions of 1..d by backtracking over pairings.

    ``first`` restricts the partner chosen for generator 1, which is how
    the search is split across workers.
    """
    sigma = [0] * (d + 1)

    def rec(free: list[int]):
        if not free:
            yield tuple(sigma[1:])
            return
        i, rest = free[0], free[1:]
        choices = [i] + rest
        if first is not None and i == 1:
            choices = [first]
        for j in choices:
            sigma[i], sigma[j] = j, i
            yield from rec([x for x in rest if x != j])
            sigma[i] = sigma[j] = 0

    yield from rec(list(range(1, d + 1)))


def schemes_with_sigma(sigma: tuple[int, ...]) -> Iterator[LabelingScheme]:
    d = len(sigma)
    reps = [i for i in range(1, d + 1) if i <= sigma[i - 1]]
    for bits in range(2 ** len(reps)):
        tau = [0] * d
        for b, i in enumerate(reps):
            t = -1 if bits >> b & 1 else 1
            tau[i - 1] = tau[sigma[i - 1] - 1] = t
        yield LabelingScheme(d, sigma, tuple(tau))


def raw_pair_count(d: int) -> int:
    """Number of (sigma, tau) pairs: sum over involutions of 2^(sigma-orbits)."""
    total = 0
    for sigma in involutions(d):
        total += 2 ** sum(1 for i in range(1, d + 1) if i <= sigma[i - 1])
    return total


def _partition(args) -> dict:
    d, first = args
    found: dict = {}
    for sigma in involutions(d, first):
        for s in schemes_with_sigma(sigma):
            c = canonical_form(s)
            found[_key(c)] = found.get(_key(c), 0) + 1
    return found


def enumerate_schemes(d: int, jobs: int = 1) -> list[SchemeClass]:
    """One class per cyclic-relabeling orbit of labeling schemes, in canonical order."""
    if d < 1:
        raise DegreeTooSmall(f"degree must be at least 1, got {d}")
    if d == 1:
        return []
    if d == 2:
        # degree 2 Cayley graphs are cycles: one class, outside the scheme-level count
        return [SchemeClass(LabelingScheme(2, (2, 1), (1, 1)), 1)]
    return list(_enumerate_cached(d, jobs))


@lru_cache(maxsize=None)
def _enumerate_cached(d: int, jobs: int) -> tuple[SchemeClass, ...]:
    tasks = [(d, first) for first in range(1, d + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_partition, tasks))
    else:
        parts = [_partition(t) for t in tasks]
    merged: dict = {}
    for part in parts:
        for key, n in part.items():
            merged[key] = merged.get(key, 0) + n
    return tuple(SchemeClass(LabelingScheme(d, *key), merged[key]) for key in sorted(merged))


def _fixed_by_rotation(d: int, k: int) -> int:
    # schemes with r_k sigma r_k^-1 = sigma and tau constant on r_k-orbits
    count = 0
    for sigma in involutions(d):
        if any((sigma[i] - 1 + k) % d + 1 != sigma[(i + k) % d] for i in range(d)):
            continue
        # tau is a function on the orbits of the group generated by sigma and r_k
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(d):
            for j in (sigma[i] - 1, (i + k) % d):
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
        count += 2 ** len({find(i) for i in range(d)})
    return count


def burnside_count(d: int) -> int:
    """Number of classes, by averaging fixed points over the d rotations."""
    if d < 3:
        raise DegreeTooSmall("orbit counting applies from degree 3")
    total = sum(_fixed_by_rotation(d, k) for k in range(d))
    return int(Fraction(total, d))


_VAR_NAMES = "nmpqrstuvw"


def primitive_family(scheme: LabelingScheme) -> FamilyDescriptor:
    part = orbits(scheme)
    prim = primitive_vector(scheme)
    names = tuple(_VAR_NAMES[c] if c < len(_VAR_NAMES) else f"x{c}" for c in range(part.n_classes))
    return FamilyDescriptor(tuple(prim.entries), part.face_class, names)


def canonical_pattern(family: FamilyDescriptor) -> tuple[int, ...]:
    """Pattern up to renaming of variables and rotation of entries, for comparisons."""
    d = len(family.coefficients)
    best = None
    for k in range(d):
        coeffs = family.coefficients[k:] + family.coefficients[:k]
        vars_ = family.variables[k:] + family.variables[:k]
        rename: dict[int, int] = {}
        for v in vars_:
            rename.setdefault(v, len(rename))
        key = coeffs + tuple(rename[v] for v in vars_)
        if best is None or key < best:
            best = key
    return best


def validating_member(cls: SchemeClass, tv: TypeVector) -> LabelingScheme | None:
    """The first cyclic relabeling of the class representative that validates ``tv``."""
    rep = cls.representative
    for k in range(rep.degree):
        s = rotate(rep, k)
        if is_valid_type_vector(s, tv):
            return s
    return None


def schemes_validating(d: int, tv: TypeVector) -> list[SchemeClass]:
    check_well_formed(d, tv)
    return [c for c in enumerate_schemes(d) if validating_member(c, tv) is not None]


def _contained_at(a: FamilyDescriptor, b: FamilyDescriptor, k: int) -> bool:
    # is every vector of family a (rotated by k) a vector of family b?
    d = len(a.coefficients)
    ca = a.coefficients[k:] + a.coefficients[:k]
    va = a.variables[k:] + a.variables[:k]
    for i in range(d):
        if ca[i] % b.coefficients[i]:
            return False
        for j in range(i + 1, d):
            if b.variables[i] == b.variables[j] and (va[i] != va[j] or ca[i] != ca[j]):
                return False
    return True


def family_contains(big: FamilyDescriptor, small: FamilyDescriptor) -> bool:
    """True if every vector of ``small`` is, up to rotation, a vector of ``big``."""
    return any(_contained_at(small, big, k) for k in range(len(small.coefficients)))


def distinct_families(d: int) -> list[FamilyDescriptor]:
    """Primitive families of degree d with redundant (subsumed) ones removed."""
    fams: dict = {}
    for c in enumerate_schemes(d):
        f = primitive_family(c.representative)
        fams.setdefault(canonical_pattern(f), f)
    out = []
    items = sorted(fams.items())
    for key, f in items:
        if any(key2 != key and family_contains(g, f) and (key2 < key or not family_contains(f, g))
               for key2, g in items):
            continue
        out.append(f)
    return out
