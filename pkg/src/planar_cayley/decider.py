"""Deciding whether a full presentation has a locally finite planar Cayley graph.

The presented generators are matched with the slots of every labeling
scheme whose involution has the same shape.  A matching is a bijection
``pi`` from slots to presented generators with ``pi(sigma_S(i)) =
sigma_P(pi(i))``; around each vertex the presented generators then appear
in the order ``pi(1), ..., pi(d)``.  For each matching and each admissible
type vector two things are checked:

(a) every face word of the candidate graph is trivial in the presented
    group (asked to an oracle);
(b) every relator of the presentation is trivial in the candidate graph.

(a) makes the presented group a quotient of the graph's group and (b)
the converse, so together they say the graph is a Cayley graph of the
presented group.
"""

from __future__ import annotations

import itertools
import subprocess
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .enumeration import SchemeClass, enumerate_schemes, rotate
from .errors import (
    InconsistentInverses,
    MissingInverse,
    NoSolution,
    OracleFailure,
)
from .geometry import solve_edge_length
from .scheme import (
    INFINITY,
    LabelingScheme,
    TypeVector,
    canonical_presentation,
    format_word,
    invert_word,
    normalize_relator,
    orbits,
    primitive_vector,
    relabel_word,
)
from .word_problem import is_trivial

Word = tuple[int, ...]


@dataclass(frozen=True)
class FullPresentation:
    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        rels = tuple(tuple(int(g) for g in r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        d = self.generator_count
        if d < 1:
            raise ValueError("a presentation needs at least one generator")
        for r in rels:
            if not r:
                raise ValueError("relators must be nonempty")
            for g in r:
                if not 1 <= g <= d:
                    raise ValueError(f"generator a{g} out of range 1..{d}")

    @property
    def max_relator_length(self) -> int:
        return max((len(r) for r in self.relators), default=0)

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, obj: dict) -> "FullPresentation":
        rels = [tuple(r) for r in obj.get("inverses", [])] + [tuple(r) for r in obj["relators"]]
        # inverse pairs may be listed both ways; keep the first occurrence of each word
        return cls(int(obj["generators"]), tuple(dict.fromkeys(rels)))

    def __str__(self) -> str:
        return "< a1..a%d | %s >" % (self.generator_count, ", ".join(format_word(r) for r in self.relators))


def extract_sigma(pres: FullPresentation) -> tuple[int, ...]:
    d = pres.generator_count
    sigma = [0] * (d + 1)
    for r in pres.relators:
        if len(r) != 2:
            continue
        i, j = r
        for a, b in ((i, j), (j, i)):
            if sigma[a] not in (0, b):
                raise InconsistentInverses(f"a{a} is paired with both a{sigma[a]} and a{b}")
            sigma[a] = b
    missing = [i for i in range(1, d + 1) if not sigma[i]]
    if missing:
        raise MissingInverse("no length-2 relator for " + ", ".join(f"a{i}" for i in missing))
    return tuple(sigma[1:])


# ---------------------------------------------------------------- oracles

# sympy's enumeration slows down sharply past this (about 15 s to give up)
DEFAULT_MAX_COSETS = 20_000


class WordOracle:
    """Decides triviality of words in a presented group; raises OracleFailure when it cannot."""

    def __call__(self, word: Sequence[int]) -> bool:
        raise NotImplementedError


class FullnessOracle(WordOracle):
    """Exact for words no longer than the longest relator of a full presentation."""

    def __init__(self, pres: FullPresentation):
        self.sigma = extract_sigma(pres)
        self.limit = pres.max_relator_length
        self.known = {normalize_relator(r, self.sigma) for r in pres.relators}

    def __call__(self, word):
        word = tuple(word)
        if not word:
            return True
        if len(word) > self.limit:
            raise OracleFailure(f"word of length {len(word)} exceeds the fullness bound {self.limit}")
        return normalize_relator(word, self.sigma) in self.known


class CosetOracle(WordOracle):
    """Finite groups: regular permutation representation by Todd-Coxeter enumeration."""

    def __init__(self, pres: FullPresentation, max_cosets: int = DEFAULT_MAX_COSETS):
        self.pres = pres
        self.max_cosets = max_cosets
        self._table = None

    def _enumerate(self):
        from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
        from sympy.combinatorics.free_groups import free_group

        d = self.pres.generator_count
        F, *gens = free_group(" ".join(f"a{i}" for i in range(1, d + 1)))
        rels = []
        for r in self.pres.relators:
            w = F.identity
            for g in r:
                w = w * gens[g - 1]
            rels.append(w)
        G = FpGroup(F, rels)
        try:
            C = coset_enumeration_r(G, [], max_cosets=self.max_cosets)
        except ValueError as exc:
            raise OracleFailure(f"coset enumeration exceeded {self.max_cosets} cosets") from exc
        C.compress()
        C.standardize()
        columns = {gen: C.A_dict[gen] for gen in gens}
        self._table = [[row[columns[gen]] for gen in gens] for row in C.table]

    @property
    def order(self) -> int:
        if self._table is None:
            self._enumerate()
        return len(self._table)

    def __call__(self, word):
        if self._table is None:
            self._enumerate()
        c = 0
        for g in word:
            c = self._table[c][g - 1]
        return c == 0


class CommandOracle(WordOracle):
    """Talks to an external process: one line of space-separated indices per query."""

    def __init__(self, command: str | Sequence[str]):
        self.command = command
        self._proc = None

    def _start(self):
        self._proc = subprocess.Popen(
            self.command, shell=isinstance(self.command, str), stdin=subprocess.PIPE,
            stdout=subprocess.PIPE, text=True, bufsize=1,
        )

    def __call__(self, word):
        if self._proc is None:
            self._start()
        try:
            self._proc.stdin.write(" ".join(str(g) for g in word) + "\n")
            self._proc.stdin.flush()
            answer = self._proc.stdout.readline().strip().lower()
        except (BrokenPipeError, OSError) as exc:
            raise OracleFailure(f"oracle command failed: {exc}") from exc
        if answer == "trivial":
            return True
        if answer == "nontrivial":
            return False
        raise OracleFailure(f"oracle answered {answer!r}")

    def close(self):
        if self._proc is not None:
            self._proc.stdin.close()
            self._proc.wait()
            self._proc = None


class ChainOracle(WordOracle):
    """Asks each oracle in turn, moving on when one fails."""

    def __init__(self, oracles: Iterable[WordOracle]):
        self.oracles = list(oracles)

    def __call__(self, word):
        reasons = []
        for oracle in self.oracles:
            try:
                return oracle(word)
            except OracleFailure as exc:
                reasons.append(str(exc))
        raise OracleFailure("; ".join(reasons) or "no oracle configured")


def default_oracle(pres: FullPresentation, command: str | None = None,
                   max_cosets: int = DEFAULT_MAX_COSETS) -> WordOracle:
    first = CommandOracle(command) if command else CosetOracle(pres, max_cosets)
    return ChainOracle([FullnessOracle(pres), first])


def complete_fullness(pres: FullPresentation, trivial: Callable[[Word], bool],
                      length: int | None = None) -> FullPresentation:
    """Add every trivial word of length <= ``length`` (default: the longest relator)."""
    d = pres.generator_count
    limit = pres.max_relator_length if length is None else length
    rels = dict.fromkeys(pres.relators)
    for n in range(1, limit + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            if w not in rels and trivial(w):
                rels[w] = None
    return FullPresentation(d, tuple(rels))


# ---------------------------------------------------------------- candidates


@dataclass(frozen=True)
class Candidate:
    """A scheme together with the presented generator carried by each slot."""

    scheme_class: SchemeClass
    relabeling: tuple[int, ...]  # slot i carries presented generator relabeling[i - 1]

    @property
    def scheme(self) -> LabelingScheme:
        return self.scheme_class.representative

    def to_presented(self, word: Sequence[int]) -> Word:
        return relabel_word(word, self.relabeling)

    def from_presented(self, word: Sequence[int]) -> Word:
        back = {g: i + 1 for i, g in enumerate(self.relabeling)}
        return relabel_word(word, back)


def _matchings(scheme_sigma, target_sigma):
    d = len(scheme_sigma)
    for perm in itertools.permutations(range(1, d + 1)):
        if all(perm[scheme_sigma[i] - 1] == target_sigma[perm[i] - 1] for i in range(d)):
            yield perm


def candidate_schemes(pres: FullPresentation) -> list[Candidate]:
    sigma = extract_sigma(pres)
    d = len(sigma)
    shape = sorted(len({i, sigma[i - 1]}) for i in range(1, d + 1))
    out = []
    for cls in enumerate_schemes(d):
        s = cls.representative
        if sorted(len({i, s.inv(i)}) for i in range(1, d + 1)) != shape:
            continue
        seen = set()
        for perm in _matchings(s.sigma, sigma):
            # rotations of a symmetric scheme give the same labeled graph
            cells = tuple(zip(perm, s.tau))
            key = min(cells[k:] + cells[:k] for k in range(d))
            if key in seen:
                continue
            seen.add(key)
            out.append(Candidate(cls, perm))
    return out


def candidate_vectors(scheme: LabelingScheme, bound: int) -> list[TypeVector]:
    """Face lengths per class: multiples of the primitive length in [3, bound], or infinity."""
    part = orbits(scheme)
    prim = primitive_vector(scheme)
    options = []
    for cls in part.classes():
        p = prim[cls[0] - 1]
        finite = [k for k in range(p, bound + 1, p) if k >= 3]
        options.append(finite + [INFINITY])
    out = []
    for choice in itertools.product(*options):
        out.append(TypeVector(tuple(choice[part.face_class[i]] for i in range(scheme.degree))))
    return out


@dataclass(frozen=True)
class CandidateReport:
    scheme: LabelingScheme
    relabeling: tuple[int, ...]
    type_vector: TypeVector | None
    reason: str


@dataclass
class Verdict:
    planar: bool
    scheme: LabelingScheme | None = None
    type_vector: TypeVector | None = None
    relabeling: tuple[int, ...] | None = None
    report: list[CandidateReport] = field(default_factory=list)
    search_space: int = 0

    def presented_face_relators(self) -> list[Word]:
        if not self.planar:
            return []
        pres = canonical_presentation(self.scheme, self.type_vector)
        return [relabel_word(r.word, self.relabeling) for r in pres.face_relators]

    def to_json(self) -> dict:
        out = {"planar": self.planar, "search_space": self.search_space, "candidates_rejected": len(self.report)}
        if self.planar:
            out["scheme"] = self.scheme.to_json()
            out["type_vector"] = self.type_vector.to_json()
            out["relabeling"] = list(self.relabeling)
            out["face_relators"] = [list(r) for r in self.presented_face_relators()]
        return out


def _check(candidate: Candidate, tv: TypeVector, oracle: WordOracle, relators) -> str | None:
    """None if the candidate passes, else the reason it fails."""
    scheme = candidate.scheme
    try:
        solve_edge_length(tv)
    except NoSolution as exc:
        return f"no geometric realization ({exc})"
    for rel in canonical_presentation(scheme, tv).face_relators:
        word = candidate.to_presented(rel.word)
        if not oracle(word):
            return f"face word {format_word(word)} is not trivial in the group"
    for r in relators:
        if not is_trivial(scheme, tv, candidate.from_presented(r)):
            return f"relator {format_word(r)} is not trivial in the graph"
    return None


def decide_planar(pres: FullPresentation, oracle: WordOracle | None = None) -> Verdict:
    if oracle is None:
        oracle = default_oracle(pres)
    sigma = extract_sigma(pres)
    bound = pres.max_relator_length
    # triviality is invariant under rotation and inversion, so one word per class suffices;
    # short relators go first since they are the cheapest to refute
    relators = sorted({normalize_relator(r, sigma) for r in pres.relators if len(r) > 2},
                      key=lambda r: (len(r), r))
    verdict = Verdict(False)
    for cand in candidate_schemes(pres):
        vectors = candidate_vectors(cand.scheme, bound)
        verdict.search_space += len(vectors)
        for tv in vectors:
            reason = _check(cand, tv, oracle, relators)
            if reason is None:
                verdict.planar = True
                verdict.scheme, verdict.type_vector, verdict.relabeling = cand.scheme, tv, cand.relabeling
                return verdict
            verdict.report.append(CandidateReport(cand.scheme, cand.relabeling, tv, reason))
    return verdict


# ---------------------------------------------------------------- equivalence


def mirror(scheme: LabelingScheme, tv: TypeVector | None = None):
    """Reverse the rotation order: slot i becomes slot d + 1 - i."""
    d = scheme.degree
    sigma = [0] * d
    tau = [0] * d
    for i in range(1, d + 1):
        j = d + 1 - i
        sigma[j - 1] = d + 1 - scheme.sigma[i - 1]
        tau[j - 1] = scheme.tau[i - 1]
    out = LabelingScheme(d, tuple(sigma), tuple(tau))
    if tv is None:
        return out
    # the corner between slots c and c + 1 lands between d - c and d + 1 - c
    entries = [None] * d
    for c in range(1, d + 1):
        entries[(d - c - 1) % d] = tv[c - 1]
    return out, TypeVector(tuple(entries))


def _rotate_vector(tv: TypeVector, k: int) -> TypeVector:
    d = len(tv)
    entries = [None] * d
    for i in range(d):
        entries[(i + k) % d] = tv[i]
    return TypeVector(tuple(entries))


def witness_matches(verdict: Verdict, scheme: LabelingScheme, tv: TypeVector) -> bool:
    """Whether a YES witness, read in the presented names, is ``(scheme, tv)`` up to rotation and mirror.

    Meant for presentations whose generator ``i`` is slot ``i`` of ``scheme``.
    """
    if not verdict.planar:
        return False
    d = scheme.degree
    base = (verdict.scheme, verdict.type_vector, tuple(verdict.relabeling))
    mirrored_scheme, mirrored_tv = mirror(verdict.scheme, verdict.type_vector)
    mirrored_perm = tuple(verdict.relabeling[d - i] for i in range(1, d + 1))
    for s0, tv0, perm in (base, (mirrored_scheme, mirrored_tv, mirrored_perm)):
        for k in range(d):
            # after rotating by k, slot i carries presented generator perm[i - k]
            if (all(perm[(i - k) % d] == i + 1 for i in range(d))
                    and rotate(s0, k) == scheme and _rotate_vector(tv0, k) == tv):
                return True
    return False
