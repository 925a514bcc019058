"""Command-line interface.

Every subcommand parses its flags, calls one library function and prints
the result: JSON (or SVG) on stdout or to ``--out``, a short human summary
on stderr.  Exit status is 0 on success, 1 for a negative answer (invalid
vector, nontrivial word, no planar Cayley graph) and 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .decider import (
    DEFAULT_MAX_COSETS,
    CommandOracle,
    CosetOracle,
    FullPresentation,
    complete_fullness,
    decide_planar,
    default_oracle,
)
from .enumeration import (
    SchemeClass,
    burnside_count,
    enumerate_schemes,
    primitive_family,
    raw_pair_count,
)
from .errors import PlanarCayleyError
from .geometry import GeometryClass, solve_edge_length
from .render import COLOR_MODES, RenderOptions, render_svg
from .scheme import (
    LabelingScheme,
    TypeVector,
    canonical_presentation,
    format_word,
    is_valid_type_vector,
    orbits,
    parse_word,
    primitive_vector,
)
from .tiling import build_ball, wp_combinatorial
from .word_problem import is_trivial

# published class counts, reported next to the computed ones
PUBLISHED_COUNTS = {3: 8, 4: 26, 5: 64, 6: 253}

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2
DEFAULT_RADIUS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- catalog


@dataclass(frozen=True)
class CatalogEntry:
    scheme: LabelingScheme
    class_size: int
    primitive_vector: TypeVector
    family: str


@dataclass(frozen=True)
class Catalog:
    version: str
    degree: int
    entries: tuple[CatalogEntry, ...]
    burnside: int | None
    raw_pairs: int

    def to_json(self) -> dict:
        counts = {"classes": len(self.entries), "burnside": self.burnside, "raw_pairs": self.raw_pairs}
        if self.degree in PUBLISHED_COUNTS:
            counts["published"] = PUBLISHED_COUNTS[self.degree]
        return {
            "tool": "planar_cayley",
            "version": self.version,
            "degree": self.degree,
            "counts": counts,
            "classes": [
                {
                    "scheme": e.scheme.to_json(),
                    "class_size": e.class_size,
                    "primitive_vector": e.primitive_vector.to_json(),
                    "family": e.family,
                }
                for e in self.entries
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "Catalog":
        entries = tuple(
            CatalogEntry(LabelingScheme.from_json(e["scheme"]), int(e["class_size"]),
                         TypeVector.from_json(e["primitive_vector"]), e["family"])
            for e in obj["classes"]
        )
        counts = obj["counts"]
        if counts["classes"] != len(entries):
            raise ValueError("catalog count summary disagrees with its entries")
        return cls(obj["version"], int(obj["degree"]), entries, counts["burnside"], int(counts["raw_pairs"]))

    @classmethod
    def loads(cls, text: str) -> "Catalog":
        return cls.from_json(json.loads(text))


def build_catalog(degree: int, jobs: int = 1) -> Catalog:
    classes: list[SchemeClass] = enumerate_schemes(degree, jobs)
    entries = tuple(
        CatalogEntry(c.representative, c.class_size, primitive_vector(c.representative),
                     str(primitive_family(c.representative)))
        for c in classes
    )
    burnside = burnside_count(degree) if degree >= 3 else None
    raw = raw_pair_count(degree) if degree >= 3 else len(classes)
    return Catalog(__version__, degree, entries, burnside, raw)


# ---------------------------------------------------------------- input helpers


def _load_json(text: str):
    """Inline JSON or a path to a JSON file."""
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def _scheme(args) -> LabelingScheme:
    return LabelingScheme.from_json(_load_json(args.scheme))


def _tv(args) -> TypeVector:
    return TypeVector.parse(args.tv)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=1) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------- subcommands


def cmd_enumerate(args) -> int:
    cat = build_catalog(args.degree, args.jobs)
    _emit(args, cat.dumps())
    line = f"degree {cat.degree}: {len(cat.entries)} classes"
    if cat.burnside is not None:
        line += f", orbit count {cat.burnside}"
    if cat.degree in PUBLISHED_COUNTS:
        line += f", published table {PUBLISHED_COUNTS[cat.degree]}"
    _note(line)
    return EXIT_OK


def cmd_orbits(args) -> int:
    s = _scheme(args)
    part = orbits(s)
    payload = {
        "scheme": s.to_json(),
        "orbits": [[str(x) for x in orb] for orb in part.orbits],
        "dual": list(part.dual),
        "face_class": list(part.face_class),
        "classes": part.classes(),
        "primitive_vector": primitive_vector(s).to_json(),
        "family": str(primitive_family(s)),
    }
    _emit(args, payload)
    _note(f"{s}: {len(part.orbits)} orbits, {part.n_classes} face classes, primitive {primitive_vector(s)}")
    return EXIT_OK


def cmd_validate(args) -> int:
    s, tv = _scheme(args), _tv(args)
    ok = is_valid_type_vector(s, tv)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NO


def cmd_present(args) -> int:
    pres = canonical_presentation(_scheme(args), _tv(args))
    payload = pres.to_json()
    payload["text"] = str(pres)
    _emit(args, payload)
    _note(str(pres))
    return EXIT_OK


def cmd_solve(args) -> int:
    sol = solve_edge_length(_tv(args))
    payload = {
        "type_vector": sol.type_vector.to_json(),
        "geometry": sol.geometry.value,
        "edge_length": sol.edge_length,
        "angles": list(sol.angles),
        "residual": sol.residual,
        "angle_sum_over_pi": str(sol.sum_over_pi),
    }
    _emit(args, payload)
    _note(f"{sol.geometry.value}, l = {sol.edge_length:.15g}")
    return EXIT_OK


def _ball(args):
    tv = _tv(args)
    radius = args.radius
    if radius is None:
        # finite graphs are drawn whole, infinite ones to a modest depth
        radius = None if solve_edge_length(tv).geometry is GeometryClass.SPHERICAL else DEFAULT_RADIUS
    return build_ball(_scheme(args), tv, radius, vertex_cap=args.vertex_cap)


def cmd_build(args) -> int:
    ball = _ball(args)
    _emit(args, ball.to_json())
    _note(f"{ball.n_vertices} vertices, {ball.n_edges} edges, {len(ball.closed_faces())} closed faces")
    return EXIT_OK


def cmd_draw(args) -> int:
    ball = _ball(args)
    opts = RenderOptions(width=args.width, height=args.height, stroke_width=args.stroke_width,
                         color_by=args.color_by, label_vertices=args.labels, center=args.center)
    _emit(args, render_svg(ball, opts))
    _note(f"drew {ball.n_vertices} vertices and {ball.n_edges} edges")
    return EXIT_OK


def cmd_wp(args) -> int:
    s, tv = _scheme(args), _tv(args)
    word = parse_word(args.word)
    if args.method == "combinatorial":
        trivial = wp_combinatorial(s, tv, word)
    else:
        trivial = is_trivial(s, tv, word)
    print("trivial" if trivial else "nontrivial")
    return EXIT_OK if trivial else EXIT_NO


def cmd_decide(args) -> int:
    pres = FullPresentation.from_json(_load_json(args.presentation))
    if args.complete is not None:
        source = CommandOracle(args.oracle) if args.oracle else CosetOracle(pres, args.max_cosets)
        pres = complete_fullness(pres, source, args.complete or None)
        _note(f"completed to {len(pres.relators)} relators of length <= {pres.max_relator_length}")
    oracle = default_oracle(pres, command=args.oracle, max_cosets=args.max_cosets)
    verdict = decide_planar(pres, oracle)
    _emit(args, verdict.to_json())
    if verdict.planar:
        faces = ", ".join(format_word(r) for r in verdict.presented_face_relators())
        _note(f"YES: {verdict.scheme} type {verdict.type_vector}, faces {faces or 'none'}")
        return EXIT_OK
    _note(f"NO: all {len(verdict.report)} candidates rejected")
    return EXIT_NO


# ---------------------------------------------------------------- parser


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planar-cayley", description="Planar locally finite Cayley graphs from labeling schemes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, scheme=False, tv=False, out=True):
        q = sub.add_parser(name, help=help_)
        if scheme:
            q.add_argument("--scheme", required=True, help="scheme JSON file or inline JSON")
        if tv:
            q.add_argument("--tv", required=True, help='type vector, e.g. "3,4,inf"')
        if out:
            q.add_argument("--out", help="write the result here instead of stdout")
        q.set_defaults(func=func)
        return q

    q = add("enumerate", cmd_enumerate, "list scheme classes of one degree")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--jobs", type=int, default=1, help="parallel workers")

    add("orbits", cmd_orbits, "face orbits and primitive vector of a scheme", scheme=True)
    add("validate", cmd_validate, "check a type vector against a scheme", scheme=True, tv=True, out=False)
    add("present", cmd_present, "canonical presentation of a scheme and vector", scheme=True, tv=True)
    add("solve", cmd_solve, "geometry and edge length of a type vector", tv=True)

    for name, func, help_ in (("build", cmd_build, "build a ball of the Cayley graph"),
                              ("draw", cmd_draw, "draw a ball as SVG")):
        q = add(name, func, help_, scheme=True, tv=True)
        q.add_argument("--radius", type=int, default=None,
                       help=f"ball radius (default: the whole graph if finite, else {DEFAULT_RADIUS})")
        q.add_argument("--vertex-cap", type=int, default=2_000_000)
        if name == "draw":
            q.add_argument("--width", type=int, default=800)
            q.add_argument("--height", type=int, default=800)
            q.add_argument("--stroke-width", type=float, default=1.5)
            q.add_argument("--color-by", choices=COLOR_MODES, default="generator")
            q.add_argument("--labels", action="store_true", help="print vertex ids")
            q.add_argument("--center", type=int, default=0, help="vertex at the center of the picture")

    q = add("wp", cmd_wp, "decide whether a word is trivial", scheme=True, tv=True, out=False)
    q.add_argument("--word", required=True, help='generator names, e.g. "a3 a3"')
    q.add_argument("--method", choices=("auto", "combinatorial"), default="auto")

    q = add("decide", cmd_decide, "decide whether a full presentation is planar")
    q.add_argument("--presentation", required=True, help="presentation JSON file or inline JSON")
    q.add_argument("--oracle", help="external word-problem command")
    q.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    q.add_argument("--complete", type=int, nargs="?", const=0, default=None, metavar="LENGTH",
                   help="first add all trivial words up to LENGTH (default: longest relator), "
                        "asking --oracle if given, else coset enumeration")
    return p


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PlanarCayleyError, ValueError, KeyError, OSError) as exc:
        print(f"planar-cayley {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
