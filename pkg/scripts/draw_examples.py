"""Draw a few example Cayley graphs as SVG files."""

import argparse
from pathlib import Path

from planar_cayley.render import RenderOptions, render_svg
from planar_cayley.scheme import INFINITY, LabelingScheme, TypeVector
from planar_cayley.tiling import build_ball

EXAMPLES = {
    # name: (scheme, vector, radius)
    "degree8": (LabelingScheme.from_cycles(8, [(1,), (3,), (2, 7), (4, 5), (6, 8)], indirect=[2, 6, 7, 8]),
                TypeVector((3, 4, 4, 3, 4, 3, 4, 3)), 4),
    "snub_cube": (LabelingScheme.from_cycles(5, [(1, 2), (3,), (4, 5)]), TypeVector((4, 3, 3, 3, 3)), None),
    "icosahedron": (LabelingScheme.from_cycles(5, [(1,), (2, 3), (4, 5)]), TypeVector((3, 3, 3, 3, 3)), None),
    "square_lattice": (LabelingScheme.from_cycles(4, [(1, 3), (2, 4)]), TypeVector((4, 4, 4, 4)), 6),
    "heptagons": (LabelingScheme(3, (1, 2, 3), (-1, -1, -1)), TypeVector((14, 14, 14)), 6),
    "tree": (LabelingScheme.from_cycles(4, [(1, 3), (2, 4)]), TypeVector((INFINITY,) * 4), 5),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--color-by", default="generator", choices=("generator", "face_class", "none"))
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (scheme, vec, radius) in EXAMPLES.items():
        ball = build_ball(scheme, vec, radius)
        path = out / f"{name}.svg"
        path.write_text(render_svg(ball, RenderOptions(color_by=args.color_by)))
        print(f"{path}: {ball.n_vertices} vertices, {ball.n_edges} edges")


if __name__ == "__main__":
    main()
