"""Compare the geometric word-problem decision with tracing words in a built ball.

Every class of the chosen degrees is taken with its smallest valid vector,
and random words are decided both ways.
"""

import argparse
import random
import time

from planar_cayley.enumeration import enumerate_schemes
from planar_cayley.scheme import format_word, smallest_valid_vector
from planar_cayley.tiling import wp_combinatorial
from planar_cayley.word_problem import is_trivial_geometric


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--words", type=int, default=1000, help="words per class")
    ap.add_argument("--max-length", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    total = bad = 0
    start = time.perf_counter()
    for d in args.degrees:
        for cls in enumerate_schemes(d):
            s = cls.representative
            vec = smallest_valid_vector(s)
            trivial = 0
            for _ in range(args.words):
                w = tuple(rng.randint(1, d) for _ in range(rng.randint(0, args.max_length)))
                a = is_trivial_geometric(s, vec, w)
                b = wp_combinatorial(s, vec, w)
                trivial += b
                if a != b:
                    bad += 1
                    print(f"  disagreement: {s} {vec} {format_word(w)}: geometric {a}, traced {b}")
            total += args.words
            print(f"{str(s):45} {str(vec):14} trivial {trivial:4d}/{args.words}")
    print(f"{total} words, {bad} disagreements, {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
