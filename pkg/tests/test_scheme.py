import pytest
from hypothesis import given
from hypothesis import strategies as st

from planar_cayley.errors import InvalidScheme, MalformedVector
from planar_cayley.scheme import (
    INFINITY,
    Dart,
    LabelingScheme,
    Presentation,
    TypeVector,
    canonical_presentation,
    dart_step,
    dart_step_inv,
    dual_dart,
    format_word,
    invert_word,
    is_valid_type_vector,
    normalize_relator,
    orbits,
    parse_word,
    primitive_vector,
    smallest_valid_vector,
)

from strategies import schemes


def D(text):
    return Dart.parse(text)


# ---------------------------------------------------------------- construction


def test_rejects_non_involution():
    with pytest.raises(InvalidScheme):
        LabelingScheme(3, (2, 3, 1), (1, 1, 1))


def test_rejects_tau_not_constant_on_pairs():
    with pytest.raises(InvalidScheme):
        LabelingScheme(4, (3, 4, 1, 2), (1, 1, -1, 1))


def test_json_round_trip(chaboud):
    assert LabelingScheme.from_json(chaboud.to_json()) == chaboud


def test_str_lists_cycles_and_indirect(chaboud):
    assert str(chaboud) == "d=8 sigma=(1)(2 7)(3)(4 5)(6 8) indirect={2,6,7,8}"


def test_dart_parse_and_format():
    assert str(D("7-")) == "7-"
    assert D("12+").generator == 12


# ---------------------------------------------------------------- orbits of the degree-8 example


def test_chaboud_orbits(chaboud):
    # [PAPER] orbits (1+ 7- 8+), (2+ 3+ 5+ 8-), (4+) and their duals
    part = orbits(chaboud)
    as_text = {tuple(str(x) for x in o) for o in part.orbits}
    expected = {
        ("1+", "7-", "8+"), ("6+", "2-", "1-"),
        ("2+", "3+", "5+", "8-"), ("7+", "6-", "4-", "3-"),
        ("4+",), ("5-",),
    }
    assert as_text == expected


def test_chaboud_duals(chaboud):
    # [PAPER] each orbit is paired with the stated dual
    part = orbits(chaboud)
    dual_of = {}
    for k, o in enumerate(part.orbits):
        dual_of[o[0]] = part.orbits[part.dual[k]]
    assert set(map(str, dual_of[D("1+")])) == {"6+", "2-", "1-"}
    assert set(map(str, dual_of[D("2+")])) == {"7+", "6-", "4-", "3-"}
    assert set(map(str, dual_of[D("4+")])) == {"5-"}


def test_chaboud_primitive_vector(chaboud):
    # [DERIVED] orbit length of i+ for each i; the pattern [3p,4q,4q,r,4q,3p,4q,3p] at p=q=r=1
    assert primitive_vector(chaboud).entries == (3, 4, 4, 1, 4, 3, 4, 3)


def test_chaboud_valid_pattern(chaboud):
    # [PAPER] valid vectors are [3p,4q,4q,r,4q,3p,4q,3p] with r >= 3
    for p in (1, 2):
        for q in (1, 2):
            for r in (3, 4, 7):
                tv = TypeVector((3 * p, 4 * q, 4 * q, r, 4 * q, 3 * p, 4 * q, 3 * p))
                assert is_valid_type_vector(chaboud, tv)
    assert not is_valid_type_vector(chaboud, TypeVector((3, 4, 8, 3, 4, 3, 4, 3)))
    assert not is_valid_type_vector(chaboud, TypeVector((3, 4, 4, 3, 4, 6, 4, 3)))


def test_vector_with_small_entry_is_malformed(chaboud):
    with pytest.raises(MalformedVector):
        is_valid_type_vector(chaboud, TypeVector((3, 4, 4, 2, 4, 3, 4, 3)))
    with pytest.raises(MalformedVector):
        is_valid_type_vector(chaboud, TypeVector((3, 4, 4)))


def test_type_vector_parse():
    tv = TypeVector.parse("3, 4,inf")
    assert tv.entries == (3, 4, INFINITY)
    assert str(tv) == "[3,4,inf]"
    assert TypeVector.from_json(tv.to_json()) == tv


# ---------------------------------------------------------------- presentations


def _same_relators(got, expected, sigma):
    return sorted(normalize_relator(r, sigma) for r in got) == sorted(normalize_relator(r, sigma) for r in expected)


def test_chaboud_presentation(chaboud, chaboud_tv):
    # [PAPER] a1a6a2, a7a6a4a3, a5^3, a1^2, a3^2, a2a7, a6a8, a4a5
    pres = canonical_presentation(chaboud, chaboud_tv)
    expected = [parse_word(w) for w in
                ("a1 a6 a2", "a7 a6 a4 a3", "a5 a5 a5", "a1 a1", "a3 a3", "a2 a7", "a6 a8", "a4 a5")]
    assert _same_relators(pres.relators, expected, chaboud.sigma)


def test_snub_presentation(snub, snub_tv):
    # [PAPER] a1a2, a3^2, a4a5, a1^4, a2a3a5, a4^3
    pres = canonical_presentation(snub, snub_tv)
    expected = [(1, 2), (3, 3), (4, 5), (1, 1, 1, 1), (2, 3, 5), (4, 4, 4)]
    assert _same_relators(pres.relators, expected, snub.sigma)


def test_presentation_skips_infinite_faces(z2):
    pres = canonical_presentation(z2, TypeVector((INFINITY,) * 4))
    assert pres.face_relators == ()
    assert sorted(pres.relators) == [(1, 3), (2, 4)]


def test_presentation_json(z2):
    pres = canonical_presentation(z2, TypeVector((4, 4, 4, 4)))
    obj = pres.to_json()
    assert obj["generators"] == 4
    assert [1, 3] in obj["inverses"]
    assert str(pres) == "< a1..a4 | a4 a1 a2 a3, a1 a3, a2 a4 >"


def test_word_formatting():
    assert format_word((3, 3, 1)) == "a3^2 a1"
    assert parse_word("a3 a3 a1") == (3, 3, 1)
    assert parse_word("3 3") == (3, 3)
    assert format_word(()) == "1"


# ---------------------------------------------------------------- properties


@given(schemes())
def test_dart_step_is_a_permutation(s):
    darts = s.darts()
    images = [dart_step(s, x) for x in darts]
    assert sorted(images) == sorted(darts)
    for x in darts:
        assert dart_step_inv(s, dart_step(s, x)) == x


@given(schemes())
def test_dual_is_an_involution_on_orbits(s):
    part = orbits(s)
    for k, o in enumerate(part.orbits):
        assert part.dual[part.dual[k]] == k
        assert len(part.orbits[part.dual[k]]) == len(o)


@given(schemes())
def test_duals_read_the_same_corner_backwards(s):
    # walking the dual orbit forward is walking the orbit backward, shifted by dual_dart
    for x in s.darts():
        assert dual_dart(s, dual_dart(s, x)) == x
        assert dual_dart(s, dart_step(s, x)) == dart_step_inv(s, dual_dart(s, x))


@given(schemes())
def test_orbit_lengths_cover_all_darts(s):
    part = orbits(s)
    assert sum(len(o) for o in part.orbits) == 2 * s.degree


@given(schemes())
def test_primitive_length_constant_on_face_classes(s):
    part = orbits(s)
    prim = primitive_vector(s)
    for cls in part.classes():
        assert len({prim[g - 1] for g in cls}) == 1


@given(schemes(), st.integers(1, 4))
def test_multiples_of_smallest_vector_are_valid(s, m):
    tv = smallest_valid_vector(s)
    assert is_valid_type_vector(s, tv)
    assert is_valid_type_vector(s, TypeVector(tuple(m * x for x in tv)))


@given(schemes())
def test_all_infinite_vector_is_valid(s):
    assert is_valid_type_vector(s, TypeVector((INFINITY,) * s.degree))


@given(schemes())
def test_face_relator_lengths_match_vector(s):
    tv = smallest_valid_vector(s)
    pres = canonical_presentation(s, tv)
    part = orbits(s)
    assert len(pres.face_relators) == part.n_classes
    for r in pres.face_relators:
        g = part.classes()[r.face_class][0]
        assert len(r.word) == tv[g - 1]


@given(schemes(), st.lists(st.integers(1, 7), max_size=8))
def test_invert_word_is_an_involution(s, w):
    w = tuple(g for g in w if g <= s.degree)
    assert invert_word(invert_word(w, s.sigma), s.sigma) == w


def test_presentation_sigma_helper():
    pres = Presentation(4, ((1, 3), (2, 4)))
    assert pres.sigma() == (3, 4, 1, 2)
