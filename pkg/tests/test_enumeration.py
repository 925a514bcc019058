import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planar_cayley.enumeration import (
    burnside_count,
    canonical_form,
    canonical_pattern,
    distinct_families,
    enumerate_schemes,
    family_contains,
    involutions,
    primitive_family,
    raw_pair_count,
    rotate,
    schemes_validating,
    validating_member,
)
from planar_cayley.errors import DegreeTooSmall, MalformedVector
from planar_cayley.scheme import LabelingScheme, TypeVector, is_valid_type_vector

from strategies import schemes


def _brute_pairs(d):
    """Every (sigma, tau) by filtering all permutations and sign vectors."""
    out = []
    for perm in itertools.permutations(range(1, d + 1)):
        if any(perm[perm[i] - 1] != i + 1 for i in range(d)):
            continue
        for tau in itertools.product((1, -1), repeat=d):
            if all(tau[i] == tau[perm[i] - 1] for i in range(d)):
                out.append((perm, tau))
    return out


def _brute_rotation(pair, k, d):
    sigma, tau = pair
    s2 = [0] * d
    t2 = [0] * d
    for i in range(d):
        s2[(i + k) % d] = (sigma[i] - 1 + k) % d + 1
        t2[(i + k) % d] = tau[i]
    return tuple(s2), tuple(t2)


def _brute_class_count(d):
    pairs = set(_brute_pairs(d))
    seen = set()
    n = 0
    for p in sorted(pairs):
        if p in seen:
            continue
        n += 1
        seen.update(_brute_rotation(p, k, d) for k in range(d))
    return n


@pytest.mark.parametrize("d,expected", [(3, 8), (4, 26), (5, 64)])
def test_class_counts_match_table(d, expected):
    # [PAPER] appendix table
    assert len(enumerate_schemes(d)) == expected
    assert burnside_count(d) == expected


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_class_counts_match_brute_force(d):
    # [DERIVED] orbit count by exhaustive search over all (sigma, tau) pairs
    assert len(enumerate_schemes(d)) == _brute_class_count(d) == burnside_count(d)


def test_degree_six_count():
    # the exhaustive count is 254; the published table says 253
    assert len(enumerate_schemes(6)) == burnside_count(6) == 254


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_raw_pair_count(d):
    assert raw_pair_count(d) == len(_brute_pairs(d))


@pytest.mark.parametrize("d", [3, 4, 5])
def test_class_sizes_sum_to_raw_count(d):
    assert sum(c.class_size for c in enumerate_schemes(d)) == raw_pair_count(d)


def test_small_degrees():
    # [PAPER] degree 1: 0 classes, degree 2: 1 class
    assert enumerate_schemes(1) == []
    assert len(enumerate_schemes(2)) == 1
    with pytest.raises(DegreeTooSmall):
        enumerate_schemes(0)
    with pytest.raises(DegreeTooSmall):
        burnside_count(2)


def test_parallel_enumeration_matches_serial():
    assert enumerate_schemes(5, jobs=2) == enumerate_schemes(5)


def test_involution_count():
    # telephone numbers
    assert [sum(1 for _ in involutions(d)) for d in range(1, 8)] == [1, 2, 4, 10, 26, 76, 232]


def test_representatives_are_canonical():
    for c in enumerate_schemes(5):
        assert canonical_form(c.representative) == c.representative


@given(schemes(), st.integers(0, 20))
def test_canonical_form_is_rotation_invariant(s, k):
    assert canonical_form(rotate(s, k)) == canonical_form(s)


@given(schemes(), st.integers(0, 20), st.integers(0, 20))
def test_rotations_compose(s, a, b):
    assert rotate(rotate(s, a), b) == rotate(s, a + b)
    assert rotate(s, s.degree) == s


@given(schemes(), st.integers(0, 20))
def test_rotation_carries_valid_vectors(s, k):
    from planar_cayley.scheme import smallest_valid_vector

    tv = smallest_valid_vector(s)
    d = s.degree
    shifted = TypeVector(tuple(tv[(i - k) % d] for i in range(d)))
    assert is_valid_type_vector(rotate(s, k), shifted)


# ---------------------------------------------------------------- families


def test_degree_three_families():
    # [PAPER] [3n,3n,3n], [n,2m,2m] and [2n,2m,2p], up to rotation of entries
    fams = distinct_families(3)
    got = {canonical_pattern(f) for f in fams}
    expected = set()
    for coeffs, variables in (((3, 3, 3), (0, 0, 0)), ((1, 2, 2), (0, 1, 1)), ((2, 2, 2), (0, 1, 2))):
        from planar_cayley.enumeration import FamilyDescriptor

        expected.add(canonical_pattern(FamilyDescriptor(coeffs, variables, ("n", "m", "p"))))
    assert got == expected


def test_family_formatting(chaboud):
    assert str(primitive_family(chaboud)) == "[3n,4m,4m,p,4m,3n,4m,3n]"


def test_family_contains():
    from planar_cayley.enumeration import FamilyDescriptor as F

    free = F((2, 2, 2), (0, 1, 2), "nmp")
    tied = F((4, 2, 4), (0, 1, 0), "nm")
    assert family_contains(free, tied)
    assert not family_contains(tied, free)


# ---------------------------------------------------------------- validation queries


def test_square_lattice_variants():
    # [PAPER] several classes realise [4,4,4,6]
    assert len(schemes_validating(4, TypeVector((4, 4, 4, 6)))) >= 2


def test_no_scheme_for_regular_pentagons_of_degree_four():
    # [PAPER] [5,5,5,5] has no Cayley graph
    assert schemes_validating(4, TypeVector((5, 5, 5, 5))) == []


def test_snub_cube_class_found():
    found = schemes_validating(5, TypeVector((3, 3, 3, 3, 4)))
    assert len(found) == 1
    member = validating_member(found[0], TypeVector((3, 3, 3, 3, 4)))
    assert member.sigma == (5, 2, 4, 3, 1)


def test_icosahedral_class_exists():
    # the icosahedron is a Cayley graph of A4, realised by the class below
    found = schemes_validating(5, TypeVector((3, 3, 3, 3, 3)))
    assert [c.representative for c in found] == [LabelingScheme.from_cycles(5, [(1,), (2, 3), (4, 5)])]


def test_validating_rejects_wrong_length():
    with pytest.raises(MalformedVector):
        schemes_validating(4, TypeVector((4, 4, 4)))
