"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from planar_cayley.enumeration import enumerate_schemes
from planar_cayley.scheme import LabelingScheme, smallest_valid_vector


@st.composite
def schemes(draw, min_degree=3, max_degree=7):
    d = draw(st.integers(min_degree, max_degree))
    free = list(range(1, d + 1))
    sigma = [0] * d
    while free:
        i = free.pop(0)
        j = draw(st.sampled_from([i] + free))
        if j != i:
            free.remove(j)
        sigma[i - 1], sigma[j - 1] = j, i
    tau = [0] * d
    for i in range(1, d + 1):
        if not tau[i - 1]:
            t = draw(st.sampled_from([1, -1]))
            tau[i - 1] = tau[sigma[i - 1] - 1] = t
    return LabelingScheme(d, tuple(sigma), tuple(tau))


def small_classes():
    """(scheme, smallest valid vector) for every class of degree 3 and 4."""
    out = []
    for d in (3, 4):
        for c in enumerate_schemes(d):
            out.append((c.representative, smallest_valid_vector(c.representative)))
    return out


words = st.lists(st.integers(1, 3), max_size=12)
