from fractions import Fraction
from math import isqrt

from hypothesis import given, strategies as st

from hklat.surd import QuadSurd, SurdRay, is_perfect_square, sign_of, squarefree_split

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15]


def test_squarefree_split():
    assert squarefree_split(0) == (0, 0)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(49) == (7, 1)


@given(st.integers(1, 10**5))
def test_squarefree_split_reassembles(n):
    s, d = squarefree_split(n)
    assert s * s * d == n
    assert all(d % (p * p) for p in range(2, isqrt(d) + 1))


def _sign_by_fraction_bracketing(a, b, d):
    # bracket sqrt(d) between consecutive rationals with a large denominator
    scale = 10**12
    lo = Fraction(isqrt(d * scale * scale), scale)
    hi = lo + Fraction(1, scale)
    vals = [a + b * lo, a + b * hi]
    if all(v > 0 for v in vals):
        return 1
    if all(v < 0 for v in vals):
        return -1
    return None


@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.sampled_from(SQUAREFREE))
def test_sign_of_matches_bracketing(a, b, d):
    expected = _sign_by_fraction_bracketing(a, b, d)
    if expected is not None:
        assert sign_of(a, b, d) == expected


def test_sign_of_edge_cases():
    assert sign_of(0, 0, 3) == 0
    assert sign_of(5, 0, 0) == 1
    assert sign_of(-3, 2, 2) == -1  # 2*sqrt(2) < 3
    assert sign_of(-2, 1, 5) == 1


def test_quadsurd_normalizes():
    s = QuadSurd(2, 4, 3, -6)
    assert (s.a, s.b, s.d, s.c) == (-1, -2, 3, 3)
    assert QuadSurd(3, 2, 1) == QuadSurd.rational(5)
    assert QuadSurd(1, 0, 7).d == 0


def test_quadsurd_arithmetic():
    r = QuadSurd(0, 1, 3)
    assert r * r == QuadSurd.rational(3)
    assert (r + 1) * (r - 1) == QuadSurd.rational(2)
    assert (r - r).sign() == 0
    assert str(QuadSurd(1, -1, 2, 3)) == "(1-1*sqrt(2))/3"


def test_surd_ray_from_vector():
    assert SurdRay.from_vector((0, 5)).at_infinity
    r = SurdRay.from_vector((4, -6))
    assert (r.p, r.q, r.den) == (-3, 0, 2)
    assert r.integer_vector() == (2, -3)
    assert r.to_json() == {"p": -3, "q": 0, "d": 0, "den": 2, "at_infinity": False}


def test_perfect_square():
    assert [n for n in range(-3, 30) if is_perfect_square(n)] == [0, 1, 4, 9, 16, 25]
