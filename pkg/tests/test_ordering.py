"""Greedy p-orderings against brute-force oracles, plus the local bases."""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from padelic.errors import LengthExceedsSet, PrecisionExhausted
from padelic.ordering import (basis_rational,
                              local_membership, p_ordering, product_poly,
                              rational_lift)
from padelic.padic import valp
from padelic.polys import RatPoly
from padelic.sets import CompactSet, residues


def oracle_w_finite(elems, p):
    """Lexicographically minimal valuation sequence over all orderings = the
    true w, since w is ordering-invariant for valid p-orderings."""
    best = None
    for perm in permutations(elems):
        w = tuple(sum(valp(Fraction(perm[n]) - Fraction(perm[k]), p) for k in range(n))
                  for n in range(len(perm)))
        if best is None or w < best:
            best = w
    return best


def oracle_w_balls(balls, p, length, depth):
    """Stepwise exhaustive greedy over all residues at a fixed large depth."""
    res = sorted(residues(CompactSet.from_balls(p, balls), depth))
    pts = [min(res)]
    w = [0]
    for _ in range(length):
        best = None
        for y in res:
            if y in pts:
                continue
            v = sum(valp(y - a, p) for a in pts)
            if best is None or v < best[0]:
                best = (v, y)
        w.append(best[0])
        pts.append(best[1])
    return w


def test_zp_ordering_is_legendre():
    for p in (2, 3, 5):
        o = p_ordering(CompactSet.zp(p), 10)
        assert o.points == tuple(range(11))
        assert list(o.w) == [valp(math.factorial(n), p) for n in range(11)]


def test_two_balls_frozen_oracle():
    # E = (1 + 3Z_3) u (2 + 9Z_3): exhaustive greedy at depth 12 gave this w
    o = p_ordering(CompactSet.from_balls(3, [(1, 1), (2, 2)]), 8)
    assert list(o.w) == [0, 0, 1, 2, 2, 4, 4, 5, 6]


def test_pzp_ordering():
    o = p_ordering(CompactSet.pzp(2), 6)
    assert o.points == (0, 2, 4, 6, 8, 10, 12)
    assert list(o.w) == [0, 1, 3, 4, 7, 8, 10]


def test_finite_frozen_oracle():
    s = [1, 2, 3, 4, 5, 9]
    assert p_ordering(CompactSet.from_finite(2, s), 5).w == (0, 0, 1, 1, 3, 6)
    assert p_ordering(CompactSet.from_finite(3, s), 5).w == (0, 0, 0, 1, 1, 1)


@pytest.mark.parametrize("p", [2, 3])
def test_finite_matches_exhaustive_oracle(p):
    for size in (2, 3, 4):
        for elems in combinations(range(8), size):
            got = p_ordering(CompactSet.from_finite(p, elems), size - 1).w
            assert got == oracle_w_finite(elems, p), (p, elems)


@given(st.sampled_from([2, 3]),
       st.lists(st.tuples(st.integers(0, 26), st.integers(0, 3)),
                min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_ball_matches_exhaustive_oracle(p, balls):
    o = p_ordering(CompactSet.from_balls(p, balls), 6)
    assert list(o.w) == oracle_w_balls(balls, p, 6, 7)


def test_length_exceeds_set():
    with pytest.raises(LengthExceedsSet):
        p_ordering(CompactSet.from_finite(2, [1, 2]), 2)


def test_precision_exhausted_on_close_points():
    s = CompactSet.from_finite(2, [0, 2 ** 12])
    with pytest.raises(PrecisionExhausted):
        p_ordering(s, 1, n_prec=4)


def test_w_is_ordering_invariant():
    # any valid p-ordering (greedy from any start) yields the same w
    elems = [0, 1, 2, 5, 8, 9]
    p = 2
    base = oracle_w_finite(elems, p)
    for start in elems:
        pts = [start]
        w = [0]
        rest = [e for e in elems if e != start]
        while rest:
            v, y = min((sum(valp(Fraction(y - a), p) for a in pts), y) for y in rest)
            w.append(v)
            pts.append(y)
            rest.remove(y)
        assert tuple(w) == base


def test_basis_rational_is_triangular():
    o = p_ordering(CompactSet.zp(3), 5)
    for n in range(6):
        f = basis_rational(o, n)
        assert f(Fraction(o.points[n])) == 1
        for k in range(n):
            assert f(Fraction(o.points[k])) == 0


def test_basis_values_are_integral():
    o = p_ordering(CompactSet.from_balls(2, [(1, 2)]), 5)
    for n in range(6):
        f = basis_rational(o, n)
        for r in sorted(residues(o.set, 7)):
            assert valp(f(Fraction(r)), 2) >= 0


def test_product_poly_monic():
    o = p_ordering(CompactSet.zp(2), 4)
    g = product_poly(o, 3)
    assert g.lc() == 1 and g.degree() == 3
    assert g(Fraction(o.points[0])) == 0


def test_rational_lift_properties():
    o = p_ordering(CompactSet.pzp(2), 4)
    for n in range(1, 5):
        lift = rational_lift(o, n).rational
        w = o.w[n]
        # shape: (monic integer poly with coefficients in [0, 2^w)) / 2^w
        assert lift.lc() == Fraction(1, 2 ** w)
        for c in lift.coeffs[:-1]:
            num = c * 2 ** w
            assert num.denominator == 1 and 0 <= num < 2 ** w
        # congruent to the ordering product modulo 2^w over the integers
        g = product_poly(o, n)
        for cl, cg in zip(lift.coeffs, g.coeffs):
            assert valp(cl * 2 ** w - cg, 2) >= w or cl * 2 ** w == cg
        # maps the set into Z_2
        assert local_membership(lift, o.set)


def test_local_membership():
    s = CompactSet.zp(2)
    assert local_membership(RatPoly.binomial(4), s)
    assert not local_membership(RatPoly.make([Fraction(1, 2)]), s)
    # x^2/2 is integral on 2Z_2 but not on Z_2
    f = RatPoly.make([0, 0, Fraction(1, 2)])
    assert local_membership(f, CompactSet.pzp(2))
    assert not local_membership(f, s)
