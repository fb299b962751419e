"""Series expansion of step functions: recursion, certificates, sup-norm."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padelic.errors import NotCertified, PrecisionExhausted
from padelic.mahler import (StepFunction, evaluate, expand,
                            expand_adelic, expand_in_basis, sup_norm_data)
from padelic.adelic import adelic_ordering
from padelic.ordering import basis_rational
from padelic.padic import INF, PAdicInt
from padelic.sets import FULL, AdelicSet, CompactSet, residues


def step(p, domain, m, table, n_prec=6):
    return StepFunction(p, domain, m, table, n_prec)


def test_x_squared_coefficients_frozen():
    # phi(r) = r^2 mod 64 as a function of r mod 8: finite differences of the
    # value table on 0,1,2,... give [0, 1, 2, 0, 0, 0, 0, 0, 0, 48, ...]
    dom = CompactSet.zp(2)
    phi = step(2, dom, 3, {r: r * r % 64 for r in range(8)})
    s = expand(phi, None, 6)
    assert s.certified
    assert s.coeffs[:10] == (0, 1, 2, 0, 0, 0, 0, 0, 0, 48)


def test_constant_function():
    dom = CompactSet.zp(3)
    phi = step(3, dom, 0, {0: 7}, 4)
    s = expand(phi, None, 4)
    assert s.certified and s.coeffs[0] == 7
    assert all(c == 0 for c in s.coeffs[1:])


def test_evaluate_matches_table():
    dom = CompactSet.from_balls(2, [(1, 2)])
    random.seed(5)
    phi = step(2, dom, 3, {r: random.randrange(64) for r in residues(dom, 3)})
    s = expand(phi, None, 6)
    assert s.certified
    for r in sorted(residues(dom, 6)):
        got = evaluate(s, r)
        assert got.residue == phi.value_at(r) % 64


def test_evaluate_truncated_argument_propagates_precision():
    dom = CompactSet.zp(2)
    phi = step(2, dom, 2, {r: (r * 3 + 1) % 64 for r in range(4)})
    s = expand(phi, None, 6)
    x = PAdicInt(2, 5, 20)
    got = evaluate(s, x)
    assert got.precision <= 6
    assert got.residue % 2 ** got.precision == phi.value_at(5) % 2 ** got.precision
    with pytest.raises(PrecisionExhausted):
        evaluate(s, PAdicInt(2, 1, 1))


def test_sampling_adaptor():
    dom = CompactSet.zp(3)
    phi = StepFunction.from_callable(lambda r: Fraction(r * r, 2), dom, 2, 5)
    assert phi.value_at(4) == Fraction(16, 2).numerator * pow(2, -1, 3 ** 5) * 16 % 3 ** 5 \
        or phi.value_at(4) == (8 % 3 ** 5)  # 16/2 = 8 exactly
    with pytest.raises(ValueError):
        StepFunction.from_callable(lambda r: Fraction(1, 3), dom, 1, 4)


def test_recursion_equals_triangular_solve():
    random.seed(11)
    dom = CompactSet.zp(2)
    phi = step(2, dom, 2, {r: random.randrange(64) for r in range(4)})
    s = expand(phi, None, 6)
    basis = [basis_rational(s.ordering, n) for n in range(s.length())]
    assert list(s.coeffs) == expand_in_basis(phi, basis, 6)


def test_expand_in_basis_rejects_irregular():
    dom = CompactSet.zp(2)
    phi = step(2, dom, 1, {0: 1, 1: 2}, 4)
    s = expand(phi, None, 4)
    from padelic.polys import RatPoly
    bad = [RatPoly.x_power(n, 2) for n in range(s.length())]  # 2x^n: non-unit lead
    with pytest.raises(ValueError):
        expand_in_basis(phi, bad, 4)


def test_sup_norm_identity_requires_certificate():
    dom = CompactSet.zp(2)
    phi = step(2, dom, 1, {0: 4, 1: 12}, 4)
    s = expand(phi, None, 4)
    lo, hi = sup_norm_data(s, phi)
    assert lo == hi == 2  # all values divisible by 4, one exactly
    uncert = type(s)(ordering=s.ordering, coeffs=s.coeffs, precision=s.precision,
                     certified=False)
    with pytest.raises(NotCertified):
        sup_norm_data(uncert, phi)


def test_sup_norm_zero_function_is_inf():
    dom = CompactSet.zp(3)
    phi = step(3, dom, 1, {0: 0, 1: 0, 2: 0}, 4)
    s = expand(phi, None, 4)
    lo, hi = sup_norm_data(s, phi)
    assert lo is INF and hi is INF


def test_finite_domain_expansion_is_interpolation():
    dom = CompactSet.from_finite(2, [1, 3, 4, 6])
    phi = step(2, dom, 3, {r: (r * r + 1) % 64 for r in residues(dom, 3)})
    s = expand(phi, None, 6)
    assert s.certified and s.length() <= 4
    for e in dom.finite:
        assert evaluate(s, e).residue == phi.value_at(e)


def test_expand_adelic_componentwise():
    a = AdelicSet(tracked={2: CompactSet.zp(2), 3: CompactSet.zp(3)}, default=FULL)
    o = adelic_ordering(a, 6)
    phis = {2: step(2, CompactSet.zp(2), 1, {0: 0, 1: 1}, 4),
            3: step(3, CompactSet.zp(3), 1, {0: 0, 1: 1, 2: 4}, 4)}
    s = expand_adelic(phis, o, 4)
    assert s.certified()
    assert set(s.per_prime) == {2, 3}
    c1 = s.coefficient(1)
    assert set(c1) == {2, 3}


@given(st.sampled_from([2, 3]), st.integers(0, 2), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_random_roundtrip(p, m, seed):
    rng = random.Random(seed)
    dom = CompactSet.zp(p)
    phi = step(p, dom, m, {r: rng.randrange(p ** 5) for r in residues(dom, m)}, 5)
    s = expand(phi, None, 5)
    assert s.certified
    for r in sorted(residues(dom, m)):
        assert evaluate(s, r).residue == phi.value_at(r)
    lo, hi = sup_norm_data(s, phi)
    assert lo == hi
