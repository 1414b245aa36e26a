import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdhkit.dimform import vsf_bound
from gdhkit.kacauto import (CycleShape, InnerAutomorphism, KacCoordinateError,
                            NotQuasirationalError, cycle_shape, cycle_shape_from_charpoly,
                            cyclotomic, eigenspace_dims, format_kac, kac_order, kac_vectors,
                            mobius, normalize, parse_kac, shape_from_multiplicities, sigma_u,
                            sigma_u_coords, very_strange_lhs, very_strange_rhs, vsf_grid)
from gdhkit.rootsys import SimpleLieType, all_types, dimension, dual_coxeter, lacing


def T(s):
    return SimpleLieType.parse(s)


# --- cycle shapes

@pytest.mark.parametrize("text,terms", [
    ("2^12", {2: 12}), ("1^8 2^8", {1: 8, 2: 8}), ("1^{-24}2^{24}", {1: -24, 2: 24}),
    ("1^2 2 4 8^2", {1: 2, 2: 1, 4: 1, 8: 2}), ("2.4.8^2", {2: 1, 4: 1, 8: 2})])
def test_shape_parse(text, terms):
    assert CycleShape.parse(text).exponents == terms


def test_shape_roundtrip_and_invariants():
    s = CycleShape.parse("1^2 2^2 3^2 6^2")
    assert CycleShape.parse(str(s)) == s
    assert (s.degree, s.order, s.fixed_rank) == (24, 6, 8)
    assert s.sum_b_over_t() == 2 + 1 + Fraction(2, 3) + Fraction(1, 3)


def test_shape_from_multiplicities_examples():
    assert shape_from_multiplicities([1, 2], 2).exponents == {1: -1, 2: 2}
    assert shape_from_multiplicities([24], 1).exponents == {1: 24}
    assert shape_from_multiplicities([0, 24], 2).exponents == {1: -24, 2: 24}


def test_not_quasirational_reports_pair():
    with pytest.raises(NotQuasirationalError) as err:
        cycle_shape([1, 2, 0], 3)
    assert err.value.pair == (1, 2)


def _expand(shape):
    # prod (x^t - 1)^b_t as a polynomial with b_t possibly negative: numerator/denominator
    num, den = [1], [1]
    for t, b in shape.terms:
        f = [-1] + [0] * (t - 1) + [1]
        for _ in range(abs(b)):
            if b > 0:
                num = _mul(num, f)
            else:
                den = _mul(den, f)
    return num, den


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=12))
def test_charpoly_roundtrip(mult_by_gcd):
    # build quasirational multiplicities for m = len, then expand and compare
    m = len(mult_by_gcd)
    from math import gcd
    dims = [mult_by_gcd[gcd(j, m) - 1] for j in range(m)]
    if sum(dims) == 0:
        return
    shape = cycle_shape(dims, m)
    num, den = _expand(shape)
    # characteristic polynomial: prod over j of (x - zeta^j)^dims[j], rational
    # via cyclotomic factors Phi_d with multiplicity dims[m/d]
    poly = [1]
    for d in range(1, m + 1):
        if m % d == 0:
            for _ in range(dims[m // d % m] if d > 1 else dims[0]):
                poly = _mul(poly, cyclotomic(d))
    assert _mul(poly, den) == num
    assert cycle_shape_from_charpoly(poly, m) == shape


def test_cyclotomic_small():
    assert cyclotomic(1) == [-1, 1]
    assert cyclotomic(6) == [1, -1, 1]
    assert cyclotomic(12) == [1, 0, -1, 0, 1]


def test_mobius():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


# --- Kac coordinates

def test_kac_order_and_normalize():
    assert kac_order(T("C3"), (2, 1, 1, 2)) == 8
    assert normalize(T("A2"), (2, 2, 2)) == (1, 1, 1)
    with pytest.raises(KacCoordinateError):
        normalize(T("A2"), (1, 1))
    with pytest.raises(KacCoordinateError):
        normalize(T("A2"), (0, 0, 0))
    with pytest.raises(KacCoordinateError):
        normalize(T("A2"), (1, -1, 1))


def test_parse_format():
    assert parse_kac("(1,0,2)") == (1, 0, 2)
    assert parse_kac(format_kac((3, 3, 1))) == (3, 3, 1)


@pytest.mark.parametrize("t,coords,m", [("A1", (1, 1), 2), ("C3", (2, 1, 1, 2), 8),
                                        ("G2", (3, 3, 1), 12), ("B4", (2, 2, 2, 2, 1), 14),
                                        ("F4", (2, 2, 2, 1, 1), 18)])
def test_sigma_u_coordinates(t, coords, m):
    t = T(t)
    assert sigma_u_coords(t) == coords
    assert sigma_u(t).order == m == lacing(t) * dual_coxeter(t)


@pytest.mark.parametrize("t", all_types(8), ids=str)
def test_sigma_u_is_quasirational_with_zero_sum(t):
    a = sigma_u(t)
    shape = cycle_shape(eigenspace_dims(a), a.order)
    assert shape.sum_b_over_t() == 0
    assert very_strange_rhs(a) == 0


def test_vsf_examples():
    a = InnerAutomorphism.simple("A1", (1, 0))
    assert very_strange_lhs(a) == very_strange_rhs(a) == Fraction(1, 8)
    a = InnerAutomorphism.simple("A1", (1, 1))
    assert very_strange_lhs(a) == very_strange_rhs(a) == 0
    a = InnerAutomorphism.simple("A2", (1, 1, 1))
    assert very_strange_lhs(a) == very_strange_rhs(a) == 0


def test_eigenspace_dims_sum():
    for t in all_types(5):
        for m in (1, 2, 3, 5):
            for v in kac_vectors(t, m)[:20]:
                a = InnerAutomorphism.simple(t, v)
                assert sum(eigenspace_dims(a)) == dimension(t)


def test_semisimple_vsf_sums_components():
    a = InnerAutomorphism([("A1", (1, 1)), ("A2", (1, 0, 0))])
    assert very_strange_lhs(a) == very_strange_rhs(a) == Fraction(8, 24)


# --- batch grid against the scalar functions

@pytest.mark.parametrize("t", [T("A2"), T("B3"), T("G2"), T("D4")], ids=str)
def test_grid_matches_scalar_path(t):
    for m in range(1, 8):
        vecs = kac_vectors(t, m)
        res = vsf_grid(t, m)
        assert res.cases == len(vecs)
        assert res.formula_failures == 0 and res.bound_failures == 0
        quasi = 0
        for v in vecs:
            a = InnerAutomorphism.simple(t, v)
            assert very_strange_lhs(a) == very_strange_rhs(a)
            try:
                cycle_shape(eigenspace_dims(a), a.order)
            except NotQuasirationalError:
                continue
            quasi += 1
            assert vsf_bound(a, m) == 24 + 24 * m * very_strange_rhs(a)
        assert res.quasirational == quasi


def test_grid_detects_invalid_vectors():
    # s_1 + s_2 = 4 > 3 would need s_0 = -1: not an automorphism, so the sides differ
    res = vsf_grid(T("A2"), 3, vectors=[(0, 2, 2), (1, 1, 1)])
    assert res.formula_failures == 1


def test_grid_random_sample_large_types():
    rng = random.Random(5)
    for t in (T("E8"), T("A8"), T("C8")):
        vecs = kac_vectors(t, 12)
        for v in rng.sample(vecs, 10):
            a = InnerAutomorphism.simple(t, v)
            assert very_strange_lhs(a) == very_strange_rhs(a)
