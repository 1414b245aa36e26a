import json
from fractions import Fraction

import pytest

from gdhkit.affine import (AffineStructure, RatioMismatchError, TraceIdentityError,
                           enumerate_eq1, level_lcm, order_lcm, ratio, satisfies_identity,
                           total_dim)
from conftest import require_data


def A(text):
    return AffineStructure.parse(text)


def test_text_forms_roundtrip():
    s = A("A1@2 x16")
    assert str(s) == "A1@2 x16"
    assert s.pretty() == "A_{1,2}^{16}"
    assert A(s.pretty()) == s
    assert AffineStructure.from_json(s.to_json()) == s
    t = A("C_{3,8}A_{3,8}")
    assert str(t) == "A3@8, C3@8"
    assert A(str(t)) == t


def test_ratio_and_identity():
    assert ratio(A("A_{1,2}^{16}")) == Fraction(1, 1)
    with pytest.raises(RatioMismatchError):
        ratio(A("A1@1, A1@2"))
    with pytest.raises(TraceIdentityError):
        ratio(A("A1@1 x3"))
    assert not satisfies_identity(A("A1@1 x3"))


@pytest.mark.parametrize("text,n", [("A_{1,2}^{16}", 2), ("C_{3,8}A_{3,8}", 8),
                                    ("G_{2,3}^4", 12)])
def test_order_lcm(text, n):
    assert order_lcm(A(text)) == n


@pytest.mark.parametrize("text,k", [("A_{1,4}^{12}", 4), ("D_{4,36}", 36), ("A_{1,1}^{24}", 1)])
def test_level_lcm(text, k):
    assert level_lcm(A(text)) == k


def test_rank_limit():
    with pytest.raises(ValueError):
        A("A1@1 x25")


def test_enumeration_properties():
    out = enumerate_eq1()
    assert len(out) == 221
    assert len(set(out)) == 221
    for s in out:
        r = ratio(s)
        assert (24 * r).denominator == 1
        assert total_dim(s) == 24 * (r + 1)
    dim25 = [s for s in out if total_dim(s) == 25]
    assert len(dim25) == 4
    assert A("A_{3,96}B_{2,72}") in dim25


def test_enumeration_matches_golden_table():
    path = require_data("reference_tables.json")
    rows = json.loads(path.read_text())["trace_identity_solutions"]
    golden = sorted((r["dim"], str(A(r["structure"]))) for r in rows)
    ours = sorted((total_dim(s), str(s)) for s in enumerate_eq1())
    assert ours == golden
