import json
import random
from fractions import Fraction

import pytest

from gdhkit import exact
from gdhkit.classify import extremality_necessary, load_class_data, load_co0_table
from gdhkit.dimform import vacuum_anomaly
from gdhkit.kacauto import CycleShape
from gdhkit.lattice import CosetVector, min_coset_norm
from gdhkit.leech import (LatticeIsometry, charpoly, LeechAutomorphism, LeechError, automorphism_order,
                          build_golay, build_leech, cycle_shape_of, doubling_vector,
                          fixed_lattice, identity_isometry, is_leech_vector, leech_checks,
                          leech_coordinates, leech_gram, minus_identity, order_doubling,
                          parity_map, projection, quotient_order, twisted_weight,
                          type_of_automorphism)
from conftest import require_data
from oracles import int_det

BUNDLED = ["2b", "3b", "2d", "4e", "5b", "6k", "7b", "8g", "6o", "10j", "6p", "4h", "3d", "4g"]


@pytest.fixture(scope="module")
def golay():
    return build_golay()


def test_golay_code(golay):
    assert golay.weight_distribution() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    assert golay.min_distance() == 8
    assert golay.is_self_dual()


def test_leech_membership_rules(golay):
    assert is_leech_vector([4, 4] + [0] * 22, golay)
    assert is_leech_vector([-3] + [1] * 23, golay)
    assert not is_leech_vector([2, 2] + [0] * 22, golay)   # norm 1
    assert not is_leech_vector([3] + [1] * 23, golay)      # wrong sign rule
    assert is_leech_vector([8] + [0] * 23, golay)


def test_leech_quick_checks():
    out = leech_checks(count_minimal=False)
    assert out == {"basis_in_lattice": True, "integral": True, "even": True, "det": 1,
                   "norm2": 0}


def test_coordinates_roundtrip():
    lat = build_leech()
    v = [-3] + [1] * 23
    c = leech_coordinates(v)
    assert exact.is_integral(c)
    assert lat.to_ambient(c) == v


def test_minus_identity_chain():
    iso = minus_identity()
    assert str(cycle_shape_of(iso)) == str(CycleShape.parse("1^-24 2^24"))
    g = LeechAutomorphism(iso, [0] * 24)
    assert not order_doubling(iso)
    assert twisted_weight(g) == Fraction(3, 2)
    assert type_of_automorphism(g, 2) == 0
    assert automorphism_order(g) == 2


def test_identity_automorphism_with_shift():
    iso = identity_isometry()
    # inner automorphism e^{2 pi i h} with h = v/2 for a minimal vector v: order 2
    v = leech_coordinates([4, 4] + [0] * 22)
    g = LeechAutomorphism(iso, [x / 2 for x in v])
    assert automorphism_order(g) == 2
    assert twisted_weight(g) == Fraction(1, 2) * min_coset_norm(
        CosetVector(build_leech(), [2, 2] + [0] * 22))[0]


def test_power_of_automorphism():
    iso = minus_identity()
    g = LeechAutomorphism(iso, [0] * 24)
    assert g.power(3).isometry.matrix == iso.matrix
    assert LatticeIsometry(iso.matrix).power(2).matrix == exact.identity(24)


def test_invalid_isometries():
    with pytest.raises(LeechError):
        LatticeIsometry.from_json({"matrix": [[1, 0], [0, 1]]})
    m = exact.identity(24)
    m[0][1] = 1  # not of finite order
    with pytest.raises(LeechError):
        LatticeIsometry.from_json({"matrix": m})
    swap = exact.identity(24)
    swap[0], swap[1] = swap[1], swap[0]
    if not LatticeIsometry(swap).preserves(leech_gram()):
        with pytest.raises(LeechError):
            LatticeIsometry.from_json({"matrix": swap})


def test_shift_outside_fixed_space_rejected():
    with pytest.raises(LeechError):
        LeechAutomorphism(minus_identity(), [Fraction(1, 2)] + [0] * 23)


@pytest.fixture(scope="module")
def classes():
    return {c.name: c for c in load_co0_table()}


@pytest.mark.data
@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_representatives(name, classes):
    require_data("centralizers", f"{name}.json")
    data = load_class_data(name)
    cls = classes[name]
    assert data.shape == cls.shape
    assert data.isometry.preserves(leech_gram())
    fl = fixed_lattice(data.isometry)
    assert fl.rank == cls.fixed_rank
    # every generator restricts to the fixed lattice
    for tau in data.centralizer:
        for row in fl.basis:
            assert fl.contains(tau.apply(row))


def _pair(u, v):
    g = leech_gram()
    return sum(u[i] * g[i][j] * v[j] for i in range(24) for j in range(24))


@pytest.mark.data
@pytest.mark.parametrize("name", ["2b", "2d", "4e", "6k", "8g", "4h"])
def test_doubling_vector_definition(name):
    require_data("centralizers", f"{name}.json")
    iso = load_class_data(name).isometry
    m = iso.order
    s = doubling_vector(iso)
    assert projection(iso, s) == s
    half = iso.power(m // 2)
    rng = random.Random(m)
    # <v, nu^{m/2} v> = 2m <s, v> (mod 2) for arbitrary lattice vectors, not just basis vectors
    for _ in range(10):
        v = [rng.randint(-3, 3) for _ in range(24)]
        lhs = _pair(v, half.apply(v))
        rhs = 2 * m * _pair(s, v)
        assert rhs.denominator == 1
        assert (lhs - int(rhs)) % 2 == 0
    assert any(parity_map(iso)) == any(s)


@pytest.mark.data
@pytest.mark.parametrize("name,n,expected", [("10j", 10, 25), ("4h", 4, 1)])
def test_quotient_order_examples(name, n, expected):
    require_data("centralizers", f"{name}.json")
    iso = load_class_data(name).isometry
    fl = fixed_lattice(iso)
    disc = exact.det(fl.gram)
    assert quotient_order(iso, n) == n ** fl.rank // disc
    assert quotient_order(iso, n) == expected


def test_deep_hole_from_data():
    p = require_data("deep_hole.json")
    doc = json.loads(p.read_text())
    lat = build_leech()
    norm, wits = min_coset_norm(CosetVector(lat, [Fraction(x, 8) * 8 for x in doc["ambient"]]),
                                all_witnesses=True)
    assert norm == 2 and len(wits) == doc["vertices"] == 48
    h = [Fraction(x) for x in doc["coordinates"]]
    assert lat.to_ambient(h) == doc["ambient"]
    g = LeechAutomorphism(identity_isometry(), h)
    assert automorphism_order(g) == 2
    assert twisted_weight(g) == 1
    assert vacuum_anomaly(CycleShape.parse("1^24")) == 0
    assert extremality_necessary(g, 2)


def test_charpoly_against_determinants():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        p = charpoly(m)
        for x in range(-3, 4):
            shifted = [[x * int(i == j) - m[i][j] for j in range(n)] for i in range(n)]
            assert sum(c * x ** k for k, c in enumerate(p)) == int_det(shifted)
