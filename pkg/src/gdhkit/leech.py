"""Golay code, Leech lattice and automorphism arithmetic for lattice VOAs.

Coordinates
-----------
The 24 coordinates are labelled by the projective line over F_23: index
``i < 23`` is the residue ``i`` and index 23 is infinity.  The Golay code is
the extended quadratic-residue code spanned by the translates of the
indicator of ``{0} + squares mod 23`` and the all-ones word.

Leech vectors are stored scaled by ``sqrt 8`` as integer vectors ``x`` with
norm ``x.x / 8``.  ``x`` lies in the lattice iff all ``x_i`` have the same
parity ``p``, ``sum x_i = 4p (mod 8)``, and the positions with ``x_i = 1``
(odd ``p``) or ``x_i = 2`` (even ``p``) modulo 4 form a codeword.

The fixed basis is the row HNF of the spanning set made of ``2c`` for the
code's generator rows, ``4 e_i - 4 e_j``, ``4 e_0 + 4 e_1`` and
``(-3, 1, ..., 1)``.  Isometries act on Leech-basis coordinates: a row vector
``c`` of coordinates is sent to ``c M^T``; equivalently ``M`` acts on column
coordinate vectors and ``M^T G M = G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from . import exact
from .dimform import automorphism_type, vacuum_anomaly
from .kacauto import CycleShape, cycle_shape_from_charpoly
from .lattice import (CosetVector, IntegerLattice, count_short_vectors, dual_and_discriminant,
                      hnf_basis, kernel_lattice, min_coset_norm)

INF = 23
SCALE = Fraction(1, 8)


class LeechError(ValueError):
    pass


# ----------------------------------------------------------------- Golay code

@dataclass(frozen=True)
class GolayCode:
    generator: tuple  # 12 rows of 24 bits

    @property
    def words(self) -> frozenset:
        return _golay_words(self.generator)

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.words:
            k = bin(w).count("1")
            dist[k] = dist.get(k, 0) + 1
        return dict(sorted(dist.items()))

    def min_distance(self) -> int:
        return min(bin(w).count("1") for w in self.words if w)

    def is_self_dual(self) -> bool:
        rows = [_mask(r) for r in self.generator]
        return all(bin(a & b).count("1") % 2 == 0 for a in rows for b in rows) and len(rows) == 12

    def contains(self, bits: Sequence[int]) -> bool:
        return _mask(bits) in self.words


def _mask(bits) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b)


def _unmask(w: int) -> tuple:
    return tuple((w >> i) & 1 for i in range(24))


@lru_cache(maxsize=4)
def _golay_words(generator) -> frozenset:
    words = {0}
    for r in generator:
        m = _mask(r)
        words |= {w ^ m for w in words}
    return frozenset(words)


@lru_cache(maxsize=None)
def build_golay() -> GolayCode:
    squares = {(x * x) % 23 for x in range(1, 23)}
    support = squares | {0}
    rows = []
    for s in range(23):
        rows.append(_mask([int(((i - s) % 23) in support) if i < 23 else 0 for i in range(24)]))
    rows.append((1 << 24) - 1)
    # reduce to an echelon generator matrix
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    basis.sort(reverse=True)
    gen = tuple(_unmask(w) for w in basis)
    code = GolayCode(gen)
    if len(gen) != 12:
        raise AssertionError("Golay construction has wrong dimension")
    return code


# ----------------------------------------------------------------- Leech lattice

def is_leech_vector(x: Sequence[int], code: Optional[GolayCode] = None) -> bool:
    """Membership test in the sqrt(8)-scaled coordinates."""
    code = code or build_golay()
    p = x[0] % 2
    if any(c % 2 != p for c in x):
        return False
    if sum(x) % 8 != (4 * p) % 8:
        return False
    if p:
        return code.contains([int(c % 4 == 1) for c in x])
    return code.contains([int(c % 4 == 2) for c in x])


@lru_cache(maxsize=None)
def _leech_basis() -> tuple:
    code = build_golay()
    span = [[2 * b for b in row] for row in code.generator]
    for i in range(1, 24):
        span.append([4 if j == 0 else (-4 if j == i else 0) for j in range(24)])
    span.append([4, 4] + [0] * 22)
    span.append([-3] + [1] * 23)
    basis = hnf_basis(span)
    assert len(basis) == 24
    return tuple(tuple(r) for r in basis)


def build_leech() -> IntegerLattice:
    """The Leech lattice in its fixed basis (sqrt 8 coordinates, gram_scale 1/8)."""
    return IntegerLattice([list(r) for r in _leech_basis()], gram_scale=SCALE)


@lru_cache(maxsize=None)
def leech_gram() -> tuple:
    g = build_leech().gram
    return tuple(tuple(int(x) for x in row) for row in g)


def leech_checks(count_minimal: bool = True) -> dict:
    """Structural checks of the constructed lattice; values are booleans/ints."""
    lat = build_leech()
    code = build_golay()
    g = lat.gram
    out = {
        "basis_in_lattice": all(is_leech_vector(r, code) for r in lat.basis),
        "integral": lat.is_integral(),
        "even": lat.is_even(),
        "det": int(lat.det()),
    }
    counts = count_short_vectors(g, 4 if count_minimal else 2, by_norm=True)
    out["norm2"] = counts.get(Fraction(2), 0)
    if count_minimal:
        out["norm4"] = counts.get(Fraction(4), 0)
    return out


# ----------------------------------------------------------------- isometries

def _matpow(m, e):
    n = len(m)
    result = exact.identity(n)
    base = [list(r) for r in m]
    while e:
        if e & 1:
            result = exact.matmul(result, base)
        base = exact.matmul(base, base)
        e >>= 1
    return result


@dataclass
class LatticeIsometry:
    """Integer matrix acting on column coordinate vectors in the Leech basis."""

    matrix: list
    name: str = ""
    order: int = 0

    def __post_init__(self):
        self.matrix = [[int(x) for x in row] for row in self.matrix]
        if self.order == 0:
            self.order = _matrix_order(self.matrix)

    def apply(self, coords):
        """Image of a (column) coordinate vector."""
        return exact.matvec(self.matrix, coords)

    def power(self, e: int) -> "LatticeIsometry":
        e %= self.order
        return LatticeIsometry(_matpow(self.matrix, e), f"{self.name}^{e}" if self.name else "",
                               self.order // gcd(self.order, e) if e else 1)

    def preserves(self, gram) -> bool:
        mt = exact.transpose(self.matrix)
        return exact.matmul(exact.matmul(mt, gram), self.matrix) == [list(r) for r in gram]

    @classmethod
    def from_json(cls, doc: dict) -> "LatticeIsometry":
        # check the form before the order search, which is slow for bad input
        probe = cls(doc["matrix"], doc.get("name", ""), order=1)
        validate_isometry(probe)
        return cls(probe.matrix, probe.name)

    def to_json(self) -> dict:
        return {"name": self.name, "matrix": self.matrix}


def _matrix_order(m, limit: int = 10000) -> int:
    n = len(m)
    ident = exact.identity(n)
    cur = [list(r) for r in m]
    for k in range(1, limit + 1):
        if cur == ident:
            return k
        cur = exact.matmul(cur, m)
    raise LeechError("matrix has no finite order below the search limit")


def validate_isometry(iso: LatticeIsometry) -> None:
    if len(iso.matrix) != 24 or any(len(r) != 24 for r in iso.matrix):
        raise LeechError("isometry must be a 24x24 integer matrix")
    if not iso.preserves(leech_gram()):
        raise LeechError(f"matrix {iso.name!r} does not preserve the Leech form")


def identity_isometry() -> LatticeIsometry:
    return LatticeIsometry(exact.identity(24), "1A", 1)


def minus_identity() -> LatticeIsometry:
    return LatticeIsometry([[-int(i == j) for j in range(24)] for i in range(24)], "-1", 2)


def charpoly(m) -> list[int]:
    """Characteristic polynomial coefficients (constant term first), exact.

    Faddeev-LeVerrier; for an integer matrix every ``M_k`` stays integral and
    the division by ``k`` is exact, so plain ints suffice.
    """
    return list(_charpoly(tuple(tuple(int(x) for x in row) for row in m)))


@lru_cache(maxsize=256)
def _charpoly(a: tuple) -> tuple:
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        mk = [[sum(x * y for x, y in zip(row, col)) for col in zip(*mk)] for row in a]
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        tr = sum(x * y for i in range(n) for x, y in zip(a[i], (row[i] for row in mk)))
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs[n - k] = q
    return tuple(coeffs)


def cycle_shape_of(iso: LatticeIsometry) -> CycleShape:
    return cycle_shape_from_charpoly(charpoly(iso.matrix), iso.order)


# ----------------------------------------------------------------- fixed lattices

def _form():
    return [list(r) for r in leech_gram()]


def fixed_lattice(iso: LatticeIsometry) -> IntegerLattice:
    """``Lambda^nu`` in Leech-basis coordinates (rows), with the Leech form."""
    m = [[iso.matrix[i][j] - int(i == j) for j in range(24)] for i in range(24)]
    lat = kernel_lattice(m)
    return IntegerLattice(lat.basis, _form())


def projection(iso: LatticeIsometry, vector) -> list[Fraction]:
    """``pi_nu(v) = (1/m) sum nu^i v`` for a coordinate vector."""
    acc = [Fraction(x) for x in vector]
    cur = list(acc)
    for _ in range(iso.order - 1):
        cur = iso.apply(cur)
        acc = [a + c for a, c in zip(acc, cur)]
    return [a / iso.order for a in acc]


def projection_lattice(iso: LatticeIsometry) -> IntegerLattice:
    """``pi_nu(Lambda)``: projections of the basis vectors, reduced to a basis."""
    if iso.order == 1:
        return IntegerLattice(exact.identity(24), _form())
    rows = [projection(iso, [int(i == j) for j in range(24)]) for i in range(24)]
    den = exact.common_denominator(x for r in rows for x in r)
    ints = hnf_basis([[int(x * den) for x in r] for r in rows])
    basis = [[Fraction(x, den) for x in r] for r in ints]
    return IntegerLattice(basis, _form())


def quotient_order(iso: LatticeIsometry, n: int) -> int:
    """``|(Lambda^nu / n) / pi_nu(Lambda)| = n^rank / |(Lambda^nu)'/Lambda^nu|``."""
    fl = fixed_lattice(iso)
    _, disc = dual_and_discriminant(fl)
    val = Fraction(n) ** fl.rank / disc
    if val.denominator != 1:
        raise LeechError(f"non-integral quotient order {val}")
    return int(val)


# ----------------------------------------------------------------- order doubling

def parity_map(iso: LatticeIsometry) -> list[int]:
    """``<e_i, nu^{m/2} e_i> mod 2`` on the basis vectors (zero for odd order)."""
    if iso.order % 2:
        return [0] * 24
    half = iso.power(iso.order // 2).matrix
    g = leech_gram()
    out = []
    for i in range(24):
        col = [half[r][i] for r in range(24)]
        out.append(sum(g[i][r] * col[r] for r in range(24)) % 2)
    return out


def order_doubling(iso: LatticeIsometry) -> bool:
    return any(parity_map(iso))


def doubling_vector(iso: LatticeIsometry) -> list[Fraction]:
    """Canonical ``s_nu`` in ``(1/2m) Lambda^nu`` (Leech-basis coordinates).

    Solves ``<w, e_i> = parity(e_i) (mod 2)`` for ``w`` in ``Lambda^nu``, then
    returns ``w/(2m)`` for the ``w`` of least norm in ``w + 2 Lambda^nu``
    (ties broken lexicographically in coordinates).
    """
    par = parity_map(iso)
    m = iso.order
    if not any(par):
        return [Fraction(0)] * 24
    fl = fixed_lattice(iso)
    g = leech_gram()
    # pairing matrix <f_j, e_i> mod 2
    pair = [[sum(f[r] * g[r][i] for r in range(24)) % 2 for f in fl.basis] for i in range(24)]
    sol = _solve_gf2(pair, par)
    if sol is None:
        raise LeechError("no doubling vector exists (inconsistent parity system)")
    w0 = [sum(sol[j] * fl.basis[j][i] for j in range(fl.rank)) for i in range(24)]
    # least norm in w0 + 2 Lambda^nu
    two = IntegerLattice([[2 * x for x in r] for r in fl.basis], _form())
    _, wits = min_coset_norm(CosetVector(two, w0), all_witnesses=True)
    w = min(wits)
    s = [Fraction(x) / (2 * m) for x in w]
    # verification of the defining congruence
    for i in range(24):
        val = 2 * m * sum(s[r] * g[r][i] for r in range(24))
        if val.denominator != 1 or (int(val) - par[i]) % 2:
            raise LeechError("doubling vector failed verification")
    return s


def _solve_gf2(a, b):
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        for i in range(rows):
            if i != r and aug[i][c]:
                aug[i] = [x ^ y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][cols] for i in range(r, rows)):
        return None
    x = [0] * cols
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][cols]
    return x


# ----------------------------------------------------------------- automorphisms

@dataclass
class LeechAutomorphism:
    """``nu-hat sigma_h`` with ``h = s_nu + f``; vectors in Leech-basis coordinates.

    ``f`` is the free part of the shift (in the fixed subspace); the doubling
    vector is added automatically.
    """

    isometry: LatticeIsometry
    f: list

    def __post_init__(self):
        self.f = [Fraction(x) for x in self.f]
        if any(x for x in self.f) and projection(self.isometry, self.f) != self.f:
            raise LeechError("shift is not in the fixed subspace of the isometry")

    @property
    def shift(self) -> list[Fraction]:
        s = doubling_vector(self.isometry)
        return [a + b for a, b in zip(s, self.f)]

    def power(self, i: int) -> "LeechAutomorphism":
        """``g^i`` for ``i`` coprime to the order: same isometry class data,
        shift ``i h``, returned as an automorphism of ``nu^i``."""
        iso = self.isometry.power(i)
        h = [i * x for x in self.shift]
        s_new = doubling_vector(iso)
        return LeechAutomorphism(iso, [a - b for a, b in zip(h, s_new)])


def _denominator_order(fl: IntegerLattice, f) -> int:
    if not any(f):
        return 1
    coords = fl.coordinates(f)
    if coords is None:
        raise LeechError("shift is not in the fixed subspace")
    return exact.common_denominator(coords)


def automorphism_order(a: LeechAutomorphism) -> int:
    """``lcm(m, k)`` with ``m`` the order of ``nu`` and ``k`` minimal such that
    ``k f`` lies in ``Lambda^nu`` (the doubling vector absorbs any order
    doubling of the standard lift)."""
    m = a.isometry.order
    k = _denominator_order(fixed_lattice(a.isometry), a.f)
    return m * k // gcd(m, k)


def twisted_weight(a: LeechAutomorphism) -> Fraction:
    """Conformal weight of the unique ``g``-twisted module."""
    shape = cycle_shape_of(a.isometry)
    rho = vacuum_anomaly(shape)
    h = a.shift
    if a.isometry.order == 1:
        proj = IntegerLattice(exact.identity(24), _form())
    else:
        proj = projection_lattice(a.isometry)
    if proj.rank == 0:
        return rho
    n, _ = min_coset_norm(CosetVector(proj, h))
    return rho + n / 2


def type_of_automorphism(a: LeechAutomorphism, n: int) -> int:
    return automorphism_type(n, twisted_weight(a))


def leech_coordinates(x: Sequence[int]) -> list[Fraction]:
    """Leech-basis coordinates of an ambient (sqrt 8 scaled) vector."""
    lat = build_leech()
    c = exact.solve_vec(exact.transpose(lat.basis), list(x))
    return c


def ambient(coords) -> list:
    return build_leech().to_ambient(coords)
