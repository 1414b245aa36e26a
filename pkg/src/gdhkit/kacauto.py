"""Finite-order inner automorphisms via Kac coordinates, and cycle shapes.

An inner automorphism of a simple Lie algebra is given by non-negative
integers ``(s_0, ..., s_l)``; its order is ``m = s_0 + sum a_i s_i`` with the
Kac labels ``a_i`` and it acts on the root space of ``alpha`` by
``exp(2 pi i (alpha, delta))`` where ``(alpha_i, delta) = s_i / m``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

from . import exact
from .rootsys import SimpleLieType, dimension, dual_coxeter, generate_roots


class NotQuasirationalError(ValueError):
    def __init__(self, i: int, j: int, m: int):
        super().__init__(f"not quasirational: multiplicities at {i} and {j} differ "
                         f"although gcd({i},{m}) = gcd({j},{m})")
        self.pair = (i, j)


class KacCoordinateError(ValueError):
    pass


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ----------------------------------------------------------------- cycle shapes

@dataclass(frozen=True)
class CycleShape:
    """``prod t^{b_t}``; stored as sorted ``(t, b_t)`` pairs with ``b_t != 0``."""

    terms: tuple

    @classmethod
    def of(cls, exponents: Mapping[int, int]) -> "CycleShape":
        items = []
        for t, b in exponents.items():
            t, b = int(t), int(b)
            if t < 1:
                raise ValueError(f"cycle length must be positive, got {t}")
            if b:
                items.append((t, b))
        return cls(tuple(sorted(items)))

    @classmethod
    def parse(cls, text: str) -> "CycleShape":
        """Accepts ``"2^12"``, ``"1^8 2^8"``, ``"1^{-24}2^{24}"``, ``"2.4.8^2"``."""
        src = text.strip()
        pos, exps = 0, {}
        token = re.compile(r"[\s.*]*(\d+)(?:\^\{?(-?\d+)\}?)?")
        while pos < len(src):
            m = token.match(src, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse cycle shape {text!r}")
            t = int(m.group(1))
            exps[t] = exps.get(t, 0) + (int(m.group(2)) if m.group(2) else 1)
            pos = m.end()
            while pos < len(src) and src[pos] in " .*":
                pos += 1
        if not exps:
            raise ValueError(f"empty cycle shape {text!r}")
        return cls.of(exps)

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return sum(t * b for t, b in self.terms)

    @property
    def order(self) -> int:
        return reduce(_lcm, (t for t, _ in self.terms), 1)

    @property
    def fixed_rank(self) -> int:
        return sum(b for _, b in self.terms)

    def sum_b_over_t(self) -> Fraction:
        return sum((Fraction(b, t) for t, b in self.terms), Fraction(0))

    def __str__(self) -> str:
        parts = []
        for t, b in self.terms:
            parts.append(f"{t}" if b == 1 else (f"{t}^{b}" if b > 0 else f"{t}^{{{b}}}"))
        return " ".join(parts)

    def latex(self) -> str:
        return "".join(f"{t}^{{{b}}}" if b != 1 else f"{t}" for t, b in self.terms)

    def eigen_multiplicities(self, m: int | None = None) -> list[int]:
        """Multiplicity of ``exp(2 pi i j/m)`` for ``j = 0..m-1``."""
        m = m or self.order
        out = []
        for j in range(m):
            e = m // gcd(j, m)  # order of the root of unity
            out.append(sum(b for t, b in self.terms if t % e == 0))
        return out

    def charpoly(self) -> tuple[list[int], list[int]]:
        """Numerator and denominator of ``prod (x^t - 1)^{b_t}`` (constant term first)."""
        num, den = [1], [1]
        for t, b in self.terms:
            f = [-1] + [0] * (t - 1) + [1]
            for _ in range(abs(b)):
                if b > 0:
                    num = _polymul(num, f)
                else:
                    den = _polymul(den, f)
        return num, den


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydivmod(a, b):
    a = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c % lead:
            return None, a
        c //= lead
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    rem = a[:len(b) - 1]
    return q, rem


def cyclotomic(n: int) -> list[int]:
    """Integer coefficients of the ``n``-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly, rem = _polydivmod(poly, cyclotomic(d))
        assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def shape_from_multiplicities(mult: Sequence[int], m: int) -> CycleShape:
    """``b_t`` from the multiplicities of the ``m``-th roots of unity.

    ``mult[j]`` is the multiplicity of ``exp(2 pi i j/m)``.  Raises
    :class:`NotQuasirationalError` if it is not a function of ``gcd(j, m)``.
    """
    if len(mult) != m:
        raise ValueError("need one multiplicity per residue mod m")
    by_order: dict[int, int] = {}
    first: dict[int, int] = {}
    for j in range(m):
        e = m // gcd(j, m)
        if e in by_order:
            if by_order[e] != mult[j]:
                raise NotQuasirationalError(first[e], j, m)
        else:
            by_order[e], first[e] = mult[j], j
    # mult of order-e roots = sum_{e | t | m} b_t ; invert over the divisor lattice
    exps = {}
    for t in divisors(m):
        b = sum(mobius(s // t) * by_order[s] for s in divisors(m) if s % t == 0)
        if b:
            exps[t] = b
    return CycleShape.of(exps)


def cycle_shape(dims: Sequence[int], m: int) -> CycleShape:
    """Cycle shape of an automorphism with eigenspace dimensions ``dims``."""
    return shape_from_multiplicities(list(dims), m)


def cycle_shape_from_charpoly(coeffs: Sequence[int], m: int) -> CycleShape:
    """Cycle shape of a finite-order matrix from its characteristic polynomial."""
    poly = list(coeffs)
    by_order = {}
    for e in divisors(m):
        phi = cyclotomic(e)
        k = 0
        while len(poly) >= len(phi):
            q, rem = _polydivmod(poly, phi)
            if q is None or any(rem):
                break
            poly, k = q, k + 1
            while len(poly) > 1 and poly[-1] == 0:
                poly.pop()
        by_order[e] = k
    if poly != [1]:
        raise NotQuasirationalError(0, 0, m)
    mult = [by_order[m // gcd(j, m)] for j in range(m)]
    return shape_from_multiplicities(mult, m)


# ----------------------------------------------------------------- Kac coordinates

def kac_order(t: SimpleLieType, coords: Sequence[int]) -> int:
    labels = (1,) + generate_roots(t).kac_labels
    if len(coords) != len(labels):
        raise KacCoordinateError(f"{t} needs {len(labels)} Kac coordinates, got {len(coords)}")
    return sum(a * s for a, s in zip(labels, coords))


def normalize(t: SimpleLieType, coords: Sequence[int]) -> tuple[int, ...]:
    coords = tuple(int(s) for s in coords)
    if any(s < 0 for s in coords):
        raise KacCoordinateError("Kac coordinates must be non-negative")
    g = reduce(gcd, coords, 0)
    if g == 0:
        raise KacCoordinateError("Kac coordinates must not all vanish")
    kac_order(t, coords)
    return tuple(s // g for s in coords)


@dataclass(frozen=True)
class InnerAutomorphism:
    """Component-wise Kac data of an inner automorphism of a semisimple algebra."""

    components: tuple  # ((SimpleLieType, (s0, ..., sl)), ...)

    def __init__(self, components):
        comps = []
        for t, s in components:
            t = t if isinstance(t, SimpleLieType) else SimpleLieType.parse(t)
            comps.append((t, normalize(t, s)))
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def simple(cls, t, coords) -> "InnerAutomorphism":
        return cls([(t, coords)])

    def component_order(self, i: int) -> int:
        t, s = self.components[i]
        return kac_order(t, s)

    @property
    def order(self) -> int:
        return reduce(_lcm, (self.component_order(i) for i in range(len(self.components))), 1)

    @property
    def dim(self) -> int:
        return sum(dimension(t) for t, _ in self.components)


def format_kac(coords: Sequence[int]) -> str:
    return "(" + ",".join(str(s) for s in coords) + ")"


def parse_kac(text: str) -> tuple[int, ...]:
    body = text.strip().strip("()")
    return tuple(int(x) for x in body.replace(";", ",").split(",") if x.strip())


def delta(a: InnerAutomorphism, component: int = 0) -> list[Fraction]:
    """``delta`` in simple-root coordinates: ``(alpha_i, delta) = s_i / m``."""
    t, s = a.components[component]
    m = kac_order(t, s)
    rs = generate_roots(t)
    return exact.solve_vec(rs.form, [Fraction(x, m) for x in s[1:]])


def _component_grades(t: SimpleLieType, s) -> tuple[int, list[int]]:
    """Order and ``m (alpha, delta) mod m`` for every root."""
    m = kac_order(t, s)
    rs = generate_roots(t)
    return m, [sum(c * x for c, x in zip(r, s[1:])) % m for r in rs.roots]


def eigenspace_dims(a: InnerAutomorphism, component: int | None = None) -> list[int]:
    """``dim g_(j)`` for ``j = 0..m-1``.

    For a single component the grading is by its own order; with
    ``component=None`` every component grading is lifted to ``Z_m`` with the
    global order ``m``.
    """
    if component is not None:
        t, s = a.components[component]
        m, grades = _component_grades(t, s)
        dims = [0] * m
        dims[0] += t.rank
        for g in grades:
            dims[g] += 1
        return dims
    m = a.order
    dims = [0] * m
    for t, s in a.components:
        mi, grades = _component_grades(t, s)
        lift = m // mi
        dims[0] += t.rank
        for g in grades:
            dims[g * lift] += 1
    return dims


def very_strange_lhs(a: InnerAutomorphism) -> Fraction:
    total = Fraction(0)
    for i, (t, _) in enumerate(a.components):
        dims = eigenspace_dims(a, i)
        m = len(dims)
        total += Fraction(dimension(t), 24) - Fraction(
            sum(j * (m - j) * d for j, d in enumerate(dims)), 4 * m * m)
    return total


def very_strange_rhs(a: InnerAutomorphism) -> Fraction:
    return sum((Fraction(dual_coxeter(t), 2) * _dist_sq(a, i)
                for i, (t, _) in enumerate(a.components)), Fraction(0))


def _dist_sq(a: InnerAutomorphism, i: int) -> Fraction:
    """``|delta_i - rho_i / h_i|^2``."""
    t, _ = a.components[i]
    rs = generate_roots(t)
    h = dual_coxeter(t)
    d = delta(a, i)
    diff = [x - r / h for x, r in zip(d, rs.weyl_vector)]
    return rs.norm(diff)


def vsf_distance_sum(a: InnerAutomorphism) -> Fraction:
    """``sum_i h_i |delta_i - rho_i/h_i|^2``."""
    return sum((dual_coxeter(t) * _dist_sq(a, i) for i, (t, _) in enumerate(a.components)),
               Fraction(0))


def sigma_u_coords(t: SimpleLieType) -> tuple[int, ...]:
    """Kac coordinates ``(s_0, ..., s_l)`` of the automorphism with ``delta = rho/h``."""
    l = t.rank
    fam = t.family
    if fam in "ADE":
        return (1,) * (l + 1)
    if fam == "B":
        return (2,) * l + (1,)
    if fam == "C":
        return (2,) + (1,) * (l - 1) + (2,)
    if fam == "F":
        return (2, 2, 2, 1, 1)
    return (3, 3, 1)


def sigma_u(t: SimpleLieType) -> InnerAutomorphism:
    return InnerAutomorphism.simple(t, sigma_u_coords(t))


# ----------------------------------------------------------------- batch grid

def kac_vectors(t: SimpleLieType, m: int, primitive: bool = True):
    """All ``(s_0, ..., s_l)`` with ``s_0 + sum a_i s_i = m`` (gcd 1 if ``primitive``)."""
    labels = (1,) + generate_roots(t).kac_labels
    out: list = []
    cur = [0] * len(labels)

    def rec(i, left):
        if i == len(labels) - 1:
            if left % labels[i] == 0:
                cur[i] = left // labels[i]
                if not primitive or reduce(gcd, cur, 0) == 1:
                    out.append(tuple(cur))
            return
        for s in range(left // labels[i] + 1):
            cur[i] = s
            rec(i + 1, left - s * labels[i])

    rec(0, m)
    return out


@dataclass(frozen=True)
class GridResult:
    type: SimpleLieType
    m: int
    cases: int
    formula_failures: int      # lhs != rhs
    quasirational: int
    bound_failures: int        # vsf bound != cycle-shape bound (quasirational cases)


def vsf_grid(t: SimpleLieType, m: int, vectors=None) -> GridResult:
    """Very strange formula over every primitive Kac vector of order ``m``.

    Integer-scaled and vectorised: both sides are multiplied by ``96 m^2 Z``
    for one common integer ``Z``; ``(delta, rho) = s.rho / m`` avoids solving
    per vector.  For quasirational vectors ``m sum b_t/t`` is formed from the
    eigenspace dimensions by Moebius inversion and checked against the lhs,
    which is the statement that the two dimension bounds agree at ``n = m``.
    """
    import numpy as np

    vecs = kac_vectors(t, m) if vectors is None else vectors
    if not vecs:
        return GridResult(t, m, 0, 0, 0, 0)
    rs = generate_roots(t)
    h = dual_coxeter(t)
    dim = dimension(t)
    finv = exact.inverse(rs.form)
    rho = list(rs.weyl_vector)
    rho_sq = rs.norm(rho)
    # R/(96 m^2) = (h/2)(s K s / m^2 - 2 s.rho/(m h) + |rho|^2/h^2)
    #   => R = 48 h s K s - 96 m s.rho + 48 m^2 |rho|^2 / h
    consts = [48 * h * x for row in finv for x in row] + [96 * m * x for x in rho] + \
        [Fraction(48 * m * m) * rho_sq / h]
    z = 1
    for c in consts:
        z = z * c.denominator // gcd(z, c.denominator)
    kmat = np.array([[int(48 * h * x * z) for x in row] for row in finv], dtype=object)
    rvec = np.array([int(96 * m * x * z) for x in rho], dtype=object)
    const = int(Fraction(48 * m * m) * rho_sq / h * z)

    s = np.array([v[1:] for v in vecs], dtype=np.int64)          # (V, l)
    roots = np.array(rs.roots, dtype=np.int64)                   # (N, l)
    grades = (s @ roots.T) % m                                   # (V, N)
    nv = len(vecs)
    dims = np.bincount((grades + m * np.arange(nv)[:, None]).ravel(),
                       minlength=m * nv).reshape(nv, m)
    dims[:, 0] += t.rank
    j = np.arange(m)
    weights = j * (m - j)
    lhs = (4 * m * m * dim - 24 * (dims @ weights)).astype(object) * z
    so = s.astype(object)
    rhs = np.einsum("vi,ij,vj->v", so, kmat, so) - so @ rvec + const
    formula_failures = int(np.count_nonzero(lhs != rhs))

    # quasirationality: dims constant on gcd classes
    g = np.gcd(j, m)
    divs = divisors(m)
    quasi = np.ones(nv, dtype=bool)
    for d in divs:
        cols = np.nonzero(g == d)[0]
        quasi &= (dims[:, cols] == dims[:, cols[:1]]).all(axis=1)
    # multiplicity of primitive u-th roots of unity sits at j = m/u
    mult = {u: dims[:, m // u] if u > 1 else dims[:, 0] for u in divs}
    bsum = np.zeros(nv, dtype=np.int64)
    for tt in divs:
        b = sum(mobius(u // tt) * mult[u] for u in divs if u % tt == 0)
        bsum += b * (m // tt)
    bound_ok = (4 * m * bsum).astype(object) * z == lhs
    bound_failures = int(np.count_nonzero(quasi & ~bound_ok))
    return GridResult(t, m, nv, formula_failures, int(quasi.sum()), bound_failures)
