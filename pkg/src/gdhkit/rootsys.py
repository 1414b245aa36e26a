"""Root systems of the simple Lie algebras and their exact constants.

Roots are stored as integer coefficient vectors in the basis of simple roots.
The invariant form is normalised so that long roots have squared norm 2.

Simple roots follow Bourbaki's numbering, except for G2 where the long root
comes first (the numbering of Kac's affine diagrams, so that Kac coordinates
read ``(s0, s_long, s_short)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering

from . import exact

FAMILIES = "ABCDEFG"
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class InvalidTypeError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class SimpleLieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidTypeError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidTypeError(f"invalid rank {self.rank!r}")
        if self.family in _FIXED_RANKS:
            if self.rank not in _FIXED_RANKS[self.family]:
                raise InvalidTypeError(f"{self.family}{self.rank} does not exist")
        elif self.rank < _MIN_RANK[self.family]:
            raise InvalidTypeError(
                f"{self.family}{self.rank}: rank must be at least {_MIN_RANK[self.family]}")

    @classmethod
    def parse(cls, text: str) -> "SimpleLieType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?\{?(\d+)\}?\s*", text)
        if not m:
            raise InvalidTypeError(f"cannot parse simple type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def __lt__(self, other: "SimpleLieType") -> bool:
        return (self.family, self.rank) < (other.family, other.rank)

    @property
    def dim(self) -> int:
        return dimension(self)

    @property
    def h_dual(self) -> int:
        return dual_coxeter(self)

    @property
    def lacing(self) -> int:
        return lacing(self)


def all_types(max_rank: int) -> list[SimpleLieType]:
    """Every simple type of rank at most ``max_rank``, in canonical order."""
    out = []
    for fam in FAMILIES:
        if fam in _FIXED_RANKS:
            out += [SimpleLieType(fam, r) for r in _FIXED_RANKS[fam] if r <= max_rank]
        else:
            out += [SimpleLieType(fam, r) for r in range(_MIN_RANK[fam], max_rank + 1)]
    return out


def _simple_norms_and_edges(t: SimpleLieType):
    l, fam = t.rank, t.family
    chain = [(i, i + 1) for i in range(l - 1)]
    if fam == "A":
        return [2] * l, chain
    if fam == "B":
        return [2] * (l - 1) + [1], chain
    if fam == "C":
        return [1] * (l - 1) + [2], chain
    if fam == "D":
        return [2] * l, [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
    if fam == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, l - 1)]
        return [2] * l, edges
    if fam == "F":
        return [2, 2, 1, 1], chain
    return [2, Fraction(2, 3)], chain  # G2, long root first


@dataclass(frozen=True)
class RootSystem:
    type: SimpleLieType
    form: list[list[Fraction]]          # (alpha_i, alpha_j)
    cartan: list[list[int]]             # <alpha_i^vee, alpha_j>
    roots: tuple[tuple[int, ...], ...]  # coefficient vectors, sorted
    positive_roots: tuple[tuple[int, ...], ...]
    weyl_vector: tuple[Fraction, ...]   # coefficients of rho
    highest_root: tuple[int, ...]
    kac_labels: tuple[int, ...]         # a_1..a_l (a_0 = 1)
    # form * form_den is integral; used for fast root arithmetic
    form_den: int = field(default=1, repr=False, compare=False)
    iform: tuple = field(default=(), repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    def inner(self, u, v) -> Fraction:
        return exact.bilinear(u, self.form, v)

    def scaled_pairings(self, y) -> list:
        """``form_den * (alpha, y)`` for every root, in ``roots`` order."""
        fy = exact.matvec(self.iform, y)
        return [sum(a * b for a, b in zip(r, fy)) for r in self.roots]

    def norm(self, u) -> Fraction:
        return self.inner(u, u)

    @property
    def simple_roots(self) -> list[tuple[int, ...]]:
        l = self.rank
        return [tuple(int(i == j) for j in range(l)) for i in range(l)]


def _generate(t: SimpleLieType) -> RootSystem:
    norms, edges = _simple_norms_and_edges(t)
    l = t.rank
    form = [[Fraction(0)] * l for _ in range(l)]
    for i in range(l):
        form[i][i] = Fraction(norms[i])
    for i, j in edges:
        # single bond between equal lengths, otherwise long-short bond
        w = -form[i][i] / 2 if form[i][i] == form[j][j] else Fraction(-1)
        form[i][j] = form[j][i] = w
    cartan = [[int(2 * form[i][j] / form[i][i]) for j in range(l)] for i in range(l)]
    for i in range(l):
        for j in range(l):
            assert 2 * form[i][j] / form[i][i] == cartan[i][j]

    # closure of the simple roots under the simple reflections
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        if len(seen) > 2 * l * (l + 1) + 240:
            raise AssertionError(f"{t}: root closure does not terminate")
        nxt = []
        for beta in frontier:
            for i in range(l):
                c = sum(beta[j] * cartan[i][j] for j in range(l))
                if c:
                    img = tuple(beta[j] - (c if j == i else 0) for j in range(l))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
        frontier = nxt
    roots = tuple(sorted(seen))
    positive = tuple(r for r in roots if all(x >= 0 for x in r))
    if len(positive) * 2 != len(roots):
        raise AssertionError(f"{t}: root closure is not symmetric")

    highest = max(positive, key=sum)
    rho = exact.solve_vec(form, [Fraction(form[i][i], 2) for i in range(l)])
    half_sum = [Fraction(sum(r[j] for r in positive), 2) for j in range(l)]
    if rho != half_sum:
        raise AssertionError(f"{t}: Weyl vector mismatch")
    den = exact.common_denominator(x for row in form for x in row)
    iform = tuple(tuple(int(x * den) for x in row) for row in form)
    return RootSystem(t, form, cartan, roots, positive, tuple(rho), highest, tuple(highest),
                      den, iform)


@lru_cache(maxsize=None)
def generate_roots(t: SimpleLieType) -> RootSystem:
    """Root system of ``t`` generated by reflection closure from the Cartan data."""
    return _generate(t)


@lru_cache(maxsize=None)
def dual_coxeter(t: SimpleLieType) -> int:
    """Dual Coxeter number from the Killing-form identity.

    ``sum_{alpha in Phi} (alpha, y)^2 = 2 h^vee (y, y)`` is evaluated for every
    simple root ``y``; all values must agree and be integral.
    """
    rs = generate_roots(t)
    values = set()
    for y in rs.simple_roots:
        total = Fraction(sum(p * p for p in rs.scaled_pairings(y)), rs.form_den ** 2)
        values.add(total / (2 * rs.norm(y)))
    if len(values) != 1:
        raise AssertionError(f"{t}: Killing identity not y-independent: {values}")
    h = values.pop()
    if h.denominator != 1:
        raise AssertionError(f"{t}: non-integral dual Coxeter number {h}")
    return int(h)


def dimension(t: SimpleLieType) -> int:
    return len(generate_roots(t).roots) + t.rank


@lru_cache(maxsize=None)
def lacing(t: SimpleLieType) -> int:
    norms = {generate_roots(t).norm(r) for r in generate_roots(t).simple_roots}
    ratio = max(norms) / min(norms)
    assert ratio.denominator == 1
    return int(ratio)


def weyl_norm_sq(t: SimpleLieType) -> Fraction:
    """``(rho, rho)``; equals ``dim * h^vee / 12`` (Freudenthal-de Vries)."""
    rs = generate_roots(t)
    return rs.norm(rs.weyl_vector)
