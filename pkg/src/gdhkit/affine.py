"""Affine structures ``g_{1,k_1} ... g_{r,k_r}`` and the weight-one trace identity.

A structure satisfies the identity when every component has the same ratio
``h^vee / k`` and that ratio equals ``(dim - 24) / 24``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable

from .rootsys import SimpleLieType, all_types, dimension, dual_coxeter, lacing

MAX_RANK = 24


class RatioMismatchError(ValueError):
    pass


class TraceIdentityError(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class AffineStructure:
    """Multiset of ``(type, level)`` pairs, stored sorted."""

    components: tuple

    def __init__(self, components: Iterable):
        comps = []
        for t, k in components:
            t = t if isinstance(t, SimpleLieType) else SimpleLieType.parse(t)
            if int(k) < 1:
                raise ValueError(f"level must be a positive integer, got {k}")
            comps.append((t, int(k)))
        if not comps:
            raise ValueError("an affine structure needs at least one component")
        comps.sort(key=lambda c: (c[0].family, c[0].rank, c[1]))
        object.__setattr__(self, "components", tuple(comps))
        if self.rank > MAX_RANK:
            raise ValueError(f"total rank {self.rank} exceeds {MAX_RANK}")

    @property
    def rank(self) -> int:
        return sum(t.rank for t, _ in self.components)

    def grouped(self) -> list[tuple[SimpleLieType, int, int]]:
        """``(type, level, multiplicity)`` in canonical order."""
        out: list = []
        for t, k in self.components:
            if out and out[-1][0] == t and out[-1][1] == k:
                out[-1] = (t, k, out[-1][2] + 1)
            else:
                out.append((t, k, 1))
        return out

    # --- text forms
    def __str__(self) -> str:
        return ", ".join(f"{t}@{k}" + (f" x{c}" if c > 1 else "") for t, k, c in self.grouped())

    def to_json(self) -> list:
        return [[t.family, t.rank, k, c] for t, k, c in self.grouped()]

    def pretty(self) -> str:
        """Subscript/superscript style, largest components first."""
        groups = sorted(self.grouped(),
                        key=lambda g: (-dimension(g[0]), g[0].family, -g[0].rank, g[1]))
        return "".join(f"{t.family}_{{{t.rank},{k}}}" + _sup(c) for t, k, c in groups)

    @classmethod
    def parse(cls, text: str) -> "AffineStructure":
        """Parse ``"A1@2 x16, C3@8"`` or ``"A_{1,2}^{16}C_{3,8}"`` forms."""
        text = text.strip()
        comps: list = []
        if "@" in text:
            for part in text.split(","):
                m = re.fullmatch(r"\s*([A-Ga-g]\d+)@(\d+)(?:\s*x(\d+))?\s*", part)
                if not m:
                    raise ValueError(f"cannot parse component {part!r}")
                comps += [(SimpleLieType.parse(m.group(1)), int(m.group(2)))] * int(m.group(3) or 1)
            return cls(comps)
        pat = re.compile(r"([A-G])_\{?(\d+),(\d+)\}?(?:\^\{?(\d+)\}?)?")
        pos = 0
        while pos < len(text):
            m = pat.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse affine structure {text!r}")
            t = SimpleLieType(m.group(1), int(m.group(2)))
            comps += [(t, int(m.group(3)))] * int(m.group(4) or 1)
            pos = m.end()
        return cls(comps)

    @classmethod
    def from_json(cls, rows) -> "AffineStructure":
        comps = []
        for fam, rank, level, count in rows:
            comps += [(SimpleLieType(fam, int(rank)), int(level))] * int(count)
        return cls(comps)


def _sup(c: int) -> str:
    if c == 1:
        return ""
    return f"^{c}" if c < 10 else f"^{{{c}}}"


def total_dim(s: AffineStructure) -> int:
    return sum(dimension(t) for t, _ in s.components)


def ratio(s: AffineStructure) -> Fraction:
    """The common ``h^vee/k``; raises if the components disagree or the
    identity with the dimension fails."""
    values = {Fraction(dual_coxeter(t), k) for t, k in s.components}
    if len(values) != 1:
        raise RatioMismatchError("ratio mismatch: " + ", ".join(str(v) for v in sorted(values)))
    r = values.pop()
    if r != Fraction(total_dim(s) - 24, 24):
        raise TraceIdentityError(
            f"trace identity violated: h/k = {r} but (dim-24)/24 = {Fraction(total_dim(s) - 24, 24)}")
    return r


def satisfies_identity(s: AffineStructure) -> bool:
    try:
        ratio(s)
    except (RatioMismatchError, TraceIdentityError):
        return False
    return True


def order_lcm(s: AffineStructure) -> int:
    return reduce(_lcm, (lacing(t) * dual_coxeter(t) for t, _ in s.components), 1)


def level_lcm(s: AffineStructure) -> int:
    return reduce(_lcm, (lacing(t) * k for t, k in s.components), 1)


def candidate_components(max_rank: int = MAX_RANK) -> dict[Fraction, list]:
    """Admissible ``(type, level)`` pairs grouped by ratio ``h/k``.

    A component fits only if ``24 h/k`` is an integer (the total dimension is
    ``24 (1 + h/k)``) and its own dimension does not exceed that total.
    """
    pools: dict[Fraction, list] = {}
    for t in all_types(max_rank):
        h, d = dual_coxeter(t), dimension(t)
        for k in range(1, 24 * h + 1):
            if (24 * h) % k:
                continue
            r = Fraction(h, k)
            if d > 24 * (1 + r):
                continue
            pools.setdefault(r, []).append((t, k))
    return pools


def enumerate_eq1(max_rank: int = MAX_RANK) -> list[AffineStructure]:
    """All structures of rank at most ``max_rank`` satisfying the identity."""
    results = set()
    for r, pool in candidate_components(max_rank).items():
        target = 24 * (1 + r)
        if target.denominator != 1:
            continue
        items = [(dimension(t), t.rank, (t, k)) for t, k in pool]
        items.sort(key=lambda x: (-x[0], x[1], x[2][0], x[2][1]))
        chosen: list = []

        def search(start, dim_left, rank_left):
            if dim_left == 0:
                results.add(AffineStructure(chosen))
                return
            for idx in range(start, len(items)):
                d, rk, comp = items[idx]
                if d <= dim_left and rk <= rank_left:
                    chosen.append(comp)
                    search(idx, dim_left - d, rank_left - rk)
                    chosen.pop()

        search(0, int(target), max_rank)
    out = sorted(results, key=sort_key)
    for s in out:
        ratio(s)
    return out


def sort_key(s: AffineStructure):
    return (total_dim(s), str(s))
