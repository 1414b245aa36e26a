"""Dimension-formula coefficients, orbifold bounds, vacuum anomaly and type.

The coefficient cache is an ``lru_cache``; it is safe for concurrent use from
threads (CPython's ``lru_cache`` is thread-safe, at worst computing a value
twice).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import exact
from .kacauto import (CycleShape, InnerAutomorphism, cycle_shape, divisors, eigenspace_dims,
                      vsf_distance_sum)


@dataclass(frozen=True)
class EisensteinCoefficients:
    n: int
    coeffs: dict  # divisor -> Fraction

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d]

    def check(self) -> bool:
        return all(sum(gcd(t, d) * c for d, c in self.coeffs.items()) == Fraction(self.n, t)
                   for t in divisors(self.n))


@lru_cache(maxsize=None)
def eisenstein_coeffs(n: int) -> EisensteinCoefficients:
    """Solve ``sum_{d|n} gcd(t, d) c(d) = n/t`` for all divisors ``t`` of ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    divs = divisors(n)
    a = [[gcd(t, d) for d in divs] for t in divs]
    b = [Fraction(n, t) for t in divs]
    sol = exact.solve_vec(a, b)
    result = EisensteinCoefficients(n, dict(zip(divs, sol)))
    if not result.check():
        raise AssertionError(f"coefficient system for n={n} not satisfied")
    return result


def fixed_dim(shape: CycleShape, d: int) -> int:
    """Dimension of the fixed space of ``g^d``."""
    return sum(b * gcd(t, d) for t, b in shape.terms)


class ShapeOrderError(ValueError):
    pass


def dimension_bound(shape: CycleShape, n: int) -> Fraction:
    """``24 + n sum b_t/t``, cross-checked against the divisor-sum form."""
    if n % shape.order:
        raise ShapeOrderError(f"shape order {shape.order} does not divide n={n}")
    closed = 24 + n * shape.sum_b_over_t()
    c = eisenstein_coeffs(n)
    via_coeffs = 24 + sum(c[d] * fixed_dim(shape, d) for d in divisors(n))
    if closed != via_coeffs:
        raise AssertionError(f"bound mismatch for {shape}, n={n}: {closed} != {via_coeffs}")
    return closed


def vacuum_anomaly(shape: CycleShape) -> Fraction:
    return sum((b * (Fraction(t) - Fraction(1, t)) for t, b in shape.terms), Fraction(0)) / 24


class InvalidWeightError(ValueError):
    pass


def automorphism_type(n: int, rho) -> int:
    """``n^2 rho mod n``."""
    v = Fraction(rho) * n * n
    if v.denominator != 1:
        raise InvalidWeightError(f"n^2 rho = {v} is not integral for n={n}")
    return int(v) % n


def vsf_bound(a: InnerAutomorphism, n: int) -> Fraction:
    """``24 + 12 n sum_i h_i |delta_i - rho_i/h_i|^2``, checked against the shape bound."""
    m = a.order
    if n % m:
        raise ShapeOrderError(f"automorphism order {m} does not divide n={n}")
    shape = cycle_shape(eigenspace_dims(a), m)
    value = 24 + 12 * n * vsf_distance_sum(a)
    other = dimension_bound(shape, n)
    if value != other:
        raise AssertionError(f"very strange bound {value} != shape bound {other}")
    return value
