"""Exact lattice core: normal forms, duals, LLL and Fincke-Pohst enumeration.

Vectors are row vectors.  A lattice is given by a basis (rows, in ambient
coordinates) and an ambient symmetric form; its Gram matrix is
``basis * form * basis^T``.  No floating point is used anywhere: LLL runs on
the exact Gram matrix and the enumeration works with integer-scaled quadratic
forms, so every pruning decision is exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Optional, Sequence

from . import exact


class LatticeError(ValueError):
    pass


class Cancelled(RuntimeError):
    """Raised by enumerations when their cancellation token is set."""


# ----------------------------------------------------------------- normal forms

def hnf(matrix: Sequence[Sequence[int]]):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * matrix = H``.  Non-zero
    rows of ``H`` come first, pivots are positive and the entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = exact.identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Non-zero rows of the HNF: a canonical basis of the row lattice."""
    h, _ = hnf(rows)
    return [row for row in h if any(row)]


def snf(matrix: Sequence[Sequence[int]]):
    """Smith normal form ``(S, U, V)`` with ``S = U * matrix * V``.

    ``S`` is diagonal with non-negative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = exact.identity(m)
    v = exact.identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst -= q col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def elementary_divisors(matrix) -> list[int]:
    s, _, _ = snf(matrix)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


# ----------------------------------------------------------------- lattices

@dataclass
class IntegerLattice:
    """Lattice spanned by the rows of ``basis`` under the ambient ``form``.

    ``form=None`` means the standard form scaled by ``gram_scale``.
    """

    basis: list
    form: Optional[list] = None
    gram_scale: Fraction = Fraction(1)
    _gram: Optional[list] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.basis = [list(row) for row in self.basis]
        self.gram_scale = Fraction(self.gram_scale)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        if self.form is not None:
            return len(self.form)
        return len(self.basis[0]) if self.basis else 0

    def inner(self, u, v) -> Fraction:
        if self.form is None:
            return Fraction(exact.dot(u, v)) * self.gram_scale
        return Fraction(exact.bilinear(u, self.form, v))

    def norm(self, u) -> Fraction:
        return self.inner(u, u)

    @property
    def gram(self) -> list[list[Fraction]]:
        if self._gram is None:
            if self.form is None:
                g = [[Fraction(exact.dot(x, y)) * self.gram_scale for y in self.basis]
                     for x in self.basis]
            else:
                fb = [exact.vecmat(x, self.form) for x in self.basis]
                g = [[Fraction(exact.dot(fx, y)) for y in self.basis] for fx in fb]
            self._gram = g
        return self._gram

    def det(self) -> Fraction:
        return exact.det(self.gram)

    def to_ambient(self, coords) -> list:
        if not self.basis:
            return [Fraction(0)] * self.dim
        return exact.vecmat(list(coords), self.basis)

    def coordinates(self, vector) -> Optional[list[Fraction]]:
        """Rational coordinates of ``vector`` if it lies in the span, else None."""
        if not self.basis:
            return [] if not any(vector) else None
        rhs = [self.inner(b, vector) for b in self.basis]
        coords = exact.solve_vec(self.gram, rhs)
        back = self.to_ambient(coords)
        if any(Fraction(x) != Fraction(y) for x, y in zip(back, vector)):
            return None
        return coords

    def contains(self, vector) -> bool:
        c = self.coordinates(vector)
        return c is not None and exact.is_integral(c)

    def is_integral(self) -> bool:
        return exact.is_integral(x for row in self.gram for x in row)

    def is_even(self) -> bool:
        return self.is_integral() and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def to_json(self) -> dict:
        if self.form is not None:
            raise LatticeError("only lattices with a scalar ambient form serialise to JSON")
        return {"basis": [[int(x) for x in row] for row in self.basis],
                "gram_scale": str(self.gram_scale)}

    @classmethod
    def from_json(cls, doc: dict) -> "IntegerLattice":
        basis = doc["basis"]
        if any(Fraction(x).denominator != 1 for row in basis for x in row):
            raise LatticeError("basis entries must be integers")
        lat = cls([[int(x) for x in row] for row in basis],
                  gram_scale=Fraction(doc.get("gram_scale", 1)))
        if exact.rank(lat.basis) != lat.rank:
            raise LatticeError("basis rows are linearly dependent")
        return lat


@dataclass
class CosetVector:
    lattice: IntegerLattice
    offset: list  # ambient coordinates


def kernel_lattice(matrix: Sequence[Sequence[int]], form=None,
                   gram_scale=Fraction(1)) -> IntegerLattice:
    """Saturated lattice ``{x in Z^n : matrix x = 0}`` (HNF basis)."""
    n = len(matrix[0]) if matrix else 0
    if not matrix:
        return IntegerLattice(exact.identity(n), form, gram_scale)
    h, u = hnf(exact.transpose(matrix))
    ker = [u[i] for i in range(len(h)) if not any(h[i])]
    if ker:
        ker = hnf_basis(ker)
    return IntegerLattice(ker, form, gram_scale)


def dual_and_discriminant(lat: IntegerLattice):
    """Dual basis (ambient coordinates, rational) and ``|L'/L| = det(gram)``.

    The dual is taken inside the span of ``lat``.  A non-integral determinant
    is returned as a Fraction; callers decide whether that is acceptable.
    """
    if lat.rank == 0:
        return [], Fraction(1)
    ginv = exact.inverse(lat.gram)
    dual = [exact.vecmat(row, lat.basis) for row in ginv]
    d = exact.det(lat.gram)
    return dual, d


def discriminant_order(lat: IntegerLattice) -> int:
    _, d = dual_and_discriminant(lat)
    if d.denominator != 1:
        raise LatticeError(f"non-integral determinant {d}: lattice is not integral")
    return int(d)


# ----------------------------------------------------------------- LLL

def lll_gram(gram, delta=Fraction(3, 4)):
    """Exact LLL reduction of a positive-definite Gram matrix.

    Returns ``(T, G')`` with ``T`` unimodular and ``G' = T G T^T`` reduced.
    The new basis vectors are ``T`` times the old ones.
    """
    n = len(gram)
    g0 = exact.to_fraction_matrix(gram)
    t = exact.identity(n)
    if n == 0:
        return t, []
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n

    def ip(i, j):
        ti, tj = t[i], t[j]
        return sum(ti[a] * sum(g0[a][c] * tj[c] for c in range(n) if tj[c])
                   for a in range(n) if ti[a])

    def red(k, l):
        if abs(mu[k][l]) * 2 > 1:
            q = round(mu[k][l])
            t[k] = [x - q * y for x, y in zip(t[k], t[l])]
            mu[k][l] -= q
            for i in range(l):
                mu[k][i] -= q * mu[l][i]

    def swap(k):
        t[k], t[k - 1] = t[k - 1], t[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        bb = b[k] + m * m * b[k - 1]
        if bb == 0:
            raise LatticeError("Gram matrix is not positive definite")
        mu[k][k - 1] = m * b[k - 1] / bb
        b[k] = b[k - 1] * b[k] / bb
        b[k - 1] = bb
        for i in range(k + 1, kmax + 1):
            x = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * x
            mu[i][k - 1] = x + mu[k][k - 1] * mu[i][k]

    b[0] = g0[0][0]
    if b[0] <= 0:
        raise LatticeError("Gram matrix is not positive definite")
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k):
                s = ip(k, j)
                for i in range(j):
                    s -= mu[j][i] * mu[k][i] * b[i]
                mu[k][j] = s / b[j]
            s = ip(k, k)
            for j in range(k):
                s -= mu[k][j] ** 2 * b[j]
            b[k] = s
            if b[k] <= 0:
                raise LatticeError("Gram matrix is not positive definite")
        red(k, k - 1)
        if b[k] < (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    new = exact.matmul(exact.matmul(t, g0), exact.transpose(t))
    return t, new


# ----------------------------------------------------------------- enumeration

class _Enumerator:
    """Integer-exact Fincke-Pohst over a rational positive-definite Gram matrix.

    Enumerates ``y = x + shift`` (``x`` integral) with ``y G y^T <= bound``.
    With denominator ``T`` of the shift, ``u = T y`` runs over integer
    progressions ``u_i = T shift_i (mod T)``.  Writing ``G = L D L^T`` with
    ``L`` unit lower triangular, the level-``j`` contribution is
    ``D_j (u_j + sum_{i>j} L_ij u_i)^2``; after multiplying by a global integer
    ``M`` every contribution is an integer, so bounds are compared exactly.
    """

    def __init__(self, gram, shift=None):
        k = self.k = len(gram)
        g = exact.to_fraction_matrix(gram)
        # LDL^T: G_ij = sum_l L_il D_l L_jl
        low = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        d = [Fraction(0)] * k
        for j in range(k):
            d[j] = g[j][j] - sum(low[j][l] ** 2 * d[l] for l in range(j))
            if d[j] <= 0:
                raise LatticeError("Gram matrix is not positive definite")
            for i in range(j + 1, k):
                low[i][j] = (g[i][j] - sum(low[i][l] * low[j][l] * d[l] for l in range(j))) / d[j]
        shift = [Fraction(0)] * k if shift is None else [Fraction(x) for x in shift]
        self.tden = exact.common_denominator(shift)
        self.res = [int(x * self.tden) % self.tden for x in shift]
        # z_j = u_j + sum_{i>j} low[i][j] u_i ; den_j clears that row
        self.den = [exact.common_denominator(low[i][j] for i in range(j + 1, k)) for j in range(k)]
        self.coef = [[int(low[i][j] * self.den[j]) for i in range(k)] for j in range(k)]
        scale = 1
        for j in range(k):
            q = d[j].denominator * self.den[j] ** 2
            scale = scale * q // gcd(scale, q)
        self.scale = scale
        self.weight = [int(d[j] * scale / self.den[j] ** 2) for j in range(k)]
        for j in range(k):
            assert Fraction(self.weight[j]) == d[j] * scale / self.den[j] ** 2

    def scaled_bound(self, bound) -> int:
        """Integer budget equivalent to ``norm <= bound``."""
        return (Fraction(bound) * self.tden ** 2 * self.scale).__floor__()

    def norm_of(self, scaled: int) -> Fraction:
        return Fraction(scaled, self.tden ** 2 * self.scale)

    def run(self, budget: int, visit: Callable, nonneg_first=False, shrink=None,
            cancel: Optional[threading.Event] = None):
        """Depth-first enumeration; ``visit(u, used)`` is called on each leaf.

        ``u`` are the integer-scaled coordinates (``T * y``), ``used`` the scaled
        norm.  If ``shrink`` is given it is called after each visit and returns
        the new (never larger) budget.  ``nonneg_first`` restricts to one vector
        of each ``{v, -v}`` pair (shift must be zero).
        """
        k, T = self.k, self.tden
        if k == 0:
            visit([], 0)
            return
        u = [0] * k
        coef, den, weight, res = self.coef, self.den, self.weight, self.res
        rem = [0] * (k + 1)
        iters: list = [None] * k
        cval = [0] * k
        state = {"budget": budget}
        counter = 0

        def candidates(j, r):
            c = sum(coef[j][i] * u[i] for i in range(j + 1, k) if u[i]) if j < k - 1 else 0
            cval[j] = c
            s = isqrt(r // weight[j])
            dj = den[j]
            lo = -((c + s) // dj)            # ceil((-c - s)/dj)
            hi = (s - c) // dj               # floor((s - c)/dj)
            if nonneg_first and all(u[i] == 0 for i in range(j + 1, k)):
                lo = max(lo, 0)
            # first value >= lo in the residue class
            start = lo + ((res[j] - lo) % T)
            if start > hi:
                return iter(())
            # zigzag order from the centre for early good leaves
            centre_num = -c
            vals = list(range(start, hi + 1, T))
            vals.sort(key=lambda x: (abs(dj * x - centre_num), x))
            return iter(vals)

        j = k - 1
        rem[k] = budget
        iters[j] = candidates(j, rem[k])
        while True:
            if cancel is not None:
                counter += 1
                if counter & 0xFFF == 0 and cancel.is_set():
                    raise Cancelled("enumeration cancelled")
            nxt = next(iters[j], None)
            if nxt is None:
                j += 1
                if j == k:
                    return
                continue
            u[j] = nxt
            z = den[j] * nxt + cval[j]
            used = weight[j] * z * z
            r = rem[j + 1] - used
            if r < 0:
                # values were sorted by |z|, so all later ones are worse
                iters[j] = iter(())
                continue
            if j == 0:
                visit(list(u), state["budget"] - r)
                if shrink is not None:
                    nb = shrink()
                    if nb < state["budget"]:
                        delta = state["budget"] - nb
                        state["budget"] = nb
                        for lvl in range(1, k + 1):
                            rem[lvl] -= delta
                continue
            rem[j] = r
            j -= 1
            iters[j] = candidates(j, r)


def _lll_frame(gram, use_lll):
    if use_lll and len(gram) > 1:
        t, g = lll_gram(gram)
    else:
        t, g = exact.identity(len(gram)), exact.to_fraction_matrix(gram)
    return t, g


def short_vectors_gram(gram, bound, both_signs=False, use_lll=True,
                       cancel: Optional[threading.Event] = None):
    """Nonzero integer coordinate vectors ``x`` with ``x G x^T <= bound``.

    Returns a sorted list of ``(coords, norm)``.  Up to sign, the representative
    has its first non-zero coordinate positive.
    """
    k = len(gram)
    if k == 0:
        return []
    t, g = _lll_frame(gram, use_lll)
    en = _Enumerator(g)
    out = []

    def visit(u, used):
        if any(u):
            out.append((u, used))

    en.run(en.scaled_bound(bound), visit, nonneg_first=not both_signs, cancel=cancel)
    result = []
    for u, used in out:
        x = exact.vecmat(u, t)
        if not both_signs:
            first = next(c for c in x if c)
            if first < 0:
                x = [-c for c in x]
        result.append((tuple(int(c) for c in x), en.norm_of(used)))
    result.sort()
    return result


def short_vectors(lat: IntegerLattice, bound, both_signs=False, use_lll=True,
                  cancel: Optional[threading.Event] = None):
    """Short vectors of ``lat`` as ``(ambient vector, norm)``, sorted by coordinates."""
    res = short_vectors_gram(lat.gram, bound, both_signs, use_lll, cancel)
    return [(tuple(lat.to_ambient(x)), n) for x, n in res]


def count_short_vectors(gram, bound, use_lll=True, by_norm=False,
                        cancel: Optional[threading.Event] = None):
    """Count nonzero vectors of norm <= bound (both signs), without storing them."""
    if not gram:
        return {} if by_norm else 0
    _, g = _lll_frame(gram, use_lll)
    en = _Enumerator(g)
    counts: dict = {}

    def visit(u, used):
        if any(u):
            counts[used] = counts.get(used, 0) + 1

    en.run(en.scaled_bound(bound), visit, nonneg_first=True, cancel=cancel)
    if by_norm:
        return {en.norm_of(s): 2 * c for s, c in sorted(counts.items())}
    return 2 * sum(counts.values())


def closest_vectors_gram(gram, target, use_lll=True, all_minimal=True,
                         cancel: Optional[threading.Event] = None):
    """Minimise ``(x + target) G (x + target)^T`` over integer ``x``.

    Returns ``(min_norm, [y = x + target, ...])`` with all minimisers when
    ``all_minimal`` (sorted lexicographically), else one of them.
    """
    k = len(gram)
    target = [Fraction(c) for c in target]
    if k == 0:
        return Fraction(0), [[]]
    t, g = _lll_frame(gram, use_lll)
    tinv = exact.inverse(t)
    # y = y' t  (rows) so the shifted target in the reduced frame is target t^{-1}
    tgt = exact.vecmat(target, tinv)
    frac = [c - (c.numerator // c.denominator) for c in tgt]
    en = _Enumerator(g, frac)
    T = en.tden
    # Babai nearest plane gives an initial exact upper bound
    babai = _babai(g, frac)
    start = Fraction(exact.bilinear(babai, g, babai))
    budget = en.scaled_bound(start)
    best = {"val": budget, "sols": []}

    def visit(u, used):
        if used < best["val"]:
            best["val"] = used
            best["sols"] = [list(u)]
        elif used == best["val"]:
            best["sols"].append(list(u))

    def shrink():
        if all_minimal or not best["sols"]:
            return best["val"]
        return best["val"] - 1

    en.run(budget, visit, shrink=shrink, cancel=cancel)
    if not best["sols"]:
        raise AssertionError("closest vector search lost the Babai point")
    sols = []
    for u in best["sols"]:
        y_red = [Fraction(c, T) for c in u]
        y = exact.vecmat(y_red, t)
        sols.append(y)
    sols.sort()
    if not all_minimal:
        sols = sols[:1]
    return en.norm_of(best["val"]), sols


def _babai(gram, shift):
    """Nearest-plane rounding: a point ``x + shift`` (x integral) near the origin."""
    k = len(gram)
    low = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    d = [Fraction(0)] * k
    for j in range(k):
        d[j] = gram[j][j] - sum(low[j][l] ** 2 * d[l] for l in range(j))
        for i in range(j + 1, k):
            low[i][j] = (gram[i][j] - sum(low[i][l] * low[j][l] * d[l] for l in range(j))) / d[j]
    y = [Fraction(0)] * k
    for j in range(k - 1, -1, -1):
        c = sum(low[i][j] * y[i] for i in range(j + 1, k))
        # choose y_j = shift_j + integer minimising |y_j + c|
        x = round(-c - shift[j])
        y[j] = shift[j] + x
    return y


def min_coset_norm(coset: CosetVector, use_lll=True, all_witnesses=False,
                   cancel: Optional[threading.Event] = None):
    """Exact ``min { <a, a> : a in offset + L }`` with a witness (or all witnesses).

    The offset may leave the span of ``L``; its orthogonal part contributes a
    constant to every norm.
    """
    lat = coset.lattice
    h = [Fraction(x) for x in coset.offset]
    if lat.rank == 0:
        n = lat.norm(h)
        return (n, [h]) if all_witnesses else (n, h)
    rhs = [lat.inner(b, h) for b in lat.basis]
    tcoords = exact.solve_vec(lat.gram, rhs)
    inside = lat.to_ambient(tcoords)
    perp = [a - b for a, b in zip(h, inside)]
    pnorm = lat.norm(perp)
    m, sols = closest_vectors_gram(lat.gram, tcoords, use_lll, all_minimal=all_witnesses,
                                   cancel=cancel)
    wit = [[p + a for p, a in zip(perp, lat.to_ambient(y))] for y in sols]
    wit.sort()
    if all_witnesses:
        return pnorm + m, wit
    return pnorm + m, wit[0]
