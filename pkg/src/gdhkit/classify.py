"""Candidate pairs of affine structures and Co0 classes, and the orbit
enumeration that counts automorphisms of the Leech lattice VOA over a class.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd, prod
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import exact
from .affine import AffineStructure, enumerate_eq1, level_lcm, order_lcm
from .dimform import automorphism_type, vacuum_anomaly
from .kacauto import CycleShape
from .lattice import CosetVector, IntegerLattice, min_coset_norm, snf
from .leech import (LatticeIsometry, LeechAutomorphism, cycle_shape_of, doubling_vector,
                    fixed_lattice)

DEFAULT_CAP = 10 ** 8


class DataError(ValueError):
    pass


# ----------------------------------------------------------------- data files

def data_dir() -> Path:
    env = os.environ.get("GDHKIT_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("gdhkit") / "data"))


@dataclass(frozen=True)
class Co0Class:
    name: str
    shape: CycleShape
    fixed_rank: int
    order: int = 0
    centralizer_order: int = 0

    @property
    def vacuum_anomaly(self) -> Fraction:
        return vacuum_anomaly(self.shape)


def load_co0_table(path=None) -> list[Co0Class]:
    path = Path(path) if path else data_dir() / "co0_classes.json"
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read class table {path}: {exc}") from exc
    rows = doc["classes"] if isinstance(doc, dict) else doc
    out = []
    for row in rows:
        try:
            shape = CycleShape.of({int(t): int(b) for t, b in row["shape"].items()})
            name = str(row["name"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"malformed class entry {row!r}") from exc
        if shape.degree != 24:
            raise DataError(f"class {name}: sum t*b_t = {shape.degree}, expected 24")
        rank = shape.fixed_rank
        if rank < 0 or rank % 2:
            raise DataError(f"class {name}: fixed-lattice rank {rank} is not even and non-negative")
        order = int(row.get("order", shape.order))
        if order % shape.order:
            raise DataError(f"class {name}: order {order} incompatible with shape {shape}")
        out.append(Co0Class(name, shape, rank, order, int(row.get("centralizer_order", 0))))
    return out


def find_class(classes: Sequence[Co0Class], key: str) -> Co0Class:
    """Look a class up by table name (case-insensitive) or by frame shape."""
    for c in classes:
        if c.name.lower() == key.strip().lower():
            return c
    try:
        shape = CycleShape.parse(key)
    except ValueError:
        shape = None
    if shape is not None:
        hits = [c for c in classes if c.shape == shape]
        if len(hits) == 1:
            return hits[0]
        if len(hits) > 1:
            raise DataError(f"shape {shape} matches several classes: "
                            + ", ".join(c.name for c in hits))
    raise DataError(f"unknown class {key!r}")


def load_isometry(path) -> LatticeIsometry:
    doc = json.loads(Path(path).read_text())
    return LatticeIsometry.from_json(doc)


@dataclass
class ClassData:
    name: str
    shape: CycleShape
    isometry: LatticeIsometry
    centralizer: list  # LatticeIsometry generators
    centralizer_order: int = 0


def load_class_data(key: str, path=None, classes=None) -> ClassData:
    """Isometry and centralizer generators for a class from the data directory
    (``centralizers/<name>.json``) or an explicit file."""
    classes = classes if classes is not None else load_co0_table()
    cls = find_class(classes, key)
    path = Path(path) if path else data_dir() / "centralizers" / f"{cls.name}.json"
    if not path.exists():
        raise DataError(f"data unavailable: no centralizer file for class {cls.name} ({path})")
    doc = json.loads(path.read_text())
    if doc.get("class") not in (None, cls.name):
        raise DataError(f"{path} describes class {doc.get('class')}, not {cls.name}")
    iso = LatticeIsometry.from_json({"name": cls.name, "matrix": doc["matrix"]})
    shape = cycle_shape_of(iso)
    if shape != cls.shape:
        raise DataError(f"{path}: matrix has shape {shape}, class {cls.name} has {cls.shape}")
    gens = []
    for i, m in enumerate(doc["generators"]):
        tau = LatticeIsometry.from_json({"name": f"{cls.name}.c{i}", "matrix": m})
        if exact.matmul(tau.matrix, iso.matrix) != exact.matmul(iso.matrix, tau.matrix):
            raise DataError(f"{path}: generator {i} does not commute with the class representative")
        gens.append(tau)
    return ClassData(cls.name, shape, iso, gens, int(doc.get("centralizer_order", 0)))


def load_reference_tables(path=None) -> dict:
    path = Path(path) if path else data_dir() / "reference_tables.json"
    return json.loads(Path(path).read_text())


# ----------------------------------------------------------------- candidate pairs

@dataclass(frozen=True)
class CandidatePair:
    structure: AffineStructure
    co0_class: Co0Class
    n: int


def candidate_pairs(structures: Optional[Iterable[AffineStructure]] = None,
                    classes: Optional[Sequence[Co0Class]] = None) -> list[CandidatePair]:
    """Pairs satisfying: equal ranks, class order dividing ``n``, and
    ``1/(1 - rho) = level lcm``."""
    structures = list(structures) if structures is not None else enumerate_eq1()
    classes = classes if classes is not None else load_co0_table()
    useful = [c for c in classes if c.fixed_rank > 0 and c.vacuum_anomaly < 1]
    pairs = []
    for s in structures:
        if s.rank % 2:
            continue
        n = order_lcm(s)
        if n % 2 and any(t.family != "A" or t.rank % 2 for t, _ in s.components):
            continue
        lv = level_lcm(s)
        for c in useful:
            if c.fixed_rank == s.rank and n % c.order == 0 and 1 / (1 - c.vacuum_anomaly) == lv:
                pairs.append(CandidatePair(s, c, n))
    seen = {}
    for p in pairs:
        if p.structure in seen:
            raise AssertionError(f"structure {p.structure} occurs in more than one pair")
        seen[p.structure] = p
    return pairs


def filter_counts(classes: Sequence[Co0Class]) -> dict:
    positive = [c for c in classes if c.fixed_rank > 0]
    return {"classes": len(classes), "positive_rank": len(positive),
            "anomaly_below_one": sum(1 for c in positive if c.vacuum_anomaly < 1)}


def realised_keys(tables: Optional[dict] = None) -> set:
    tables = tables or load_reference_tables()
    return {(AffineStructure.parse(r["structure"]), str(CycleShape.parse(r["shape"])))
            for r in tables["semisimple_cases"]}


def is_spurious(pair: CandidatePair, realised: set) -> bool:
    return (pair.structure, str(pair.co0_class.shape)) not in realised


# ----------------------------------------------------------------- finite quotients

@dataclass
class FiniteQuotient:
    """``Z^r / (row span of relations)`` in Smith coordinates.

    ``y`` (row vector) maps to ``z = y V mod d``; only coordinates with
    ``d_i > 1`` are kept.
    """

    moduli: list
    v: list        # r x r unimodular
    vinv: list
    keep: list     # indices of the non-trivial moduli

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]]) -> "FiniteQuotient":
        r = len(relations[0]) if relations else 0
        s, _, v = snf(relations)
        diag = [s[i][i] if i < len(s) else 0 for i in range(r)]
        if any(d == 0 for d in diag):
            raise DataError("relations do not have full rank: quotient is infinite")
        vinv = [[int(x) for x in row] for row in exact.inverse(v)]
        keep = [i for i, d in enumerate(diag) if d > 1]
        return cls([diag[i] for i in keep], v, vinv, keep)

    def full_moduli(self) -> list:
        out = [1] * len(self.v)
        for i, d in zip(self.keep, self.moduli):
            out[i] = d
        return out

    @property
    def size(self) -> int:
        return prod(self.moduli)

    def encode(self, y: Sequence[int]) -> tuple:
        yv = exact.vecmat(list(y), self.v)
        return tuple(int(yv[i]) % d for i, d in zip(self.keep, self.moduli))

    def decode(self, z: Sequence[int]) -> list[int]:
        full = [0] * len(self.v)
        for i, x in zip(self.keep, z):
            full[i] = x
        return [int(c) for c in exact.vecmat(full, self.vinv)]

    def affine_map(self, t_mat, shift) -> tuple[list, list]:
        """Action ``y -> y T + b`` rewritten in Smith coordinates."""
        a = exact.matmul(exact.matmul(self.vinv, t_mat), self.v)
        bv = exact.vecmat(list(shift), self.v)
        # well-definedness: relations d_i e_i must map into the relation lattice;
        # dropped coordinates (d = 1) are relations too, so they are checked as well
        full = self.full_moduli()
        for i, di in enumerate(full):
            for j, dj in enumerate(full):
                if (di * int(a[i][j])) % dj:
                    raise DataError("generator does not preserve the quotient")
        a_k = [[int(a[i][j]) for j in self.keep] for i in self.keep]
        b_k = [int(bv[j]) % d for j, d in zip(self.keep, self.moduli)]
        return a_k, b_k


@dataclass
class OrbitResult:
    moduli: list
    representatives: list   # tuples, ascending in mixed-radix order
    sizes: list

    @property
    def total(self) -> int:
        return sum(self.sizes)


def _radix(moduli):
    w, weights = 1, []
    for d in reversed(moduli):
        weights.append(w)
        w *= d
    return list(reversed(weights))


def affine_orbits(moduli: Sequence[int], generators: Sequence[tuple],
                  cap: int = DEFAULT_CAP, chunk: int = 1 << 20) -> OrbitResult:
    """Orbits of the group generated by affine maps ``z -> z A + b (mod d)``.

    Each generator is a pair ``(A, b)`` in the coordinates of
    ``Z_{d_1} x ... x Z_{d_k}``.  The representative of an orbit is its least
    element in mixed-radix order (first coordinate most significant).
    """
    moduli = [int(d) for d in moduli]
    n = prod(moduli)
    if n > cap:
        raise DataError(f"quotient has {n} elements, above the cap of {cap}; "
                        "use a distributed workflow for this case")
    k = len(moduli)
    for a, b in generators:
        for i in range(k):
            for j in range(k):
                if (moduli[i] * int(a[i][j])) % moduli[j]:
                    raise DataError("generator does not preserve the quotient")
    if k == 0:
        return OrbitResult([], [()], [1])
    weights = np.array(_radix(moduli), dtype=np.int64)
    mods = np.array(moduli, dtype=np.int64)
    rows, cols = [], []
    for a, b in generators:
        am = np.array([[int(x) for x in row] for row in a], dtype=np.int64)
        bm = np.array([int(x) for x in b], dtype=np.int64)
        for start in range(0, n, chunk):
            idx = np.arange(start, min(n, start + chunk), dtype=np.int64)
            digits = (idx[:, None] // weights[None, :]) % mods[None, :]
            img = (digits @ am + bm[None, :]) % mods[None, :]
            rows.append(idx)
            cols.append(img @ weights)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n)).tocsr()
        ncomp, labels = connected_components(graph, directed=True, connection="weak")
    else:
        ncomp, labels = n, np.arange(n)
    first = np.full(ncomp, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n, dtype=np.int64))
    sizes = np.bincount(labels, minlength=ncomp)
    order = np.argsort(first)
    reps, out_sizes = [], []
    for comp in order:
        x = int(first[comp])
        reps.append(tuple(int(x // w) % d for w, d in zip(weights.tolist(), moduli)))
        out_sizes.append(int(sizes[comp]))
    return OrbitResult(moduli, reps, out_sizes)


def orbit_enumerate(generators: Sequence, s_shift: Sequence, space: FiniteQuotient,
                    cap: int = DEFAULT_CAP) -> OrbitResult:
    """Orbits of the shifted action ``y -> y T + (s T - s)`` on ``space``.

    ``generators`` are integer matrices acting on row vectors of ``Z^r``;
    ``s_shift`` is a rational vector whose shifts ``s T - s`` must be integral.
    """
    gens = []
    s = [Fraction(x) for x in s_shift]
    for t in generators:
        st = exact.vecmat(s, t)
        b = [x - y for x, y in zip(st, s)]
        if not exact.is_integral(b):
            raise DataError("shifted action is not integral on the quotient")
        gens.append(space.affine_map(t, [int(x) for x in b]))
    return affine_orbits(space.moduli, gens, cap)


# ----------------------------------------------------------------- Leech pipeline

def _restrict(tau: LatticeIsometry, fl: IntegerLattice):
    """Matrix ``T`` with ``tau(F_j) = sum_k T[j][k] F_k`` for the fixed-lattice basis."""
    images = [exact.matvec(tau.matrix, row) for row in fl.basis]
    t = []
    for img in images:
        c = fl.coordinates(img)
        if c is None or not exact.is_integral(c):
            raise DataError("centralizer generator does not preserve the fixed lattice")
        t.append([int(x) for x in c])
    return t


@dataclass
class OrbitSpace:
    iso: LatticeIsometry
    n: int
    fixed: IntegerLattice
    space: FiniteQuotient
    s_nu: list          # Leech coordinates
    s_scaled: list      # n * s_nu in fixed-lattice coordinates

    def f_of(self, z) -> list[Fraction]:
        y = self.space.decode(z)
        coords = [Fraction(c, self.n) for c in y]
        return self.fixed.to_ambient(coords)


def leech_orbit_space(iso: LatticeIsometry, n: int) -> OrbitSpace:
    """``(Lambda^nu / n) / pi_nu(Lambda)`` with ``y = n f`` in fixed-lattice coordinates."""
    if n % iso.order:
        raise DataError(f"isometry order {iso.order} does not divide n={n}")
    fl = fixed_lattice(iso)
    if fl.rank == 0:
        raise DataError("fixed lattice is trivial")
    ginv = exact.inverse(fl.gram)  # rows: dual basis = projection lattice
    rel = [[n * x for x in row] for row in ginv]
    if not exact.is_integral(x for row in rel for x in row):
        raise DataError("n * dual lattice is not contained in the fixed lattice")
    space = FiniteQuotient.from_relations([[int(x) for x in row] for row in rel])
    s = doubling_vector(iso)
    sc = fl.coordinates(s) if any(s) else [Fraction(0)] * fl.rank
    return OrbitSpace(iso, n, fl, space, s, [n * x for x in sc])


@dataclass
class GDHCandidate:
    """One conjugacy class of order ``n`` over a fixed isometry class."""

    automorphism: LeechAutomorphism
    n: int
    type_residue: int
    extremal_necessary: bool
    rank_condition: str = "unknown"   # "holds" | "fails" | "unknown"
    weight: Fraction = Fraction(0)
    representative: tuple = ()
    orbit_size: int = 1
    coprime_weights: dict = field(default_factory=dict)


def _projection_lattice(space: OrbitSpace) -> IntegerLattice:
    proj_basis = exact.matmul(exact.inverse(space.fixed.gram), space.fixed.basis)
    return IntegerLattice(proj_basis, space.fixed.form)


def extremality_necessary(g: LeechAutomorphism, n: int) -> bool:
    """``rho(V(g^i)) >= 1`` for every ``i`` coprime to ``n``."""
    from .leech import twisted_weight
    for i in range(1, n):
        if gcd(i, n) == 1 and twisted_weight(g.power(i)) < 1:
            return False
    return True


RankPredicate = Callable[[GDHCandidate], str]
RANK_STATES = ("holds", "fails", "unknown")


def unknown_rank(_: GDHCandidate) -> str:
    return "unknown"


def _coprime_weights(args) -> dict:
    """Weights of ``g^i`` for ``i`` coprime to ``n`` (top level so it pickles)."""
    basis, form, rho, h, n = args
    proj = IntegerLattice(basis, form)
    out = {}
    for i in range(1, n):
        if gcd(i, n) == 1:
            nrm, _ = min_coset_norm(CosetVector(proj, [i * x for x in h]))
            out[i] = rho + nrm / 2
    return out


def gdh_pipeline(data, n: Optional[int] = None, rank_condition: RankPredicate = unknown_rank,
                 cap: int = DEFAULT_CAP, workers: int = 1) -> dict:
    """Classify automorphisms of order ``n`` over one isometry class.

    ``data`` is a :class:`ClassData` (with ``n`` given) or a
    :class:`CandidatePair`, whose centralizer data is then looked up in the
    data directory.  Missing data raises :class:`DataError` naming the class.
    Weights of ``g^i`` for ``i`` coprime to ``n`` use the same projection
    lattice, since ``nu^i`` has the same fixed space as ``nu``.  With
    ``workers > 1`` the weights are computed in a process pool; results are
    merged in orbit order, so the report does not depend on ``workers``.
    """
    if isinstance(data, CandidatePair):
        n = data.n if n is None else n
        data = load_class_data(data.co0_class.name)
    if n is None:
        raise ValueError("order n is required")
    if data.shape.fixed_rank == 0:
        raise DataError(f"class {data.name} (shape {data.shape}) fixes no vector of the "
                        "lattice, so there are no shifts to classify")
    space = leech_orbit_space(data.isometry, n)
    mats = [_restrict(t, space.fixed) for t in data.centralizer]
    orbits = orbit_enumerate(mats, space.s_scaled, space.space, cap)
    rho = vacuum_anomaly(data.shape)
    proj = _projection_lattice(space)
    m = data.isometry.order

    kept = []
    for z, size in zip(orbits.representatives, orbits.sizes):
        y = space.space.decode(z)
        k = exact.common_denominator(Fraction(c, n) for c in y)
        if m * k // gcd(m, k) == n:  # cheap order filter first
            f = space.f_of(z)
            kept.append((z, size, f, [a + b for a, b in zip(space.s_nu, f)]))
    jobs = [(proj.basis, proj.form, rho, h, n) for _, _, _, h in kept]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            all_weights = list(pool.map(_coprime_weights, jobs))
    else:
        all_weights = [_coprime_weights(j) for j in jobs]

    records = []
    for (z, size, f, _), weights in zip(kept, all_weights):
        w = weights[1]
        rec = GDHCandidate(LeechAutomorphism(data.isometry, f), n, automorphism_type(n, w),
                           all(v >= 1 for v in weights.values()), weight=w,
                           representative=z, orbit_size=size, coprime_weights=weights)
        if rec.type_residue == 0 and rec.extremal_necessary:
            state = rank_condition(rec)
            if state not in RANK_STATES:
                raise ValueError(f"rank predicate returned {state!r}")
            rec.rank_condition = state
        records.append(rec)
    type0 = [r for r in records if r.type_residue == 0]
    remaining = [r for r in type0 if r.extremal_necessary]
    return {
        "class": data.name,
        "shape": str(data.shape),
        "n": n,
        "quotient_order": space.space.size,
        "orbits_total": len(orbits.representatives),
        "classes_of_order_n": len(records),
        "type_nonzero": len(records) - len(type0),
        "type_zero": len(type0),
        "type_zero_not_extremal": len(type0) - len(remaining),
        "type_zero_extremal": len(remaining),
        "rank_condition": {s: sum(1 for r in remaining if r.rank_condition == s)
                           for s in RANK_STATES},
        "records": records,
    }


def tally_lines(report: dict) -> list[str]:
    """Itemized summary in words."""
    r = report
    lines = [f"{r['classes_of_order_n']} conjugacy classes of order {r['n']} over "
             f"class {r['class']} (shape {r['shape']})",
             f"{r['type_nonzero']} do not have type 0",
             f"{r['type_zero_not_extremal']} have type 0 but fail the extremality test"]
    rc = r["rank_condition"]
    lines.append(f"{r['type_zero_extremal']} have type 0 and pass it "
                 f"(rank condition: {rc['holds']} hold, {rc['fails']} fail, "
                 f"{rc['unknown']} unknown)")
    return lines
