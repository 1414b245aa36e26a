"""Co0 generators as integer matrices in the fixed Leech basis (offline tool).

Builds four M24 permutations on the projective-line labelling, the sign change
on one octad and a non-monomial element acting blockwise on a sextet, checks
that each preserves the lattice, and prints the result as JSON.
"""

import json
import sys
from fractions import Fraction

from gdhkit import exact
from gdhkit.leech import INF, _leech_basis, build_golay, leech_gram

Q = {(x * x) % 23 for x in range(1, 23)}


def perm_alpha(t):
    return t if t == INF else (t + 1) % 23


def perm_beta(t):
    return t if t == INF else (2 * t) % 23


def perm_gamma(t):
    if t == INF:
        return 0
    if t == 0:
        return INF
    return (-pow(t, -1, 23)) % 23


def perm_delta(t):
    if t in (0, INF):
        return t
    if t in Q:
        return (pow(t, 3, 23) * pow(9, -1, 23)) % 23
    return (9 * pow(t, 3, 23)) % 23


def perm_matrix(f):
    # x -> A x with (A x)_{f(i)} = x_i
    a = [[0] * 24 for _ in range(24)]
    for i in range(24):
        a[f(i)][i] = 1
    return a


def to_basis(ambient):
    """Ambient action x -> A x (column vectors) in Leech-basis coordinates."""
    b = [list(r) for r in _leech_basis()]
    bt = exact.transpose(b)
    m = exact.matmul(exact.inverse(bt), exact.matmul(ambient, bt))
    if not exact.is_integral(x for r in m for x in r):
        return None
    return [[int(x) for x in r] for r in m]


def octads():
    return [w for w in build_golay().words if bin(w).count("1") == 8]


def sextet(tetrad):
    t = sum(1 << i for i in tetrad)
    parts = [tuple(tetrad)]
    for w in octads():
        if w & t == t:
            rest = w & ~t
            parts.append(tuple(i for i in range(24) if rest >> i & 1))
    assert len(parts) == 6
    return parts


def xi_candidates():
    parts = sextet((0, 1, 2, 3))
    for sign in (1, -1):
        for neg in [None] + list(range(6)):
            a = [[Fraction(0)] * 24 for _ in range(24)]
            for k, part in enumerate(parts):
                s = sign * (-1 if neg == k else 1)
                for i in part:
                    for j in part:
                        a[i][j] = s * (Fraction(1, 2) - (1 if i == j else 0))
            yield (sign, neg), a


def main():
    gens = {}
    for name, f in [("alpha", perm_alpha), ("beta", perm_beta), ("gamma", perm_gamma),
                    ("delta", perm_delta)]:
        m = to_basis(perm_matrix(f))
        assert m is not None, name
        gens[name] = m
    octad = min(octads())
    eps = [[(-1 if (octad >> i & 1) else 1) * int(i == j) for j in range(24)] for i in range(24)]
    gens["epsilon"] = to_basis(eps)
    assert gens["epsilon"] is not None
    for key, a in xi_candidates():
        m = to_basis(a)
        if m is not None:
            gens["xi"] = m
            print("xi variant", key, file=sys.stderr)
            break
    g = [list(r) for r in leech_gram()]
    for name, m in gens.items():
        mt = exact.transpose(m)
        assert exact.matmul(exact.matmul(mt, g), m) == g, name
    json.dump(gens, sys.stdout)


if __name__ == "__main__":
    main()
