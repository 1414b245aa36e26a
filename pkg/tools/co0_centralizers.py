"""Offline tool: class representatives and centralizer generators in Co0.

1. Enumerate the 196560 minimal Leech vectors (Leech-basis coordinates).
2. Turn the generator matrices from ``co0_generators.py`` into permutations.
3. Random products of generators (and their powers) supply one representative
   matrix for each requested frame shape.
4. GAP checks the group order and computes centralizers in the permutation
   representation; the generators come back as images of 24 chosen minimal
   vectors and are converted to matrices here.

Usage: python3 tools/co0_centralizers.py GENS.json OUTDIR
"""

import json
import os
import random
import sys

import numpy as np

from gdhkit import exact
from gdhkit.kacauto import CycleShape, divisors, mobius
from gdhkit.lattice import short_vectors_gram
from gdhkit.leech import leech_gram

TARGETS = ["1^8 2^8", "1^6 3^6", "2^12", "1^4 2^2 4^4", "1^4 5^4", "1^2 2^2 3^2 6^2",
           "1^3 7^3", "1^2 2 4 8^2", "2^3 6^3", "2^2 10^2", "6^4", "4^6", "3^8", "2^4 4^4"]
HERE = os.path.dirname(os.path.abspath(__file__))


def minimal_vectors():
    g = [list(r) for r in leech_gram()]
    vecs = short_vectors_gram(g, 4, both_signs=True)
    arr = np.array([v for v, _ in vecs], dtype=np.int64)
    assert arr.shape == (196560, 24)
    return arr


def index_of(arr):
    return {tuple(r): i for i, r in enumerate(arr.tolist())}


def perm_of(m, arr, idx):
    img = arr @ np.array(m, dtype=np.int64).T   # rows: (M c)^T
    return [idx[tuple(r)] for r in img.tolist()]


def shape_of(m):
    m = np.array(m, dtype=np.int64)
    ident = np.eye(24, dtype=np.int64)
    p, order = m.copy(), 1
    traces = {1: int(np.trace(m))}
    while not np.array_equal(p, ident):
        p = p @ m
        order += 1
        traces[order] = int(np.trace(p))
        if order > 200:
            raise RuntimeError("order too large")
    traces[order] = 24
    exps = {}
    for t in divisors(order):
        s = sum(mobius(t // d) * traces[d] for d in divisors(t))
        if s % t:
            raise RuntimeError("inconsistent traces")
        if s:
            exps[t] = s // t
    return order, CycleShape.of(exps)


def find_reps(gens, wanted, seed=1):
    rng = random.Random(seed)
    mats = [np.array(m, dtype=np.int64) for m in gens.values()]
    # product replacement
    state = [m.copy() for m in mats] + [m.copy() for m in mats]
    acc = np.eye(24, dtype=np.int64)
    found = {}
    tries = 0
    while len(found) < len(wanted) and tries < 200000:
        tries += 1
        i, j = rng.sample(range(len(state)), 2)
        state[i] = state[i] @ state[j] if rng.random() < 0.5 else state[j] @ state[i]
        acc = acc @ state[i]
        order, _ = shape_of(acc)
        for d in divisors(order):
            pw = np.linalg.matrix_power(acc, order // d) if d < order else acc
            _, sh = shape_of(pw)
            key = str(sh)
            if key in wanted and key not in found:
                found[key] = pw.astype(int).tolist()
                print(f"found {key} after {tries} tries", file=sys.stderr)
    missing = set(wanted) - set(found)
    if missing:
        raise RuntimeError(f"no representative found for {missing}")
    return found


def choose_frame(arr):
    """24 minimal vectors spanning Q^24 (greedy)."""
    chosen = []
    for i in range(len(arr)):
        if exact.rank([arr[j].tolist() for j in chosen] + [arr[i].tolist()]) > len(chosen):
            chosen.append(i)
            if len(chosen) == 24:
                return chosen
    raise RuntimeError("minimal vectors do not span")


def main():
    gens = json.load(open(sys.argv[1]))
    out = sys.argv[2]
    os.makedirs(out, exist_ok=True)
    arr = minimal_vectors()
    idx = index_of(arr)
    wanted = [str(CycleShape.parse(t)) for t in TARGETS]
    reps = find_reps(gens, wanted)
    frame = choose_frame(arr)
    with open(os.path.join(out, "co0_input.g"), "w") as f:
        f.write("gens := [\n")
        for name, m in gens.items():
            f.write("PermList([" + ",".join(str(x + 1) for x in perm_of(m, arr, idx)) + "]),\n")
        f.write("];\n")
        f.write("reps := [\n")
        for key in wanted:
            f.write("PermList([" + ",".join(str(x + 1) for x in perm_of(reps[key], arr, idx))
                    + "]),\n")
        f.write("];\n")
        f.write("repnames := [" + ",".join(f'"{k}"' for k in wanted) + "];\n")
        f.write("frame := [" + ",".join(str(i + 1) for i in frame) + "];\n")
    json.dump({"reps": reps, "frame": [arr[i].tolist() for i in frame]},
              open(os.path.join(out, "reps.json"), "w"))
    print("wrote GAP input", file=sys.stderr)


if __name__ == "__main__":
    main()
