"""Offline tool: turn GAP centralizer output into bundled matrix data.

Reads ``GENS.json`` (from co0_generators.py) and ``OUTDIR/{reps,centralizers}.json``
(from co0_centralizers.py and co0_centralizers.g) and writes
``src/gdhkit/data/centralizers/<class>.json`` with the representative matrix and
centralizer generators in Leech-basis column convention.  Every matrix is
checked to preserve the Gram matrix and to commute with its representative.

Usage: python3 tools/co0_bundle.py GENS.json OUTDIR
"""

import json
import os
import sys

from gdhkit import exact
from gdhkit.kacauto import CycleShape
from gdhkit.leech import LatticeIsometry, cycle_shape_of, leech_gram

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from co0_centralizers import minimal_vectors  # noqa: E402

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src", "gdhkit", "data")


def matrix_from_images(frame, images):
    """``M`` with ``M f_i = w_i``: ``M = W F^{-1}`` (columns)."""
    f_cols = exact.transpose(frame)
    w_cols = exact.transpose(images)
    m = exact.matmul(w_cols, exact.inverse(f_cols))
    if not exact.is_integral(x for row in m for x in row):
        raise RuntimeError("non-integral matrix from frame images")
    return [[int(x) for x in row] for row in m]


def check(m, gram):
    mt = exact.transpose(m)
    if exact.matmul(exact.matmul(mt, gram), m) != gram:
        raise RuntimeError("matrix does not preserve the Gram matrix")


def main():
    gens = json.load(open(sys.argv[1]))
    work = sys.argv[2]
    reps = json.load(open(os.path.join(work, "reps.json")))
    cent = json.load(open(os.path.join(work, "centralizers.json")))
    table = json.load(open(os.path.join(DATA, "co0_classes.json")))["classes"]
    by_shape = {}
    for c in table:
        key = str(CycleShape.of({int(t): b for t, b in c["shape"].items()}))
        by_shape.setdefault(key, []).append(c)
    gram = [list(r) for r in leech_gram()]
    arr = minimal_vectors().tolist()
    frame = reps["frame"]
    outdir = os.path.join(DATA, "centralizers")
    os.makedirs(outdir, exist_ok=True)
    co0 = [gens[k] for k in gens]
    for m in co0:
        check(m, gram)

    def write(name, shape, matrix, generators, order, note):
        doc = {"class": name, "shape": shape, "centralizer_order": order,
               "provenance": note, "matrix": matrix, "generators": generators}
        with open(os.path.join(outdir, f"{name}.json"), "w") as f:
            json.dump(doc, f, separators=(",", ":"))
            f.write("\n")

    ident = exact.identity(24)
    ident = [[int(x) for x in r] for r in ident]
    note_full = "generators of the full automorphism group (tools/co0_generators.py)"
    write("1a", "1^24", ident, co0, 8315553613086720000, note_full)
    write("2a", "1^{-24} 2^24", [[-x for x in r] for r in ident], co0,
          8315553613086720000, note_full)
    for entry in cent["classes"]:
        shape = entry["shape"]
        (cls,) = by_shape[shape]
        if int(cls["centralizer_order"]) != int(entry["centralizer_order"]):
            raise RuntimeError(f"{shape}: centralizer order disagrees with the class table")
        rep = reps["reps"][shape]
        check(rep, gram)
        iso = LatticeIsometry(rep, cls["name"])
        if str(cycle_shape_of(iso)) != shape:
            raise RuntimeError(f"{shape}: representative has the wrong shape")
        mats = []
        for images in entry["images"]:
            m = matrix_from_images(frame, [arr[i] for i in images])
            check(m, gram)
            if exact.matmul(m, rep) != exact.matmul(rep, m):
                raise RuntimeError(f"{shape}: generator does not commute")
            mats.append(m)
        write(cls["name"], shape, rep, mats, int(entry["centralizer_order"]),
              "random search in the group generated by tools/co0_generators.py; "
              "centralizer from GAP (tools/co0_centralizers.g)")
        print(cls["name"], shape, len(mats), "generators", file=sys.stderr)


if __name__ == "__main__":
    main()
