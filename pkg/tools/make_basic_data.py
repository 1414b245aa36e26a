"""Offline tool: identity and -I isometry files and the bundled deep hole.

The deep hole is ``(4, 0, ..., 0)`` in sqrt 8 coordinates; exact closest-vector
search confirms squared distance 2 to the lattice with 48 nearest points.
"""

import json
import os

from gdhkit.lattice import CosetVector, min_coset_norm
from gdhkit.leech import build_leech, identity_isometry, leech_coordinates, minus_identity

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src", "gdhkit", "data")


def dump(path, doc):
    with open(path, "w") as f:
        json.dump(doc, f, separators=(",", ":"))
        f.write("\n")


def main():
    iso_dir = os.path.join(DATA, "isometries")
    os.makedirs(iso_dir, exist_ok=True)
    dump(os.path.join(iso_dir, "identity.json"), identity_isometry().to_json())
    dump(os.path.join(iso_dir, "minus1.json"), minus_identity().to_json())
    x = [4] + [0] * 23
    norm, wit = min_coset_norm(CosetVector(build_leech(), x), all_witnesses=True)
    assert norm == 2 and len(wit) == 48, (norm, len(wit))
    coords = leech_coordinates(x)
    dump(os.path.join(DATA, "deep_hole.json"), {
        "name": "A1^24",
        "ambient": x,
        "coordinates": [str(c) for c in coords],
        "order": 2,
        "vertices": len(wit),
        "provenance": "derived: exact closest-vector search (tools/make_basic_data.py)",
    })


if __name__ == "__main__":
    main()
