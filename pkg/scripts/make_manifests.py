"""Regenerate the shipped JSON manifests from the library constructors.

Run from the repo root:  python scripts/make_manifests.py
"""
from __future__ import annotations

import json
from pathlib import Path

from sympsum import cp2_blowup, s2_bundle

OUT = Path(__file__).resolve().parents[1] / "src" / "sympsum" / "manifests"


def model_dict(name, M, V=None, v_genus=0, closed=True):
    d = {
        "name": name,
        "basis": list(M.lattice.basis_names),
        "gram": [list(row) for row in M.lattice.gram],
        "K": list(M.K.coeffs),
        "euler": M.euler,
        "signature": M.signature,
        "flags": {
            "rational": M.flags.rational,
            "ruled": M.flags.ruled,
            "closed": closed,
        },
    }
    if V is not None:
        d["V"] = {"vector": list(V), "genus": v_genus}
    return d


def main():
    OUT.mkdir(exist_ok=True)
    manifests = []

    cp2 = cp2_blowup(0)
    manifests.append(model_dict("cp2", cp2, V=[1]))
    manifests.append(model_dict("cp2_conic", cp2, V=[2]))

    ten = cp2_blowup(10)
    manifests.append(model_dict("cp2_blowup_10", ten))

    ruled = s2_bundle(1, twisted=False)
    manifests.append(model_dict("s2bundle_1", ruled, V=[0, 1]))

    # rank-3 sublattice of a blown-up K3: a -4-sphere meeting two
    # exceptional classes once each
    kummer = {
        "name": "kummer_blown",
        "basis": ["v", "e1", "e2"],
        "gram": [[-4, 1, 1], [1, -1, 0], [1, 0, -1]],
        "K": [0, 1, 1],
        "V": {"vector": [1, 0, 0], "genus": 0},
        "euler": 26,
        "signature": -18,
        "flags": {"rational": False, "ruled": False, "closed": False},
    }
    manifests.append(kummer)

    # a -20-square canonical class example: ten-point blow-up of the plane
    # with the -4-sphere 3H - 2e1 - e2 - ... - e10 marked
    v = [3, -2] + [-1] * 9
    manifests.append(model_dict("ex_minus20", ten, V=v))

    # local model of an exceptional-sphere neighborhood: rank-1 <-1> lattice
    exceptional = {
        "name": "exceptional_nbhd",
        "basis": ["e"],
        "gram": [[-1]],
        "K": [1],
        "V": {"vector": [1], "genus": 0},
        "euler": 1,
        "signature": -1,
        "flags": {"rational": False, "ruled": False, "closed": False},
    }
    manifests.append(exceptional)

    for m in manifests:
        path = OUT / f"{m['name']}.json"
        path.write_text(json.dumps(m, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
