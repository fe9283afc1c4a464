"""Reproduce the two square-(-4) sphere tables and the per-row minimality flags.

Usage:  python scripts/reproduce_tables.py [--bound N]
"""
from __future__ import annotations

import argparse

from sympsum import (
    SymplecticPair,
    is_relatively_minimal,
    reproduce_rational_table,
    reproduce_ruled_table,
)


def class_str(names, coeffs) -> str:
    terms = []
    for nm, c in zip(names, coeffs):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+{nm}" if terms else nm)
        elif c == -1:
            terms.append(f"-{nm}")
        else:
            terms.append(f"{c:+d}{nm}" if terms else f"{c}{nm}")
    return "".join(terms) or "0"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=4)
    args = ap.parse_args()

    print("square-(-4) spheres in rational manifolds")
    print(f"{'a':>2} {'δ':>2} {'k':>2}  class / relative minimality")
    for row in reproduce_rational_table():
        P = SymplecticPair(row.model, row.cls, 0)
        rel = is_relatively_minimal(P, args.bound)
        if rel.is_minimal is False:
            flag = f"not rel-min, witness {class_str(row.model.lattice.basis_names, rel.witness.coeffs)}"
        elif rel.is_minimal is True:
            flag = f"rel-min ({rel.certificate})"
        else:
            flag = "undecided at this bound"
        print(
            f"{row.a:>2} {row.delta:>2} {row.k:>2}  "
            f"{class_str(row.model.lattice.basis_names, row.cls.coeffs)}  [{flag}]"
        )

    print()
    print("square-(-4) spheres a·f - Σaᵢeᵢ in a 4-point blow-up of a genus-1 ruled manifold")
    print(f"{'(a1..a4)':>16} {'a':>3}  representative (count)")
    for row in reproduce_ruled_table(bound=args.bound):
        print(
            f"{str(row.signs):>16} {row.a:>3}  "
            f"{class_str(row.model.lattice.basis_names, row.representative.coeffs)}"
            f" ({len(row.classes)})"
        )


if __name__ == "__main__":
    main()
