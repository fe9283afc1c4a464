"""Walk through the worked minimality examples end to end.

Usage:  python scripts/worked_examples.py
"""
from __future__ import annotations

from pathlib import Path

from sympsum import (
    Level,
    LevelDecomposition,
    cap_cp2_2h,
    cap_cp2_h,
    completion_Q,
    decide_minimality,
    load_manifest,
    multilevel_index,
    rational_blowdown_contributors,
    strata_dimension_bound,
    sum_characteristic_numbers,
)

MANIFESTS = Path(__file__).resolve().parents[1] / "src" / "sympsum" / "manifests"
BOUND = 4


def banner(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    kummer = load_manifest(MANIFESTS / "kummer_blown.json")
    banner("blown-up K3 sublattice + conic cap")
    analysis = rational_blowdown_contributors(kummer.pair, BOUND)
    for line in analysis.trace:
        print(f"  {line}")
    verdict = decide_minimality(kummer.pair, cap_cp2_2h().pair, BOUND)
    print(f"  verdict: {verdict.verdict}, witness pair "
          f"{[w.coeffs for w in verdict.witness]}")

    banner("degenerate configuration: index drop")
    P = kummer.pair
    Q, _, _ = completion_Q(P.v_square())
    D = LevelDecomposition(
        P.model.lattice.cls((0, 1, 0)), 0, 1,
        (Level(Q.lattice.cls((0, 1)), 0, 1, 1),),
    )
    print(f"  two-level curve (e1 | fiber): index {multilevel_index(P, D)}, "
          f"strata bound {strata_dimension_bound(P, D)}")

    banner("K² = -20 example + conic cap")
    ex20 = load_manifest(MANIFESTS / "ex_minus20.json")
    verdict = decide_minimality(ex20.pair, cap_cp2_2h().pair, BOUND)
    print(f"  verdict: {verdict.verdict}, witness pair "
          f"{[w.coeffs for w in verdict.witness]}")
    chi, sigma = sum_characteristic_numbers(ex20.model, cap_cp2_2h().pair.model)
    print(f"  characteristic numbers of the sum: chi={chi}, sigma={sigma}")

    banner("exceptional neighborhood + line cap (blow-down)")
    nbhd = load_manifest(MANIFESTS / "exceptional_nbhd.json")
    verdict = decide_minimality(nbhd.pair, cap_cp2_h().pair, BOUND)
    print(f"  verdict: {verdict.verdict}")
    for line in verdict.trace:
        print(f"  trace: {line}")


if __name__ == "__main__":
    main()
