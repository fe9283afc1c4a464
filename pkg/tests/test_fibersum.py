import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympsum import (
    GenusMismatch,
    SquareMismatch,
    SymplecticPair,
    cap_bundle_fiber,
    cap_bundle_section,
    cap_cp2_2h,
    cap_cp2_h,
    check_compatibility,
    cp2_blowup,
    decide_minimality,
    enumerate_splittings,
    load_manifest,
    rational_blowdown_contributors,
    s2_bundle,
    split_canonical,
    split_square,
    sum_characteristic_numbers,
)

from conftest import MANIFESTS


def kummer():
    return load_manifest(MANIFESTS / "kummer_blown.json").pair


def ex20():
    return load_manifest(MANIFESTS / "ex_minus20.json").pair


def exc_nbhd():
    return load_manifest(MANIFESTS / "exceptional_nbhd.json").pair


def test_compatibility():
    check_compatibility(kummer(), cap_cp2_2h().pair)  # -4 + 4
    check_compatibility(exc_nbhd(), cap_cp2_h().pair)  # -1 + 1
    with pytest.raises(SquareMismatch):
        check_compatibility(kummer(), cap_cp2_h().pair)
    M = cp2_blowup(0)
    torus_pair = SymplecticPair(M, M.lattice.cls((3,)), 1)  # V² = 9, genus 1
    with pytest.raises(GenusMismatch):
        check_compatibility(torus_pair, cap_bundle_section(-9).pair)


vec3 = st.lists(st.integers(-5, 5), min_size=3, max_size=3)
vec1 = st.lists(st.integers(-5, 5), min_size=1, max_size=1)


@settings(max_examples=400, deadline=None)
@given(vec3, vec3, vec1, vec1, st.integers(-3, 3), st.integers(-3, 3))
def test_split_identities_random(ax, bx, ay, by, m, n):
    PX, PY = kummer(), cap_cp2_2h().pair
    AX, BX = PX.model.lattice.cls(ax), PX.model.lattice.cls(bx)
    AY, BY = PY.model.lattice.cls(ay), PY.model.lattice.cls(by)
    # additivity of the square splitting
    assert split_square(PX, PY, AX, AY) == PX.model.square(AX) + PY.model.square(AY)
    # bilinearity of the canonical splitting in (A_X, A_Y)
    lhs = split_canonical(PX, PY, m * AX + n * BX, m * AY + n * BY)
    rhs = m * split_canonical(PX, PY, AX, AY) + n * split_canonical(PX, PY, BX, BY)
    assert lhs == rhs


def test_split_canonical_worked_values():
    PX, PY = kummer(), cap_cp2_2h().pair
    AX = PX.model.lattice.cls((0, 1, 1))  # e1 + e2
    AY = PY.model.lattice.cls((1,))
    assert PX.model.square(AX) == -2
    assert split_square(PX, PY, AX, AY) == -1
    assert split_canonical(PX, PY, AX, AY) == -1  # an exceptional class of the sum
    line = cap_cp2_h().pair
    H = line.model.lattice.cls((1,))
    assert line.model.k_pairing(H) + line.v_pairing(H) == -2


def test_sum_characteristic_numbers():
    M10, M0 = cp2_blowup(10), cp2_blowup(0)
    assert sum_characteristic_numbers(M10, M0) == (12, -8)
    M1 = cp2_blowup(1)
    assert sum_characteristic_numbers(M1, M0) == (3, 1)
    assert sum_characteristic_numbers(M0, M1) == sum_characteristic_numbers(M1, M0)


def test_contributors_kummer():
    analysis = rational_blowdown_contributors(kummer(), 4)
    assert len(analysis.configurations) == 1
    cfg = analysis.configurations[0]
    assert {c.coeffs for c in cfg.components} == {(0, 1, 0), (0, 0, 1)}
    assert cfg.contact_orders.orders == (1, 1)
    assert len(analysis.trace) >= 5
    joined = " ".join(analysis.trace)
    for step in ("(i)", "(ii)", "(iii)", "(iv)", "(v)"):
        assert step in joined


def test_contributors_empty_when_no_pairs():
    # V = -2K in the a=6 model: every candidate meets V twice, no pair has E·V = 1
    from sympsum import reproduce_rational_table

    row = reproduce_rational_table()[-1]
    P = SymplecticPair(row.model, row.cls, 0)
    assert rational_blowdown_contributors(P, 4).configurations == ()


def test_component_square_case_analysis_oracle():
    # per-component complex dimension of a genus-0 component with one simple
    # contact is A² + 1; scan all square multisets summing to -2
    surviving = [
        (s1, s2)
        for s1, s2 in itertools.product(range(-6, 1), repeat=2)
        if s1 + s2 == -2 and s1 + 1 >= 0 and s2 + 1 >= 0
    ]
    assert surviving == [(-1, -1)]
    # the one-point pattern is always rejected: adjunction genus of a
    # connected sphere with A² = -2, K·A = -2 would be -1
    assert 1 + (-2 + -2) / 2 == -1
    trace = " ".join(rational_blowdown_contributors(kummer(), 4).trace)
    assert "(-1, -1)" in trace and "s = (2) rejected" in trace


def test_enumerate_splittings_kummer():
    recs = enumerate_splittings(kummer(), cap_cp2_2h().pair, -1, 4)
    assert len(recs) == 1
    rec = recs[0]
    assert rec.A_X.coeffs == (0, 1, 1)
    assert rec.A_Y.coeffs == (1,)
    assert rec.s.orders == (1, 1)
    assert {c.coeffs for c, _ in rec.components_X} == {(0, 1, 0), (0, 0, 1)}
    assert split_square(kummer(), cap_cp2_2h().pair, rec.A_X, rec.A_Y) == -1
    assert sum(rec.s.orders) == kummer().v_pairing(rec.A_X)


def test_enumerate_splittings_line_cap_empty():
    # every line-cap class dH is killed by the vanishing filter
    recs = enumerate_splittings(exc_nbhd(), cap_cp2_h().pair, -1, 4)
    assert recs == []


def test_minimality_kummer_conic():
    v = decide_minimality(kummer(), cap_cp2_2h().pair, 4)
    assert v.verdict == "NotMinimal"
    assert {c.coeffs for c in v.witness} == {(0, 1, 0), (0, 0, 1)}
    assert v.case == "cp2_2h"


def test_minimality_ex20_conic():
    v = decide_minimality(ex20(), cap_cp2_2h().pair, 4)
    assert v.verdict == "NotMinimal"
    for E in v.witness:
        # a pair of e_i classes
        assert E.coeffs[0] == 0 and sum(E.coeffs) == 1


def test_minimality_line_cap():
    v = decide_minimality(exc_nbhd(), cap_cp2_h().pair, 4)
    assert v.verdict == "Minimal"
    assert v.case == "cp2_h"


def test_minimality_fiber_cases():
    fiber_g1 = cap_bundle_fiber(1, False).pair
    v = decide_minimality(fiber_g1, cap_bundle_fiber(1, False).pair, 4)
    assert v.verdict == "Minimal"
    # positive combined genus wins even against the trivial bundle
    v = decide_minimality(fiber_g1, cap_bundle_fiber(0, False).pair, 4)
    assert v.verdict == "Minimal"
    trivial = cap_bundle_fiber(0, False).pair
    v = decide_minimality(trivial, trivial, 4)
    assert v.verdict == "ConditionallyMinimal" and v.condition == "iff X minimal"
    twisted = cap_bundle_fiber(0, True).pair
    v = decide_minimality(twisted, twisted, 4)
    assert v.verdict == "Minimal"  # the sum is the trivial bundle
    untwisted = cap_bundle_fiber(0, False).pair
    v = decide_minimality(untwisted, twisted, 4)
    assert v.verdict == "NotMinimal"
    # the witness lives in the sum's (twisted-bundle) lattice
    sum_model = s2_bundle(0, True)
    assert sum_model.square(v.witness) == -1 and sum_model.k_pairing(v.witness) == -1


def test_minimality_section_cap():
    v = decide_minimality(exc_nbhd(), cap_bundle_section(1).pair, 4)
    assert v.verdict == "ConditionallyMinimal" and v.condition == "iff X minimal"


def test_never_minimal_with_witness_pairs_present():
    # cross-module consistency on the shipped -4 pairs
    from sympsum import find_blowdown_witness_pairs

    for P in (kummer(), ex20()):
        v = decide_minimality(P, cap_cp2_2h().pair, 4)
        if find_blowdown_witness_pairs(P, 4):
            assert v.verdict != "Minimal"


def test_verdicts_deterministic():
    a = decide_minimality(kummer(), cap_cp2_2h().pair, 4)
    b = decide_minimality(kummer(), cap_cp2_2h().pair, 4)
    assert a == b
