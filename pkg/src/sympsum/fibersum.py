"""Fiber-sum compatibility, splitting formulas, and the minimality decision.

The engine never constructs the full lattice of the sum; it works with the
splitting identities (squares add, canonical pairings add after the V-shift)
and the characteristic numbers.  Minimality verdicts carry a derivation trace
and, for NotMinimal, an explicit witness; bounded searches that find nothing
return Unknown unless a completeness certificate applies.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import GenusMismatch, NotASphereCap, PreconditionError, SquareMismatch
from .gw import ContactVector, purely_relative_vanishes
from .lattice import (
    HomologyClass,
    ManifoldModel,
    SymplecticPair,
    adjunction_genus,
)
from .models import CapKind, cp2_blowup, s2_bundle
from .spheres import (
    _enumerate_constrained,
    canonical_key,
    find_blowdown_witness_pairs,
    is_relatively_minimal,
)


def check_compatibility(PX: SymplecticPair, PY: SymplecticPair) -> None:
    """A sphere sum glues V_X to V_Y; squares must cancel, genera must agree."""
    if PX.v_square() + PY.v_square() != 0:
        raise SquareMismatch(
            f"V_X² + V_Y² = {PX.v_square()} + {PY.v_square()} ≠ 0"
        )
    if PX.V_genus != PY.V_genus:
        raise GenusMismatch(
            f"hypersurface genera disagree: {PX.V_genus} vs {PY.V_genus}"
        )


def split_square(
    PX: SymplecticPair, PY: SymplecticPair, A_X: HomologyClass, A_Y: HomologyClass
) -> int:
    """Square of the glued class: A² = A_X² + A_Y²."""
    return PX.model.square(A_X) + PY.model.square(A_Y)


def split_canonical(
    PX: SymplecticPair, PY: SymplecticPair, A_X: HomologyClass, A_Y: HomologyClass
) -> int:
    """Canonical pairing of the glued class: K·A = (K_X+V_X)·A_X + (K_Y+V_Y)·A_Y."""
    x = PX.model.k_pairing(A_X) + PX.v_pairing(A_X)
    y = PY.model.k_pairing(A_Y) + PY.v_pairing(A_Y)
    return x + y


def sum_characteristic_numbers(X: ManifoldModel, Y: ManifoldModel) -> tuple[int, int]:
    """(χ, σ) of a sphere sum: χ_X + χ_Y - 4 and σ_X + σ_Y."""
    return (X.euler + Y.euler - 4, X.signature + Y.signature)


def classify_cap(PY: SymplecticPair) -> CapKind:
    """Match the pair against the four sphere-cap families by lattice data.

    The families are: the plane with a line or a conic, an S²-bundle with a
    fiber, and an S²-bundle over S² with a section.  Sections over a
    positive-genus base are deliberately not a cap: such a sum is not a
    valid sphere sum, so they raise NotASphereCap like everything else.
    """
    if PY.V_genus != 0:
        raise NotASphereCap("the marked hypersurface of a cap must be a sphere")
    M = PY.model
    L = M.lattice
    cp2 = cp2_blowup(0)
    if L == cp2.lattice and M.K.coeffs == cp2.K.coeffs:
        if PY.V.coeffs == (1,):
            return CapKind("cp2_h")
        if PY.V.coeffs == (2,):
            return CapKind("cp2_2h")
        raise NotASphereCap(f"{PY.V.coeffs[0]}·H is neither a line nor a conic")
    if L.rank == 2 and L.gram[0][1] == 1 and L.gram[1][1] == 0:
        c = L.gram[0][0]
        g4 = 4 - M.euler
        g = g4 // 4 if g4 % 4 == 0 and g4 >= 0 else None
        if (
            g is not None
            and c in (0, 1)
            and M.K.coeffs == (-2, 2 * g - 2 + c)
            and PY.V.coeffs == (0, 1)
        ):
            return CapKind("bundle_fiber", genus=g, twisted=bool(c))
        # a section: spherical base, V meets each fiber once
        f = L.cls((0, 1))
        if M.euler == 4 and M.K.coeffs == (-2, c - 2) and M.pairing(PY.V, f) == 1:
            if PY.V.coeffs == (1, 0):
                return CapKind("bundle_section", n=c)
            raise NotASphereCap("section class is not the marked basis section")
        if g is not None and g > 0 and M.pairing(PY.V, f) == 1:
            raise NotASphereCap(
                "a section over a positive-genus base is not a sphere cap"
            )
    raise NotASphereCap("pair does not match any of the four cap families")


@dataclass(frozen=True)
class SplittingRecord:
    """One way a class of the sum can decompose across the hypersurface.

    components_X lists the connected pieces of the X side with their genera;
    the invariant Σsᵢ = A_X·V_X = A_Y·V_Y is enforced at construction sites.
    """

    A_X: HomologyClass
    A_Y: HomologyClass
    s: ContactVector
    components_X: tuple[tuple[HomologyClass, int], ...]


def _partitions(total: int, max_part: Optional[int] = None):
    """All partitions of total into positive parts, descending."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _contact_assignments(parts: tuple[int, ...], n_comp: int):
    """Ways to hand the contact orders to n_comp components, each getting ≥ 1.

    Yields tuples of sorted order-tuples, deduplicated.
    """
    seen = set()
    if n_comp == 1:
        yield (tuple(sorted(parts, reverse=True)),)
        return
    r = len(parts)
    if n_comp > r:
        return
    for mask in range(1, 1 << r):
        first = tuple(sorted((parts[i] for i in range(r) if mask & (1 << i)), reverse=True))
        rest = tuple(parts[i] for i in range(r) if not mask & (1 << i))
        if not first or not rest:
            continue
        for tail in _contact_assignments(rest, n_comp - 1):
            key = tuple(sorted((first,) + tail))
            if key not in seen:
                seen.add(key)
                yield (first,) + tail


def _cap_side_classes(PY: SymplecticPair, bound: int) -> list[HomologyClass]:
    """Genus-0 cap classes with positive degree and at least one contact,
    surviving the vanishing filters."""
    M = PY.model
    n = M.lattice.rank
    out = []

    def walk(prefix: list[int]):
        if len(prefix) == n:
            A = M.lattice.cls(tuple(prefix))
            if A.is_zero():
                return
            if adjunction_genus(M, A) != 0:
                return
            if PY.v_pairing(A) < 1:
                return
            if purely_relative_vanishes(PY, A, 0).vanishes:
                return
            out.append(A)
            return
        for v in range(-bound, bound + 1):
            walk(prefix + [v])

    walk([])
    out.sort(key=lambda c: canonical_key(M, c))
    return out


def enumerate_splittings(
    PX: SymplecticPair,
    PY: SymplecticPair,
    target_square: int,
    bound: int,
    max_components: int = 2,
) -> list[SplittingRecord]:
    """All decompositions of a square-`target_square` class of the sum into
    a cap class, a contact pattern, and genus-0 X-side components.

    Components are required pairwise orthogonal and each must pass the
    per-component dimension filter A² + 1 + r - t ≥ 0 (r contact points of
    total order t); every component touches the hypersurface, so the glued
    configuration is automatically connected through the cap class.
    """
    check_compatibility(PX, PY)
    records: list[SplittingRecord] = []
    for A_Y in _cap_side_classes(PY, bound):
        t = PY.v_pairing(A_Y)
        x_square_total = target_square - PY.model.square(A_Y)
        for parts in _partitions(t):
            for n_comp in range(1, min(max_components, len(parts)) + 1):
                for assignment in _contact_assignments(parts, n_comp):
                    records.extend(
                        _component_fills(
                            PX, A_Y, parts, assignment, x_square_total, bound
                        )
                    )
    dedup = {}
    for rec in records:
        key = (
            rec.A_X.coeffs,
            rec.A_Y.coeffs,
            rec.s.orders,
            tuple(sorted((c.coeffs, g) for c, g in rec.components_X)),
        )
        dedup.setdefault(key, rec)
    out = list(dedup.values())
    out.sort(
        key=lambda r: (
            canonical_key(PX.model, r.A_X),
            r.A_Y.coeffs,
            r.s.orders,
            tuple(canonical_key(PX.model, c) for c, _ in r.components_X),
        )
    )
    return out


def _component_fills(
    PX: SymplecticPair,
    A_Y: HomologyClass,
    parts: tuple[int, ...],
    assignment: tuple[tuple[int, ...], ...],
    x_square_total: int,
    bound: int,
) -> list[SplittingRecord]:
    """Fill each component slot of one contact assignment with genus-0 classes."""
    MX = PX.model
    slots = []  # (t_i, r_i, minimum square from the dimension filter)
    for orders in assignment:
        t_i, r_i = sum(orders), len(orders)
        slots.append((t_i, r_i, t_i - r_i - 1))
    min_rest = [0] * (len(slots) + 1)
    for i in range(len(slots) - 1, -1, -1):
        min_rest[i] = min_rest[i + 1] + slots[i][2]

    found: list[SplittingRecord] = []

    def fill(i: int, chosen: list[HomologyClass], budget: int):
        if i == len(slots):
            if budget != 0:
                return
            total = chosen[0]
            for c in chosen[1:]:
                total = total + c
            found.append(
                SplittingRecord(
                    total,
                    A_Y,
                    ContactVector(tuple(sorted(parts, reverse=True))),
                    tuple((c, 0) for c in chosen),
                )
            )
            return
        t_i, r_i, lo = slots[i]
        hi = budget - min_rest[i + 1]
        for sq in range(lo, hi + 1):
            if i == len(slots) - 1 and sq != budget:
                continue
            for cls in _enumerate_constrained(
                MX, bound, sq, -2 - sq, V=PX.V, v_target=t_i
            ):
                if any(MX.pairing(cls, prev) != 0 for prev in chosen):
                    continue
                if any(cls.coeffs == prev.coeffs for prev in chosen):
                    continue
                fill(i + 1, chosen + [cls], budget - sq)

    fill(0, [], x_square_total)
    return found


@dataclass(frozen=True)
class ContributorConfiguration:
    """A surviving two-sphere configuration of the −4-sphere case analysis."""

    components: tuple[HomologyClass, HomologyClass]
    contact_orders: ContactVector


@dataclass(frozen=True)
class ContributorAnalysis:
    configurations: tuple[ContributorConfiguration, ...]
    trace: tuple[str, ...]


def rational_blowdown_contributors(PX: SymplecticPair, bound: int) -> ContributorAnalysis:
    """Case analysis for summing a −4-sphere with the conic pair.

    The exceptional-class target (square −1, canonical pairing −1) forces
    the cap class to be the line, the contact total to be 2, and the X side
    to satisfy A_X·V = 2, A_X² = −2, K_X·A_X = −2; the one-point pattern is
    impossible and the two-point pattern forces two disjoint exceptional
    candidates each meeting V once.  The trace records each step.
    """
    if PX.v_square() != -4 or PX.V_genus != 0:
        raise PreconditionError(
            f"the −4-sphere case analysis needs V² = -4, genus 0; got V² = {PX.v_square()}, genus {PX.V_genus}"
        )
    trace = []
    M = cp2_blowup(0)
    conic = SymplecticPair(M, M.lattice.cls((2,)), 0)
    surviving = []
    for a in (1, 2):  # the genus-0 classes a·H of the plane
        A = M.lattice.cls((a,))
        verdict = purely_relative_vanishes(conic, A, 0)
        if not verdict.vanishes:
            surviving.append(a)
    trace.append(
        f"(i) cap-side classes a·H with genus 0: vanishing filter leaves a ∈ {surviving}"
    )
    assert surviving == [1]
    t = 2 * 1  # H·2H: contact total on both sides
    trace.append(f"(ii) contact total A_X·V = H·(2H) = {t}: patterns s = (2) or (1, 1)")
    trace.append(
        "(iii) exceptional target A² = -1, K·A = -1 with A_Y = H gives "
        "A_X·V = 2, A_X² = -2, K_X·A_X = -2"
    )
    trace.append(
        "(iv) s = (2) rejected: a connected sphere with A² = -2, K·A = -2 "
        "has adjunction genus -1, impossible"
    )
    trace.append(
        "(v) s = (1, 1): two components, per-component dimension Aᵢ² + 1 ≥ 0 "
        "with A₁² + A₂² = -2 forces squares (-1, -1): two disjoint "
        "exceptional candidates each meeting V once"
    )
    pairs = find_blowdown_witness_pairs(PX, bound)
    configs = tuple(
        ContributorConfiguration((E1, E2), ContactVector((1, 1))) for E1, E2 in pairs
    )
    trace.append(f"witness-pair search (bound {bound}): {len(configs)} configuration(s)")
    return ContributorAnalysis(configs, tuple(trace))


MINIMAL = "Minimal"
NOT_MINIMAL = "NotMinimal"
CONDITIONALLY_MINIMAL = "ConditionallyMinimal"
UNKNOWN = "Unknown"

Witness = Union[HomologyClass, tuple[HomologyClass, HomologyClass]]


@dataclass(frozen=True)
class MinimalityVerdict:
    verdict: str
    witness: Optional[Witness] = None
    condition: Optional[str] = None
    case: str = ""
    trace: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict == NOT_MINIMAL and self.witness is None:
            raise ValueError("NotMinimal must carry a witness")
        if self.verdict == CONDITIONALLY_MINIMAL and not self.condition:
            raise ValueError("ConditionallyMinimal must carry a condition tag")


def _classify_fiber_pair(P: SymplecticPair) -> Optional[CapKind]:
    try:
        kind = classify_cap(P)
    except NotASphereCap:
        return None
    return kind if kind.family == "bundle_fiber" else None


def decide_minimality(
    PX: SymplecticPair, PY: SymplecticPair, bound: int
) -> MinimalityVerdict:
    """Minimality of the sphere sum, by cap case.

    The lattice can certify NotMinimal (it exhibits the witness) and those
    Minimal cases backed by an exhaustive-search certificate or a structural
    argument; everything else is Unknown.
    """
    check_compatibility(PX, PY)
    kind = classify_cap(PY)
    trace = [f"cap classified as {kind.label()}"]

    if kind.family == "cp2_2h":
        analysis = rational_blowdown_contributors(PX, bound)
        trace.extend(analysis.trace)
        if analysis.configurations:
            cfg = analysis.configurations[0]
            trace.append(
                "a contributor configuration exists: the sum contains an exceptional sphere"
            )
            return MinimalityVerdict(
                NOT_MINIMAL, cfg.components, case="cp2_2h", trace=tuple(trace)
            )
        rel = is_relatively_minimal(PX, bound)
        if rel.is_minimal is False:
            trace.append("X is not relatively minimal: an exceptional candidate misses V")
            return MinimalityVerdict(
                NOT_MINIMAL, rel.witness, case="cp2_2h", trace=tuple(trace)
            )
        if rel.is_minimal is True:
            trace.append(f"relative minimality certified: {rel.certificate}")
            trace.append("no contributor pair exists within a provably complete search")
            return MinimalityVerdict(MINIMAL, case="cp2_2h", trace=tuple(trace))
        trace.append("bounded searches found nothing but carry no completeness certificate")
        return MinimalityVerdict(UNKNOWN, case="cp2_2h", trace=tuple(trace))

    rel = is_relatively_minimal(PX, bound)
    if rel.is_minimal is False:
        trace.append(
            "X is not relatively minimal: the witness sphere misses V and survives the sum"
        )
        return MinimalityVerdict(
            NOT_MINIMAL, rel.witness, case=kind.family, trace=tuple(trace)
        )

    if kind.family == "cp2_h":
        if rel.is_minimal is True:
            trace.append(f"relative minimality certified: {rel.certificate}")
            trace.append(
                "summing with the line pair blows down V; no contributor configuration exists"
            )
            return MinimalityVerdict(MINIMAL, case="cp2_h", trace=tuple(trace))
        trace.append("relative minimality could not be certified at this bound")
        return MinimalityVerdict(UNKNOWN, case="cp2_h", trace=tuple(trace))

    if kind.family == "bundle_fiber":
        x_kind = _classify_fiber_pair(PX)
        y_trivial = kind.genus == 0 and not kind.twisted
        if x_kind is not None:
            total_genus = (x_kind.genus or 0) + (kind.genus or 0)
            if total_genus > 0:
                trace.append(
                    f"fiber sum of two ruled pairs with total base genus {total_genus} > 0"
                )
                return MinimalityVerdict(MINIMAL, case="bundle_fiber", trace=tuple(trace))
            if x_kind.twisted and kind.twisted:
                trace.append(
                    "both summands are twisted bundles over S²: the sum is the trivial bundle"
                )
                return MinimalityVerdict(MINIMAL, case="bundle_fiber", trace=tuple(trace))
            if kind.twisted != x_kind.twisted:
                # exactly one side twisted over S²: the sum is the twisted
                # bundle, which contains the exceptional sphere s - f
                sum_model = s2_bundle(0, twisted=True)
                witness = sum_model.lattice.cls((1, -1))
                assert sum_model.square(witness) == -1
                assert sum_model.k_pairing(witness) == -1
                trace.append(
                    "exactly one summand twisted over S²: the sum is the twisted "
                    "bundle, whose class s - f is exceptional (witness lives in "
                    "the sum's lattice)"
                )
                return MinimalityVerdict(
                    NOT_MINIMAL, witness, case="bundle_fiber", trace=tuple(trace)
                )
        if y_trivial:
            trace.append(
                "summing with (S²×S², fiber) along a square-0 sphere returns X"
            )
            return MinimalityVerdict(
                CONDITIONALLY_MINIMAL,
                condition="iff X minimal",
                case="bundle_fiber",
                trace=tuple(trace),
            )
        trace.append("fiber cap with a non-ruled summand: outside the decided cases")
        return MinimalityVerdict(UNKNOWN, case="bundle_fiber", trace=tuple(trace))

    # bundle_section: the sum along a section of an S²-bundle over S²
    trace.append("summing along a section of an S²-bundle over S² does not change X")
    return MinimalityVerdict(
        CONDITIONALLY_MINIMAL,
        condition="iff X minimal",
        case="bundle_section",
        trace=tuple(trace),
    )
