"""Dimension and index arithmetic for absolute, relative and multilevel curves.

Conventions: constraint degrees are reported in real (doubled) form, matching
how insertion degrees are counted; curve indices I(A, g) and the multilevel
index are complex dimensions.  Each operation's docstring says which it uses.

The artifact never computes invariant *values*: a NotExcluded verdict is
deliberately weak and is never a nonvanishing claim.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ContactMismatchError, MalformedDecompositionError
from .lattice import HomologyClass, ManifoldModel, SymplecticPair
from .models import completion_Q, cp2_blowup


@dataclass(frozen=True)
class ContactVector:
    """Ordered contact orders s = (s₁, ..., s_r) with the hypersurface."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(s) for s in self.orders))
        if any(s < 1 for s in self.orders):
            raise ContactMismatchError("contact orders must be positive")

    @property
    def r(self) -> int:
        return len(self.orders)

    def total(self) -> int:
        return sum(self.orders)


def absolute_constraint_degree(M: ManifoldModel, A: HomologyClass, g: int, n: int) -> int:
    """Total real degree the n insertions must carry: 2(-K·A + (g-1) + n)."""
    return 2 * (-M.k_pairing(A) + (g - 1) + n)


def relative_constraint_degree(
    P: SymplecticPair, A: HomologyClass, g: int, s: ContactVector, n: int = 0
) -> int:
    """Total real insertion degree 2(-K·A + (g-1) + n + r - Σsᵢ); requires Σsᵢ = A·V."""
    av = P.v_pairing(A)
    if s.total() != av:
        raise ContactMismatchError(f"contact orders sum to {s.total()} but A·V = {av}")
    return 2 * (-P.model.k_pairing(A) + (g - 1) + n + s.r - s.total())


VANISHES = "vanishes"
NOT_EXCLUDED = "not_excluded"


@dataclass(frozen=True)
class VanishingVerdict:
    verdict: str  # VANISHES or NOT_EXCLUDED
    reason: Optional[str] = None

    def __post_init__(self):
        if self.verdict == VANISHES and not self.reason:
            raise ValueError("a vanishing verdict must carry a reason")

    @property
    def vanishes(self) -> bool:
        return self.verdict == VANISHES


def _is_plane_with_line(P: SymplecticPair) -> bool:
    cp2 = cp2_blowup(0)
    return (
        P.model.lattice == cp2.lattice
        and P.model.K.coeffs == cp2.K.coeffs
        and P.V.coeffs == (1,)
    )


def purely_relative_vanishes(P: SymplecticPair, A: HomologyClass, g: int) -> VanishingVerdict:
    """Vanishing test for relative invariants with no absolute insertions.

    Two sufficient conditions are checked: genus-0 classes d·H, d > 0,
    relative to a line in the plane always vanish; and in any symplectic
    pair, (K+V)·A < g-1 leaves no room for the relative insertions.
    """
    if _is_plane_with_line(P) and g == 0 and A.coeffs[0] > 0:
        return VanishingVerdict(VANISHES, "line_class: genus-0 invariants of d·H relative to a line vanish for d > 0")
    kv = P.model.k_pairing(A) + P.v_pairing(A)
    if kv < g - 1:
        return VanishingVerdict(
            VANISHES, f"degree_bound: (K+V)·A = {kv} < g-1 = {g - 1}"
        )
    return VanishingVerdict(NOT_EXCLUDED)


@dataclass(frozen=True)
class Level:
    """One level of a degenerate curve, mapped into the bundle completion Q."""

    cls: HomologyClass
    genus: int
    contacts_zero: int  # contact points with the zero section
    contacts_inf: int  # contact points with the infinity section


@dataclass(frozen=True)
class LevelDecomposition:
    """Levels C₀ (in X) and C₁..C_m (in Q) of a degenerate curve."""

    base_class: HomologyClass
    base_genus: int
    base_contacts: int  # contact points of C₀ with V
    levels: tuple[Level, ...] = ()

    @property
    def m(self) -> int:
        return len(self.levels)


def _validate_decomposition(P: SymplecticPair, D: LevelDecomposition) -> ManifoldModel:
    """Checks the matching invariants; returns the completion Q used by levels."""
    n = P.v_square()
    Q, V0, Vinf = completion_Q(n)
    if not P.model.lattice.owns(D.base_class):
        raise MalformedDecompositionError("level 0 class must live in the X lattice")
    if D.base_genus < 0 or D.base_contacts < 0:
        raise MalformedDecompositionError("level 0 genus and contact count must be non-negative")
    prev_pairing = P.v_pairing(D.base_class)
    prev_contacts = D.base_contacts
    for i, lvl in enumerate(D.levels, start=1):
        if not Q.lattice.owns(lvl.cls):
            raise MalformedDecompositionError(f"level {i} class must live in the Q lattice")
        if lvl.genus < 0 or lvl.contacts_zero < 1 or lvl.contacts_inf < 0:
            raise MalformedDecompositionError(f"level {i} has malformed genus or contact counts")
        if lvl.contacts_zero != prev_contacts:
            raise MalformedDecompositionError(
                f"level {i}: contact count with the zero section is {lvl.contacts_zero}, "
                f"but the previous level meets the interface in {prev_contacts} points"
            )
        if Q.pairing(lvl.cls, V0) != prev_pairing:
            raise MalformedDecompositionError(
                f"level {i}: pairing with the zero section is {Q.pairing(lvl.cls, V0)}, "
                f"but the previous level pairs {prev_pairing} with the interface"
            )
        prev_pairing = Q.pairing(lvl.cls, Vinf)
        prev_contacts = lvl.contacts_inf
    return Q


def glued_genus(D: LevelDecomposition) -> int:
    """Genus of the glued curve: Σgᵢ + Σ_{i≥1} r_{i0} - m."""
    g = D.base_genus + sum(l.genus for l in D.levels)
    g += sum(l.contacts_zero for l in D.levels) - D.m
    if g < 0:
        raise MalformedDecompositionError(f"glued genus is negative ({g})")
    return g


def glued_class(P: SymplecticPair, D: LevelDecomposition) -> HomologyClass:
    """Class of the glued curve: C₀ plus the section degrees of the levels times V."""
    _validate_decomposition(P, D)
    section_degree = sum(l.cls.coeffs[0] for l in D.levels)  # b-coefficient
    return D.base_class + section_degree * P.V


def strata_dimension_bound(P: SymplecticPair, D: LevelDecomposition) -> int:
    """I(A, g) - m, the generic strata bound for an (m+1)-level curve."""
    _validate_decomposition(P, D)
    A = glued_class(P, D)
    g = glued_genus(D)
    r = D.levels[-1].contacts_inf if D.levels else D.base_contacts
    i_ag = -P.model.k_pairing(A) + (g - 1) + r - P.v_pairing(A)
    return i_ag - D.m


def multilevel_index(P: SymplecticPair, D: LevelDecomposition) -> int:
    """Index of the preglued (m+1)-level curve, complex-dimension convention.

    Computed twice: as the sum of per-level indices minus the gluing
    transversality corrections, and as the closed form obtained from the
    glued class and genus; the two are asserted equal.  The result never
    exceeds strata_dimension_bound, strictly so for m ≥ 1.
    """
    Q = _validate_decomposition(P, D)
    n = P.v_square()
    _, V0, Vinf = completion_Q(n)

    i0 = (
        -P.model.k_pairing(D.base_class)
        + (D.base_genus - 1)
        + D.base_contacts
        - P.v_pairing(D.base_class)
    )
    total = i0
    for lvl in D.levels:
        total += (
            -Q.k_pairing(lvl.cls)
            + (lvl.genus - 1)
            + lvl.contacts_zero
            - Q.pairing(lvl.cls, V0)
            + lvl.contacts_inf
            - Q.pairing(lvl.cls, Vinf)
            - 1  # fiberwise scaling action
        )
    total -= 2 * sum(l.contacts_zero for l in D.levels)

    # independent closed form from the glued data
    A = glued_class(P, D)
    g = glued_genus(D)
    r = D.levels[-1].contacts_inf if D.levels else D.base_contacts
    closed = (
        -P.model.k_pairing(A)
        + (g - 1)
        + r
        - P.v_pairing(A)
        - D.m
        - sum(l.contacts_zero for l in D.levels)
    )
    assert total == closed, f"level sum {total} disagrees with closed form {closed}"
    return total
