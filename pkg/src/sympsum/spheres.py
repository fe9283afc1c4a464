"""Bounded Diophantine enumeration of spherical classes.

Enumeration walks the coefficient box coordinate by coordinate with exact
interval pruning on the quadratic form and on the linear functionals K·x and
V·x; purely negative-definite tails additionally get a Cauchy-Schwarz cut,
which is what makes rank-11 rational lattices fast.  Every emitted class is
rechecked against its defining equations, and output is canonically sorted,
so results are deterministic.

"Exceptional candidate" always means the lattice conditions E² = -1,
K·E = -1; geometric representability is a stronger statement that the
lattice alone cannot certify.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import PreconditionError
from .lattice import (
    HomologyClass,
    ManifoldModel,
    SymplecticPair,
    adjunction_genus,
    gram_signature,
)
from .models import blow_up, cp2_blowup, s2_bundle

_E_LABEL = re.compile(r"e\d+")


def canonical_key(M: ManifoldModel, A: HomologyClass):
    """Sort key: non-exceptional coefficients, then e-coefficients descending."""
    names = M.lattice.basis_names
    e_idx = {i for i, nm in enumerate(names) if _E_LABEL.fullmatch(nm)}
    rest = tuple(A.coeffs[i] for i in range(len(names)) if i not in e_idx)
    e_sorted = tuple(sorted((A.coeffs[i] for i in sorted(e_idx)), reverse=True))
    return (rest, e_sorted, A.coeffs)


def _enumerate_constrained(
    M: ManifoldModel,
    bound: int,
    square_target: int,
    k_target: int,
    V: Optional[HomologyClass] = None,
    v_target: Optional[int] = None,
) -> list[HomologyClass]:
    """All classes x in the coefficient box with x² = square_target,
    K·x = k_target and (optionally) V·x = v_target."""
    if bound < 1:
        raise PreconditionError("bound must be a positive integer")
    L = M.lattice
    n = L.rank
    G = L.gram
    diag = [G[i][i] for i in range(n)]
    w = list(L.gram_vector(M.K))
    u = list(L.gram_vector(V)) if V is not None else None

    # exact suffix ranges for the linear functionals
    def suffix_ranges(weights):
        lo = [0] * (n + 1)
        hi = [0] * (n + 1)
        for d in range(n - 1, -1, -1):
            lo[d] = lo[d + 1] - abs(weights[d]) * bound
            hi[d] = hi[d + 1] + abs(weights[d]) * bound
        return lo, hi

    w_lo, w_hi = suffix_ranges(w)
    u_lo, u_hi = suffix_ranges(u) if u is not None else (None, None)

    # loose suffix ranges for the diagonal part of the quadratic form
    qd_lo = [0] * (n + 1)
    qd_hi = [0] * (n + 1)
    off_fut = [0] * (n + 1)
    for d in range(n - 1, -1, -1):
        qd_lo[d] = qd_lo[d + 1] + min(0, diag[d]) * bound * bound
        qd_hi[d] = qd_hi[d + 1] + max(0, diag[d]) * bound * bound
        off_fut[d] = off_fut[d + 1] + sum(abs(G[d][j]) for j in range(d + 1, n))

    # tails of mutually orthogonal (-1)-vectors admit a Cauchy-Schwarz cut
    neg_unit_tail = [False] * (n + 1)
    neg_unit_tail[n] = True
    w_sq = [0] * (n + 1)
    u_sq = [0] * (n + 1)
    for d in range(n - 1, -1, -1):
        pure = diag[d] == -1 and all(G[d][j] == 0 for j in range(n) if j != d)
        neg_unit_tail[d] = pure and neg_unit_tail[d + 1]
        w_sq[d] = w_sq[d + 1] + w[d] * w[d]
        if u is not None:
            u_sq[d] = u_sq[d + 1] + u[d] * u[d]

    out: list[HomologyClass] = []
    x = [0] * n
    cross = [0] * n  # cross[j] = sum_{i<depth} G[i][j]·x[i]

    def dfs(d: int, q_part: int, k_part: int, v_part: int) -> None:
        need_q = square_target - q_part
        need_k = k_target - k_part
        if not (w_lo[d] <= need_k <= w_hi[d]):
            return
        if u is not None:
            need_v = v_target - v_part
            if not (u_lo[d] <= need_v <= u_hi[d]):
                return
        rem = n - d
        if d == n:
            if need_q == 0 and need_k == 0:
                out.append(L.cls(tuple(x)))
            return
        lin_slack = 2 * bound * sum(abs(cross[j]) for j in range(d, n))
        off_slack = 2 * off_fut[d] * bound * bound
        if not (qd_lo[d] - lin_slack - off_slack <= need_q <= qd_hi[d] + lin_slack + off_slack):
            return
        if neg_unit_tail[d]:
            s2 = -need_q  # remaining sum of squares
            if s2 < 0 or s2 > rem * bound * bound:
                return
            if need_k * need_k > w_sq[d] * s2:
                return
            if u is not None and need_v * need_v > u_sq[d] * s2:
                return
        gd = G[d]
        for val in range(-bound, bound + 1):
            x[d] = val
            dq = diag[d] * val * val + 2 * cross[d] * val
            for j in range(d + 1, n):
                cross[j] += gd[j] * val
            dfs(
                d + 1,
                q_part + dq,
                k_part + w[d] * val,
                v_part + (u[d] * val if u is not None else 0),
            )
            for j in range(d + 1, n):
                cross[j] -= gd[j] * val
        x[d] = 0

    dfs(0, 0, 0, 0)
    for cls in out:  # recheck the defining equations via the public pairing
        assert M.square(cls) == square_target and M.k_pairing(cls) == k_target
    out.sort(key=lambda c: canonical_key(M, c))
    return out


def _rank2_bundle_candidates(M: ManifoldModel) -> Optional[list[HomologyClass]]:
    """Complete list of exceptional candidates in a rank-2 ruled lattice
    (basis (s, f) with f² = 0, s·f = 1), found by exact solve; None if the
    lattice does not have that shape."""
    L = M.lattice
    if L.rank != 2 or L.gram[1][1] != 0 or L.gram[0][1] != 1:
        return None
    c = L.gram[0][0]
    found = []
    # alpha·(c·alpha + 2·beta) = -1 forces alpha = ±1
    for alpha in (1, -1):
        num = -1 - c * alpha * alpha  # 2·alpha·beta = -1 - c·alpha²
        if num % (2 * alpha) == 0:
            beta = num // (2 * alpha)
            E = L.cls((alpha, beta))
            if M.square(E) == -1 and M.k_pairing(E) == -1:
                found.append(E)
    found.sort(key=lambda e: canonical_key(M, e))
    return found


def enumerate_exceptional_candidates(M: ManifoldModel, bound: int) -> list[HomologyClass]:
    """All classes in the coefficient box with E² = -1 and K·E = -1."""
    return _enumerate_constrained(M, bound, square_target=-1, k_target=-1)


@dataclass(frozen=True)
class SphereClassReport:
    cls: HomologyClass
    square: int
    genus_check: int
    canonical_pairing: int  # K·A


def _is_cp2_blowup_shape(M: ManifoldModel) -> Optional[int]:
    """k if the model is structurally cp2_blowup(k), else None."""
    L = M.lattice
    k = L.rank - 1
    if k < 0 or L.basis_names[0] != "H":
        return None
    if L != cp2_blowup(k).lattice or M.K.coeffs != (-3,) + (1,) * k:
        return None
    return k


def _ruled_base_genus(M: ManifoldModel) -> Optional[int]:
    """Base genus of a (possibly blown-up) rank-2 bundle model, from χ."""
    names = M.lattice.basis_names
    if not (M.flags.ruled and "s" in names and "f" in names):
        return None
    k = sum(1 for nm in names if _E_LABEL.fullmatch(nm))
    g4 = 4 + k - M.euler
    if g4 % 4 != 0 or g4 < 0:
        return None
    return g4 // 4


def _degree_index(M: ManifoldModel) -> int:
    names = M.lattice.basis_names
    if "H" in names:
        return names.index("H")
    if "f" in names:
        return names.index("f")
    return 0


def _is_difference_of_exceptionals(
    M: ManifoldModel, A: HomologyClass, candidates: list[HomologyClass]
) -> bool:
    """Whether A = B0 - B1 - B2 - B3 for pairwise-orthogonal exceptional
    candidates, i.e. the triple blow-up of an exceptional sphere."""
    by_coeffs = {c.coeffs: c for c in candidates}
    heads = [B for B in candidates if M.pairing(B, A) == -1]
    for B0 in heads:
        rest = [
            B
            for B in candidates
            if M.pairing(B, A) == 1 and M.pairing(B, B0) == 0
        ]
        target = B0 - A
        for i, B1 in enumerate(rest):
            for B2 in rest[i + 1 :]:
                if M.pairing(B1, B2) != 0:
                    continue
                need = tuple(t - b1 - b2 for t, b1, b2 in zip(target.coeffs, B1.coeffs, B2.coeffs))
                B3 = by_coeffs.get(need)
                if B3 is None:
                    continue
                if M.pairing(B3, A) != 1 or M.pairing(B3, B0) != 0:
                    continue
                if M.pairing(B3, B1) == 0 and M.pairing(B3, B2) == 0:
                    return True
    return False


def enumerate_sphere_classes(
    M: ManifoldModel,
    square: int,
    bound: int,
    ambient_degree_positive: bool = False,
) -> list[SphereClassReport]:
    """All classes in the box with the given square and adjunction genus 0."""
    k_target = -2 - square  # genus 0 <=> K·A = -2 - A²
    classes = _enumerate_constrained(M, bound, square, k_target)
    if ambient_degree_positive:
        deg_idx = _degree_index(M)
        base_genus = _ruled_base_genus(M)
        s_idx = M.lattice.basis_names.index("s") if base_genus is not None else None
        candidates = None
        kept = []
        for cls in classes:
            if s_idx is not None and base_genus >= 1 and cls.coeffs[s_idx] != 0:
                continue  # spheres in an irrationally ruled model have no section part
            if cls.coeffs[deg_idx] > 0:
                kept.append(cls)
                continue
            if square == -4:
                if candidates is None:
                    candidates = enumerate_exceptional_candidates(M, bound)
                if _is_difference_of_exceptionals(M, cls, candidates):
                    kept.append(cls)
        classes = kept
    return [
        SphereClassReport(cls, M.square(cls), 0, M.k_pairing(cls)) for cls in classes
    ]


@dataclass(frozen=True)
class RationalRow:
    a: int
    delta: int
    k: int
    cls: HomologyClass
    model: ManifoldModel


def reproduce_rational_table() -> list[RationalRow]:
    """The square-(-4) sphere classes a·H - 2·Σ_{i≤δ}eᵢ - Σ_{δ<i≤k}eᵢ in
    rational manifolds, for every degree a admitted by a² - 4δ ≥ -4."""
    rows = []
    a = 1
    while True:
        delta = (a - 1) * (a - 2) // 2  # double points of a rational degree-a curve
        if a * a - 4 * delta < -4:
            break
        k = a * a - 3 * delta + 4
        M = cp2_blowup(k)
        coeffs = [a] + [-2] * delta + [-1] * (k - delta)
        A = M.lattice.cls(coeffs)
        assert M.square(A) == -4 and adjunction_genus(M, A) == 0
        rows.append(RationalRow(a, delta, k, A, M))
        a += 1
    assert rows[-1].a == 6  # the degree bound from a² - 4δ ≥ -4
    return rows


@dataclass(frozen=True)
class RuledRow:
    signs: tuple[int, ...]  # the multiset (a1..a4), descending
    a: int  # fiber degree
    representative: HomologyClass
    classes: tuple[HomologyClass, ...]
    model: ManifoldModel


def ruled_table_model(g: int = 1) -> ManifoldModel:
    M = s2_bundle(g, twisted=False)
    for _ in range(4):
        M = blow_up(M)
    return M


def reproduce_ruled_table(bound: int = 4, g: int = 1) -> list[RuledRow]:
    """The sign families of square-(-4) spheres a·f - Σaᵢeᵢ in a four-point
    blow-up of an irrationally ruled surface."""
    M = ruled_table_model(g)
    names = M.lattice.basis_names
    f_idx = names.index("f")
    e_idx = [i for i, nm in enumerate(names) if _E_LABEL.fullmatch(nm)]
    reports = enumerate_sphere_classes(M, -4, bound, ambient_degree_positive=True)
    families: dict[tuple[int, ...], list[HomologyClass]] = {}
    degrees: dict[tuple[int, ...], int] = {}
    for rep in reports:
        signs = tuple(sorted((-rep.cls.coeffs[i] for i in e_idx), reverse=True))
        families.setdefault(signs, []).append(rep.cls)
        a = rep.cls.coeffs[f_idx]
        assert degrees.setdefault(signs, a) == a  # degree is a family invariant
    rows = []
    for signs, classes in families.items():
        rows.append(
            RuledRow(signs, degrees[signs], classes[0], tuple(classes), M)
        )
    rows.sort(key=lambda r: -r.a)
    return rows


def exceptional_search_is_exhaustive(M: ManifoldModel, bound: int) -> Optional[str]:
    """A certificate that the coefficient box provably contains every
    exceptional candidate of the lattice, or None."""
    L = M.lattice
    n = L.rank
    if gram_signature(L.gram) == -n:
        # negative definite: x² = -1 is an ellipsoid with exact axis bounds
        P = [[Fraction(-L.gram[i][j]) for j in range(n)] for i in range(n)]
        inv = _invert(P)
        if inv is not None and all(inv[i][i] <= bound * bound for i in range(n)):
            return "negative-definite lattice: ellipsoid bounds within box"
        return None
    if _rank2_bundle_candidates(M) is not None:
        return "rank-2 ruled lattice: exact solve"
    k = _is_cp2_blowup_shape(M)
    if k is not None and k < 9:
        # E = aH - Σbᵢeᵢ: Σbᵢ² = a²+1 and Σbᵢ = 3a-1, so Cauchy-Schwarz
        # bounds the degree: (9-k)a² - 6a + (1-k) ≤ 0.
        if k == 0:
            return "no exceptional candidates in the rank-1 lattice"
        feasible = [a for a in range(-50, 51) if (9 - k) * a * a - 6 * a + (1 - k) <= 0]
        if not feasible:
            return "no exceptional candidates: degree inequality has no solution"
        a_max = max(abs(a) for a in feasible)
        b_max = math.isqrt(a_max * a_max + 1)
        if a_max <= bound and b_max <= bound:
            return f"rational lattice with k={k} ≤ 8: Cauchy-Schwarz degree bound |a| ≤ {a_max}"
    return None


def _invert(P: list[list[Fraction]]) -> Optional[list[list[Fraction]]]:
    n = len(P)
    a = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, row in enumerate(P)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _proportionality_to_canonical(M: ManifoldModel, V: HomologyClass) -> Optional[Fraction]:
    """c with V = c·K, if it exists and is nonzero."""
    c: Optional[Fraction] = None
    for v, k in zip(V.coeffs, M.K.coeffs):
        if k == 0:
            if v != 0:
                return None
            continue
        r = Fraction(v, k)
        if c is None:
            c = r
        elif c != r:
            return None
    if c is None or c == 0:
        return None
    return c


@dataclass(frozen=True)
class RelativeMinimality:
    """Outcome of the bounded relative-minimality test.

    is_minimal is None when the box was exhausted without a witness but no
    completeness certificate applies: bounded searches never claim minimality.
    """

    is_minimal: Optional[bool]
    witness: Optional[HomologyClass]
    certificate: Optional[str]


def is_relatively_minimal(P: SymplecticPair, bound: int) -> RelativeMinimality:
    """Search for an exceptional candidate disjoint from V (E·V = 0)."""
    M = P.model
    exact = _rank2_bundle_candidates(M)
    candidates = exact if exact is not None else enumerate_exceptional_candidates(M, bound)
    for E in candidates:
        if P.v_pairing(E) == 0:
            return RelativeMinimality(False, E, None)
    c = _proportionality_to_canonical(M, P.V)
    if c is not None:
        return RelativeMinimality(
            True, None, f"V = {c}·K, so E·V = -({c}) ≠ 0 for every candidate"
        )
    if exact is not None:
        return RelativeMinimality(True, None, "rank-2 ruled lattice: exact solve")
    cert = exceptional_search_is_exhaustive(M, bound)
    if cert is not None:
        return RelativeMinimality(True, None, cert)
    return RelativeMinimality(None, None, None)


def find_blowdown_witness_pairs(
    P: SymplecticPair, bound: int
) -> list[tuple[HomologyClass, HomologyClass]]:
    """All unordered pairs of distinct exceptional candidates with
    E₁·V = E₂·V = 1 and E₁·E₂ = 0, canonically sorted."""
    M = P.model
    if P.v_square() != -4 or P.V_genus != 0:
        raise PreconditionError(
            f"witness pairs are defined for a square-(-4) sphere; got V² = {P.v_square()}, genus {P.V_genus}"
        )
    ones = [E for E in enumerate_exceptional_candidates(M, bound) if P.v_pairing(E) == 1]
    dual = {E.coeffs: M.lattice.gram_vector(E) for E in ones}
    pairs = []
    for i, E1 in enumerate(ones):
        g1 = dual[E1.coeffs]
        for E2 in ones[i + 1 :]:
            if sum(a * b for a, b in zip(g1, E2.coeffs)) == 0:
                pairs.append((E1, E2))
    pairs.sort(key=lambda p: (canonical_key(M, p[0]), canonical_key(M, p[1])))
    return pairs
