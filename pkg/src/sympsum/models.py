"""Constructors for the standard manifolds, pairs and caps, plus blow-up/down.

Conventions:
  * rational models use basis H, e1, ..., ek with gram diag(1, -1, ..., -1)
    and K = -3H + sum(ei);
  * rank-2 ruled models use basis (s, f) with f² = 0, s·f = 1 and s² = 0
    (untwisted) or 1 (twisted); K = -2s + (2g-2+s²) f;
  * the projective completion of the normal bundle of a square-n sphere uses
    basis (b, f) with b² = -n (the zero section, opposite orientation) and
    infinity section b + n·f of square n.

A one-point blow-up of the twisted and of the untwisted bundle over the same
base are symplectomorphic; that fact is recorded here, not in code.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BasisChangeNotFound, NotExceptionalError, PreconditionError
from .lattice import (
    HomologyClass,
    IntersectionLattice,
    ManifoldModel,
    ModelFlags,
    SymplecticPair,
    adjunction_genus,
)


def cp2_blowup(k: int) -> ManifoldModel:
    """CP² blown up at k points: diag(1, -1^k), K = -3H + Σeᵢ, χ = 3+k, σ = 1-k."""
    if k < 0:
        raise PreconditionError("number of blow-ups must be non-negative")
    names = ("H",) + tuple(f"e{i}" for i in range(1, k + 1))
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(k + 1))
        for i in range(k + 1)
    )
    L = IntersectionLattice(names, gram)
    K = L.cls((-3,) + (1,) * k)
    return ManifoldModel(L, K, euler=3 + k, signature=1 - k, flags=ModelFlags(rational=True))


def s2_bundle(g: int, twisted: bool) -> ManifoldModel:
    """The S²-bundle over a genus-g surface; basis (s, f), s² = 0 or 1."""
    if g < 0:
        raise PreconditionError("base genus must be non-negative")
    c = 1 if twisted else 0
    L = IntersectionLattice(("s", "f"), ((c, 1), (1, 0)))
    K = L.cls((-2, 2 * g - 2 + c))
    return ManifoldModel(
        L, K, euler=4 - 4 * g, signature=0, flags=ModelFlags(rational=(g == 0), ruled=True)
    )


def completion_Q(n: int) -> tuple[ManifoldModel, HomologyClass, HomologyClass]:
    """Projective completion of the normal bundle of a square-n sphere.

    Returns (Q, V0, Vinf) with V0² = -n (zero section, opposite orientation)
    and Vinf² = n; the two sections are disjoint: V0·Vinf = 0.
    """
    L = IntersectionLattice(("b", "f"), ((-n, 1), (1, 0)))
    K = L.cls((-2, -(n + 2)))
    Q = ManifoldModel(L, K, euler=4, signature=0, flags=ModelFlags(rational=True, ruled=True))
    V0 = L.cls((1, 0))
    Vinf = L.cls((1, n))
    return Q, V0, Vinf


def _next_exceptional_label(names: tuple[str, ...]) -> str:
    used = set(names)
    i = 1
    while f"e{i}" in used:
        i += 1
    return f"e{i}"


def blow_up(M: ManifoldModel) -> ManifoldModel:
    """Extend the lattice by an orthogonal (-1)-class e; K -> K+e, χ+1, σ-1."""
    L = M.lattice
    n = L.rank
    names = L.basis_names + (_next_exceptional_label(L.basis_names),)
    gram = tuple(tuple(L.gram[i]) + (0,) for i in range(n)) + (
        tuple(0 for _ in range(n)) + (-1,),
    )
    L2 = IntersectionLattice(names, gram)
    K2 = L2.cls(M.K.coeffs + (1,))
    return ManifoldModel(L2, K2, euler=M.euler + 1, signature=M.signature - 1, flags=M.flags)


def exceptional_class_of(M: ManifoldModel) -> HomologyClass:
    """The last basis class; the exceptional class of the most recent blow_up."""
    return M.lattice.basis_class(M.lattice.basis_names[-1])


def proper_transform(A: HomologyClass, e: HomologyClass, m: int) -> HomologyClass:
    """The class A - m·e of a curve through the blown-up point with multiplicity m."""
    if m < 0:
        raise PreconditionError("multiplicity must be non-negative")
    return A - m * e


def _kernel_basis_of_functional(g: tuple[int, ...]) -> list[list[int]]:
    """Integer basis of {x : g·x = 0}, by a unimodular column reduction of g."""
    n = len(g)
    # columns of U track the basis change; reduce g to (d, 0, ..., 0)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = list(g)

    def col_op(dst: int, src: int, q: int) -> None:
        v[dst] -= q * v[src]
        for row in u:
            row[dst] -= q * row[src]

    while True:
        nz = [i for i in range(n) if v[i] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda i: abs(v[i]))
        p = nz[0]
        for i in nz[1:]:
            col_op(i, p, v[i] // v[p])
    kernel = [[u[r][c] for r in range(n)] for c in range(n) if v[c] == 0]
    return kernel


def blow_down(M: ManifoldModel, E: HomologyClass) -> ManifoldModel:
    """Inverse of blow_up along an exceptional candidate E (E² = K·E = -1).

    The orthogonal complement of E is computed exactly: a unimodular change of
    basis splits the lattice as ⟨E⟩ ⊕ E^⊥ whenever one exists; otherwise
    BasisChangeNotFound is raised.
    """
    L = M.lattice
    if M.square(E) != -1 or M.k_pairing(E) != -1:
        raise NotExceptionalError(
            f"class has E² = {M.square(E)}, K·E = {M.k_pairing(E)}; need both -1"
        )
    g = L.gram_vector(E)
    kernel = _kernel_basis_of_functional(g)
    if len(kernel) != L.rank - 1:
        raise BasisChangeNotFound("orthogonal complement of E has unexpected rank")

    def pair_vec(x: list[int], y: list[int]) -> int:
        return sum(L.gram[i][j] * x[i] * y[j] for i in range(L.rank) for j in range(L.rank))

    new_gram = tuple(tuple(pair_vec(a, b) for b in kernel) for a in kernel)

    # K of the blown-down model: K - E expressed in the complement basis
    target = [k - e for k, e in zip(M.K.coeffs, E.coeffs)]
    coords = _solve_integer(kernel, target)
    if coords is None:
        raise BasisChangeNotFound("K - E is not integral over the complement basis")

    names = []
    for vec in kernel:
        unit = _unit_index(vec)
        names.append(L.basis_names[unit] if unit is not None else None)
    for i, nm in enumerate(names):
        if nm is None or names.count(nm) > 1:
            names[i] = f"c{i + 1}"
    L2 = IntersectionLattice(tuple(names), new_gram)
    K2 = L2.cls(coords)
    return ManifoldModel(L2, K2, euler=M.euler - 1, signature=M.signature + 1, flags=M.flags)


def _unit_index(vec: list[int]) -> Optional[int]:
    nz = [i for i, x in enumerate(vec) if x != 0]
    if len(nz) == 1 and vec[nz[0]] == 1:
        return nz[0]
    return None


def _solve_integer(columns: list[list[int]], target: list[int]) -> Optional[tuple[int, ...]]:
    """Solve sum(x_c * columns[c]) = target over the integers, if possible."""
    n = len(target)
    m = len(columns)
    a = [[Fraction(columns[c][r]) for c in range(m)] + [Fraction(target[r])] for r in range(n)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    for r in range(row, n):
        if a[r][m] != 0:
            return None
    sol = [Fraction(0)] * m
    for r, col in enumerate(pivots):
        sol[col] = a[r][m]
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


@dataclass(frozen=True)
class CapKind:
    """One of the four sphere-cap families."""

    family: str  # cp2_h | cp2_2h | bundle_fiber | bundle_section
    genus: Optional[int] = None
    twisted: Optional[bool] = None
    n: Optional[int] = None

    def label(self) -> str:
        if self.family == "bundle_fiber":
            return f"bundle_fiber(g={self.genus},{'twisted' if self.twisted else 'untwisted'})"
        if self.family == "bundle_section":
            return f"bundle_section(n={self.n})"
        return self.family


@dataclass(frozen=True)
class StandardCap:
    kind: CapKind
    pair: SymplecticPair


def cap_cp2_h() -> StandardCap:
    M = cp2_blowup(0)
    return StandardCap(CapKind("cp2_h"), SymplecticPair(M, M.lattice.cls((1,)), 0))


def cap_cp2_2h() -> StandardCap:
    M = cp2_blowup(0)
    return StandardCap(CapKind("cp2_2h"), SymplecticPair(M, M.lattice.cls((2,)), 0))


def cap_bundle_fiber(g: int, twisted: bool) -> StandardCap:
    M = s2_bundle(g, twisted)
    return StandardCap(
        CapKind("bundle_fiber", genus=g, twisted=twisted),
        SymplecticPair(M, M.lattice.basis_class("f"), 0),
    )


def cap_bundle_section(n: int) -> StandardCap:
    """S²-bundle over S² with a square-n section marked."""
    L = IntersectionLattice(("s", "f"), ((n, 1), (1, 0)))
    K = L.cls((-2, n - 2))
    M = ManifoldModel(L, K, euler=4, signature=0, flags=ModelFlags(rational=True, ruled=True))
    return StandardCap(CapKind("bundle_section", n=n), SymplecticPair(M, L.cls((1, 0)), 0))


def standard_caps(max_genus: int = 2, section_squares: range = range(-2, 3)) -> list[StandardCap]:
    """The four cap families, with the parameterized ones sampled over small ranges."""
    caps = [cap_cp2_h(), cap_cp2_2h()]
    for g in range(max_genus + 1):
        for twisted in (False, True):
            caps.append(cap_bundle_fiber(g, twisted))
    for n in section_squares:
        caps.append(cap_bundle_section(n))
    return caps
