"""Exact integer arithmetic on marked intersection lattices.

A 4-manifold is modeled by the lattice shadow of its topology: an integral
Gram matrix over a named basis, a canonical class K, and the characteristic
numbers (euler characteristic, signature).  All arithmetic is exact; squares
and pairings are plain Python integers, the adjunction genus is a Fraction so
integrality can be used as a filter.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BasisError


def _as_int_tuple(v: Iterable[int]) -> tuple[int, ...]:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class HomologyClass:
    """Integer coefficient vector over a named lattice basis."""

    basis_ref: str
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_int_tuple(self.coeffs))

    def _check(self, other: "HomologyClass") -> None:
        if self.basis_ref != other.basis_ref:
            raise BasisError(
                f"classes live in different lattices: {self.basis_ref!r} vs {other.basis_ref!r}"
            )

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._check(other)
        return HomologyClass(self.basis_ref, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        self._check(other)
        return HomologyClass(self.basis_ref, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.basis_ref, tuple(-a for a in self.coeffs))

    def __rmul__(self, n: int) -> "HomologyClass":
        return HomologyClass(self.basis_ref, tuple(n * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


@dataclass(frozen=True)
class IntersectionLattice:
    """An integral symmetric bilinear form over a named basis.

    Two lattices with the same basis names and Gram matrix are the same
    lattice; classes refer to their lattice through a content hash, so
    cross-lattice pairing is an error, never a silent coercion.
    """

    basis_names: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    ref: str = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "basis_names", tuple(self.basis_names))
        object.__setattr__(self, "gram", tuple(_as_int_tuple(row) for row in self.gram))
        digest = hashlib.sha1(
            repr((self.basis_names, self.gram)).encode()
        ).hexdigest()[:12]
        object.__setattr__(self, "ref", f"{','.join(self.basis_names)}#{digest}")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def cls(self, coeffs: Sequence[int]) -> HomologyClass:
        c = _as_int_tuple(coeffs)
        if len(c) != self.rank:
            raise BasisError(f"expected {self.rank} coefficients, got {len(c)}")
        return HomologyClass(self.ref, c)

    def basis_class(self, name: str) -> HomologyClass:
        i = self.basis_names.index(name)
        return self.cls(tuple(1 if j == i else 0 for j in range(self.rank)))

    def zero(self) -> HomologyClass:
        return self.cls((0,) * self.rank)

    def owns(self, A: HomologyClass) -> bool:
        return A.basis_ref == self.ref

    def gram_vector(self, A: HomologyClass) -> tuple[int, ...]:
        """The dual vector G·A, so that pairing(A, B) = (G·A)·coeffs(B)."""
        if not self.owns(A):
            raise BasisError(f"class from {A.basis_ref!r} paired against lattice {self.ref!r}")
        return tuple(sum(row[j] * A.coeffs[j] for j in range(self.rank)) for row in self.gram)


def pairing(L: IntersectionLattice, A: HomologyClass, B: HomologyClass) -> int:
    """The intersection number A·B; symmetric and bilinear."""
    if not (L.owns(A) and L.owns(B)):
        raise BasisError("pairing requires both classes to belong to the given lattice")
    gA = L.gram_vector(A)
    return sum(g * b for g, b in zip(gA, B.coeffs))


def square(L: IntersectionLattice, A: HomologyClass) -> int:
    return pairing(L, A, A)


def _fraction_matrix(gram) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in gram]


def gram_determinant(gram: Sequence[Sequence[int]]) -> Fraction:
    """Exact determinant by fraction-free-enough Gaussian elimination."""
    n = len(gram)
    m = _fraction_matrix(gram)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        inv = 1 / m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] * inv
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def gram_signature(gram: Sequence[Sequence[int]]) -> int:
    """Signature (positive minus negative inertia) by exact congruence diagonalization."""
    n = len(gram)
    m = _fraction_matrix(gram)
    pos = neg = 0
    for i in range(n):
        if m[i][i] == 0:
            j = next((r for r in range(i + 1, n) if m[r][r] != 0), None)
            if j is not None:
                m[i], m[j] = m[j], m[i]
                for row in m:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((c for c in range(i + 1, n) if m[i][c] != 0), None)
                if j is None:
                    continue  # row is null: zero eigenvalue
                # fold basis vector j into i to create a nonzero diagonal entry
                for c in range(n):
                    m[i][c] += m[j][c]
                for r in range(n):
                    m[r][i] += m[r][j]
        d = m[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(i + 1, n):
            f = m[r][i] / d
            if f:
                for c in range(n):
                    m[r][c] -= f * m[i][c]
                for rr in range(n):
                    m[rr][r] -= f * m[rr][i]
    return pos - neg


@dataclass(frozen=True)
class ModelFlags:
    rational: bool = False
    ruled: bool = False
    closed: bool = True
    minimal_known: Optional[bool] = None


@dataclass(frozen=True)
class ManifoldModel:
    """Intersection lattice + canonical class + characteristic numbers."""

    lattice: IntersectionLattice
    K: HomologyClass
    euler: int
    signature: int
    flags: ModelFlags = ModelFlags()

    def pairing(self, A: HomologyClass, B: HomologyClass) -> int:
        return pairing(self.lattice, A, B)

    def square(self, A: HomologyClass) -> int:
        return square(self.lattice, A)

    def k_pairing(self, A: HomologyClass) -> int:
        return pairing(self.lattice, self.K, A)


@dataclass(frozen=True)
class SymplecticPair:
    """A manifold model with a marked genus-0 hypersurface class."""

    model: ManifoldModel
    V: HomologyClass
    V_genus: int = 0

    def v_square(self) -> int:
        return self.model.square(self.V)

    def v_pairing(self, A: HomologyClass) -> int:
        return self.model.pairing(self.V, A)


def adjunction_genus(M: ManifoldModel, A: HomologyClass) -> Fraction:
    """g = 1 + (A² + K·A)/2, exact; integer iff A² + K·A is even."""
    return 1 + Fraction(M.square(A) + M.k_pairing(A), 2)


def validate_model(M: ManifoldModel) -> list[str]:
    """All violations of the model's structural invariants (empty list = ok)."""
    violations: list[str] = []
    L = M.lattice
    n = L.rank
    if any(len(row) != n for row in L.gram):
        violations.append("gram is not square")
        return violations
    for i in range(n):
        for j in range(i + 1, n):
            if L.gram[i][j] != L.gram[j][i]:
                violations.append(f"gram not symmetric at ({L.basis_names[i]},{L.basis_names[j]})")
    if violations:
        return violations
    if not L.owns(M.K):
        violations.append("canonical class K does not belong to the model lattice")
        return violations
    if M.flags.closed:
        det = gram_determinant(L.gram)
        if abs(det) != 1:
            violations.append(f"not unimodular: |det| = {abs(det)}")
        sig = gram_signature(L.gram)
        if sig != M.signature:
            violations.append(f"signature mismatch: gram gives {sig}, model records {M.signature}")
        k2 = M.square(M.K)
        expected = 2 * M.euler + 3 * M.signature
        if k2 != expected:
            violations.append(f"K² = {k2} but 2χ+3σ = {expected}")
    return violations


def validate_pair(P: SymplecticPair) -> list[str]:
    violations = validate_model(P.model)
    if not P.model.lattice.owns(P.V):
        violations.append("hypersurface class V does not belong to the model lattice")
        return violations
    g = adjunction_genus(P.model, P.V)
    if g != P.V_genus:
        violations.append(f"adjunction genus of V is {g}, recorded genus is {P.V_genus}")
    return violations
