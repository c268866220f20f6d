"""Exact rational linear and affine algebra.

Vectors are tuples of ``fractions.Fraction``; subspaces are kept in a
canonical form (reduced row echelon bases, orthogonal basepoints) so that
equality of subspaces is equality of their canonical data.  No floating
point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Q, ...]
Matrix = Tuple[Vector, ...]


def qv(*entries) -> Vector:
    """Build a vector, coercing ints/strings to exact rationals."""
    return tuple(Q(e) for e in entries)


def dot(u: Vector, v: Vector) -> Q:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Q(0))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Q, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def vneg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def zero_vector(n: int) -> Vector:
    return (Q(0),) * n


def is_zero(v: Vector) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Vector) -> Vector:
    """Scale to the primitive integer vector whose first nonzero entry is > 0."""
    if is_zero(v):
        return v
    from math import gcd, lcm

    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(Q(x) for x in ints)


def parallel(u: Vector, v: Vector) -> bool:
    """Whether two nonzero vectors span the same line."""
    return not is_zero(u) and not is_zero(v) and primitive(u) == primitive(v)


# -- matrices -----------------------------------------------------------------


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))


def mat_vec(A: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in A)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def outer(u: Vector, v: Vector) -> Matrix:
    return tuple(tuple(a * b for b in v) for a in u)


# -- row reduction ------------------------------------------------------------


def _rref_rows(rows: List[List[Q]]) -> List[List[Q]]:
    if not rows:
        return []
    n_cols = len(rows[0])
    piv = 0
    for col in range(n_cols):
        src = next((r for r in range(piv, len(rows)) if rows[r][col] != 0), None)
        if src is None:
            continue
        rows[piv], rows[src] = rows[src], rows[piv]
        lead = rows[piv][col]
        rows[piv] = [x / lead for x in rows[piv]]
        for r in range(len(rows)):
            if r != piv and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv])]
        piv += 1
        if piv == len(rows):
            break
    return [row for row in rows[:piv] if any(x != 0 for x in row)]


@dataclass(frozen=True)
class LinearSubspace:
    """A linear subspace of V, stored as its unique RREF basis."""

    ambient: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        if len(v) != self.ambient:
            raise ValueError("dimension mismatch")
        return is_zero(self.reduce(v))

    def reduce(self, v: Vector) -> Vector:
        """Eliminate v against the basis; zero iff v lies in the subspace."""
        work = list(v)
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x != 0)
            if work[lead] != 0:
                f = work[lead]
                work = [a - f * b for a, b in zip(work, row)]
        return tuple(work)

    def contains_subspace(self, other: "LinearSubspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def perp(self) -> "LinearSubspace":
        """Orthogonal complement, via the standard RREF nullspace basis."""
        n = self.ambient
        if not self.basis:
            return span(identity_matrix(n), n)
        pivots = [next(i for i, x in enumerate(row) if x != 0) for row in self.basis]
        free = [j for j in range(n) if j not in pivots]
        out = []
        for j in free:
            v = [Q(0)] * n
            v[j] = Q(1)
            for row, p in zip(self.basis, pivots):
                v[p] = -row[j]
            out.append(tuple(v))
        return span(out, n)

    def sum(self, other: "LinearSubspace") -> "LinearSubspace":
        return span(list(self.basis) + list(other.basis), self.ambient)

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        return self.perp().sum(other.perp()).perp()

    def project(self, v: Vector) -> Vector:
        """Orthogonal projection of v onto the subspace."""
        if not self.basis:
            return zero_vector(self.ambient)
        B = self.basis
        gram = tuple(tuple(dot(a, b) for b in B) for a in B)
        rhs = tuple(dot(a, v) for a in B)
        coeffs, _ = solve(gram, rhs)
        assert coeffs is not None
        out = zero_vector(self.ambient)
        for c, row in zip(coeffs, B):
            out = vadd(out, vscale(c, row))
        return out


def span(rows: Iterable[Sequence[Q]], ambient: int) -> LinearSubspace:
    """Canonical subspace spanned by the given rows (RREF, idempotent)."""
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != ambient:
            raise ValueError("row length does not match ambient dimension")
    return LinearSubspace(ambient, tuple(tuple(r) for r in _rref_rows(rows)))


def rref(rows: Iterable[Sequence[Q]], ambient: int) -> LinearSubspace:
    return span(rows, ambient)


def solve(A: Sequence[Sequence[Q]], b: Sequence[Q]) -> Tuple[Optional[Vector], LinearSubspace]:
    """Solve A x = b exactly.

    Returns (particular solution with free variables at zero, or None when
    inconsistent; nullspace of A).
    """
    rows = [list(r) for r in A]
    n_cols = len(rows[0]) if rows else 0
    null = span(rows, n_cols).perp()
    red = _rref_rows([row + [rhs] for row, rhs in zip(rows, b)])
    x = [Q(0)] * n_cols
    for row in red:
        lead = next(i for i, v in enumerate(row) if v != 0)
        if lead == n_cols:  # row reads 0 = 1: inconsistent
            return None, null
        x[lead] = row[n_cols]
    return tuple(x), null


# -- affine subspaces ---------------------------------------------------------


@dataclass(frozen=True)
class AffineSubspace:
    """An affine subspace in standard form: basepoint orthogonal to directions.

    Used both for affine subsets of the vector space V (move-sets) and for
    affine subsets of the point space E (min-sets, hyperplanes, chambers).
    """

    base: Vector
    directions: LinearSubspace

    @property
    def ambient(self) -> int:
        return self.directions.ambient

    @property
    def dim(self) -> int:
        return self.directions.dim

    def is_linear(self) -> bool:
        return is_zero(self.base)

    def contains(self, p: Vector) -> bool:
        return self.directions.contains(vsub(p, self.base))

    def contains_subspace(self, other: "AffineSubspace") -> bool:
        return self.directions.contains_subspace(other.directions) and self.contains(
            other.base
        )

    def translate(self, v: Vector) -> "AffineSubspace":
        return affine(vadd(self.base, v), self.directions)

    def linear_span(self) -> LinearSubspace:
        """Span of the subspace viewed as a set of vectors (base included)."""
        return span(list(self.directions.basis) + [self.base], self.ambient)


def affine(point: Vector, directions: LinearSubspace) -> AffineSubspace:
    """Standard form: replace the point by its component orthogonal to directions."""
    return AffineSubspace(vsub(point, directions.project(point)), directions)


def affine_from_points(points: Sequence[Vector]) -> AffineSubspace:
    if not points:
        raise ValueError("need at least one point")
    p0 = points[0]
    dirs = span([vsub(p, p0) for p in points[1:]], len(p0))
    return affine(p0, dirs)


def full_space(n: int) -> AffineSubspace:
    return affine(zero_vector(n), span(identity_matrix(n), n))


def single_point(p: Vector) -> AffineSubspace:
    return affine(p, span([], len(p)))


def intersect_affine(A: AffineSubspace, B: AffineSubspace) -> Optional[AffineSubspace]:
    """Exact intersection; None signals emptiness (distinct from a point)."""
    if A.ambient != B.ambient:
        raise ValueError("dimension mismatch")
    rows: List[Vector] = []
    rhs: List[Q] = []
    for sub in (A, B):
        normals = sub.directions.perp()
        for nrm in normals.basis:
            rows.append(nrm)
            rhs.append(dot(nrm, sub.base))
    if not rows:
        return full_space(A.ambient)
    x, null = solve(rows, rhs)
    if x is None:
        return None
    return affine(x, null)


def solution_space(A: Sequence[Sequence[Q]], b: Sequence[Q]) -> Optional[AffineSubspace]:
    """The affine solution set of A x = b, or None if inconsistent."""
    x, null = solve(A, b)
    if x is None:
        return None
    return affine(x, null)
