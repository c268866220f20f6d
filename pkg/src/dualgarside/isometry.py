"""Euclidean isometries with exact invariants.

An isometry acts as x -> linear @ x + translation with an orthogonal linear
part.  Composition is written left-to-right as maps: in ``a * b`` the factor
``b`` acts first, so a product word r0 r1 ... rn acts with rn first.  From the
move-set and min-set we get Scherk reflection length and the combinatorial
model order used to recognise bowties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import (
    AffineSubspace,
    LinearSubspace,
    Matrix,
    Vector,
    affine,
    dot,
    identity_matrix,
    is_zero,
    mat_mul,
    mat_vec,
    outer,
    span,
    solution_space,
    transpose,
    vadd,
    vscale,
    vsub,
    zero_vector,
)


@dataclass(frozen=True)
class Isometry:
    linear: Matrix
    translation: Vector

    @property
    def ambient(self) -> int:
        return len(self.translation)

    def apply(self, p: Vector) -> Vector:
        return vadd(mat_vec(self.linear, p), self.translation)

    def __call__(self, p: Vector) -> Vector:
        return self.apply(p)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other: (self * other)(x) = self(other(x))."""
        return Isometry(
            mat_mul(self.linear, other.linear),
            vadd(mat_vec(self.linear, other.translation), self.translation),
        )

    def __mul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        # orthogonal linear part: inverse is the transpose
        lt = transpose(self.linear)
        return Isometry(lt, vsub(zero_vector(self.ambient), mat_vec(lt, self.translation)))

    def is_identity(self) -> bool:
        return self == identity(self.ambient)

    def sort_key(self):
        return (self.linear, self.translation)


def identity(n: int) -> Isometry:
    return Isometry(identity_matrix(n), zero_vector(n))


def translation(v: Vector) -> Isometry:
    return Isometry(identity_matrix(len(v)), v)


def reflection(alpha: Vector, offset) -> Isometry:
    """The reflection r fixing the hyperplane <x, alpha> = offset pointwise.

    r(x) = x - (<x, alpha> - offset) * alpha_check, an involution.
    """
    if is_zero(alpha):
        raise ValueError("zero root")
    offset = Q(offset)
    coroot = vscale(Q(2) / dot(alpha, alpha), alpha)
    n = len(alpha)
    lin = tuple(
        tuple(
            (Q(1) if i == j else Q(0)) - coroot[i] * alpha[j] for j in range(n)
        )
        for i in range(n)
    )
    return Isometry(lin, vscale(offset, coroot))


def compose_word(letters: Sequence[Isometry], n: Optional[int] = None) -> Isometry:
    """Product of a word, rightmost letter acting first."""
    if not letters:
        if n is None:
            raise ValueError("empty word needs an ambient dimension")
        return identity(n)
    out = letters[-1]
    for g in reversed(letters[:-1]):
        out = g * out
    return out


# -- basic invariants ----------------------------------------------------------


@dataclass(frozen=True)
class BasicInvariants:
    kind: str  # "elliptic" | "hyperbolic"
    mov: AffineSubspace  # subset of V, standard form U + mu
    min: AffineSubspace  # subset of E (fix-set when elliptic)

    @property
    def is_elliptic(self) -> bool:
        return self.kind == "elliptic"


def basic_invariants(w: Isometry) -> BasicInvariants:
    """Move-set, type and min-set of an isometry.

    Mov(w) = {w(x) - x} is the column space of (linear - I) shifted by the
    translation part; w is elliptic iff the standard-form basepoint mu is
    zero, and then the min-set is the exact fix-set.  For hyperbolic w the
    min-set is the set of points moved by exactly mu.
    """
    n = w.ambient
    d_rows = []
    for i in range(n):
        d_rows.append(
            tuple(w.linear[i][j] - (Q(1) if i == j else Q(0)) for j in range(n))
        )
    D: Matrix = tuple(d_rows)
    col_space = span(transpose(D), n)
    mov = affine(w.translation, col_space)
    mu = mov.base
    kind = "elliptic" if is_zero(mu) else "hyperbolic"
    # min-set: solutions of (linear - I) x = mu - translation
    target = vsub(mu, w.translation)
    min_set = solution_space(D, target)
    assert min_set is not None  # mu lies in Mov(w) by construction
    return BasicInvariants(kind, mov, min_set)


def reflection_length(w: Isometry) -> int:
    """Scherk: dim Mov for elliptic, dim Mov + 2 for hyperbolic."""
    inv = basic_invariants(w)
    k = inv.mov.dim
    return k if inv.is_elliptic else k + 2


def is_reflection(w: Isometry) -> bool:
    inv = basic_invariants(w)
    return inv.is_elliptic and inv.mov.dim == 1


def reflection_root_offset(w: Isometry) -> Tuple[Vector, Q]:
    """Recover (primitive root, offset) of a reflection."""
    from .linalg import primitive

    inv = basic_invariants(w)
    if not (inv.is_elliptic and inv.mov.dim == 1):
        raise ValueError("not a reflection")
    alpha = primitive(inv.mov.directions.basis[0])
    return alpha, dot(inv.min.base, alpha)


# -- model poset ---------------------------------------------------------------


@dataclass(frozen=True)
class ModelElement:
    """h^M for a nonlinear affine subspace M of V, or e^B for B in E."""

    kind: str  # "h" | "e"
    space: AffineSubspace


def invariant(w: Isometry) -> ModelElement:
    inv = basic_invariants(w)
    if inv.is_elliptic:
        return ModelElement("e", inv.min)
    return ModelElement("h", inv.mov)


def model_leq(p: ModelElement, q: ModelElement) -> bool:
    """Order of the model poset.

    Hyperbolic elements are ordered by inclusion of move-sets, elliptic
    elements by reverse inclusion of fix-sets, no elliptic element is ever
    above a hyperbolic one, and e^B < h^M iff M-perp (the complement of the
    linear span of M) is contained in Dir(B).
    """
    if p.kind == "h" and q.kind == "h":
        return q.space.contains_subspace(p.space)
    if p.kind == "e" and q.kind == "e":
        return p.space.contains_subspace(q.space)
    if p.kind == "h" and q.kind == "e":
        return False
    m_perp = q.space.linear_span().perp()
    return p.space.directions.contains_subspace(m_perp)


def interval_order_leq(u: Isometry, v: Isometry, w: Isometry) -> bool:
    """u <= v inside [1, w] for the distance order over all reflections."""
    luv = reflection_length(u.inverse() * v)
    lvw = reflection_length(v.inverse() * w)
    return reflection_length(u) + luv + lvw == reflection_length(w)


def in_interval(u: Isometry, w: Isometry) -> bool:
    """Membership of u in the euclidean interval [1, w] over all reflections."""
    return reflection_length(u) + reflection_length(u.inverse() * w) == reflection_length(w)


# -- serialization -------------------------------------------------------------


def q_str(x: Q) -> str:
    return str(x)


def isometry_to_json(w: Isometry) -> dict:
    return {
        "linear": [[q_str(x) for x in row] for row in w.linear],
        "translation": [q_str(x) for x in w.translation],
    }


def isometry_from_json(data: dict) -> Isometry:
    lin = tuple(tuple(Q(x) for x in row) for row in data["linear"])
    tr = tuple(Q(x) for x in data["translation"])
    return Isometry(lin, tr)
