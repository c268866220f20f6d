"""Root systems of the irreducible euclidean types, with slash notation.

Realizations follow the classical coordinate descriptions: Phi_k^(n) building
blocks for B/C/D, the half-integer construction for E8 with E7/E6 as
subsystems, type A acting on the sum-zero hyperplane of R^(n+1), and a fixed
integer realization of G2 inside the sum-zero hyperplane of R^3.  F4 is
realized as Phi_2 + Phi_1 + (1/2)Phi_4 (short roots e_i and half-sign
vectors); see the axis computations for why this realization is the one
compatible with the reported Coxeter-axis data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .linalg import LinearSubspace, Vector, dot, is_zero, qv, span, solve, zero_vector

FAMILIES = {"A", "B", "C", "D", "E", "F", "G"}

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 3,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not _RANK_OK[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    @property
    def ambient(self) -> int:
        # A and G act on the sum-zero hyperplane of a space one dimension up;
        # E6/E7 keep the 8-dimensional coordinates of E8.
        if self.family in ("A", "G"):
            return self.rank + 1
        if self.family == "E":
            return 8
        return self.rank

    def __str__(self) -> str:
        return f"{self.family}{self.rank}~"


def parse_type(text: str) -> DynkinType:
    m = re.fullmatch(r"~?([A-G])~?_?(\d+)~?", text.strip())
    if not m:
        raise ValueError(f"cannot parse type {text!r}")
    return DynkinType(m.group(1), int(m.group(2)))


def phi_k(n: int, k: int, even_only: bool = False) -> FrozenSet[Vector]:
    """The 2^k * C(n,k) vectors with k entries of +-1, optionally even-sign only."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    out = set()
    for positions in combinations(range(n), k):
        for signs in product((1, -1), repeat=k):
            if even_only and signs.count(-1) % 2 != 0:
                continue
            v = [Q(0)] * n
            for pos, s in zip(positions, signs):
                v[pos] = Q(s)
            out.add(tuple(v))
    return frozenset(out)


def _scaled(roots: Iterable[Vector], c: Q) -> FrozenSet[Vector]:
    return frozenset(tuple(c * x for x in v) for v in roots)


G2_ROOTS: FrozenSet[Vector] = frozenset(
    [
        qv(1, -1, 0), qv(-1, 1, 0),
        qv(0, 1, -1), qv(0, -1, 1),
        qv(1, 0, -1), qv(-1, 0, 1),
        qv(2, -1, -1), qv(-2, 1, 1),
        qv(-1, 2, -1), qv(1, -2, 1),
        qv(-1, -1, 2), qv(1, 1, -2),
    ]
)


@dataclass(frozen=True)
class RootSystem:
    dtype: DynkinType
    ambient: int
    roots: FrozenSet[Vector]
    span: LinearSubspace

    def __contains__(self, v: Vector) -> bool:
        return v in self.roots

    @property
    def sorted_roots(self) -> Tuple[Vector, ...]:
        return tuple(sorted(self.roots))

    def length_classes(self) -> Dict[Q, int]:
        out: Dict[Q, int] = {}
        for r in self.roots:
            out[dot(r, r)] = out.get(dot(r, r), 0) + 1
        return out

    def entry_magnitude(self, k: int) -> Optional[Q]:
        """The common |entry| of roots with k nonzero entries, if uniform."""
        mags = set()
        for r in self.roots:
            nz = [abs(x) for x in r if x != 0]
            if len(nz) == k:
                mags.update(nz)
        if len(mags) == 1:
            return mags.pop()
        return None


def coroot(alpha: Vector) -> Vector:
    """alpha-check = (2 / <alpha, alpha>) alpha, so that <alpha, coroot> = 2."""
    if is_zero(alpha):
        raise ValueError("zero root")
    c = Q(2) / dot(alpha, alpha)
    return tuple(c * x for x in alpha)


def build_root_system(dtype: DynkinType) -> RootSystem:
    fam, n = dtype.family, dtype.rank
    if fam == "B":
        roots = phi_k(n, 2) | phi_k(n, 1)
    elif fam == "C":
        roots = phi_k(n, 2) | _scaled(phi_k(n, 1), Q(2))
    elif fam == "D":
        roots = phi_k(n, 2)
    elif fam == "F":
        roots = phi_k(4, 2) | phi_k(4, 1) | _scaled(phi_k(4, 4), Q(1, 2))
    elif fam == "E":
        e8 = phi_k(8, 2) | _scaled(phi_k(8, 8, even_only=True), Q(1, 2))
        if n == 8:
            roots = e8
        elif n == 7:
            roots = frozenset(v for v in e8 if v[6] == v[7])
        else:
            roots = frozenset(v for v in e8 if v[5] == v[6] == v[7])
    elif fam == "A":
        m = n + 1
        roots = frozenset(
            tuple(Q(1) if t == i else Q(-1) if t == j else Q(0) for t in range(m))
            for i in range(m)
            for j in range(m)
            if i != j
        )
    else:  # G
        roots = G2_ROOTS
    ambient = dtype.ambient
    return RootSystem(dtype, ambient, frozenset(roots), span(sorted(roots), ambient))


# -- slash notation -------------------------------------------------------------


class NotationError(ValueError):
    pass


_NOTATION = re.compile(r"(?:r_?\{)?([1-9]*)/([1-9]*)\}?$")
_RAW = re.compile(r"\(([^()]*)\)$")


def parse_root_notation(text: str, system: RootSystem) -> Vector:
    """Parse slash notation like r_{1356/2478} relative to a root system.

    Positive indices sit before the slash, negative ones after it; the common
    absolute value of the entries is the one forced by the number of nonzero
    entries in the context system.  A parenthesised coordinate tuple is also
    accepted for roots (G2 long roots) that slash notation cannot express.
    """
    text = text.strip()
    raw = _RAW.fullmatch(text)
    if raw:
        entries = [Q(s.strip()) for s in raw.group(1).split(",")]
        if len(entries) != system.ambient:
            raise NotationError(f"{text!r}: wrong dimension for {system.dtype}")
        v = tuple(entries)
        if v not in system.roots:
            raise NotationError(f"{text!r} is not a root of {system.dtype}")
        return v
    m = _NOTATION.fullmatch(text)
    if not m:
        raise NotationError(f"cannot parse root notation {text!r}")
    pos = [int(ch) for ch in m.group(1)]
    neg = [int(ch) for ch in m.group(2)]
    if not pos and not neg:
        raise NotationError(f"{text!r} has no indices")
    if set(pos) & set(neg) or len(set(pos)) != len(pos) or len(set(neg)) != len(neg):
        raise NotationError(f"{text!r} repeats an index")
    k = len(pos) + len(neg)
    mag = system.entry_magnitude(k)
    if mag is None:
        raise NotationError(
            f"{system.dtype} has no roots with {k} nonzero entries of a common size"
        )
    v = [Q(0)] * system.ambient
    for i in pos:
        if i > system.ambient:
            raise NotationError(f"index {i} exceeds dimension {system.ambient}")
        v[i - 1] = mag
    for i in neg:
        if i > system.ambient:
            raise NotationError(f"index {i} exceeds dimension {system.ambient}")
        v[i - 1] = -mag
    out = tuple(v)
    if out not in system.roots:
        raise NotationError(f"{text!r} -> {out} is not a root of {system.dtype}")
    return out


def format_root(v: Vector, system: RootSystem) -> str:
    """Inverse of parse_root_notation; falls back to raw coordinates."""
    if v not in system.roots:
        raise NotationError(f"{v} is not a root of {system.dtype}")
    nonzero = [(i + 1, x) for i, x in enumerate(v) if x != 0]
    mags = {abs(x) for _, x in nonzero}
    expected = system.entry_magnitude(len(nonzero))
    if len(mags) == 1 and expected == mags.pop() and all(i <= 9 for i, _ in nonzero):
        pos = "".join(str(i) for i, x in nonzero if x > 0)
        neg = "".join(str(i) for i, x in nonzero if x < 0)
        return f"r_{{{pos}/{neg}}}"
    return "(" + ",".join(str(x) for x in v) + ")"


# -- irreducible decomposition ---------------------------------------------------


@dataclass(frozen=True)
class Component:
    roots: Tuple[Vector, ...]
    rank: int
    label: Optional[str]

    @property
    def count(self) -> int:
        return len(self.roots)

    def describe(self) -> str:
        return self.label or f"unclassified(rank={self.rank}, roots={self.count})"


def decompose_irreducible(roots: Iterable[Vector]) -> List[Component]:
    """Connected components of the nonzero-inner-product graph on the roots.

    Components are pairwise orthogonal, their union is the input, and the
    result is independent of input order (components sorted by least root).
    """
    rs = sorted(set(roots))
    parent = list(range(len(rs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            if dot(rs[i], rs[j]) != 0:
                parent[find(i)] = find(j)
    groups: Dict[int, List[Vector]] = {}
    for i, r in enumerate(rs):
        groups.setdefault(find(i), []).append(r)
    comps = []
    for grp in sorted(groups.values(), key=lambda g: g[0]):
        vs = tuple(sorted(grp))
        rank = span(vs, len(vs[0])).dim
        comps.append(Component(vs, rank, classify_component(vs, rank)))
    return comps


def classify_component(roots: Sequence[Vector], rank: Optional[int] = None) -> Optional[str]:
    """Match (rank, count, length classes) against the standard types."""
    r = rank if rank is not None else span(roots, len(roots[0])).dim
    n = len(roots)
    lengths: Dict[Q, int] = {}
    for v in roots:
        lengths[dot(v, v)] = lengths.get(dot(v, v), 0) + 1
    if len(lengths) == 1:
        if n == r * (r + 1):
            return f"A{r}"
        if r >= 4 and n == 2 * r * (r - 1):
            return f"D{r}"
        if (r, n) in ((6, 72), (7, 126), (8, 240)):
            return f"E{r}"
        return None
    if len(lengths) == 2:
        (l_short, c_short), (l_long, c_long) = sorted(lengths.items())
        if l_long == 3 * l_short and r == 2 and n == 12:
            return "G2"
        if l_long == 2 * l_short:
            if r == 4 and n == 48:
                return "F4"
            if n == 2 * r * r:
                if c_short == 2 * r:
                    return f"B{r}"
                if c_long == 2 * r:
                    return f"C{r}"
    return None


# -- highest root -----------------------------------------------------------------


def root_coefficients(v: Vector, base: Sequence[Vector]) -> Optional[Vector]:
    """Coefficients of v in the given linearly independent root base."""
    cols = tuple(zip(*base))
    x, null = solve(cols, v)
    if x is None or null.dim != 0:
        return None
    # verify (solve gives least-norm-free particular; base independent so exact)
    recon = zero_vector(len(v))
    for c, b in zip(x, base):
        recon = tuple(r + c * e for r, e in zip(recon, b))
    return x if recon == tuple(v) else None


def highest_root(system: RootSystem, base: Sequence[Vector]) -> Vector:
    """The unique root maximizing the coefficient sum over a base.

    Raises if the given roots are not a base (some root fails to have an
    all-nonnegative or all-nonpositive integer expansion).
    """
    best: Optional[Tuple[Q, Vector]] = None
    for v in system.sorted_roots:
        coeffs = root_coefficients(v, base)
        if coeffs is None:
            raise ValueError("given roots do not span the system: not a base")
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError(f"non-integer expansion for {v}: not a base")
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            raise ValueError(f"mixed-sign expansion for {v}: not a base")
        s = sum(coeffs, Q(0))
        if best is None or s > best[0]:
            best = (s, v)
    assert best is not None
    return best[1]


# -- serialization ----------------------------------------------------------------


def root_system_to_json(system: RootSystem) -> dict:
    return {
        "type": system.dtype.family,
        "rank": system.dtype.rank,
        "roots": [[str(x) for x in v] for v in system.sorted_roots],
    }


def root_system_from_json(data: dict) -> RootSystem:
    dtype = DynkinType(data["type"], data["rank"])
    roots = frozenset(tuple(Q(x) for x in v) for v in data["roots"])
    built = build_root_system(dtype)
    if roots != built.roots:
        raise ValueError("root data does not match the stated type")
    return built
