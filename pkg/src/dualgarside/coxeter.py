"""Extended Dynkin diagrams, simple systems, Coxeter elements and axes.

A context fixes one (type, Coxeter-class) pair: a simple system whose
offset-0 walls pass through the origin and whose single offset-1 wall is the
white vertex, the Coxeter element w, its axis, and the axial-vertex data
needed to decide which reflections occur below w.

Conventions.  In a product word the rightmost letter acts first.  For tree
diagrams the bipartite involution w0 multiplies the reflections of the part
S0 containing the white vertex, w1 the others, and w = w1 * w0; the white
letter is therefore a sink of the induced orientation, as it is for the
(p,q)-bigon elements of type A.  The axis direction is reported as the
primitive integer vector whose first nonzero entry is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import product as iproduct
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from .isometry import (
    Isometry,
    basic_invariants,
    compose_word,
    identity,
    reflection,
    reflection_length,
)
from .linalg import (
    AffineSubspace,
    LinearSubspace,
    Vector,
    affine,
    dot,
    intersect_affine,
    is_zero,
    parallel,
    primitive,
    qv,
    solution_space,
    solve,
    span,
    vadd,
    vscale,
    vsub,
    zero_vector,
)
from .roots import DynkinType, RootSystem, build_root_system, format_root

CoxClass = Union[str, Tuple[int, int]]

INFINITE_BOND = 0  # edge label standing for m = infinity (type A1~ only)


class WindowInsufficientError(ValueError):
    """Raised when the axial window cannot decide an R0 membership query."""


# -- diagrams -------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedDiagram:
    n_vertices: int
    edges: Tuple[Tuple[int, int, int], ...]  # (u, v, m) with u < v
    white: int

    def neighbors(self, v: int) -> List[int]:
        out = []
        for a, b, _ in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def edge_label(self, u: int, v: int) -> Optional[int]:
        for a, b, m in self.edges:
            if {a, b} == {u, v}:
                return m
        return None

    def is_tree(self) -> bool:
        return len(self.edges) == self.n_vertices - 1 and self._connected()

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n_vertices

    def bipartition(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        """Two-coloring; the first part is the one containing the white vertex."""
        color: Dict[int, int] = {self.white: 0}
        stack = [self.white]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u in color:
                    if color[u] == color[v]:
                        raise ValueError("diagram is not bipartite")
                else:
                    color[u] = 1 - color[v]
                    stack.append(u)
        s0 = frozenset(v for v, c in color.items() if c == 0)
        s1 = frozenset(range(self.n_vertices)) - s0
        return s0, s1


def _bond_label(a: Vector, b: Vector) -> Optional[int]:
    """Coxeter label from the exact angle: 4cos^2 in {0, 1, 2, 3, 4}."""
    num = 4 * dot(a, b) ** 2
    den = dot(a, a) * dot(b, b)
    ratio = num / den
    table = {Q(0): 2, Q(1): 3, Q(2): 4, Q(3): 6, Q(4): INFINITE_BOND}
    if ratio not in table:
        return None
    return table[ratio]


def diagram_from_roots(
    roots: Sequence[Vector], white: int, require_obtuse: bool = True
) -> ExtendedDiagram:
    n = len(roots)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            m = _bond_label(roots[i], roots[j])
            if m is None:
                raise ValueError(f"roots {i},{j} make a non-Coxeter angle")
            if m == 2:
                continue
            if require_obtuse and dot(roots[i], roots[j]) > 0:
                raise ValueError(f"roots {i},{j} are not obtuse")
            edges.append((i, j, m))
    return ExtendedDiagram(n, tuple(edges), white)


def count_acyclic_orientations(diagram: ExtendedDiagram) -> int:
    total = 0
    for dirs in iproduct((0, 1), repeat=len(diagram.edges)):
        directed = frozenset(
            (u, v) if d == 0 else (v, u) for (u, v, _), d in zip(diagram.edges, dirs)
        )
        if _acyclic(diagram.n_vertices, directed):
            total += 1
    return total


def _acyclic(n: int, directed: FrozenSet[Tuple[int, int]]) -> bool:
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    indeg = {v: 0 for v in range(n)}
    for u, v in directed:
        adj[u].append(v)
        indeg[v] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for u in adj[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    return seen == n


@dataclass(frozen=True)
class AcyclicOrientation:
    diagram: ExtendedDiagram
    directed: FrozenSet[Tuple[int, int]]  # (u, v) means the edge points u -> v

    def __post_init__(self):
        if not _acyclic(self.diagram.n_vertices, self.directed):
            raise ValueError("orientation has a directed cycle")

    def is_source(self, v: int) -> bool:
        return all(u != v for (_, u) in self.directed)

    def is_sink(self, v: int) -> bool:
        return all(u != v for (u, _) in self.directed)


def orientation_from_order(diagram: ExtendedDiagram, order: Sequence[int]) -> AcyclicOrientation:
    """Orient each edge from the earlier letter to the later one."""
    pos = {v: i for i, v in enumerate(order)}
    directed = frozenset(
        (u, v) if pos[u] < pos[v] else (v, u) for (u, v, _) in diagram.edges
    )
    return AcyclicOrientation(diagram, directed)


def sink_source_flip(ori: AcyclicOrientation, v: int) -> AcyclicOrientation:
    """Reverse every edge at a source or sink; the result is acyclic."""
    if not (ori.is_source(v) or ori.is_sink(v)):
        raise ValueError(f"vertex {v} is neither a source nor a sink")
    directed = frozenset(
        (b, a) if v in (a, b) else (a, b) for (a, b) in ori.directed
    )
    return AcyclicOrientation(ori.diagram, directed)


def topological_order(ori: AcyclicOrientation) -> List[int]:
    """Lexicographically least linearization of the orientation."""
    n = ori.diagram.n_vertices
    indeg = {v: 0 for v in range(n)}
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for u, v in ori.directed:
        adj[u].append(v)
        indeg[v] += 1
    out: List[int] = []
    ready = sorted(v for v in range(n) if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        out.append(v)
        for u in adj[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                ready.append(u)
        ready.sort()
    return out


# -- simple systems --------------------------------------------------------------


@dataclass(frozen=True)
class SimpleSystem:
    dtype: DynkinType
    roots: Tuple[Vector, ...]
    offsets: Tuple[Q, ...]
    diagram: ExtendedDiagram

    @property
    def rank(self) -> int:
        return self.dtype.rank

    @property
    def white(self) -> int:
        return self.diagram.white

    def reflections(self) -> Tuple[Isometry, ...]:
        return tuple(reflection(a, d) for a, d in zip(self.roots, self.offsets))

    def dependency(self) -> Tuple[Q, ...]:
        """The unique (up to scale) linear dependency, normalized positive."""
        c = diagram_marks(self.roots)
        if any(x == 0 for x in c):
            raise ValueError("dependency does not involve every root")
        return c

    def bipartite_parts(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        return self.diagram.bipartition()


def _alt(i: int, v: Vector) -> Vector:
    return v if i % 2 == 0 else tuple(-x for x in v)


def _e(i: int, n: int, c=1) -> Vector:
    return tuple(Q(c) if j == i else Q(0) for j in range(n))


def _epair(i: int, j: int, n: int, si=1, sj=1) -> Vector:
    v = [Q(0)] * n
    v[i] = Q(si)
    v[j] = Q(sj)
    return tuple(v)


def _half(*signs: int) -> Vector:
    return tuple(Q(s, 2) for s in signs)


def standard_simple_system(dtype: DynkinType, cox_class: CoxClass = "bipartite") -> SimpleSystem:
    """The fixed per-type simple system in diagram order, white vertex flagged.

    For the tree types this is a chamber of the standard realization whose
    offset-0 walls meet at the origin; for type A it is the (p,q)-bigon
    arrangement of transpositions plus one affine swap.
    """
    fam, n = dtype.family, dtype.rank
    if fam == "A":
        return _a_type_system(dtype, cox_class)
    if cox_class != "bipartite":
        raise ValueError(f"{dtype} admits only the bipartite class")
    roots: List[Vector]
    white: int
    if fam == "C":
        roots = [_e(0, n, 2)]
        roots += [_alt(i, _epair(i - 1, i, n)) for i in range(1, n)]
        roots += [_alt(n, _e(n - 1, n, 2))]
        white = n
    elif fam == "B":
        roots = [_e(0, n, 1), _epair(0, 1, n, -1, -1)]
        roots += [_alt(i, _epair(i - 1, i, n)) for i in range(2, n - 1)]
        roots += [
            _alt(n - 1, _epair(n - 2, n - 1, n)),
            _alt(n - 1, _epair(n - 2, n - 1, n, 1, -1)),
        ]
        white = n
    elif fam == "D":
        roots = [_epair(0, 1, n, 1, -1), _epair(0, 1, n, -1, -1)]
        roots += [_alt(i, _epair(i - 1, i, n)) for i in range(2, n - 1)]
        roots += [
            _alt(n - 1, _epair(n - 2, n - 1, n)),
            _alt(n - 1, _epair(n - 2, n - 1, n, 1, -1)),
        ]
        white = n
    elif fam == "F":
        roots = [
            qv(-1, -1, 0, 0),
            qv(0, 1, 1, 0),
            qv(0, 0, -1, -1),
            qv(0, 0, 0, 1),
            qv(Q(1, 2), Q(-1, 2), Q(1, 2), Q(-1, 2)),
        ]
        white = 0
    elif fam == "G":
        roots = [qv(-1, -1, 2), qv(-1, 2, -1), qv(1, -1, 0)]
        white = 0
    else:  # E
        half = _half
        if n == 6:
            roots = [
                _epair(0, 1, 8),                      # r_{12/}
                _epair(4, 1, 8, 1, -1),               # r_{5/2}
                _epair(3, 4, 8, -1, -1),              # r_{/45}
                _epair(3, 2, 8, 1, -1),               # r_{4/3}
                half(-1, 1, 1, -1, 1, 1, 1, 1),       # r_{235678/14}
                half(-1, 1, 1, 1, 1, -1, -1, -1),     # r_{2345/1678}
                half(1, -1, 1, 1, -1, 1, 1, 1),       # r_{134678/25}
            ]
        elif n == 7:
            roots = [
                _epair(0, 4, 8, -1, -1),              # r_{/15}
                _epair(0, 1, 8),                      # r_{12/}
                _epair(1, 6, 8, -1, -1),              # r_{/27}
                _epair(6, 7, 8),                      # r_{78/}
                _epair(2, 7, 8, -1, -1),              # r_{/38}
                _epair(2, 3, 8),                      # r_{34/}
                _epair(3, 5, 8, -1, -1),              # r_{/46}
                half(-1, 1, 1, -1, 1, 1, -1, -1),     # r_{2356/1478}
            ]
        else:
            roots = [
                _epair(0, 1, 8),                      # r_{12/}
                _epair(1, 4, 8, -1, -1),              # r_{/25}
                _epair(4, 5, 8, 1, -1),               # r_{5/6}
                _epair(5, 6, 8, 1, -1),               # r_{6/7}
                _epair(6, 7, 8),                      # r_{78/}
                _epair(2, 7, 8, -1, -1),              # r_{/38}
                _epair(2, 3, 8),                      # r_{34/}
                half(-1, 1, -1, -1, -1, -1, -1, 1),   # r_{28/134567}
                half(-1, 1, 1, -1, -1, 1, 1, -1),     # r_{2367/1458}
            ]
        marks = diagram_marks(roots)
        white = min(i for i, c in enumerate(marks) if c == 1)
    offsets = tuple(Q(1) if i == white else Q(0) for i in range(n + 1))
    diagram = diagram_from_roots(roots, white)
    if diagram_marks(roots)[white] != 1:
        raise ValueError("white vertex does not carry mark 1")
    return SimpleSystem(dtype, tuple(roots), offsets, diagram)


def diagram_marks(roots: Sequence[Vector]) -> Tuple[Q, ...]:
    cols = tuple(zip(*roots))
    null = span(cols, len(roots)).perp()
    if null.dim != 1:
        raise ValueError("no unique dependency")
    c = primitive(null.basis[0])
    if c[0] < 0:
        c = tuple(-x for x in c)
    return c


def _a_type_system(dtype: DynkinType, cox_class: CoxClass) -> SimpleSystem:
    n = dtype.rank
    m = n + 1
    if cox_class == "bipartite":
        if n != 1:
            raise ValueError("bipartite class needs a tree diagram; use a (p,q) class")
        cox_class = (1, 1)
    p, q = cox_class  # type: ignore[misc]
    if not (p >= q >= 1 and p + q == m):
        raise ValueError(f"invalid bigon class ({p},{q}) for {dtype}")
    roots: List[Vector] = [_epair(0, p, m, 1, -1)]  # source: swaps x1, y1
    roots += [_epair(i - 1, i, m, 1, -1) for i in range(1, p)]  # x-side
    roots += [_epair(p + i - 1, p + i, m, 1, -1) for i in range(1, q)]  # y-side
    roots += [_epair(p + q - 1, p - 1, m, 1, -1)]  # sink: root e_{p+q} - e_p
    offsets = tuple(Q(0) if i < n else Q(1) for i in range(m))
    diagram = diagram_from_roots(roots, white=n, require_obtuse=False)
    return SimpleSystem(dtype, tuple(roots), offsets, diagram)


# -- Coxeter elements ------------------------------------------------------------


def default_order(sys: SimpleSystem) -> List[int]:
    """Vertex order whose product is the context Coxeter element (white a sink)."""
    if sys.dtype.family == "A":
        return list(range(len(sys.roots)))
    s0, s1 = sys.bipartite_parts()
    return sorted(s1) + sorted(s0)


def coxeter_element(sys: SimpleSystem, order: Optional[Sequence[int]] = None) -> Isometry:
    if order is None:
        order = default_order(sys)
    if sorted(order) != list(range(len(sys.roots))):
        raise ValueError("order must be a permutation of the vertices")
    refl = sys.reflections()
    return compose_word([refl[i] for i in order])


def coxeter_element_from_orientation(sys: SimpleSystem, ori: AcyclicOrientation) -> Isometry:
    return coxeter_element(sys, topological_order(ori))


def bipartite_involutions(sys: SimpleSystem) -> Tuple[Isometry, Isometry]:
    """(w0, w1): products over S0 (the white part) and S1; each an involution."""
    if not sys.diagram.is_tree():
        raise ValueError("bipartite involutions need a tree diagram")
    s0, s1 = sys.bipartite_parts()
    refl = sys.reflections()
    n = len(sys.roots[0])
    w0 = compose_word([refl[i] for i in sorted(s0)], n)
    w1 = compose_word([refl[i] for i in sorted(s1)], n)
    for w in (w0, w1):
        if not (w * w).is_identity():
            raise ValueError("bipartite part does not multiply to an involution")
    return w0, w1


def axis_direction_symbolic(sys: SimpleSystem) -> Vector:
    """Split the full-support dependency by bipartite class and sum one side."""
    if not sys.diagram.is_tree():
        raise ValueError("symbolic axis direction needs a tree diagram")
    c = sys.dependency()
    s0, _ = sys.bipartite_parts()
    total = zero_vector(len(sys.roots[0]))
    for i in sorted(s0):
        total = vadd(total, vscale(c[i], sys.roots[i]))
    if is_zero(total):
        raise ValueError("degenerate bipartite split")
    return primitive(total)


# -- contexts ---------------------------------------------------------------------


@dataclass(frozen=True)
class CoxeterContext:
    dtype: DynkinType
    cox_class: CoxClass
    simple: SimpleSystem
    parent_system: RootSystem
    roots: FrozenSet[Vector]  # the group's own root system (subset of parent)
    point_space: AffineSubspace
    w: Isometry
    axis: AffineSubspace
    axis_dir: Vector
    chamber_vertices: Tuple[Vector, ...]
    involutions: Optional[Tuple[Isometry, Isometry]]  # (w0, w1) for tree types

    @property
    def rank(self) -> int:
        return self.dtype.rank

    @property
    def ambient(self) -> int:
        return self.parent_system.ambient

    def root_label(self, alpha: Vector) -> str:
        return format_root(alpha, self.parent_system)

    def root_representatives(self) -> List[Vector]:
        """One root per +- pair, the sign with positive first nonzero entry."""
        out = []
        for v in sorted(self.roots):
            if next(x for x in v if x != 0) > 0:
                out.append(v)
        return out

    def classify_root(self, alpha: Vector) -> str:
        if alpha not in self.roots:
            raise ValueError("not a root of this context")
        return "horizontal" if dot(alpha, self.axis_dir) == 0 else "vertical"

    def wall(self, i: int) -> AffineSubspace:
        alpha, delta = self.simple.roots[i], self.simple.offsets[i]
        sol = _hyperplane(alpha, delta, self.point_space)
        return sol

    def vertex_opposite(self, i: int) -> Vector:
        return self.chamber_vertices[i]


def _hyperplane(alpha: Vector, delta: Q, point_space: AffineSubspace) -> AffineSubspace:
    """The wall {<x, alpha> = delta} intersected with the point space."""
    normals = point_space.directions.perp().basis
    rows = [alpha] + list(normals)
    rhs = [Q(delta)] + [dot(r, point_space.base) for r in normals]
    sol = solution_space(rows, rhs)
    if sol is None:
        raise ValueError("wall misses the point space")
    return sol


def _chamber_vertices(sys: SimpleSystem, point_space: AffineSubspace) -> Tuple[Vector, ...]:
    out = []
    n1 = len(sys.roots)
    ps_rows = list(point_space.directions.perp().basis)
    ps_rhs = [dot(r, point_space.base) for r in ps_rows]
    for i in range(n1):
        rows = [sys.roots[j] for j in range(n1) if j != i] + ps_rows
        rhs = [sys.offsets[j] for j in range(n1) if j != i] + ps_rhs
        x, null = solve(rows, rhs)
        if x is None or null.dim != 0:
            raise ValueError("chamber walls are degenerate")
        out.append(x)
    return tuple(out)


def build_context(
    dtype: DynkinType, cox_class: CoxClass = "bipartite", validate: bool = True
) -> CoxeterContext:
    """Assemble and cross-validate the full context for one (type, class)."""
    if dtype.family == "A" and cox_class == "bipartite" and dtype.rank == 1:
        cox_class = (1, 1)
    sys = standard_simple_system(dtype, cox_class)
    parent = build_root_system(
        DynkinType("E", 8) if dtype.family == "E" else dtype
    )
    root_span = span(sys.roots, dtype.ambient)
    ctx_roots = frozenset(v for v in parent.roots if root_span.contains(v))
    point_space = affine(zero_vector(dtype.ambient), span(sorted(ctx_roots), dtype.ambient))
    w = coxeter_element(sys)
    inv = basic_invariants(w)
    if validate:
        if inv.kind != "hyperbolic":
            raise ValueError(f"{dtype}: Coxeter element is not hyperbolic")
        if reflection_length(w) != dtype.rank + 1:
            raise ValueError(f"{dtype}: Coxeter element has wrong reflection length")
    axis = intersect_affine(inv.min, point_space)
    if axis is None or axis.dim != 1:
        raise ValueError(f"{dtype}: min-set does not meet the point space in a line")
    axis_dir = primitive(axis.directions.basis[0])
    chamber = _chamber_vertices(sys, point_space)
    involutions: Optional[Tuple[Isometry, Isometry]] = None
    if sys.diagram.is_tree() and dtype.family != "A":
        w0, w1 = bipartite_involutions(sys)
        involutions = (w0, w1)
        if validate:
            if w1 * w0 != w:
                raise ValueError("bipartite involutions do not multiply to w")
            if not parallel(axis_direction_symbolic(sys), axis_dir):
                raise ValueError(f"{dtype}: symbolic axis direction disagrees with min-set")
    if dtype.family == "A" and validate:
        _validate_a_context(dtype, cox_class, w, axis_dir)
    return CoxeterContext(
        dtype=dtype,
        cox_class=cox_class,
        simple=sys,
        parent_system=parent,
        roots=ctx_roots,
        point_space=point_space,
        w=w,
        axis=axis,
        axis_dir=axis_dir,
        chamber_vertices=chamber,
        involutions=involutions,
    )


def _validate_a_context(dtype: DynkinType, cox_class: CoxClass, w: Isometry, axis_dir: Vector):
    p, q = cox_class  # type: ignore[misc]
    m = p + q
    # w sends (x1..xp, y1..yq) to (xp + 1, x1..x_{p-1}, yq - 1, y1..y_{q-1})
    probe = tuple(Q(7 * i + 1) for i in range(m))
    image = w.apply(probe)
    expect = (
        (probe[p - 1] + 1,)
        + probe[: p - 1]
        + (probe[m - 1] - 1,)
        + probe[p : m - 1]
    )
    if image != expect:
        raise ValueError("bigon Coxeter element acts by the wrong permutation")
    power = identity(m)
    for _ in range(p * q):
        power = w * power
    trans = tuple(Q(q) if i < p else Q(-p) for i in range(m))
    from .isometry import translation

    if power != translation(trans):
        raise ValueError("w^(pq) is not the expected pure translation")
    if not parallel(axis_dir, trans):
        raise ValueError("axis direction disagrees with the power translation")


def all_classes(dtype: DynkinType) -> List[CoxClass]:
    if dtype.family != "A":
        return ["bipartite"]
    m = dtype.rank + 1
    return [(m - q, q) for q in range(1, m // 2 + 1)]


def class_label(cox_class: CoxClass) -> str:
    if cox_class == "bipartite":
        return "bipartite"
    p, q = cox_class
    return f"({p},{q})"


# -- axial data -------------------------------------------------------------------


@dataclass(frozen=True)
class AxialData:
    ctx: CoxeterContext
    k: int
    points: Dict[int, Vector]  # x_i on the axis (tree types only)
    vertex_sets: Dict[int, Tuple[Vector, ...]]  # F_i (trees) / sigma_j vertices (A)
    index_period: int  # indices shift by this much under one full w-power period
    period_translation: Vector  # translation vector of w**order(linear part)

    def all_vertices(self) -> List[Vector]:
        seen: Set[Vector] = set()
        for vs in self.vertex_sets.values():
            seen.update(vs)
        return sorted(seen)

    def chamber_vertex_set(self, i: int) -> Tuple[Vector, ...]:
        """Vertices of the axial chamber sigma_i."""
        if self.ctx.dtype.family == "A":
            return self.vertex_sets[i]
        return tuple(sorted(set(self.vertex_sets[i]) | set(self.vertex_sets[i + 1])))


def _linear_order(w: Isometry, cap: int = 256) -> Tuple[int, Vector]:
    """Multiplicative order of the linear part and the resulting translation."""
    power = w
    for k in range(1, cap + 1):
        if power.linear == identity(w.ambient).linear:
            return k, power.translation
        power = w * power
    raise ValueError("linear part order exceeds cap")


def axial_data(ctx: CoxeterContext, k: int) -> AxialData:
    """Axial points x_i and axial-vertex sets for window indices [-k, k]."""
    if k < 1:
        raise ValueError("window k must be at least 1")
    order, nu = _linear_order(ctx.w)
    if ctx.dtype.family == "A":
        sets: Dict[int, Tuple[Vector, ...]] = {}
        w_pow: Dict[int, Isometry] = {0: identity(ctx.ambient)}
        for j in range(1, k + 1):
            w_pow[j] = ctx.w * w_pow[j - 1]
            w_pow[-j] = ctx.w.inverse() * w_pow[-(j - 1)]
        for j in range(-k, k + 1):
            sets[j] = tuple(sorted(w_pow[j].apply(v) for v in ctx.chamber_vertices))
        return AxialData(ctx, k, {}, sets, order, nu)
    assert ctx.involutions is not None
    w0, w1 = ctx.involutions
    s0_idx, s1_idx = ctx.simple.bipartite_parts()
    b0 = _part_subspace(ctx, s0_idx)
    b1 = _part_subspace(ctx, s1_idx)
    x0, x1 = _closest_points(b0, b1)
    f0 = tuple(sorted(v for v in ctx.chamber_vertices if b0.contains(v)))
    f1 = tuple(sorted(v for v in ctx.chamber_vertices if b1.contains(v)))
    if len(f0) + len(f1) != len(ctx.chamber_vertices):
        raise ValueError("bipartite faces do not partition the chamber vertices")
    # fill outward from {x0, x1}: x_{-i} = w0(x_i), x_{2-i} = w1(x_i)
    points: Dict[int, Vector] = {0: x0, 1: x1}
    sets = {0: f0, 1: f1}
    lo, hi = 0, 1
    while hi < k + 1 or lo > -k:
        if hi < k + 1:
            hi += 1
            points[hi] = w1.apply(points[2 - hi])
            sets[hi] = tuple(sorted(w1.apply(v) for v in sets[2 - hi]))
        if lo > -k:
            lo -= 1
            points[lo] = w0.apply(points[-lo])
            sets[lo] = tuple(sorted(w0.apply(v) for v in sets[-lo]))
    _check_axial(ctx, points)
    return AxialData(ctx, k, points, sets, 2 * order, nu)


def _check_axial(ctx: CoxeterContext, points: Dict[int, Vector]):
    idx = sorted(points)
    gaps = {vsub(points[i + 1], points[i]) for i in idx[:-1] if i + 1 in points}
    if len(gaps) != 1:
        raise ValueError("axial points are not equally spaced in order")
    gap = gaps.pop()
    if not parallel(gap, ctx.axis_dir):
        raise ValueError("axial points do not lie along the axis")
    for i in idx:
        if not ctx.axis.contains(points[i]):
            raise ValueError("axial point off the axis")


def _part_subspace(ctx: CoxeterContext, part: FrozenSet[int]) -> AffineSubspace:
    sub = ctx.point_space
    for i in sorted(part):
        nxt = intersect_affine(sub, ctx.wall(i))
        if nxt is None:
            raise ValueError("bipartite walls have empty intersection")
        sub = nxt
    return sub


def _closest_points(b0: AffineSubspace, b1: AffineSubspace) -> Tuple[Vector, Vector]:
    """The unique pair realizing the distance between disjoint B0, B1."""
    d0 = list(b0.directions.basis)
    d1 = list(b1.directions.basis)
    n0, n1 = len(d0), len(d1)
    unknowns = n0 + n1
    rows = []
    rhs = []
    diff_const = vsub(b0.base, b1.base)
    for u in d0 + d1:
        row = [dot(u, d) for d in d0] + [-dot(u, d) for d in d1]
        rows.append(tuple(row))
        rhs.append(-dot(u, diff_const))
    if unknowns == 0:
        return b0.base, b1.base
    x, null = solve(rows, rhs)
    if x is None or null.dim != 0:
        raise ValueError("closest points are not unique")
    p0 = b0.base
    for c, d in zip(x[:n0], d0):
        p0 = vadd(p0, vscale(c, d))
    p1 = b1.base
    for c, d in zip(x[n0:], d1):
        p1 = vadd(p1, vscale(c, d))
    return p0, p1


# -- reflections below w -----------------------------------------------------------


def canonical_root(alpha: Vector) -> Vector:
    """The representative of {alpha, -alpha} with positive first nonzero entry."""
    if next(x for x in alpha if x != 0) > 0:
        return alpha
    return tuple(-x for x in alpha)


def group_reflection(ctx: CoxeterContext, alpha: Vector, offset) -> Isometry:
    if alpha not in ctx.roots:
        raise ValueError(f"{alpha} is not a root of {ctx.dtype}")
    if Q(offset).denominator != 1:
        raise ValueError("group reflections have integer offsets")
    return reflection(alpha, Q(offset))


def in_r0(alpha: Vector, offset, ctx: CoxeterContext, axial: AxialData) -> bool:
    """Whether the hyperplane {<x, alpha> = offset} contains an axial vertex.

    Uses periodicity: a full power of w is a pure translation by nu, shifting
    window indices by index_period, so one period of vertex sets decides the
    infinite question.  Raises WindowInsufficientError rather than guessing.
    """
    if alpha not in ctx.roots:
        raise ValueError(f"{alpha} is not a root of {ctx.dtype}")
    offset = Q(offset)
    if offset.denominator != 1:
        raise ValueError("group reflections have integer offsets")
    period = axial.index_period
    indices = sorted(axial.vertex_sets)
    run = [i for i in indices]  # contiguous by construction
    if len(run) < period:
        raise WindowInsufficientError(
            f"window holds {len(run)} indices, needs one full period of {period}"
        )
    base = run[:period]
    c = dot(axial.period_translation, alpha)
    for i in base:
        for v in axial.vertex_sets[i]:
            diff = offset - dot(v, alpha)
            if c == 0:
                if diff == 0:
                    return True
            elif (diff / c).denominator == 1:
                return True
    return False


def window_reflections(ctx: CoxeterContext, axial: AxialData) -> List[Tuple[Vector, Q]]:
    """All group reflections whose wall contains an axial vertex of the window."""
    out: Set[Tuple[Vector, Q]] = set()
    reps = ctx.root_representatives()
    for v in axial.all_vertices():
        for alpha in reps:
            c = dot(v, alpha)
            if c.denominator == 1:
                out.add((alpha, c))
    return sorted(out)


def barycentric_coordinates(
    point: Vector, vertices: Sequence[Vector]
) -> Optional[Tuple[Q, ...]]:
    """Coefficients of an affine combination of the vertices giving the point."""
    rows = [tuple(v[i] for v in vertices) for i in range(len(point))]
    rows.append(tuple(Q(1) for _ in vertices))
    rhs = list(point) + [Q(1)]
    x, null = solve(rows, rhs)
    if x is None or null.dim != 0:
        return None
    return x


def context_to_json(ctx: CoxeterContext, axial: Optional[AxialData] = None) -> dict:
    data = {
        "type": ctx.dtype.family,
        "rank": ctx.dtype.rank,
        "class": class_label(ctx.cox_class),
        "simple_roots": [ctx.root_label(a) for a in ctx.simple.roots],
        "offsets": [str(d) for d in ctx.simple.offsets],
        "white_vertex": ctx.simple.white,
        "axis_direction": [str(x) for x in ctx.axis_dir],
    }
    if axial is not None and axial.points:
        data["axial_points"] = {
            str(i): [str(x) for x in p] for i, p in sorted(axial.points.items())
        }
    return data
