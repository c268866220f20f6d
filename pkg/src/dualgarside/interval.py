"""Windowed factorization posets, Hurwitz orbits and bowtie certificates.

The interval [1, w] over the group's reflections is infinite for euclidean
Coxeter elements, so posets are built over a windowed generator set.  A node
is admitted only with a certified length: its BFS depth from the identity and
its backward depth from w must both equal the Scherk lower bound, and the two
must sum to the length of w.  Since word length over the group's reflections
is bounded below by euclidean reflection length, equality certifies the exact
group-reflection length; nodes that cannot be certified are excluded, never
silently admitted.

Lattice refutations are only ever issued through ``certify_bowtie``: the
invariant pattern it checks (two hyperbolics sharing a move-set direction,
two elliptics sharing the complementary fix-set direction, all four in the
interval) forces a bowtie in the full infinite interval, independently of the
window used to find the candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .coxeter import AxialData, CoxeterContext, axial_data, window_reflections
from .isometry import (
    Isometry,
    basic_invariants,
    compose_word,
    identity,
    invariant,
    is_reflection,
    isometry_to_json,
    model_leq,
    reflection,
    reflection_length,
)
from .linalg import AffineSubspace, LinearSubspace, Vector, dot

Word = Tuple[Isometry, ...]


class ClosureError(ValueError):
    """A Hurwitz move left the allowed generator alphabet."""


class CertificationError(ValueError):
    """A bowtie candidate failed a named certification condition."""

    def __init__(self, condition: str, checks: Dict[str, bool]):
        super().__init__(f"bowtie certification failed: {condition}")
        self.condition = condition
        self.checks = checks


# -- Hurwitz action ---------------------------------------------------------------


def hurwitz_move(
    word: Word, i: int, inverse: bool = False, alphabet: Optional[FrozenSet[Isometry]] = None
) -> Word:
    """Replace (a, b) at positions i, i+1 by (aba^-1, a), or undo that."""
    if not 0 <= i < len(word) - 1:
        raise ValueError("move position out of range")
    a, b = word[i], word[i + 1]
    if inverse:
        new = (b, (b.inverse() * a) * b)
    else:
        new = ((a * b) * a.inverse(), a)
    if alphabet is not None:
        for letter in new:
            if letter not in alphabet:
                raise ClosureError(f"conjugate letter leaves the generating set")
    return word[:i] + new + word[i + 2 :]


@dataclass(frozen=True)
class OrbitResult:
    words: FrozenSet[Word]
    complete: bool

    def __len__(self) -> int:
        return len(self.words)


def hurwitz_orbit(
    word: Word, max_states: int = 10**6, alphabet: Optional[FrozenSet[Isometry]] = None
) -> OrbitResult:
    """Closure of a word under all braid moves, or a partial orbit when the
    budget is exhausted (expected for euclidean Coxeter elements)."""
    if max_states < 1:
        raise ValueError("max_states must be positive")
    seen: Set[Word] = {word}
    frontier = [word]
    while frontier:
        current = frontier.pop()
        for i in range(len(current) - 1):
            for inverse in (False, True):
                nxt = hurwitz_move(current, i, inverse, alphabet)
                if nxt not in seen:
                    if len(seen) >= max_states:
                        return OrbitResult(frozenset(seen), complete=False)
                    seen.add(nxt)
                    frontier.append(nxt)
    return OrbitResult(frozenset(seen), complete=True)


# -- dual presentations -------------------------------------------------------------


@dataclass(frozen=True)
class DualPresentation:
    generators: FrozenSet[Isometry]
    relations: FrozenSet[Tuple[Isometry, Isometry, Isometry]]  # a * b = c * a
    complete: bool

    def as_text(self, labels: Dict[Isometry, str]) -> str:
        lines = []
        for a, b, c in sorted(
            self.relations, key=lambda t: tuple(x.sort_key() for x in t)
        ):
            lines.append(f"{labels[a]}*{labels[b]} = {labels[c]}*{labels[a]}")
        return "\n".join(lines)


def extract_dual_presentation(orbit: OrbitResult) -> DualPresentation:
    """Generators and Hurwitz relations ab = ca visible in an orbit of words."""
    gens: Set[Isometry] = set()
    rels: Set[Tuple[Isometry, Isometry, Isometry]] = set()
    for word in orbit.words:
        gens.update(word)
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            c = (a * b) * a.inverse()
            if (a * b) != (c * a):
                raise AssertionError("Hurwitz relation fails to evaluate equally")
            rels.add((a, b, c))
    return DualPresentation(frozenset(gens), frozenset(rels), orbit.complete)


# -- interval posets ----------------------------------------------------------------


Letter = Tuple[Isometry, str]  # generator with its display label


@dataclass
class MeetResult:
    status: str  # "value" | "none" | "undetermined"
    value: Optional[Isometry]
    candidates: Tuple[Isometry, ...] = ()


class IntervalPoset:
    """A windowed piece of [1, w] with certified ranks and Hasse edges."""

    def __init__(
        self,
        w: Isometry,
        nodes: Dict[Isometry, int],
        edges: List[Tuple[Isometry, Isometry, str]],
        generators: List[Letter],
        length: int,
        axial: Optional[AxialData] = None,
    ):
        self.w = w
        self.top_length = length
        self.nodes = nodes
        self.edges = edges
        self.generators = generators
        self.axial = axial
        self._order = sorted(nodes, key=lambda u: (nodes[u],) + u.sort_key())
        self._index = {u: i for i, u in enumerate(self._order)}
        self._up: Dict[Isometry, List[Tuple[Isometry, str]]] = {u: [] for u in nodes}
        self._down: Dict[Isometry, List[Tuple[Isometry, str]]] = {u: [] for u in nodes}
        for u, v, lab in edges:
            self._up[u].append((v, lab))
            self._down[v].append((u, lab))
        self._above = self._reach(self._up)
        self._below = self._reach(self._down)
        self._boundary: Optional[FrozenSet[Isometry]] = None

    def _reach(self, adj: Dict[Isometry, List[Tuple[Isometry, str]]]) -> Dict[Isometry, int]:
        # bitset closure in rank order (ascending for up, descending handled by re-sort)
        out: Dict[Isometry, int] = {}
        increasing = adj is self._up
        order = sorted(
            self._order, key=lambda u: -self.nodes[u] if increasing else self.nodes[u]
        )
        for u in order:
            bits = 1 << self._index[u]
            for v, _ in adj[u]:
                bits |= out[v]
            out[u] = bits
        return out

    def rank(self, u: Isometry) -> int:
        return self.nodes[u]

    def corank(self, u: Isometry) -> int:
        return self.top_length - self.nodes[u]

    def rank_nodes(self, r: int) -> List[Isometry]:
        return [u for u in self._order if self.nodes[u] == r]

    def leq(self, u: Isometry, v: Isometry) -> bool:
        return bool(self._above[u] & (1 << self._index[v]))

    def _from_bits(self, bits: int) -> List[Isometry]:
        return [u for u in self._order if bits & (1 << self._index[u])]

    def covers(self, u: Isometry) -> List[Tuple[Isometry, str]]:
        return sorted(self._up[u], key=lambda p: p[0].sort_key())

    # -- boundary awareness -------------------------------------------------

    def boundary_nodes(self) -> FrozenSet[Isometry]:
        """Nodes whose only axial-vertex contacts lie in the outermost shells."""
        if self._boundary is None:
            if self.axial is None:
                self._boundary = frozenset()
            else:
                k = self.axial.k
                outer = {i for i in self.axial.vertex_sets if abs(i) >= k - 1}
                flagged = set()
                for u in self.nodes:
                    inv = basic_invariants(u)
                    contact = {
                        i
                        for i, vs in self.axial.vertex_sets.items()
                        if any(inv.min.contains(v) for v in vs)
                    }
                    if contact and contact <= outer:
                        flagged.add(u)
                self._boundary = frozenset(flagged)
        return self._boundary

    # -- meets and joins -----------------------------------------------------

    def meet(self, u: Isometry, v: Isometry) -> MeetResult:
        lb = self._from_bits(self._below[u] & self._below[v])
        maxima = [
            z
            for z in lb
            if not any(y is not z and self.leq(z, y) for y in lb)
        ]
        return self._bound_result(maxima, (u, v))

    def join(self, u: Isometry, v: Isometry) -> MeetResult:
        ub = self._from_bits(self._above[u] & self._above[v])
        minima = [
            z
            for z in ub
            if not any(y is not z and self.leq(y, z) for y in ub)
        ]
        return self._bound_result(minima, (u, v))

    def _bound_result(self, extrema: List[Isometry], pair) -> MeetResult:
        boundary = self.boundary_nodes()
        touched = any(z in boundary for z in extrema) or any(z in boundary for z in pair)
        if len(extrema) == 1:
            return MeetResult("undetermined" if touched else "value", extrema[0])
        return MeetResult(
            "undetermined" if touched else "none", None, tuple(extrema)
        )

    # -- chains ----------------------------------------------------------------

    def maximal_chains(self) -> List[Tuple[str, ...]]:
        """Label words of all maximal chains from the identity to w."""
        bottom = identity(self.w.ambient)
        out: List[Tuple[str, ...]] = []

        def walk(u: Isometry, acc: List[str]):
            ups = self._up[u]
            if not ups:
                if u == self.w:
                    out.append(tuple(acc))
                return
            for v, lab in sorted(ups, key=lambda p: p[0].sort_key()):
                acc.append(lab)
                walk(v, acc)
                acc.pop()

        walk(bottom, [])
        return out

    def chain_words(self) -> List[Word]:
        """Maximal chains as words of generator isometries."""
        by_label = {}
        for g, lab in self.generators:
            by_label[lab] = g
        return [tuple(by_label[lab] for lab in chain) for chain in self.maximal_chains()]

    # -- export -----------------------------------------------------------------

    def to_dot(self) -> str:
        lines = ["digraph interval {", "  rankdir=BT;"]
        names = {u: f"n{i}" for i, u in enumerate(self._order)}
        for u in self._order:
            lines.append(f'  {names[u]} [label="{_invariant_label(u)}"];')
        for u, v, lab in sorted(
            self.edges, key=lambda e: (self.nodes[e[0]],) + e[0].sort_key() + e[1].sort_key()
        ):
            lines.append(f'  {names[u]} -> {names[v]} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "length": self.top_length,
            "window": self.axial.k if self.axial is not None else None,
            "nodes": [
                {"rank": self.nodes[u], "isometry": isometry_to_json(u)}
                for u in self._order
            ],
            "edges": [
                {
                    "from": self._index[u],
                    "to": self._index[v],
                    "label": lab,
                }
                for u, v, lab in self.edges
            ],
            "rank_sizes": {
                str(r): len(self.rank_nodes(r)) for r in range(self.top_length + 1)
            },
        }


def _invariant_label(u: Isometry) -> str:
    inv = basic_invariants(u)
    kind = "e" if inv.is_elliptic else "h"
    return f"{kind}{inv.mov.dim}"


def interval_poset_from_json(data: dict) -> dict:
    """Normalize a poset dump for round-trip checks."""
    from .isometry import isometry_from_json

    nodes = [isometry_from_json(n["isometry"]) for n in data["nodes"]]
    return {
        "length": data["length"],
        "nodes": nodes,
        "edges": [(e["from"], e["to"], e["label"]) for e in data["edges"]],
    }


def build_interval(
    generators: Sequence[Letter],
    w: Isometry,
    lower_bound: Optional[Callable[[Isometry], int]] = None,
    max_nodes: int = 500_000,
    axial: Optional[AxialData] = None,
) -> IntervalPoset:
    """Bidirectional certified BFS between the identity and w.

    With a Scherk lower bound, a node u enters only when its forward depth
    equals the bound for u, its backward depth equals the bound for u^-1 w,
    and the two sum to the length of w.  Without a bound (finite marked
    groups, the rectangle fixture) BFS depths over the full generating set are
    the true distances and certify themselves.
    """
    if not generators:
        raise ValueError("empty generator set")
    n = w.ambient
    start = identity(n)
    L = lower_bound(w) if lower_bound is not None else None

    def explore(source: Isometry, step, admit, limit, find=None) -> Dict[Isometry, int]:
        dist = {source: 0}
        frontier = [source]
        depth = 0
        while frontier and (limit is None or depth < limit):
            depth += 1
            nxt: Set[Isometry] = set()
            for u in frontier:
                for g, _ in generators:
                    v = step(u, g)
                    if v in dist or v in nxt:
                        continue
                    if not admit(v, depth):
                        continue
                    nxt.add(v)
            for v in nxt:
                dist[v] = depth
            if len(dist) > max_nodes:
                raise MemoryError("interval window exceeded the node budget")
            frontier = sorted(nxt, key=lambda u: u.sort_key())
            if limit is None and find is not None and find in dist:
                limit = dist[find]
        return dist

    if lower_bound is not None:
        fwd = explore(
            start,
            lambda u, g: u * g,
            lambda v, d: lower_bound(v) == d
            and lower_bound(v.inverse() * w) == L - d,
            L,
        )
        bwd = explore(
            w,
            lambda u, g: u * g.inverse(),
            lambda v, d: lower_bound(v.inverse() * w) == d
            and lower_bound(v) == L - d,
            L,
        )
        length = L
    else:
        fwd = explore(start, lambda u, g: u * g, lambda v, d: True, None, find=w)
        if w not in fwd:
            raise ValueError("w not reachable from the generators")
        length = fwd[w]
        fwd = {u: d for u, d in fwd.items() if d <= length}
        bwd = explore(w, lambda u, g: u * g.inverse(), lambda v, d: True, length)
    nodes = {
        u: fwd[u]
        for u in fwd
        if u in bwd and fwd[u] + bwd[u] == length
    }
    edges = []
    for u in sorted(nodes, key=lambda x: (nodes[x],) + x.sort_key()):
        for g, lab in generators:
            v = u * g
            if v in nodes and nodes[v] == nodes[u] + 1:
                edges.append((u, v, lab))
    return IntervalPoset(w, nodes, edges, list(generators), length, axial)


def build_interval_window(
    ctx: CoxeterContext, k: int, generators: Optional[List[Tuple[Vector, Q]]] = None
) -> IntervalPoset:
    """The windowed interval of a context: generators are the reflections whose
    walls contain an axial vertex with index in [-k, k]."""
    ax = axial_data(ctx, k)
    gens = generators if generators is not None else window_reflections(ctx, ax)
    if not gens:
        raise ValueError("empty generator set")
    letters: List[Letter] = []
    for alpha, delta in gens:
        label = ctx.root_label(alpha)
        if delta != 0:
            label += f"@{delta}"
        letters.append((reflection(alpha, delta), label))
    cache: Dict[Isometry, int] = {}

    def bound(u: Isometry) -> int:
        if u not in cache:
            cache[u] = reflection_length(u)
        return cache[u]

    return build_interval(letters, ctx.w, lower_bound=bound, axial=ax)


# -- bowties -------------------------------------------------------------------------


@dataclass(frozen=True)
class BowtieCertificate:
    a: Isometry
    b: Isometry
    c: Isometry
    d: Isometry
    direction: LinearSubspace  # U = Dir(Mov(a)) = Dir(Mov(b))
    checks: Tuple[Tuple[str, bool], ...]

    def to_json(self) -> dict:
        return {
            "a": isometry_to_json(self.a),
            "b": isometry_to_json(self.b),
            "c": isometry_to_json(self.c),
            "d": isometry_to_json(self.d),
            "direction_basis": [[str(x) for x in row] for row in self.direction.basis],
            "checks": dict(self.checks),
        }


class LengthOracle:
    """Certified distances d(x, y) inside [1, w]; None when not certifiable."""

    def between(self, x: Isometry, y: Isometry) -> Optional[int]:
        raise NotImplementedError


class PosetOracle(LengthOracle):
    def __init__(self, poset: IntervalPoset):
        self.poset = poset

    def between(self, x: Isometry, y: Isometry) -> Optional[int]:
        if x == y:
            return 0
        if x not in self.poset.nodes or y not in self.poset.nodes:
            return None
        if not self.poset.leq(x, y):
            return None
        return self.poset.rank(y) - self.poset.rank(x)


class WitnessOracle(LengthOracle):
    """Distances certified by explicit reflection words.

    A stored word for (x, y) certifies d(x, y) when it multiplies to x^-1 y,
    every letter is a group reflection, and its length equals the euclidean
    reflection length of x^-1 y (word length bounds group length above,
    Scherk bounds it below).
    """

    def __init__(self, words: Dict[Tuple[Isometry, Isometry], Word]):
        self.words = dict(words)

    def between(self, x: Isometry, y: Isometry) -> Optional[int]:
        if x == y:
            return 0
        word = self.words.get((x, y))
        if word is None:
            return None
        target = x.inverse() * y
        if compose_word(word, x.ambient) != target:
            return None
        if any(not is_reflection(r) for r in word):
            return None
        if reflection_length(target) != len(word):
            return None
        return len(word)


def certify_bowtie(
    a: Isometry,
    b: Isometry,
    c: Isometry,
    d: Isometry,
    w: Isometry,
    oracle: LengthOracle,
) -> BowtieCertificate:
    """Validate the window-independent bowtie pattern inside [1, w].

    Checks, in order: distinctness; certified membership of all four
    elements; c, d below a, b in the length order; a, b hyperbolic with equal
    move-set directions but unequal move-sets; c, d elliptic with fix-set
    direction the orthogonal complement but unequal fix-sets.  Any failure
    raises CertificationError naming the condition.
    """
    checks: Dict[str, bool] = {}
    one = identity(w.ambient)

    def record(name: str, ok: bool):
        checks[name] = ok
        if not ok:
            raise CertificationError(name, checks)

    record("distinct", len({a, b, c, d}) == 4)
    L = oracle.between(one, w)
    record("top_length", L is not None)
    for name, x in (("a", a), ("b", b), ("c", c), ("d", d)):
        lx = oracle.between(one, x)
        cx = oracle.between(x, w)
        record(
            f"membership_{name}",
            lx is not None and cx is not None and lx + cx == L,
        )
    for lo_name, lo in (("c", c), ("d", d)):
        for hi_name, hi in (("a", a), ("b", b)):
            duv = oracle.between(lo, hi)
            record(
                f"order_{lo_name}<{hi_name}",
                duv is not None
                and oracle.between(one, lo) + duv == oracle.between(one, hi),
            )
    inv_a, inv_b = basic_invariants(a), basic_invariants(b)
    record("a_hyperbolic", inv_a.kind == "hyperbolic")
    record("b_hyperbolic", inv_b.kind == "hyperbolic")
    record("equal_mov_direction", inv_a.mov.directions == inv_b.mov.directions)
    record("distinct_mov", inv_a.mov != inv_b.mov)
    direction = inv_a.mov.directions
    inv_c, inv_d = basic_invariants(c), basic_invariants(d)
    record("c_elliptic", inv_c.kind == "elliptic")
    record("d_elliptic", inv_d.kind == "elliptic")
    perp = direction.perp()
    record(
        "fix_direction",
        inv_c.min.directions == perp and inv_d.min.directions == perp,
    )
    record("distinct_fix", inv_c.min != inv_d.min)
    return BowtieCertificate(a, b, c, d, direction, tuple(checks.items()))


@dataclass
class BowtieSearch:
    confirmed: List[BowtieCertificate]
    unconfirmed: List[Tuple[Isometry, Isometry, Isometry, Isometry]]


def find_bowties(poset: IntervalPoset) -> BowtieSearch:
    """All bowtie quadruples of the windowed poset, split by certification.

    A quadruple passing ``certify_bowtie`` is a bowtie of the full interval;
    the rest are reported as unconfirmed window artifacts.
    """
    oracle = PosetOracle(poset)
    confirmed: List[BowtieCertificate] = []
    unconfirmed = []
    seen: Set[FrozenSet[Isometry]] = set()
    order = poset._order
    for ci in range(len(order)):
        for di in range(ci + 1, len(order)):
            c, d = order[ci], order[di]
            if poset.leq(c, d) or poset.leq(d, c):
                continue
            ub = poset._from_bits(poset._above[c] & poset._above[d])
            mub = [z for z in ub if not any(y is not z and poset.leq(y, z) for y in ub)]
            if len(mub) < 2:
                continue
            lb_cache: Dict[Tuple[Isometry, Isometry], List[Isometry]] = {}
            for a, b in combinations(mub, 2):
                lb = poset._from_bits(poset._below[a] & poset._below[b])
                mlb = [
                    z for z in lb if not any(y is not z and poset.leq(z, y) for y in lb)
                ]
                if c in mlb and d in mlb:
                    key = frozenset({a, b, c, d})
                    if key in seen:
                        continue
                    seen.add(key)
                    try:
                        confirmed.append(certify_bowtie(a, b, c, d, poset.w, oracle))
                    except CertificationError:
                        unconfirmed.append((a, b, c, d))
    return BowtieSearch(confirmed, unconfirmed)
