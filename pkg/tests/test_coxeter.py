import random
from fractions import Fraction as Q

import pytest

from dualgarside.coxeter import (
    AcyclicOrientation,
    WindowInsufficientError,
    all_classes,
    axial_data,
    axis_direction_symbolic,
    barycentric_coordinates,
    bipartite_involutions,
    build_context,
    count_acyclic_orientations,
    coxeter_element,
    coxeter_element_from_orientation,
    context_to_json,
    diagram_from_roots,
    in_r0,
    orientation_from_order,
    sink_source_flip,
    standard_simple_system,
    topological_order,
    window_reflections,
)
from dualgarside.isometry import (
    basic_invariants,
    compose_word,
    identity,
    reflection,
    reflection_length,
    translation,
)
from dualgarside.linalg import dot, parallel, primitive, qv, vsub
from dualgarside.roots import DynkinType, parse_type

# the axis directions reported for the classical and exceptional families
PAPER_AXES = {
    ("C", 2): (2, 2),
    ("C", 3): (2, 2, 2),
    ("C", 4): (2, 2, 2, 2),
    ("C", 5): (2, 2, 2, 2, 2),
    ("C", 6): (2, 2, 2, 2, 2, 2),
    ("B", 3): (2, 2, 0),
    ("B", 4): (2, 2, 2, 0),
    ("B", 5): (2, 2, 2, 2, 0),
    ("B", 6): (2, 2, 2, 2, 2, 0),
    ("D", 4): (0, 2, 2, 0),
    ("D", 5): (0, 2, 2, 2, 0),
    ("D", 6): (0, 2, 2, 2, 2, 0),
    ("F", 4): (0, 1, 1, 2),
    ("E", 6): (1, 1, 1, -3, -3, 1, 1, 1),
    ("E", 7): (1, 1, 1, 1, 0, 0, 2, 2),
    ("E", 8): (1, 1, 1, 1, 3, -3, 2, 2),
}


@pytest.mark.parametrize("fam,rank", sorted(PAPER_AXES))
def test_axis_directions_match_reported_values(fam, rank):
    ctx = build_context(DynkinType(fam, rank))
    expected = qv(*PAPER_AXES[(fam, rank)])
    assert parallel(ctx.axis_dir, expected)


def test_simple_systems_printed_examples():
    c3 = standard_simple_system(DynkinType("C", 3))
    assert c3.roots == (qv(2, 0, 0), qv(-1, -1, 0), qv(0, 1, 1), qv(0, 0, -2))
    f4 = standard_simple_system(DynkinType("F", 4))
    assert len(f4.roots) == 5 and f4.white == 0
    e6 = standard_simple_system(DynkinType("E", 6))
    assert len(e6.roots) == 7


def test_diagram_shapes():
    g2 = standard_simple_system(DynkinType("G", 2)).diagram
    assert sorted(m for _, _, m in g2.edges) == [3, 6]
    c2 = standard_simple_system(DynkinType("C", 2)).diagram
    assert sorted(m for _, _, m in c2.edges) == [4, 4]
    b3 = standard_simple_system(DynkinType("B", 3)).diagram
    assert sorted(m for _, _, m in b3.edges) == [3, 3, 4]
    e8 = standard_simple_system(DynkinType("E", 8)).diagram
    assert sorted(m for _, _, m in e8.edges) == [3] * 8
    a1 = standard_simple_system(DynkinType("A", 1), (1, 1)).diagram
    assert [m for _, _, m in a1.edges] == [0]  # infinite bond


def test_dependency_marks():
    f4 = standard_simple_system(DynkinType("F", 4))
    assert f4.dependency() == (1, 2, 3, 4, 2)
    g2 = standard_simple_system(DynkinType("G", 2))
    assert g2.dependency() == (1, 2, 3)


def test_same_orientation_same_element():
    sys = standard_simple_system(DynkinType("B", 3))
    order1 = [0, 2, 3, 1]
    ori = orientation_from_order(sys.diagram, order1)
    w1 = coxeter_element(sys, order1)
    # another linearization of the same orientation
    order2 = [2, 0, 3, 1]
    assert orientation_from_order(sys.diagram, order2).directed == ori.directed
    w2 = coxeter_element(sys, order2)
    assert w1 == w2


def test_a1_coxeter_element_is_coroot_translation():
    ctx = build_context(DynkinType("A", 1), (1, 1))
    inv = basic_invariants(ctx.w)
    assert inv.kind == "hyperbolic"
    assert inv.mov.dim == 0  # a pure translation
    assert parallel(inv.mov.base, qv(1, -1))


def test_bipartite_coxeter_element_equals_involution_product():
    for t in [DynkinType("C", 2), DynkinType("B", 3), DynkinType("G", 2)]:
        ctx = build_context(t)
        w0, w1 = ctx.involutions
        assert (w0 * w0).is_identity() and (w1 * w1).is_identity()
        assert w1 * w0 == ctx.w


def test_bipartite_parts_commute():
    sys = standard_simple_system(DynkinType("C", 2))
    s0, s1 = sys.bipartite_parts()
    assert {len(s0), len(s1)} == {1, 2}
    refl = sys.reflections()
    for part in (s0, s1):
        part = sorted(part)
        for i in part:
            for j in part:
                assert refl[i] * refl[j] == refl[j] * refl[i]


def test_bipartite_involutions_reject_cycles():
    sys = standard_simple_system(DynkinType("A", 3), (2, 2))
    with pytest.raises(ValueError):
        bipartite_involutions(sys)


def test_g2_involution_kinds():
    ctx = build_context(DynkinType("G", 2))
    w0, w1 = ctx.involutions
    inv0, inv1 = basic_invariants(w0), basic_invariants(w1)
    # w0 is a point rotation (within the 2-dim point space), w1 a reflection
    assert inv0.kind == "elliptic" and inv0.mov.dim == 2
    assert inv1.kind == "elliptic" and inv1.mov.dim == 1


def test_symbolic_axis_agrees_with_minset_all_trees():
    for fam, rank in sorted(PAPER_AXES):
        sys = standard_simple_system(DynkinType(fam, rank))
        ctx = build_context(DynkinType(fam, rank))
        assert parallel(axis_direction_symbolic(sys), ctx.axis_dir)


def test_coxeter_element_scherk_length():
    for fam, rank in [("C", 2), ("B", 3), ("G", 2), ("F", 4), ("E", 6)]:
        ctx = build_context(DynkinType(fam, rank))
        assert reflection_length(ctx.w) == rank + 1
        assert basic_invariants(ctx.w).kind == "hyperbolic"


def test_proper_subset_products_elliptic():
    sys = standard_simple_system(DynkinType("B", 3))
    refl = sys.reflections()
    import itertools

    for r in range(1, 4):
        for subset in itertools.combinations(range(4), r):
            w = compose_word([refl[i] for i in subset], 3)
            assert basic_invariants(w).kind == "elliptic"


def test_a_type_power_translation():
    ctx = build_context(DynkinType("A", 3), (2, 2))
    w4 = identity(4)
    for _ in range(4):
        w4 = ctx.w * w4
    assert w4 == translation(qv(2, 2, -2, -2))


def test_a_type_classes():
    assert all_classes(DynkinType("A", 5)) == [(5, 1), (4, 2), (3, 3)]
    assert all_classes(DynkinType("A", 2)) == [(2, 1)]
    assert all_classes(DynkinType("B", 4)) == ["bipartite"]


def test_count_acyclic_orientations():
    hexagon = standard_simple_system(DynkinType("A", 5), (5, 1)).diagram
    assert count_acyclic_orientations(hexagon) == 62
    triangle = standard_simple_system(DynkinType("A", 2), (2, 1)).diagram
    assert count_acyclic_orientations(triangle) == 6
    tree = standard_simple_system(DynkinType("B", 4)).diagram
    assert count_acyclic_orientations(tree) == 2 ** len(tree.edges)


def test_sink_source_flip_involutive_and_acyclic():
    sys = standard_simple_system(DynkinType("G", 2))
    ori = orientation_from_order(sys.diagram, [0, 1, 2])
    v = topological_order(ori)[0]
    assert ori.is_source(v)
    flipped = sink_source_flip(ori, v)
    assert sink_source_flip(flipped, v).directed == ori.directed


def test_sink_source_flip_element_identity():
    # w = r r1 ... rn equals the product over the reflected chamber's system
    sys = standard_simple_system(DynkinType("B", 3))
    order = topological_order(orientation_from_order(sys.diagram, default_order_of(sys)))
    refl = sys.reflections()
    w = compose_word([refl[i] for i in order], 3)
    src = order[0]
    r = refl[src]
    conj = [r * refl[i] * r for i in order[1:]]
    assert compose_word(conj + [r], 3) == w


def default_order_of(sys):
    from dualgarside.coxeter import default_order

    return default_order(sys)


def test_g2_flip_sequence_reaches_both_bipartite_orientations():
    sys = standard_simple_system(DynkinType("G", 2))
    d = sys.diagram
    start = orientation_from_order(d, [0, 1, 2])
    seen = {start.directed}
    frontier = [start]
    while frontier:
        ori = frontier.pop()
        for v in range(3):
            if ori.is_source(v) or ori.is_sink(v):
                nxt = sink_source_flip(ori, v)
                if nxt.directed not in seen:
                    seen.add(nxt.directed)
                    frontier.append(nxt)
    assert len(seen) == count_acyclic_orientations(d) == 4
    bipartite = [o for o in seen if _all_source_or_sink(d, o)]
    assert len(bipartite) == 2


def _all_source_or_sink(d, directed):
    ori = AcyclicOrientation(d, directed)
    return all(ori.is_source(v) or ori.is_sink(v) for v in range(d.n_vertices))


# -- axial data -----------------------------------------------------------------


def test_axial_points_spacing_and_axis():
    ctx = build_context(DynkinType("G", 2))
    ax = axial_data(ctx, 3)
    idx = sorted(ax.points)
    assert idx == list(range(-3, 5))
    gaps = {vsub(ax.points[i + 1], ax.points[i]) for i in idx[:-1]}
    assert len(gaps) == 1
    for i in idx:
        assert ctx.axis.contains(ax.points[i])


def test_w_shifts_axial_points_by_two():
    for t in [DynkinType("G", 2), DynkinType("C", 2), DynkinType("B", 3)]:
        ctx = build_context(t)
        ax = axial_data(ctx, 2)
        for i in range(-2, 1):
            assert ctx.w.apply(ax.points[i]) == ax.points[i + 2]


def test_axial_midpoints_interior():
    for t in [DynkinType("G", 2), DynkinType("C", 2), DynkinType("B", 3)]:
        ctx = build_context(t)
        ax = axial_data(ctx, 2)
        for i in range(-2, 2):
            mid = tuple((a + b) / 2 for a, b in zip(ax.points[i], ax.points[i + 1]))
            vertices = ax.chamber_vertex_set(i)
            coords = barycentric_coordinates(mid, vertices)
            assert coords is not None
            assert all(c > 0 for c in coords)


def test_g2_closest_points_vertex_and_edge():
    ctx = build_context(DynkinType("G", 2))
    ax = axial_data(ctx, 2)
    # x0 is a chamber vertex, x1 lies in the interior of an edge
    coords0 = barycentric_coordinates(ax.points[0], ctx.chamber_vertices)
    coords1 = barycentric_coordinates(ax.points[1], ctx.chamber_vertices)
    assert sorted(coords0) == [0, 0, 1]
    assert sum(1 for c in coords1 if c > 0) == 2 and all(c >= 0 for c in coords1)


def test_g2_exactly_two_horizontal_roots():
    ctx = build_context(DynkinType("G", 2))
    hor = [a for a in ctx.roots if ctx.classify_root(a) == "horizontal"]
    assert len(hor) == 2
    assert set(hor) == {qv(1, 0, -1), qv(-1, 0, 1)}


def test_b3_horizontal_roots():
    ctx = build_context(DynkinType("B", 3))
    hor = {a for a in ctx.roots if ctx.classify_root(a) == "horizontal"}
    expected = {qv(1, -1, 0), qv(-1, 1, 0), qv(0, 0, 1), qv(0, 0, -1)}
    assert hor == expected


def test_in_r0_simple_system_reflections():
    for t in [DynkinType("G", 2), DynkinType("C", 2), DynkinType("B", 3)]:
        ctx = build_context(t)
        ax = axial_data(ctx, 3)
        for alpha, delta in zip(ctx.simple.roots, ctx.simple.offsets):
            assert in_r0(alpha, delta, ctx, ax)


def test_in_r0_vertical_crossing_reflections():
    ctx = build_context(DynkinType("G", 2))
    ax = axial_data(ctx, 3)
    # every vertical reflection whose wall crosses the axis inside the window
    for alpha, delta in window_reflections(ctx, ax):
        if ctx.classify_root(alpha) == "vertical":
            assert in_r0(alpha, delta, ctx, ax)


def test_in_r0_g2_horizontal_strip():
    ctx = build_context(DynkinType("G", 2))
    ax = axial_data(ctx, 3)
    alpha = qv(1, 0, -1)
    values = sorted(
        {dot(v, alpha) for v in ax.all_vertices() if dot(v, alpha).denominator == 1}
    )
    hits = [m for m in range(-6, 7) if in_r0(alpha, m, ctx, ax)]
    assert hits == [int(v) for v in values if -6 <= v <= 6]
    # exactly two horizontal walls bound the axial strip
    assert len(values) == 2
    out = max(values) + 1
    assert not in_r0(alpha, out, ctx, ax)


def test_in_r0_window_insufficient():
    # F4~ has linear-part order 6, so one full period spans 12 indices
    ctx = build_context(DynkinType("F", 4))
    ax = axial_data(ctx, 2)
    with pytest.raises(WindowInsufficientError):
        in_r0(qv(0, 1, -1, 0), 0, ctx, ax)
    ax_big = axial_data(ctx, 6)
    assert in_r0(qv(0, 1, -1, 0), 0, ctx, ax_big) in (True, False)


def test_in_r0_periodicity_vertical():
    # for a vertical root, far-away integer offsets are decided by periodicity
    ctx = build_context(DynkinType("C", 2))
    ax = axial_data(ctx, 3)
    alpha = qv(2, 0)
    near = [m for m in range(-2, 3) if in_r0(alpha, m, ctx, ax)]
    far = [m for m in range(98, 103) if in_r0(alpha, m, ctx, ax)]
    assert near and far  # crossings repeat forever along the axis


def test_window_reflections_are_group_reflections():
    ctx = build_context(DynkinType("B", 3))
    ax = axial_data(ctx, 2)
    refs = window_reflections(ctx, ax)
    assert refs
    for alpha, delta in refs:
        assert alpha in ctx.roots and delta.denominator == 1


def test_a_type_axial_vertices_and_in_r0():
    ctx = build_context(DynkinType("A", 2), (2, 1))
    ax = axial_data(ctx, 3)
    for alpha, delta in zip(ctx.simple.roots, ctx.simple.offsets):
        assert in_r0(alpha, delta, ctx, ax)


def test_context_json():
    ctx = build_context(DynkinType("G", 2))
    ax = axial_data(ctx, 2)
    data = context_to_json(ctx, ax)
    assert data["type"] == "G" and data["rank"] == 2
    assert data["axis_direction"] == ["1", "-2", "1"]
    assert "axial_points" in data


def test_parse_type_roundtrip_for_cli():
    assert parse_type("E7").ambient == 8
