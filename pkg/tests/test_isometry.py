import random
from fractions import Fraction as Q

import pytest

from dualgarside.isometry import (
    Isometry,
    basic_invariants,
    compose_word,
    identity,
    in_interval,
    interval_order_leq,
    invariant,
    is_reflection,
    isometry_from_json,
    isometry_to_json,
    model_leq,
    reflection,
    reflection_length,
    reflection_root_offset,
    translation,
)
from dualgarside.linalg import dot, full_space, qv, single_point, span, affine
from dualgarside.roots import DynkinType, build_root_system


def test_reflection_coordinate_swap():
    r = reflection(qv(1, -1, 0), 0)
    assert r(qv(1, 0, 0)) == qv(0, 1, 0)


def test_reflection_affine_formula():
    # r_{2e1,1} in type C fixes {x1 = 1/2} and sends the origin to (1, 0)
    r = reflection(qv(2, 0), 1)
    assert r(qv(Q(1, 2), 5)) == qv(Q(1, 2), 5)
    assert r(qv(0, 0)) == qv(1, 0)


def test_reflection_involution_random():
    rng = random.Random(7)
    roots = sorted(build_root_system(DynkinType("F", 4)).roots)
    for _ in range(20):
        alpha = rng.choice(roots)
        i = rng.randint(-3, 3)
        r = reflection(alpha, i)
        assert (r * r).is_identity()


def test_compose_translations():
    t = translation(qv(1, 2)) * translation(qv(3, -1))
    assert t == translation(qv(4, 1))


def test_compose_inverse():
    a = reflection(qv(1, -1), 0) * translation(qv(2, 3))
    assert (a * a.inverse()).is_identity()
    assert (a.inverse() * a).is_identity()


def test_rightmost_acts_first():
    r = reflection(qv(1, 0), 0)  # x -> -x
    t = translation(qv(1, 0))
    # (r * t)(0) applies t first: 0 -> 1 -> -1
    assert (r * t)(qv(0, 0)) == qv(-1, 0)
    assert (t * r)(qv(0, 0)) == qv(1, 0)


def test_invariants_identity():
    inv = basic_invariants(identity(3))
    assert inv.kind == "elliptic"
    assert inv.mov.dim == 0 and inv.mov.is_linear()
    assert inv.min == full_space(3)


def test_invariants_translation():
    inv = basic_invariants(translation(qv(1, 1)))
    assert inv.kind == "hyperbolic"
    assert inv.mov == single_point(qv(1, 1))
    assert inv.min == full_space(2)


def test_invariants_reflection():
    r = reflection(qv(0, 2), 1)
    inv = basic_invariants(r)
    assert inv.kind == "elliptic"
    assert inv.mov.directions == span([qv(0, 1)], 2)
    # min-set is the fixed hyperplane {x2 = 1/2}
    assert inv.min == affine(qv(0, Q(1, 2)), span([qv(1, 0)], 2))


def test_scherk_lengths():
    assert reflection_length(identity(2)) == 0
    assert reflection_length(translation(qv(1, 0))) == 2
    assert reflection_length(reflection(qv(1, 1), 2)) == 1
    # rotation by pi in the plane: elliptic with 2-dim move-set
    rot = reflection(qv(1, 0), 0) * reflection(qv(0, 1), 0)
    assert reflection_length(rot) == 2


def test_reflection_root_offset_roundtrip():
    r = reflection(qv(0, 0, 2), -3)
    root, off = reflection_root_offset(r)
    assert root == qv(0, 0, 1) and off == Q(-3, 2)
    assert reflection(root, off) == r


def _random_word(rng, roots, k):
    return [reflection(rng.choice(roots), rng.randint(-2, 2)) for _ in range(k)]


def test_min_dir_is_perp_of_mov_dir_random():
    rng = random.Random(11)
    roots = sorted(build_root_system(DynkinType("B", 3)).roots)
    for _ in range(200):
        w = compose_word(_random_word(rng, roots, rng.randint(1, 6)), 3)
        inv = basic_invariants(w)
        assert inv.min.directions == inv.mov.directions.perp()


def test_mov_dim_changes_by_one_under_reflection():
    rng = random.Random(13)
    roots = sorted(build_root_system(DynkinType("C", 3)).roots)
    for _ in range(200):
        w = compose_word(_random_word(rng, roots, rng.randint(0, 5)), 3)
        r = reflection(rng.choice(roots), rng.randint(-2, 2))
        d1 = basic_invariants(w).mov.dim
        d2 = basic_invariants(r * w).mov.dim
        assert abs(d1 - d2) == 1


def test_length_symmetry_subadditivity_parity():
    rng = random.Random(17)
    roots = sorted(build_root_system(DynkinType("B", 3)).roots)
    for _ in range(200):
        k1, k2 = rng.randint(0, 3), rng.randint(0, 3)
        g = compose_word(_random_word(rng, roots, k1), 3)
        h = compose_word(_random_word(rng, roots, k2), 3)
        lg, lh, lgh = reflection_length(g), reflection_length(h), reflection_length(g * h)
        assert lg == reflection_length(g.inverse())
        assert lgh <= lg + lh
        assert lg <= k1 and (k1 - lg) % 2 == 0


def test_model_order_basics():
    e_plane = invariant(identity(2))
    r = reflection(qv(1, 0), 0)
    e_line = invariant(r)
    t = translation(qv(1, 0))
    h_pt = invariant(t)
    # whole-space elliptic is the minimum among elliptics
    assert model_leq(e_plane, e_line)
    assert not model_leq(e_line, e_plane)
    # no elliptic above a hyperbolic
    assert not model_leq(h_pt, e_line)
    # e^H <= h^M iff M-perp inside Dir(H): here span{(1,0)}-perp = span{(0,1)} vs Dir H = span{(0,1)}
    assert model_leq(e_line, h_pt)
    r2 = reflection(qv(0, 1), 0)
    assert not model_leq(invariant(r2), h_pt)


def test_interval_order_trivial_cases():
    w = reflection(qv(1, 0), 0) * translation(qv(0, 1))
    assert interval_order_leq(identity(2), w, w)
    assert in_interval(identity(2), w)
    assert in_interval(w, w)


def test_json_roundtrip():
    w = reflection(qv(1, -1, 0), 2) * translation(qv(1, 0, 0))
    assert isometry_from_json(isometry_to_json(w)) == w
