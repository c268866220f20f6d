"""The planar rectangle fixture: eight generators, one 180-degree rotation.

Corners p1..p4 sit at (0,1), (1,1), (1,0), (0,0).  The generators are the
four reflections fixing a side (r12 top, r34 bottom, r23 right, r41 left) and
the four corner-to-opposite-corner translations t13, t31, t24, t42.  The
target w rotates the unit square about its center.  Lengths over this mixed
generating set come from BFS, not Scherk.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Dict, List, Tuple

from .interval import IntervalPoset, Letter, build_interval
from .isometry import Isometry, translation, reflection
from .linalg import qv

CORNERS = {
    1: qv(0, 1),
    2: qv(1, 1),
    3: qv(1, 0),
    4: qv(0, 0),
}


def rectangle_generators() -> List[Letter]:
    gens: List[Tuple[Isometry, str]] = [
        (reflection(qv(0, 1), 1), "r12"),
        (reflection(qv(0, 1), 0), "r34"),
        (reflection(qv(1, 0), 1), "r23"),
        (reflection(qv(1, 0), 0), "r41"),
    ]
    for i, j in ((1, 3), (3, 1), (2, 4), (4, 2)):
        vec = tuple(b - a for a, b in zip(CORNERS[i], CORNERS[j]))
        gens.append((translation(vec), f"t{i}{j}"))
    return gens


def rectangle_target() -> Isometry:
    """Rotation by pi about the center (1/2, 1/2)."""
    half = reflection(qv(1, 0), Q(1, 2)) * reflection(qv(0, 1), Q(1, 2))
    return half


def rectangle_interval() -> IntervalPoset:
    return build_interval(rectangle_generators(), rectangle_target())


def generator_labels() -> Dict[Isometry, str]:
    return {g: lab for g, lab in rectangle_generators()}
