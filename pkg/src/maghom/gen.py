"""Seeded generators for test instances: spaces, digraphs, distance modules.

Everything here is deterministic in the seed; generation never produces an
invalid object (spaces are closed under min-plus, modules are assembled from
constructions that satisfy the composition law and re-validated).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from .distmod import (
    DistanceModule,
    direct_sum,
    representable_module,
    shift_module,
    trivial_module,
    validate_module,
)
from .space import INF, Digraph, QuasimetricSpace, validate_space

DEFAULT_GRID = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), INF)


def random_space(n_points: int, seed: int, grid=DEFAULT_GRID) -> QuasimetricSpace:
    """Random quasimetric space: grid distances closed under min-plus.

    Off-diagonal entries are sampled from the grid, then the matrix is
    closed transitively (Floyd-Warshall with absorbing infinity).  Positive
    grids cannot create zero off-diagonal entries, so the result always
    validates.
    """
    rng = random.Random(seed)
    points = [f"p{i}" for i in range(n_points)]
    dist = [
        [Fraction(0) if i == j else rng.choice(grid) for j in range(n_points)]
        for i in range(n_points)
    ]
    for k in range(n_points):
        for i in range(n_points):
            if dist[i][k] is INF:
                continue
            for j in range(n_points):
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    return validate_space(points, dist)


def random_digraph(n_vertices: int, seed: int, arc_probability=0.5) -> Digraph:
    rng = random.Random(seed)
    verts = [f"v{i}" for i in range(n_vertices)]
    arcs = [
        (u, v)
        for u in verts
        for v in verts
        if u != v and rng.random() < arc_probability
    ]
    return Digraph(verts, arcs)


def digraphs_up_to_iso(max_vertices: int):
    """Every digraph on 1..max_vertices vertices, one per isomorphism class.

    Arc sets are encoded as bitmasks over ordered pairs; the canonical form
    is the minimum bitmask over all vertex permutations.
    """
    out = []
    for n in range(1, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        pair_pos = {p: k for k, p in enumerate(pairs)}
        perms = list(permutations(range(n)))
        seen = set()
        for mask in range(1 << len(pairs)):
            canon = mask
            for perm in perms:
                image = 0
                for k, (i, j) in enumerate(pairs):
                    if mask & (1 << k):
                        image |= 1 << pair_pos[(perm[i], perm[j])]
                if image < canon:
                    canon = image
            if canon in seen:
                continue
            seen.add(canon)
            verts = [f"v{i}" for i in range(n)]
            arcs = [
                (verts[i], verts[j])
                for k, (i, j) in enumerate(pairs)
                if canon & (1 << k)
            ]
            out.append(Digraph(verts, arcs))
    return out


def _truncate_above(module: DistanceModule, cap) -> DistanceModule:
    """Drop all components above a grade cap.

    Removing top grades preserves the composition law: actions only raise
    grades, and both sides of the law land in the same (removed) grade.
    """
    components = {
        i: {g: r for g, r in comp.items() if g <= cap}
        for i, comp in enumerate(module.components)
    }
    actions = {}
    space = module.space
    for (i, j), per_grade in module.actions.items():
        d = space.d(i, j)
        kept = {g: m for g, m in per_grade.items() if g <= cap and g + d <= cap}
        if kept:
            actions[(i, j)] = kept
    return DistanceModule(space, components, actions)


def _scale_actions(module: DistanceModule, c: int) -> DistanceModule:
    """Multiply the action along each pair by c^d(x,y) (integer distances).

    Betweenness is additive on distances, so the scaling respects the
    composition law.
    """
    space = module.space
    actions = {}
    for (i, j), per_grade in module.actions.items():
        d = space.d(i, j)
        assert d.denominator == 1
        factor = c ** int(d)
        actions[(i, j)] = {
            g: tuple(tuple(v * factor for v in row) for row in m)
            for g, m in per_grade.items()
        }
    return DistanceModule(space, {i: dict(comp) for i, comp in enumerate(module.components)}, actions)


def random_module(
    space: QuasimetricSpace, seed: int, max_rank: int = 2, max_grade: int = 3
) -> DistanceModule:
    """Random valid distance module with small ranks and grades.

    Direct sums of one or two building blocks: shifted trivial pieces and
    integer-scaled shifted representable rows, truncated above max_grade.
    Only meaningful over spaces with integer distances (the scaling uses
    c^d).  The result is re-validated before it is returned.
    """
    rng = random.Random(seed)

    def block():
        if rng.random() < 0.4:
            return trivial_module(space, rng.randrange(0, max_grade + 1), 1)
        x = rng.choice(space.points)
        mod = representable_module(space, x)
        c = rng.choice([1, 1, 2, 3])
        if c != 1:
            mod = _scale_actions(mod, c)
        shift = rng.randrange(0, max_grade + 1)
        if shift:
            mod = shift_module(mod, shift)
        return mod

    module = block()
    if max_rank >= 2 and rng.random() < 0.6:
        module = direct_sum(module, block())
    module = _truncate_above(module, Fraction(max_grade))
    problems = validate_module(space, module)
    assert not problems, problems
    return module
