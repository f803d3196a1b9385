"""The distance algebra of a finite space and its grade-zero quotient.

The algebra has one basis element per finite-distance ordered pair (x, y),
graded by the distance, with product
(x,y).(y',z) = (x,z) when y = y' and d(x,y) + d(y,z) = d(x,z), else 0.
The pairs (x,x) form a complete set of orthogonal idempotents; positive
degree pairs span a nilpotent ideal, and the quotient by it is the direct
sum of rank-1 pieces in grade 0, one per point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnknownPoint
from .space import INF, QuasimetricSpace


class DistanceAlgebra:
    """Basis pairs, grading, and the betweenness product of a finite space."""

    __slots__ = ("space", "basis", "index")

    def __init__(self, space: QuasimetricSpace):
        self.space = space
        self.basis = tuple(sorted(space.finite_pairs()))
        self.index = {p: k for k, p in enumerate(self.basis)}

    def grade(self, pair) -> Fraction:
        return self.space.d(pair[0], pair[1])

    def mul_pairs(self, p, q):
        """Product of two basis pairs: a basis pair or None (zero)."""
        if p[1] != q[0]:
            return None
        if self.space.between_idx(p[0], p[1], q[1]):
            return (p[0], q[1])
        return None

    def unit(self):
        return {(i, i): 1 for i in range(len(self.space))}

    def e(self, x):
        i = self.space.idx(x) if not isinstance(x, int) else x
        return {(i, i): 1}

    def pair_of_labels(self, x, y):
        i, j = self.space.idx(x), self.space.idx(y)
        if self.space.d(i, j) is INF:
            raise UnknownPoint(f"({x}, {y}) is not a basis pair: distance is infinite")
        return (i, j)

    def __repr__(self):
        return f"DistanceAlgebra(points={len(self.space)}, pairs={len(self.basis)})"


def build_distance_algebra(space: QuasimetricSpace) -> DistanceAlgebra:
    return DistanceAlgebra(space)


def algebra_multiply(algebra: DistanceAlgebra, u: dict, v: dict) -> dict:
    """Bilinear extension of the basis product; elements are {pair: int}."""
    out = {}
    for p, a in u.items():
        if not a:
            continue
        for q, b in v.items():
            if not b:
                continue
            pq = algebra.mul_pairs(p, q)
            if pq is not None:
                c = out.get(pq, 0) + a * b
                if c:
                    out[pq] = c
                else:
                    del out[pq]
    return out


def element_grade_parts(algebra: DistanceAlgebra, u: dict) -> dict:
    """Split an element into homogeneous parts keyed by grade."""
    parts = {}
    for p, a in u.items():
        if a:
            parts.setdefault(algebra.grade(p), {})[p] = a
    return parts


def radical_power_is_zero(algebra: DistanceAlgebra, power: int) -> bool:
    """Check that every product of `power` positive-degree pairs vanishes.

    Walks all chains x_0 -> x_1 -> ... -> x_power of distinct consecutive
    points with finite steps, folding the product; the ideal of positive
    pairs is nilpotent of order at most the number of points.
    """
    space = algebra.space
    n = len(space)

    def walk(current, steps, acc_pair):
        if acc_pair is None:
            return True
        if steps == power:
            return False  # a nonzero product of `power` positive pairs survived
        for nxt in range(n):
            if nxt == current or space.d(current, nxt) is INF:
                continue
            prod = algebra.mul_pairs(acc_pair, (current, nxt))
            if not walk(nxt, steps + 1, prod):
                return False
        return True

    for start in range(n):
        for first in range(n):
            if first == start or space.d(start, first) is INF:
                continue
            if not walk(first, 1, (start, first)):
                return False
    return True


class SimpleQuotient:
    """The quotient of the algebra by its positive-degree ideal.

    One rank-1 piece per point, all in grade 0; a pair (y, z) acts on the
    piece at x as the identity when x = y = z and as zero otherwise (on
    either side).
    """

    __slots__ = ("algebra",)

    def __init__(self, algebra: DistanceAlgebra):
        self.algebra = algebra

    def dim(self, grade) -> int:
        return len(self.algebra.space) if grade == 0 else 0

    def right_action(self, x, pair):
        """e_x . pair inside the quotient: x (itself) or None."""
        i = self.algebra.space.idx(x) if not isinstance(x, int) else x
        return x if pair == (i, i) else None

    def left_action(self, pair, x):
        i = self.algebra.space.idx(x) if not isinstance(x, int) else x
        return x if pair == (i, i) else None

    def as_distance_module(self):
        from .distmod import trivial_module

        return trivial_module(self.algebra.space, 0, 1)


def quotient_module_S(algebra: DistanceAlgebra) -> SimpleQuotient:
    return SimpleQuotient(algebra)
