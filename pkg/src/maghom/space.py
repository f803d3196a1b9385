"""Finite quasimetric spaces and digraphs.

Distances are exact: a distance is either a nonnegative ``Fraction`` or the
module-level singleton ``INF``.  Floats are never used, so betweenness
(``d(x,y) + d(y,z) == d(x,z)``) is a decidable equality test.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import (
    InvalidSpaceError,
    NoFiniteDistance,
    NonzeroDiagonal,
    TriangleViolation,
    UnknownPoint,
    ZeroOffDiagonal,
)


class _InfiniteDistance:
    """The distance of an unreachable pair: absorbing under +, above every rational."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __hash__(self):
        return hash("maghom-inf")

    def __repr__(self):
        return "inf"


INF = _InfiniteDistance()


def is_finite(d) -> bool:
    return d is not INF


def parse_dist(text):
    """Parse a distance string: an integer, "p/q", or "inf"."""
    if isinstance(text, _InfiniteDistance):
        return INF
    if isinstance(text, (int, Fraction)):
        value = Fraction(text)
    else:
        s = str(text).strip()
        if s.lower() in ("inf", "infinity", "oo"):
            return INF
        value = Fraction(s)
    return value


def format_dist(d) -> str:
    if d is INF:
        return "inf"
    if d.denominator == 1:
        return str(d.numerator)
    return f"{d.numerator}/{d.denominator}"


class QuasimetricSpace:
    """Ordered finite point set with an exact directed distance matrix.

    Instances are built through :func:`validate_space` (or
    :func:`digraph_to_space`) which checks the axioms; everything here is
    immutable after construction and safe to share.
    """

    __slots__ = ("points", "dist", "_index")

    def __init__(self, points, dist):
        self.points = tuple(points)
        self.dist = tuple(tuple(row) for row in dist)
        self._index = {p: i for i, p in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, QuasimetricSpace)
            and self.points == other.points
            and self.dist == other.dist
        )

    def __hash__(self):
        return hash((self.points, self.dist))

    def __repr__(self):
        return f"QuasimetricSpace({list(self.points)!r}, {len(self)}x{len(self)})"

    def idx(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownPoint(f"unknown point {label!r}") from None

    def d(self, i: int, j: int):
        """Distance by point index."""
        return self.dist[i][j]

    def d_of(self, x, y):
        """Distance by point label."""
        return self.dist[self.idx(x)][self.idx(y)]

    def between_idx(self, i: int, j: int, k: int) -> bool:
        dij = self.dist[i][j]
        if dij is INF:
            return False
        djk = self.dist[j][k]
        if djk is INF:
            return False
        dik = self.dist[i][k]
        if dik is INF:
            return False
        return dij + djk == dik

    def finite_pairs(self):
        """All ordered pairs (i, j) with finite distance, including i == j."""
        n = len(self.points)
        return [
            (i, j) for i in range(n) for j in range(n) if self.dist[i][j] is not INF
        ]


def validate_space(points, matrix) -> QuasimetricSpace:
    """Check the quasimetric axioms and return the validated space.

    Raises an error naming the first violated axiom together with a witness:
    NonzeroDiagonal, ZeroOffDiagonal, or TriangleViolation(x, y, z).
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise InvalidSpaceError("point labels must be distinct")
    n = len(points)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise InvalidSpaceError(f"distance matrix must be {n}x{n}")
    dist = [[parse_dist(v) for v in row] for row in matrix]
    for i in range(n):
        for j in range(n):
            d = dist[i][j]
            if d is not INF and d < 0:
                raise InvalidSpaceError(
                    f"negative distance d({points[i]},{points[j]}) = {format_dist(d)}"
                )
    for i in range(n):
        if dist[i][i] != 0:
            raise NonzeroDiagonal(
                f"d({points[i]},{points[i]}) = {format_dist(dist[i][i])} != 0"
            )
    for i in range(n):
        for j in range(n):
            if i != j and dist[i][j] == 0:
                raise ZeroOffDiagonal(
                    f"d({points[i]},{points[j]}) = 0 with {points[i]} != {points[j]}"
                )
    for i in range(n):
        for j in range(n):
            dij = dist[i][j]
            if dij is INF:
                continue
            for k in range(n):
                if dij + dist[j][k] < dist[i][k]:
                    raise TriangleViolation(
                        f"d({points[i]},{points[j]}) + d({points[j]},{points[k]}) "
                        f"< d({points[i]},{points[k]}) "
                        f"(witness triple ({points[i]}, {points[j]}, {points[k]}))"
                    )
    return QuasimetricSpace(points, dist)


class Digraph:
    """Directed graph without loops or multiple arcs (set semantics)."""

    __slots__ = ("vertices", "arcs", "_succ")

    def __init__(self, vertices, arcs):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidSpaceError("vertex labels must be distinct")
        known = set(self.vertices)
        cleaned = set()
        for u, v in arcs:
            if u not in known or v not in known:
                raise UnknownPoint(f"arc ({u!r}, {v!r}) references unknown vertex")
            if u == v:
                raise InvalidSpaceError(f"loop at {u!r} not allowed")
            cleaned.add((u, v))
        self.arcs = frozenset(cleaned)
        succ = {v: [] for v in self.vertices}
        for u, v in sorted(self.arcs):
            succ[u].append(v)
        self._succ = succ

    def successors(self, v):
        return self._succ[v]

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.vertices == other.vertices
            and self.arcs == other.arcs
        )

    def __repr__(self):
        return f"Digraph({list(self.vertices)!r}, {sorted(self.arcs)!r})"


def digraph_to_space(graph: Digraph) -> QuasimetricSpace:
    """Shortest directed path metric of a digraph; INF where unreachable."""
    n = len(graph.vertices)
    index = {v: i for i, v in enumerate(graph.vertices)}
    dist = [[INF] * n for _ in range(n)]
    for source in graph.vertices:
        si = index[source]
        dist[si][si] = Fraction(0)
        queue = deque([source])
        seen = {source}
        while queue:
            u = queue.popleft()
            for w in graph.successors(u):
                if w not in seen:
                    seen.add(w)
                    dist[si][index[w]] = dist[si][index[u]] + 1
                    queue.append(w)
    return validate_space(graph.vertices, dist)


def between(space: QuasimetricSpace, x, y, z) -> bool:
    """True iff all three distances are finite and d(x,y) + d(y,z) = d(x,z)."""
    return space.between_idx(space.idx(x), space.idx(y), space.idx(z))


def opposite_space(space: QuasimetricSpace) -> QuasimetricSpace:
    """Transpose the distance matrix; the result is again a valid space."""
    n = len(space)
    transposed = [[space.dist[j][i] for j in range(n)] for i in range(n)]
    return validate_space(space.points, transposed)


def min_positive_distance(space: QuasimetricSpace):
    """Smallest finite off-diagonal distance; bounds tuple lengths per grade."""
    best = None
    n = len(space)
    for i in range(n):
        for j in range(n):
            if i != j:
                d = space.dist[i][j]
                if d is not INF and (best is None or d < best):
                    best = d
    if best is None:
        raise NoFiniteDistance("no finite off-diagonal distance")
    return best


def attainable_grades(space: QuasimetricSpace, l_max) -> list[Fraction]:
    """All grades of tuples with consecutive finite distances, up to l_max.

    Computed by dynamic programming on (point, accumulated grade) states, so
    only sums realized by actual walks are reported.  Always contains 0.
    """
    l_max = parse_dist(l_max)
    n = len(space)
    steps = [
        (i, j, space.dist[i][j])
        for i in range(n)
        for j in range(n)
        if i != j and space.dist[i][j] is not INF
    ]
    reached = {(i, Fraction(0)) for i in range(n)}
    frontier = list(reached)
    grades = {Fraction(0)}
    by_point = {}
    for i, g in reached:
        by_point.setdefault(i, set()).add(g)
    while frontier:
        new_frontier = []
        for i, g in frontier:
            for u, v, d in steps:
                if u != i:
                    continue
                g2 = g + d
                if g2 <= l_max and (v, g2) not in reached:
                    reached.add((v, g2))
                    new_frontier.append((v, g2))
                    grades.add(g2)
        frontier = new_frontier
    return sorted(grades)
