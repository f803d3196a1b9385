"""Digraphs as bound quivers: shortest-path relations presenting the algebra.

Run:  python demos/05_bound_quivers.py
"""

from maghom import (
    check_bound_quiver_presentation,
    check_representation_relations,
    quiver_relations,
    representable_module,
    trivial_module,
)
from maghom.instances import diamond_digraph, directed_cycle
from maghom.space import digraph_to_space

# The diamond has two shortest routes a->d; they get identified (R1).
diamond = diamond_digraph()
rel = quiver_relations(diamond)
print("diamond R1 pairs:", [(list(a), list(b)) for a, b in rel.r1])
print("diamond R2 paths:", [list(p) for p in rel.r2])

# The 3-cycle has no repeated shortest routes, but its closed walks are
# minimal non-shortest paths and must vanish (R2).
c3 = directed_cycle(3)
rel3 = quiver_relations(c3)
print("C3 R2 paths:", [list(p) for p in rel3.r2])

# Dimensions of the path algebra modulo relations match distance counts.
for graph, name in ((diamond, "diamond"), (c3, "C3")):
    report = check_bound_quiver_presentation(graph, 4)
    print(f"\n{name}: admissibility exponent {report.admissible_exponent}, "
          f"relations inside the square ideal: {report.relations_inside_square}")
    for grade, quotient_dim, pair_count in report.dims:
        print(f"  grade {grade}: quotient dim {quotient_dim} == pairs at distance {pair_count}")

# Any distance module restricted to arcs satisfies the relations.
space = digraph_to_space(c3)
for module in (representable_module(space, "a"), trivial_module(space, 0, 1)):
    violations = check_representation_relations(c3, module)
    print("module satisfies relations:", violations == [])
