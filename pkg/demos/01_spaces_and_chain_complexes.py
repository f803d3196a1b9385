"""Build quasimetric spaces, inspect betweenness, and compute homology tables.

Run:  python demos/01_spaces_and_chain_complexes.py
"""

from maghom import (
    between,
    digraph_to_space,
    enumerate_tuples,
    magnitude_complex,
    validate_space,
)
from maghom.instances import directed_cycle
from maghom.space import attainable_grades

# A symmetric two-point space, straight from a distance matrix.
k2 = validate_space(["x", "y"], [[0, 1], [1, 0]])
print("K2 distances validated:", k2)

# A directed 3-cycle, as the shortest-path metric of a digraph.
c3 = digraph_to_space(directed_cycle(3))
print("C3 d(a,c) =", c3.d_of("a", "c"), " d(c,a) =", c3.d_of("c", "a"))

# Betweenness is an exact equality test on distances.
print("b between a and c in C3:", between(c3, "a", "b", "c"))
print("y between x and x in K2:", between(k2, "x", "y", "x"))

# Grade-l generators are tuples of consecutive-distinct points whose
# consecutive distances sum to l.
for t in enumerate_tuples(c3, 2, 2):
    print("grade-2 triple:", tuple(c3.points[i] for i in t))

# The homology table of the 3-cycle, grade by grade.
print("\nmagnitude homology of C3 (rows: degree, grade, betti, torsion)")
for grade in attainable_grades(c3, 3):
    cx = magnitude_complex(c3, grade, 3)
    assert cx.verify()  # boundary squares to zero, exactly
    for n in range(4):
        h = cx.homology(n)
        if h.betti or h.torsion:
            print(f"  n={n}  l={grade}  betti={h.betti}  torsion={list(h.torsion)}")
