"""Distance modules: coefficients for homology, with invariants and coinvariants.

Run:  python demos/02_distance_modules.py
"""

from fractions import Fraction

from maghom import (
    DistanceModule,
    coinvariants,
    hom_from_trivial,
    invariants,
    magnitude_complex_with_coefficients,
    representable_module,
    trivial_module,
    validate_module,
)
from maghom.instances import x2

space = x2()  # single arc a -> b

# The representable module at a: rank 1 over a in grade 0, over b in grade 1,
# identity action along the arc.
rep = representable_module(space, "a")
print("representable module:", rep)

# Invariants: elements killed by every action away from their point.
print("invariants:", [(b.grade, b.rank) for b in invariants(rep)])
# Coinvariants: what remains of each point after everything arriving at it.
print("coinvariants:", [(b.grade, b.betti, list(b.torsion)) for b in coinvariants(rep)])

# Morphisms from the shifted trivial module compute the same ranks.
for grade in (0, 1):
    print(f"hom-from-trivial rank at grade {grade}:", hom_from_trivial(rep, grade))

# A module with a doubled action: the grade-1 coinvariants pick up 2-torsion.
doubled = DistanceModule(
    space,
    {0: {Fraction(0): 1}, 1: {Fraction(1): 1}},
    {(0, 1): {Fraction(0): ((2,),)}},
)
assert validate_module(space, doubled) == []
print("doubled action coinvariants:", [(b.grade, b.betti, list(b.torsion)) for b in coinvariants(doubled)])

# Modules serve as coefficients for the chain complex.
cx = magnitude_complex_with_coefficients(space, rep, 1, 2)
print("coefficient complex dims at grade 1:", [cx.dim(n) for n in range(3)])
print("H_0 with coefficients:", cx.homology(0))

# The trivial module recovers the plain complex.
triv = trivial_module(space, 0, 1)
plain = magnitude_complex_with_coefficients(space, triv, 1, 2)
print("trivial-coefficient dims:", [plain.dim(n) for n in range(3)])
