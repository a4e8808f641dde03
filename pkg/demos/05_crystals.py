"""Working up to nilpotence: minimal representatives, the finite lattice
of fixed submodules, quasi-length, and nil-decomposition series."""

from cartier import FieldSpec, SemilinearModule
from cartier import crystal

f2 = FieldSpec(2, 1)
one, zero = f2.one, f2.zero

# The minimal representative strips nilpotent fuzz from both sides
m = SemilinearModule(f2, [[one, one], [zero, zero]])
rep = crystal.minimal_rep(m)
print("module [[1,1],[0,0]]: minimal representative has dimension", rep.dim)
print("its matrix:", [[str(x) for x in row] for row in rep.matrix])

# Quasi-length = common length of all maximal chains of fixed submodules
plane = SemilinearModule(f2, [[one, zero], [zero, one]])
report = crystal.jordan_holder(plane)
print("\nidentity plane over F_2:")
print("quasi-length:", report.quasi_length)
print("lattice size:", len(report.lattice))
print("factor dimensions:", list(report.factor_dims))
print("Hasse edges:", [list(e) for e in report.edges])

# A nil-decomposition series alternates nilpotent steps and simple factors
series = crystal.nil_series(m)
print("\nnil series dims for [[1,1],[0,0]]:", [s.dim for s in series])

# Hom up to nilpotence ignores nilpotent padding entirely
live = SemilinearModule(f2, [[one]])
padded = SemilinearModule(f2, [[one, one], [zero, zero]])
print("\nhom_crys(live, live) dimension:", crystal.hom_crys(live, live).dim)
print("hom_crys(live, padded) dimension:", crystal.hom_crys(live, padded).dim)

# Anti-nilpotence: every stable subspace is fixed
swap = SemilinearModule(f2, [[zero, one], [one, zero]])
print("\nswap matrix anti-nilpotent:", crystal.anti_nilpotent(swap))
print("[[1,1],[0,0]] anti-nilpotent:", crystal.anti_nilpotent(m))
