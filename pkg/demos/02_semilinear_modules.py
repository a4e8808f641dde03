"""A module with a q^(-1)-linear operator splits into a nilpotent part and
a part where the operator is onto; fixed points grow under base change."""

from cartier import FieldSpec, SemilinearModule

f2 = FieldSpec(2, 1)
one, zero = f2.one, f2.zero

# C(v) = A v on F_2^2 (the twist is trivial over the prime field)
m = SemilinearModule(f2, [[one, one], [zero, zero]])
dec = m.decompose()
print("matrix [[1,1],[0,0]] over F_2")
print("nilpotent part:", dec.v_nil.to_json())
print("stable image:  ", dec.v_underline.to_json())
print("whole module nilpotent?", dec.nilord is not None)

# Over GF(4) the coordinatewise square root twists the action
gf4 = FieldSpec(2, 2)
w = gf4.gen
mw = SemilinearModule(gf4, [[w]])
print("\nGF(4), C(v) = w * sqrt(v):")
print("C(w) =", mw.apply((w,))[0])
print("fixed points:", [[str(x) for x in v] for v in mw.fixed_points()])

# Fixed points are an F_q-space of dimension at most dim of the stable
# image, with equality after enough base change
swap_plus = SemilinearModule(f2, [[zero, one], [one, one]])
print("\ncompanion matrix of t^2+t+1 over F_2:")
for deg in (1, 2, 3):
    big = swap_plus.base_change(deg)
    print(f"  over GF(2^{deg}): fixed F_2-dimension =", len(big.fixed_points()),
          " target =", big.stable_image().dim)
print("saturation degree:", swap_plus.saturation_degree(max_m=6))

# Hom-spaces are finite F_q-vector spaces; endomorphisms of a simple
# module form a finite field
hom = mw.hom_space(mw)
print("\nEnd of the GF(4) module: dimension", hom.dim, "over F_%d" % hom.q)
order, is_field = mw.end_ring()
print("End ring order", order, "is a field:", is_field)

# Duality flips the twist and preserves nilpotence exactly
d = mw.dual()
print("\ndual matrix:", [[str(x) for x in row] for row in d.matrix])
print("nilpotence orders match:", d.nilord() == mw.nilord())
