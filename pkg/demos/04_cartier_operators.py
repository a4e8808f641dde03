"""Operators g -> C(f*g) on polynomial rings: image chains, splittings,
compatible ideals, and the support of cyclic quotients."""

from cartier import CartierOperator, FieldSpec, Ideal, IdealModule, PolyRing, cartier_std

f2 = FieldSpec(2, 1)
Rx = PolyRing(f2, ("x",))
x = Rx.var("x")

# The classical operator on monomials: x^a -> x^((a+1)/q - 1) or 0
print("C(x^a) over F_2[x] for a = 0..7:",
      [str(cartier_std(x**a, 1)) for a in range(8)])

# Twisting by a multiplier changes which ideal chain the images walk down
for f in (x**2, x**4):
    op = CartierOperator(Rx, f, 1)
    stable, steps = op.stable_image()
    print(f"multiplier {f}: stable image {stable.canonical_strings()} "
          f"after {steps} steps")

# A split operator sends something to 1; the witness is explicit
Rxy = PolyRing(f2, ("x", "y"))
op_xy = CartierOperator(Rxy, Rxy.parse("x*y"), 1)
print("\nf = xy splits Frobenius:", op_xy.is_split(),
      " witness h =", op_xy.find_splitting())
op_x2 = CartierOperator(Rx, x**2, 1)
print("f = x^2 splits:", op_x2.is_split())

# For a split monomial multiplier the compatible ideals form a finite
# lattice of squarefree monomial ideals
print("\ncompatible ideals of f = xy:")
for ideal in op_xy.enumerate_compatible_monomial():
    print("   (" + (", ".join(ideal.canonical_strings()) or "0") + ")")

# Quotients R/J inherit the operator when J is compatible; nilpotence and
# support are decidable
live = IdealModule(CartierOperator(Rx, x, 1), Ideal(Rx, (x,)))
nil = IdealModule(op_x2, Ideal(Rx, (x,)))
print("\nR/(x) with multiplier x:  nilpotent?", live.nilpotence())
print("R/(x) with multiplier x^2: nilpotent?", nil.nilpotence())
print("support annihilator (live):", live.supp_crys().ann.canonical_strings())
print("support annihilator (nil): ", nil.supp_crys().ann.canonical_strings())

# The smallest operator-stable ideal over a seed can jump all the way up
op_1 = CartierOperator(Rx, Rx.one, 1)
grown = op_1.smallest_stable_containing(Ideal(Rx, (x**2,)))
print("\nsmallest C_1-stable ideal containing (x^2):",
      grown.canonical_strings(), " (C_1 is split, so it reaches the unit ideal)")
