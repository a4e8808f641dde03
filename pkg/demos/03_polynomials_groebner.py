"""Sparse polynomials over finite fields: parsing, reduced Gröbner bases,
and the colon/intersection calculus used by the ideal-level theory."""

from cartier import FieldSpec, Ideal, PolyRing

f2 = FieldSpec(2, 1)
R = PolyRing(f2, ("x", "y"))

p = R.parse("(x+y)^2 + x*y")
print("(x+y)^2 + x*y over F_2 =", p)   # Frobenius collapses the square

# Reduced Groebner bases are canonical: generator order cannot matter
I = Ideal(R, (R.parse("x^2 + y"), R.parse("x*y + x")))
J = Ideal(R, (R.parse("x*y + x"), R.parse("x^2 + y")))
print("\nreduced basis:", I.canonical_strings())
print("same ideal, shuffled generators:", I.equals(J))

# Membership and normal forms
print("x^3 + x in I?", I.member(R.parse("x^3 + x")))
print("normal form of x^3:", I.normal_form(R.parse("x^3")))

# Intersections via an auxiliary variable, colons by exact division
A = Ideal(R, (R.var("x"),))
B = Ideal(R, (R.var("y"),))
print("\n(x) intersect (y) =", A.intersect(B).canonical_strings())
C = Ideal(R, (R.parse("x*y"),))
print("((xy) : x) =", C.colon_element(R.var("x")).canonical_strings())

# Monomial ideals know their radicals combinatorially
D = Ideal(R, (R.parse("x^2*y"), R.parse("y^3")))
print("\nradical of (x^2 y, y^3) =", D.monomial_radical().canonical_strings())
print("squarefree?", D.monomial_radical().is_squarefree_monomial())

# GF(4) coefficients print as coefficient lists and parse back
gf4 = FieldSpec(2, 2)
R4 = PolyRing(gf4, ("x",))
q = R4.parse("[0,1]*x^2 + [1,1]")
print("\nGF(4) polynomial:", q, " round trips:", R4.parse(str(q)) == q)
