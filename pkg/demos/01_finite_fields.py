"""Tour of exact GF(p^d) arithmetic: construction, Frobenius, q-th roots,
and embeddings into extension fields."""

from cartier import FieldSpec

# GF(4) with the bundled modulus t^2 + t + 1
gf4 = FieldSpec(2, 2)
w = gf4.gen
print("GF(4) modulus:", list(gf4.modulus))
print("w * w =", w * w, "   (the defining relation w^2 = w + 1)")
print("w^{-1} =", w.inverse(), "  check:", w * w.inverse())

# Frobenius and its inverse are mutually inverse bijections
print("\nFrobenius orbit of w:", [str(w.frobenius(j)) for j in range(3)])
r = w.inv_frobenius(1)
print("square root of w:", r, " squared back:", r * r)

# The Frobenius is additive: (a+b)^p = a^p + b^p, here checked exhaustively
gf8 = FieldSpec(2, 3)
assert all(
    (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
    for a in gf8.elements()
    for b in gf8.elements()
)
print("\nGF(8): Frobenius additivity holds for all", gf8.order**2, "pairs")

# Fixing frobenius(., e) carves out the subfield with p^e elements
gf16 = FieldSpec(2, 4, None, 2)
fixed = [a for a in gf16.elements() if a.frobenius(2) == a]
print("GF(16): elements fixed by x -> x^4:", [str(a) for a in fixed])

# Embeddings: the canonical root of the small modulus in the big field
from cartier import embed

phi = embed(gf4, FieldSpec(2, 4))
print("\nimage of w under GF(4) -> GF(16):", phi(w))
print("relation preserved:", phi(w) * phi(w) == phi(w * w))
