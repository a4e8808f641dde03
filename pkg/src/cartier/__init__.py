"""Exact computations with operators C satisfying C(r^q m) = r C(m).

Covers finite fields GF(p^d) with forward and inverse Frobenius, modules
over them carrying such an operator (decomposition into a nilpotent part
and a part the operator maps onto itself, fixed points, Hom-spaces,
duality, submodule lattices), polynomial rings with Gröbner machinery,
multiplier operators g -> C(f g) together with their image chains,
splittings and compatible ideals, and the quotient structure obtained by
ignoring everything a power of C kills.  All arithmetic is exact and
small enough to cross-check against brute force."""

from .errors import (
    CartierError,
    DomainError,
    InvariantViolation,
    ResourceError,
    UsageError,
)
from .field import DEFAULT_MODULI, FieldElement, FieldSpec, default_modulus, embed
from .poly import (
    GREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    Polynomial,
    PolyRing,
    elimination_order,
    groebner_basis,
)
from .semilinear import (
    FrobeniusModule,
    HomSpace,
    NilDecomposition,
    SemilinearModule,
    SubmoduleInfo,
    Subspace,
    count_subspaces,
    gaussian_binomial,
)
from .operators import (
    CartierOperator,
    IdealModule,
    SupportReport,
    cartier_std,
    frobenius_descent,
)
from .crystal import (
    CrystalReport,
    anti_nilpotent,
    hom_crys,
    invariant_profile,
    is_nil_isomorphism,
    isomorphism_verdict,
    jordan_holder,
    minimal_rep,
    nil_series,
    quasi_length,
)

__version__ = "0.1.0"

__all__ = [
    "CartierError",
    "DomainError",
    "InvariantViolation",
    "ResourceError",
    "UsageError",
    "DEFAULT_MODULI",
    "FieldElement",
    "FieldSpec",
    "default_modulus",
    "embed",
    "GREVLEX",
    "LEX",
    "Ideal",
    "MonomialOrder",
    "Polynomial",
    "PolyRing",
    "elimination_order",
    "groebner_basis",
    "FrobeniusModule",
    "HomSpace",
    "NilDecomposition",
    "SemilinearModule",
    "SubmoduleInfo",
    "Subspace",
    "count_subspaces",
    "gaussian_binomial",
    "CartierOperator",
    "IdealModule",
    "SupportReport",
    "cartier_std",
    "frobenius_descent",
    "CrystalReport",
    "anti_nilpotent",
    "hom_crys",
    "invariant_profile",
    "is_nil_isomorphism",
    "isomorphism_verdict",
    "jordan_holder",
    "minimal_rep",
    "nil_series",
    "quasi_length",
    "__version__",
]
