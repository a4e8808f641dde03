"""Finite-dimensional modules with a q^(-1)-linear structural map.

A module is a matrix A over GF(p^d) acting by C(v) = A . sigma^(-e)(v),
where sigma^(-e) takes coordinatewise p^e-th roots (q = p^e, e | d).  The
module-level structure theory lives here: nilpotent part, stable image,
direct-sum decomposition, fixed points, base change, Hom-spaces, duality,
and brute-force submodule enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .errors import InvariantViolation, ResourceError, UsageError
from .field import FieldElement, FieldSpec, embed
from . import linalg


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-space over a q-element field."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def sigma_vec(v, j: int):
    return tuple(x.frobenius(j) for x in v)


def sigma_inv_vec(v, j: int):
    return tuple(x.inv_frobenius(j) for x in v)


def sigma_mat(rows, j: int):
    return tuple(tuple(x.frobenius(j) for x in row) for row in rows)


def sigma_inv_mat(rows, j: int):
    return tuple(tuple(x.inv_frobenius(j) for x in row) for row in rows)


class Subspace:
    """A subspace of k^n in reduced row echelon form.

    The representation is canonical, so equality of subspaces is equality
    of basis matrices and sorting is stable across runs.
    """

    __slots__ = ("spec", "ambient", "rows", "pivots")

    def __init__(self, spec: FieldSpec, ambient: int, rows, pivots):
        self.spec = spec
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, spec: FieldSpec, ambient: int, vectors) -> "Subspace":
        rows, pivots = linalg.rref(list(vectors), spec)
        return cls(spec, ambient, rows, pivots)

    @classmethod
    def zero(cls, spec: FieldSpec, ambient: int) -> "Subspace":
        return cls(spec, ambient, (), ())

    @classmethod
    def full(cls, spec: FieldSpec, ambient: int) -> "Subspace":
        return cls(spec, ambient, linalg.identity(ambient, spec), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    def reduce(self, v):
        """Canonical representative of v modulo this subspace."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not c.is_zero:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, v) -> bool:
        return all(x.is_zero for x in self.reduce(v))

    def coords(self, v):
        """Coordinates of v in the RREF basis, or None if v is outside."""
        cs = tuple(v[pc] for pc in self.pivots)
        if not all(x.is_zero for x in self.reduce(v)):
            return None
        return cs

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(
            self.spec, self.ambient, list(self.rows) + list(other.rows)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        # v = sum a_i u_i lies in W iff the residues of the u_i mod W
        # combine to zero; solve for the coefficient vectors a.
        if self.is_zero or other.is_zero:
            return Subspace.zero(self.spec, self.ambient)
        residues = [other.reduce(r) for r in self.rows]
        cols = linalg.transpose(residues)
        coeffs = linalg.kernel_basis(cols, len(self.rows), self.spec)
        vectors = []
        for a in coeffs:
            acc = [self.spec.zero] * self.ambient
            for ai, row in zip(a, self.rows):
                if not ai.is_zero:
                    acc = [x + ai * y for x, y in zip(acc, row)]
            vectors.append(tuple(acc))
        return Subspace.from_vectors(self.spec, self.ambient, vectors)

    def key(self):
        flat = tuple(c.coeffs for row in self.rows for c in row)
        return (self.dim, flat)

    def to_json(self):
        return {
            "dim": self.dim,
            "basis": [[list(c.coeffs) for c in row] for row in self.rows],
        }

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.spec == other.spec
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


@dataclass(frozen=True)
class NilDecomposition:
    v_nil: Subspace
    v_underline: Subspace
    nilord: int | None  # order of nilpotence of the whole module, or None


@dataclass(frozen=True)
class HomSpace:
    """F_q-basis of the space of structure-compatible linear maps V -> W."""

    basis: tuple  # matrices, shape dim(W) x dim(V)
    q: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.q**len(self.basis)


@dataclass(frozen=True)
class SubmoduleInfo:
    subspace: Subspace
    surjective: bool  # True when the structural map carries N onto N


@lru_cache(maxsize=None)
def _prime_spec(p: int) -> FieldSpec:
    return FieldSpec(p, 1)


@lru_cache(maxsize=None)
def subfield_fp_basis(spec: FieldSpec) -> tuple:
    """F_p-basis of the subfield F_q = Fix(sigma^e) inside GF(p^d)."""
    if spec.d % spec.e != 0:
        raise UsageError(f"twist e={spec.e} does not divide d={spec.d}")
    fp = _prime_spec(spec.p)
    cols = []
    for ell in range(spec.d):
        basis_el = spec.element(tuple(1 if i == ell else 0 for i in range(spec.d)))
        image = basis_el.frobenius(spec.e) - basis_el
        cols.append(image.coeffs)
    rows = tuple(
        tuple(fp.element((cols[j][i],)) for j in range(spec.d)) for i in range(spec.d)
    )
    kern = linalg.kernel_basis(rows, spec.d, fp)
    out = tuple(spec.element(tuple(x.coeffs[0] for x in vec)) for vec in kern)
    if len(out) != spec.e:
        raise InvariantViolation("fixed field of sigma^e has wrong dimension")
    return out


def subfield_elements(spec: FieldSpec) -> tuple:
    """The q elements of F_q inside GF(p^d), in canonical order."""
    basis = subfield_fp_basis(spec)
    elems = set()
    for coeffs in product(range(spec.p), repeat=len(basis)):
        acc = spec.zero
        for c, b in zip(coeffs, basis):
            if c:
                acc = acc + spec.from_int(c) * b
        elems.add(acc)
    return tuple(sorted(elems, key=lambda x: x.key()))


class _FpFlattener:
    """View k^n as an F_p-space of dimension n*d, with canonical bases."""

    def __init__(self, spec: FieldSpec, n: int):
        self.spec = spec
        self.n = n
        self.fp = _prime_spec(spec.p)

    def flatten(self, v):
        out = []
        for x in v:
            out.extend(self.fp.element((c,)) for c in x.coeffs)
        return tuple(out)

    def unflatten(self, flat):
        d = self.spec.d
        out = []
        for i in range(self.n):
            coeffs = tuple(flat[i * d + ell].coeffs[0] for ell in range(d))
            out.append(self.spec.element(coeffs))
        return tuple(out)

    def unit(self, i: int, ell: int):
        coeffs = tuple(1 if k == ell else 0 for k in range(self.spec.d))
        x = self.spec.element(coeffs)
        return tuple(
            x if j == i else self.spec.zero for j in range(self.n)
        )

    def kernel_of(self, additive_map):
        """F_p-kernel of an additive F_p-linear map on k^n, as k^n vectors."""
        nd = self.n * self.spec.d
        cols = []
        for i in range(self.n):
            for ell in range(self.spec.d):
                cols.append(self.flatten(additive_map(self.unit(i, ell))))
        rows = tuple(tuple(cols[j][i] for j in range(nd)) for i in range(nd))
        kern = linalg.kernel_basis(rows, nd, self.fp)
        return [self.unflatten(vec) for vec in kern]


def _fq_greedy_basis(vectors, spec: FieldSpec, n: int):
    """Maximal F_q-independent subset, greedy in the order given.

    span_rows is kept in RREF, so its length is the F_p-rank of the
    F_q-span of the vectors chosen so far.
    """
    flat = _FpFlattener(spec, n)
    scalars = subfield_fp_basis(spec)
    span_rows = []
    chosen = []
    for v in vectors:
        if all(x.is_zero for x in v):
            continue
        candidate = flat.flatten(v)
        test, _ = linalg.rref(list(span_rows) + [candidate], flat.fp)
        if len(test) > len(span_rows):
            chosen.append(tuple(v))
            extended = list(span_rows) + [
                flat.flatten(tuple(u * x for x in v)) for u in scalars
            ]
            span_rows, _ = linalg.rref(extended, flat.fp)
    return chosen


class SemilinearModule:
    """A pair (k^n, C) with C(v) = A . sigma^(-e)(v)."""

    __slots__ = ("spec", "dim", "matrix")

    def __init__(self, spec: FieldSpec, matrix):
        if spec.d % spec.e != 0:
            raise UsageError(
                f"twist e={spec.e} does not divide d={spec.d}; "
                "no F_q inside the coefficient field"
            )
        matrix = tuple(tuple(row) for row in matrix)
        n = len(matrix)
        for row in matrix:
            if len(row) != n:
                raise UsageError("structural matrix must be square")
            for x in row:
                if not isinstance(x, FieldElement) or x.spec != spec:
                    raise UsageError("matrix entry outside the coefficient field")
        self.spec = spec
        self.dim = n
        self.matrix = matrix

    # -- basic action -------------------------------------------------

    def apply(self, v):
        if len(v) != self.dim:
            raise UsageError(f"vector length {len(v)} != module dimension {self.dim}")
        return linalg.mat_vec(self.matrix, sigma_inv_vec(v, self.spec.e))

    def power_matrix(self, i: int):
        """Matrix B_i with C^i(v) = B_i . sigma^(-ie)(v)."""
        if i < 0:
            raise UsageError("power index must be >= 0")
        b = linalg.identity(self.dim, self.spec)
        for _ in range(i):
            b = linalg.mat_mul(self.matrix, sigma_inv_mat(b, self.spec.e))
        return b

    def apply_power(self, v, i: int):
        return linalg.mat_vec(self.power_matrix(i), sigma_inv_vec(v, i * self.spec.e))

    # -- structure ----------------------------------------------------

    def image_of(self, sub: Subspace) -> Subspace:
        """C(N): the span of the images of a basis (q-th roots are onto)."""
        return Subspace.from_vectors(
            self.spec, self.dim, [self.apply(r) for r in sub.rows]
        )

    def is_stable(self, sub: Subspace) -> bool:
        return all(sub.contains_vector(self.apply(r)) for r in sub.rows)

    def stable_image(self) -> Subspace:
        cur = Subspace.full(self.spec, self.dim)
        for _ in range(self.dim + 1):
            nxt = self.image_of(cur)
            if nxt == cur:
                return cur
            cur = nxt
        raise InvariantViolation("image chain failed to stabilise within dim steps")

    def nilpotent_part(self) -> Subspace:
        """Largest submodule killed by a power of C: sigma^(ne)(ker B_n)."""
        n = self.dim
        kern = linalg.kernel_basis(self.power_matrix(n), n, self.spec)
        vecs = [sigma_vec(v, n * self.spec.e) for v in kern]
        return Subspace.from_vectors(self.spec, n, vecs)

    def nilord(self) -> int | None:
        """Least i with C^i = 0, or None when the module is not nilpotent."""
        for i in range(self.dim + 1):
            if linalg.is_zero_matrix(self.power_matrix(i)):
                return i
        return None

    @property
    def is_nilpotent(self) -> bool:
        return self.nilord() is not None

    def decompose(self) -> NilDecomposition:
        nil = self.nilpotent_part()
        under = self.stable_image()
        if nil.intersect(under).dim != 0 or nil.dim + under.dim != self.dim:
            raise InvariantViolation("nilpotent part and stable image are not complementary")
        if not self.is_stable(nil) or not self.is_stable(under):
            raise InvariantViolation("decomposition parts are not stable under C")
        return NilDecomposition(v_nil=nil, v_underline=under, nilord=self.nilord())

    # -- fixed points and base change ----------------------------------

    def fixed_points(self):
        """F_q-basis of {v : C(v) = v}, via one F_p-linear solve."""
        flat = _FpFlattener(self.spec, self.dim)
        kern = flat.kernel_of(lambda v: tuple(a - b for a, b in zip(self.apply(v), v)))
        basis = _fq_greedy_basis(kern, self.spec, self.dim)
        if len(basis) * self.spec.e != len(kern):
            raise InvariantViolation("fixed set is not an F_q-subspace")
        if len(basis) > self.stable_image().dim:
            raise InvariantViolation("more fixed points than the stable image allows")
        return tuple(basis)

    def base_change(self, m: int) -> "SemilinearModule":
        """The same matrix over GF(p^(dm)), coefficients embedded."""
        if m < 1:
            raise UsageError("base change degree must be >= 1")
        spec = self.spec
        big = FieldSpec(spec.p, spec.d * m, None, spec.e)
        phi = embed(spec, big)
        return SemilinearModule(
            big, tuple(tuple(phi(x) for x in row) for row in self.matrix)
        )

    def saturation_degree(self, max_m: int = 6) -> int | None:
        """Least m <= max_m where the fixed-point F_q-dimension reaches
        the stable-image dimension; None when the cap is hit first."""
        target = self.stable_image().dim
        for m in range(1, max_m + 1):
            if len(self.base_change(m).fixed_points()) == target:
                return m
        return None

    # -- Hom, End, enumeration -----------------------------------------

    def hom_space(self, other: "SemilinearModule") -> HomSpace:
        """F_q-basis of maps phi with phi . C_V = C_W . phi."""
        if other.spec != self.spec:
            raise UsageError("modules live over different field specs")
        spec = self.spec
        nv, nw = self.dim, other.dim
        flat = _FpFlattener(spec, nw * nv)

        def as_matrix(v):
            return tuple(tuple(v[r * nv + c] for c in range(nv)) for r in range(nw))

        def as_vector(mat):
            return tuple(mat[r][c] for r in range(nw) for c in range(nv))

        def defect(v):
            phi = as_matrix(v)
            lhs = linalg.mat_mul(phi, self.matrix)
            rhs = linalg.mat_mul(other.matrix, sigma_inv_mat(phi, spec.e))
            return as_vector(
                tuple(
                    tuple(a - b for a, b in zip(lr, rr)) for lr, rr in zip(lhs, rhs)
                )
            )

        kern = flat.kernel_of(defect)
        basis_vecs = _fq_greedy_basis(kern, spec, nw * nv)
        basis = tuple(as_matrix(v) for v in basis_vecs)
        for phi in basis:
            lhs = linalg.mat_mul(phi, self.matrix)
            rhs = linalg.mat_mul(other.matrix, sigma_inv_mat(phi, spec.e))
            if lhs != rhs:
                raise InvariantViolation("hom basis element fails the commuting identity")
        return HomSpace(basis=basis, q=spec.q)

    def iter_subspaces(self, dims=None):
        """All subspaces in canonical RREF enumeration order."""
        spec, n = self.spec, self.dim
        elements = tuple(spec.elements())
        dims = range(n + 1) if dims is None else dims
        for r in dims:
            if r == 0:
                yield Subspace.zero(spec, n)
                continue
            for pivots in combinations(range(n), r):
                free_pos = [
                    (i, j)
                    for i in range(r)
                    for j in range(n)
                    if j > pivots[i] and j not in pivots
                ]
                for values in product(elements, repeat=len(free_pos)):
                    rows = [[spec.zero] * n for _ in range(r)]
                    for i, pc in enumerate(pivots):
                        rows[i][pc] = spec.one
                    for (i, j), val in zip(free_pos, values):
                        rows[i][j] = val
                    yield Subspace(
                        spec, n, tuple(tuple(row) for row in rows), tuple(pivots)
                    )

    def enumerate_submodules(self, cap: int = 100_000):
        """All C-stable subspaces, flagged with whether C maps them onto
        themselves; sorted by (dimension, canonical basis)."""
        total = count_subspaces(self.dim, self.spec.order)
        if total > cap:
            raise ResourceError(
                f"subspace lattice has {total} elements, above the cap {cap}"
            )
        found = []
        for sub in self.iter_subspaces():
            if self.is_stable(sub):
                found.append(
                    SubmoduleInfo(subspace=sub, surjective=self.image_of(sub) == sub)
                )
        found.sort(key=lambda info: info.subspace.key())
        return found

    def is_simple(self, cap: int = 100_000) -> bool:
        if self.dim == 0:
            return False
        total = count_subspaces(self.dim, self.spec.order)
        if total > cap:
            raise ResourceError(
                f"subspace lattice has {total} elements, above the cap {cap}"
            )
        for sub in self.iter_subspaces(dims=range(1, self.dim)):
            if self.is_stable(sub):
                return False
        return True

    def end_ring(self, cap: int = 100_000):
        """(order, is_field) for the endomorphism ring of a simple module."""
        if not self.is_simple(cap=cap):
            raise UsageError("end_ring requires a simple module")
        hom = self.hom_space(self)
        order = hom.q**hom.dim
        if order > cap:
            raise ResourceError(f"endomorphism ring has {order} elements, above {cap}")
        spec = self.spec
        n = self.dim
        flat = _FpFlattener(spec, n * n)
        scalars = subfield_fp_basis(spec)
        span_rows = []
        for phi in hom.basis:
            for u in scalars:
                span_rows.append(
                    flat.flatten(tuple(u * x for row in phi for x in row))
                )
        span_rows, _ = linalg.rref(span_rows, flat.fp)
        span_rank = len(span_rows)

        def in_end(mat):
            candidate = flat.flatten(tuple(x for row in mat for x in row))
            test, _ = linalg.rref(list(span_rows) + [candidate], flat.fp)
            return len(test) == span_rank

        is_field = True
        for phi, psi in product(hom.basis, repeat=2):
            if not in_end(linalg.mat_mul(phi, psi)):
                is_field = False
            if linalg.mat_mul(phi, psi) != linalg.mat_mul(psi, phi):
                is_field = False
        fq = subfield_elements(spec)
        for coeffs in product(fq, repeat=hom.dim):
            mat = linalg.zero_matrix(n, n, spec)
            mat = [list(row) for row in mat]
            for c, phi in zip(coeffs, hom.basis):
                if not c.is_zero:
                    for i in range(n):
                        for j in range(n):
                            mat[i][j] = mat[i][j] + c * phi[i][j]
            if all(x.is_zero for row in mat for x in row):
                continue
            inv = linalg.invert(tuple(tuple(row) for row in mat), spec)
            if inv is None or not in_end(inv):
                is_field = False
                break
        return order, is_field

    # -- duality and subquotients ---------------------------------------

    def dual(self) -> "FrobeniusModule":
        """Left-Frobenius module on the dual space; nilpotence orders agree."""
        b = sigma_mat(linalg.transpose(self.matrix), self.spec.e)
        return FrobeniusModule(self.spec, b)

    def restrict_to(self, sub: Subspace) -> "SemilinearModule":
        if not self.is_stable(sub):
            raise UsageError("cannot restrict to a subspace that is not C-stable")
        rows = []
        for r in sub.rows:
            cs = sub.coords(self.apply(r))
            rows.append(cs)
        # C(w_i) = sum_j rows[i][j] w_j, so the coordinate action is the transpose
        return SemilinearModule(self.spec, linalg.transpose(rows))

    def quotient_by(self, sub: Subspace):
        """Module induced on the non-pivot coordinates, plus the projection."""
        if not self.is_stable(sub):
            raise UsageError("cannot quotient by a subspace that is not C-stable")
        qmap = QuotientMap(sub)
        cols = []
        for j in qmap.coords_cols:
            image = tuple(self.matrix[i][j] for i in range(self.dim))
            cols.append(qmap.project(image))
        m = len(qmap.coords_cols)
        matrix = tuple(tuple(cols[c][r] for c in range(m)) for r in range(m))
        return SemilinearModule(self.spec, matrix), qmap

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "e": self.spec.e,
            "dim": self.dim,
            "matrix": [[list(x.coeffs) for x in row] for row in self.matrix],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SemilinearModule":
        spec = FieldSpec.from_json(data["field"])
        if "e" in data and int(data["e"]) != spec.e:
            raise UsageError("module-level twist disagrees with the field spec")
        matrix = [[spec.element(c) for c in row] for row in data["matrix"]]
        if len(matrix) != int(data.get("dim", len(matrix))):
            raise UsageError("matrix size disagrees with declared dimension")
        return cls(spec, matrix)

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearModule)
            and self.spec == other.spec
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.spec, self.matrix))

    def __repr__(self):
        return f"SemilinearModule(dim={self.dim}, field=GF({self.spec.p}^{self.spec.d}), e={self.spec.e})"


class QuotientMap:
    """Projection of k^n onto the complement of a subspace's pivot columns."""

    def __init__(self, sub: Subspace):
        self.sub = sub
        self.coords_cols = tuple(
            j for j in range(sub.ambient) if j not in set(sub.pivots)
        )

    def project(self, v):
        r = self.sub.reduce(v)
        return tuple(r[j] for j in self.coords_cols)

    def lift(self, coords):
        spec = self.sub.spec
        v = [spec.zero] * self.sub.ambient
        for x, j in zip(coords, self.coords_cols):
            v[j] = x
        return tuple(v)

    def preimage(self, quotient_sub: Subspace) -> Subspace:
        vectors = [self.lift(r) for r in quotient_sub.rows] + list(self.sub.rows)
        return Subspace.from_vectors(self.sub.spec, self.sub.ambient, vectors)


class FrobeniusModule:
    """A left twist: F(w) = B . sigma^e(w), so F(a w) = a^q F(w)."""

    __slots__ = ("spec", "dim", "matrix")

    def __init__(self, spec: FieldSpec, matrix):
        matrix = tuple(tuple(row) for row in matrix)
        self.spec = spec
        self.dim = len(matrix)
        self.matrix = matrix

    def apply(self, w):
        return linalg.mat_vec(self.matrix, sigma_vec(w, self.spec.e))

    def power_matrix(self, i: int):
        b = linalg.identity(self.dim, self.spec)
        for _ in range(i):
            b = linalg.mat_mul(self.matrix, sigma_mat(b, self.spec.e))
        return b

    def nilord(self) -> int | None:
        for i in range(self.dim + 1):
            if linalg.is_zero_matrix(self.power_matrix(i)):
                return i
        return None

    def dual(self) -> SemilinearModule:
        a = sigma_inv_mat(linalg.transpose(self.matrix), self.spec.e)
        return SemilinearModule(self.spec, a)

    def __repr__(self):
        return f"FrobeniusModule(dim={self.dim}, field=GF({self.spec.p}^{self.spec.d}), e={self.spec.e})"
