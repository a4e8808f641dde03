"""Shared fixtures, module generators, and exhaustive vector-level oracles.

The oracles here deliberately avoid the library's power-matrix and kernel
paths: they iterate the structural map over every vector of the space, so
they stay independent of the code they check.  Usable whenever |k|^n is a
few thousand at most.
"""

import random
from itertools import product

import pytest

from cartier.field import FieldSpec
from cartier.semilinear import SemilinearModule, Subspace


@pytest.fixture(scope="session")
def f2():
    return FieldSpec(2, 1)


@pytest.fixture(scope="session")
def f3():
    return FieldSpec(3, 1)


@pytest.fixture(scope="session")
def gf4():
    return FieldSpec(2, 2)


@pytest.fixture(scope="session")
def gf8():
    return FieldSpec(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return FieldSpec(3, 2)


def module_from_ints(spec: FieldSpec, rows) -> SemilinearModule:
    """Build a module from integer matrix entries (prime-subfield values)."""
    return SemilinearModule(
        spec, [[spec.from_int(x) for x in row] for row in rows]
    )


def random_element(rng: random.Random, spec: FieldSpec):
    return spec.element(tuple(rng.randrange(spec.p) for _ in range(spec.d)))


def random_module(rng: random.Random, spec: FieldSpec, n: int) -> SemilinearModule:
    return SemilinearModule(
        spec, [[random_element(rng, spec) for _ in range(n)] for _ in range(n)]
    )


def random_suite(count: int = 200, max_dim: int = 4, seed: int = 20240211):
    """The randomized module suite: GF(2), GF(4), GF(8), dimensions <= 4."""
    rng = random.Random(seed)
    specs = [FieldSpec(2, 1), FieldSpec(2, 2), FieldSpec(2, 3)]
    suite = []
    for i in range(count):
        spec = specs[i % len(specs)]
        n = rng.randint(1, max_dim)
        suite.append(random_module(rng, spec, n))
    return suite


def all_vectors(spec: FieldSpec, n: int):
    return product(list(spec.elements()), repeat=n)


def span_set(sub: Subspace):
    """Every vector of the subspace, as a set of coefficient tuples."""
    spec = sub.spec
    vectors = set()
    for coeffs in product(list(spec.elements()), repeat=sub.dim):
        acc = [spec.zero] * sub.ambient
        for c, row in zip(coeffs, sub.rows):
            acc = [a + c * b for a, b in zip(acc, row)]
        vectors.add(tuple(x.coeffs for x in acc))
    return vectors


def oracle_stable_image(module: SemilinearModule):
    """Set of vectors in the stable image, via set-level iteration of C."""
    current = {v for v in all_vectors(module.spec, module.dim)}
    while True:
        image = {tuple(module.apply(v)) for v in current}
        if image == current:
            return {tuple(x.coeffs for x in v) for v in current}
        current = image


def oracle_nilpotent_part(module: SemilinearModule):
    """Set of vectors killed by C^n, via n-fold application."""
    n = module.dim
    out = set()
    for v in all_vectors(module.spec, n):
        w = v
        for _ in range(n):
            w = module.apply(w)
        if all(x.is_zero for x in w):
            out.add(tuple(x.coeffs for x in v))
    return out


def oracle_fixed_points(module: SemilinearModule):
    """Set of vectors with C(v) = v, by exhaustive evaluation."""
    return {
        tuple(x.coeffs for x in v)
        for v in all_vectors(module.spec, module.dim)
        if tuple(module.apply(v)) == tuple(v)
    }


def block_extension(rng: random.Random, spec: FieldSpec, n1: int, n2: int):
    """A module with the span of the first n1 coordinates as a submodule.

    Returns (whole, submodule_block, quotient_block)."""
    a1 = [[random_element(rng, spec) for _ in range(n1)] for _ in range(n1)]
    a2 = [[random_element(rng, spec) for _ in range(n2)] for _ in range(n2)]
    x = [[random_element(rng, spec) for _ in range(n2)] for _ in range(n1)]
    n = n1 + n2
    big = [[spec.zero] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            big[i][j] = a1[i][j]
        for j in range(n2):
            big[i][n1 + j] = x[i][j]
    for i in range(n2):
        for j in range(n2):
            big[n1 + i][n1 + j] = a2[i][j]
    return (
        SemilinearModule(spec, big),
        SemilinearModule(spec, a1),
        SemilinearModule(spec, a2),
    )


def strictly_upper(rng: random.Random, spec: FieldSpec, n: int) -> SemilinearModule:
    """A nilpotent module: strictly upper triangular structural matrix."""
    rows = [
        [
            random_element(rng, spec) if j > i else spec.zero
            for j in range(n)
        ]
        for i in range(n)
    ]
    return SemilinearModule(spec, rows)


def nilpotent_block_extension(rng: random.Random, spec: FieldSpec, n1: int, n2: int):
    """Extension of two nilpotent modules, for nilpotence-order bounds."""
    sub = strictly_upper(rng, spec, n1)
    quot = strictly_upper(rng, spec, n2)
    n = n1 + n2
    big = [[spec.zero] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            big[i][j] = sub.matrix[i][j]
        for j in range(n2):
            big[i][n1 + j] = random_element(rng, spec)
    for i in range(n2):
        for j in range(n2):
            big[n1 + i][n1 + j] = quot.matrix[i][j]
    return SemilinearModule(spec, big), sub, quot
