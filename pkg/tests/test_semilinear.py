"""Structure theory of modules with a q^(-1)-linear operator."""

import random
from itertools import product

import pytest

from cartier.errors import ResourceError, UsageError
from cartier.field import FieldSpec
from cartier.linalg import is_zero_matrix, mat_mul, identity
from cartier.semilinear import (
    SemilinearModule,
    Subspace,
    count_subspaces,
    gaussian_binomial,
    subfield_elements,
)

from conftest import (
    block_extension,
    module_from_ints,
    nilpotent_block_extension,
    oracle_fixed_points,
    oracle_nilpotent_part,
    oracle_stable_image,
    random_element,
    random_module,
    random_suite,
    span_set,
    strictly_upper,
)


# -- apply and power matrices ------------------------------------------


def test_apply_zero_matrix(f2):
    m = module_from_ints(f2, [[0, 0], [0, 0]])
    for v in product([f2.zero, f2.one], repeat=2):
        assert all(x.is_zero for x in m.apply(v))


def test_apply_gf4_scalar(gf4):
    w = gf4.gen
    m = SemilinearModule(gf4, [[w]])
    assert m.apply((w,)) == (gf4.one,)


def test_apply_identity_trivial_twist(f2):
    m = module_from_ints(f2, [[1, 0], [0, 1]])
    for v in product([f2.zero, f2.one], repeat=2):
        assert m.apply(v) == v


def test_apply_dimension_mismatch(f2):
    m = module_from_ints(f2, [[1]])
    with pytest.raises(UsageError):
        m.apply((f2.one, f2.one))


def test_twist_must_divide_degree():
    spec = FieldSpec(2, 3, None, 2)
    with pytest.raises(UsageError):
        SemilinearModule(spec, [[spec.one]])


def test_power_matrix_zero_is_identity(gf4):
    m = SemilinearModule(gf4, [[gf4.gen]])
    assert m.power_matrix(0) == identity(1, gf4)


def test_power_matrix_gf4(gf4):
    w = gf4.gen
    m = SemilinearModule(gf4, [[w]])
    # B_2 = w * w^(1/2) = w * w^2 = 1, so C^2(v) = v^(1/4)
    assert m.power_matrix(2) == ((gf4.one,),)
    for v in gf4.elements():
        assert m.apply(m.apply((v,))) == (v.inv_frobenius(2),)


def test_power_matrix_nilpotent(f2):
    m = module_from_ints(f2, [[0, 1], [0, 0]])
    assert is_zero_matrix(m.power_matrix(2))


def test_semilinearity_of_apply(gf8):
    rng = random.Random(7)
    m = random_module(rng, gf8, 3)
    for _ in range(50):
        a = random_element(rng, gf8)
        v = tuple(random_element(rng, gf8) for _ in range(3))
        aq = a.frobenius(gf8.e)
        lhs = m.apply(tuple(aq * x for x in v))
        rhs = tuple(a * y for y in m.apply(v))
        assert lhs == rhs


# -- stable image and nilpotent part ------------------------------------


def test_stable_image_invertible(f2):
    m = module_from_ints(f2, [[0, 1], [1, 0]])
    assert m.stable_image().dim == 2


def test_stable_image_example(f2):
    m = module_from_ints(f2, [[1, 1], [0, 0]])
    sub = m.stable_image()
    assert sub == Subspace.from_vectors(f2, 2, [(f2.one, f2.zero)])
    assert span_set(sub) == oracle_stable_image(m)


def test_stable_image_zero(f2):
    m = module_from_ints(f2, [[0, 0], [0, 0]])
    assert m.stable_image().is_zero


def test_nilpotent_part_invertible(f2):
    m = module_from_ints(f2, [[0, 1], [1, 0]])
    assert m.nilpotent_part().is_zero


def test_nilpotent_part_example(f2):
    m = module_from_ints(f2, [[1, 1], [0, 0]])
    sub = m.nilpotent_part()
    assert sub == Subspace.from_vectors(f2, 2, [(f2.one, f2.one)])
    assert span_set(sub) == oracle_nilpotent_part(m)


def test_nilpotent_part_zero_matrix(f2):
    m = module_from_ints(f2, [[0, 0], [0, 0]])
    assert m.nilpotent_part().dim == 2


def test_decompose_example(f2):
    m = module_from_ints(f2, [[1, 1], [0, 0]])
    dec = m.decompose()
    assert dec.v_nil.dim == 1 and dec.v_underline.dim == 1
    assert dec.nilord is None


def test_decompose_identity(f2):
    m = module_from_ints(f2, [[1, 0], [0, 1]])
    dec = m.decompose()
    assert dec.v_nil.is_zero and dec.v_underline.dim == 2


def test_decompose_strictly_upper_f3(f3):
    rng = random.Random(3)
    m = strictly_upper(rng, f3, 3)
    dec = m.decompose()
    assert dec.v_nil.dim == 3
    assert dec.nilord is not None and dec.nilord <= 3


def test_direct_sum_on_random_suite():
    for m in random_suite(count=200, max_dim=4):
        dec = m.decompose()  # raises InvariantViolation on failure
        assert dec.v_nil.dim + dec.v_underline.dim == m.dim
        assert dec.v_nil.intersect(dec.v_underline).is_zero
        # the restriction of C to the stable image is surjective
        assert m.image_of(dec.v_underline) == dec.v_underline


def test_image_chain_stabilizes_within_dim_steps():
    for m in random_suite(count=60, max_dim=4, seed=5):
        chain = [Subspace.full(m.spec, m.dim)]
        for _ in range(m.dim):
            chain.append(m.image_of(chain[-1]))
        assert m.image_of(chain[-1]) == chain[-1]
        # kernel chain of the power matrices stabilizes as well
        from cartier.linalg import kernel_basis, matrix_rank

        ranks = [matrix_rank(m.power_matrix(i), m.spec) for i in range(m.dim + 2)]
        assert ranks[m.dim] == ranks[m.dim + 1]


def test_oracle_agreement_on_small_random_modules():
    rng = random.Random(99)
    specs = [FieldSpec(2, 1), FieldSpec(2, 2), FieldSpec(3, 1)]
    for _ in range(40):
        spec = rng.choice(specs)
        n = rng.randint(1, 3)
        m = random_module(rng, spec, n)
        assert span_set(m.stable_image()) == oracle_stable_image(m)
        assert span_set(m.nilpotent_part()) == oracle_nilpotent_part(m)


# -- nilpotence orders ---------------------------------------------------


def test_nilord_examples(f2):
    assert module_from_ints(f2, [[0]]).nilord() == 1
    assert module_from_ints(f2, [[1]]).nilord() is None
    assert module_from_ints(f2, [[0, 1], [0, 0]]).nilord() == 2
    assert SemilinearModule(f2, []).nilord() == 0


def test_nilpotence_bounds_on_extensions():
    rng = random.Random(11)
    specs = [FieldSpec(2, 1), FieldSpec(2, 2), FieldSpec(2, 3)]
    for i in range(100):
        spec = specs[i % 3]
        big, sub, quot = nilpotent_block_extension(
            rng, spec, rng.randint(1, 3), rng.randint(1, 3)
        )
        a, b, c = sub.nilord(), quot.nilord(), big.nilord()
        assert a is not None and b is not None and c is not None
        assert max(a, b) <= c <= a + b


# -- fixed points ---------------------------------------------------------


def test_fixed_points_identity(gf4):
    m = SemilinearModule(gf4, [[gf4.one, gf4.zero], [gf4.zero, gf4.one]])
    basis = m.fixed_points()
    assert len(basis) == 2
    for v in basis:
        assert m.apply(v) == v


def test_fixed_points_gf4_example(gf4):
    w = gf4.gen
    m = SemilinearModule(gf4, [[w]])
    basis = m.fixed_points()
    assert len(basis) == 1 and basis[0] == (w * w,)
    assert oracle_fixed_points(m) == {((0, 0),), ((1, 1),)}


def test_fixed_points_zero(gf4):
    m = SemilinearModule(gf4, [[gf4.zero]])
    assert m.fixed_points() == ()


def test_fixed_points_match_oracle_and_bound():
    rng = random.Random(42)
    specs = [FieldSpec(2, 1), FieldSpec(2, 2), FieldSpec(3, 1)]
    for _ in range(30):
        spec = rng.choice(specs)
        n = rng.randint(1, 3 if spec.order <= 3 else 2)
        m = random_module(rng, spec, n)
        basis = m.fixed_points()
        assert len(basis) <= m.stable_image().dim
        fixed = oracle_fixed_points(m)
        assert len(fixed) == spec.q ** len(basis)
        for v in basis:
            assert tuple(x.coeffs for x in v) in fixed


def test_fixed_point_bound_on_full_suite():
    for m in random_suite(count=120, max_dim=4, seed=77):
        assert len(m.fixed_points()) <= m.stable_image().dim


# -- base change -----------------------------------------------------------


def test_base_change_degree_one_is_identity(gf4):
    w = gf4.gen
    m = SemilinearModule(gf4, [[w]])
    m1 = m.base_change(1)
    assert m1.dim == 1 and m1.spec.d == 2
    assert len(m1.fixed_points()) == len(m.fixed_points())


def test_base_change_already_saturated(f2):
    m = module_from_ints(f2, [[1]])
    assert len(m.base_change(2).fixed_points()) == 1


def test_saturation_on_curated_set(f2, gf4):
    # modules chosen to saturate at a known small degree
    cases = [
        (module_from_ints(f2, [[1]]), 1),
        (module_from_ints(f2, [[1, 1], [0, 0]]), 1),
        (SemilinearModule(gf4, [[gf4.gen]]), 1),
        # companion matrix of t^2+t+1: no fixed vectors until GF(8),
        # verified by exhaustive evaluation over GF(2), GF(4), GF(8)
        (module_from_ints(f2, [[0, 1], [1, 1]]), 3),
    ]
    for module, expected_m in cases:
        assert module.saturation_degree(max_m=6) == expected_m


def test_saturation_reported_as_none_when_capped(f2):
    m = module_from_ints(f2, [[0, 1], [1, 1]])
    assert m.saturation_degree(max_m=1) is None


def test_saturation_exhaustive_over_2x2_f2(f2):
    # every 2x2 module over F_2 with nonzero stable image saturates by
    # degree 3 (worst case: the companion matrix of t^2+t+1)
    for bits in product(range(2), repeat=4):
        m = module_from_ints(f2, [[bits[0], bits[1]], [bits[2], bits[3]]])
        if m.stable_image().dim == 0:
            continue
        assert m.saturation_degree(max_m=6) <= 3


def test_one_dimensional_modules_saturate_immediately(gf4, gf8):
    # with q = 2 the fixed equation v = a * v^(1/2) always has a nonzero
    # solution in the base field itself
    for spec in (gf4, gf8):
        for a in spec.elements():
            m = SemilinearModule(spec, [[a]])
            if m.stable_image().dim:
                assert m.saturation_degree(max_m=6) == 1


def test_stable_image_universal_property(f2, gf4):
    # the stable image is the smallest stable subspace with nilpotent
    # quotient; the nilpotent part is the largest nilpotent stable subspace
    rng = random.Random(61)
    for spec in (f2, gf4):
        for _ in range(12):
            m = random_module(rng, spec, rng.randint(1, 3))
            under = m.stable_image()
            nil = m.nilpotent_part()
            for info in m.enumerate_submodules():
                sub = info.subspace
                quotient, _ = m.quotient_by(sub)
                assert quotient.is_nilpotent == sub.contains(under)
                assert m.restrict_to(sub).is_nilpotent == nil.contains(sub)


# -- hom spaces -------------------------------------------------------------


def test_hom_identity_f2_brute_force(f2):
    m = module_from_ints(f2, [[1, 0], [0, 1]])
    hom = m.hom_space(m)
    assert hom.dim == 4 and hom.size == 16
    # brute force: every 2x2 matrix over F_2 commutes with the identity map
    count = 0
    for bits in product([f2.zero, f2.one], repeat=4):
        phi = ((bits[0], bits[1]), (bits[2], bits[3]))
        if mat_mul(phi, m.matrix) == mat_mul(m.matrix, phi):
            count += 1
    assert count == 16


def test_hom_into_zero_module(f2):
    m = module_from_ints(f2, [[1]])
    z = SemilinearModule(f2, [])
    assert m.hom_space(z).dim == 0


def test_hom_gf4_sigma_inverse(gf4):
    m = SemilinearModule(gf4, [[gf4.one]])
    hom = m.hom_space(m)
    assert hom.q == 2 and hom.dim == 1
    # exhaustively: scalars a with a = a^(1/2), i.e. a in F_2
    sols = [a for a in gf4.elements() if a == a.inv_frobenius(1)]
    assert len(sols) == 2


def test_hom_mismatched_fields(gf4, gf8):
    with pytest.raises(UsageError):
        SemilinearModule(gf4, [[gf4.one]]).hom_space(
            SemilinearModule(gf8, [[gf8.one]])
        )


def test_end_basis_closed_under_composition():
    rng = random.Random(13)
    for _ in range(20):
        spec = rng.choice([FieldSpec(2, 1), FieldSpec(2, 2)])
        m = random_module(rng, spec, rng.randint(1, 3))
        hom = m.hom_space(m)
        for phi in hom.basis:
            for psi in hom.basis:
                comp = mat_mul(phi, psi)
                lhs = mat_mul(comp, m.matrix)
                from cartier.semilinear import sigma_inv_mat

                rhs = mat_mul(m.matrix, sigma_inv_mat(comp, spec.e))
                assert lhs == rhs  # composition is again an endomorphism


# -- submodule enumeration ----------------------------------------------------


def test_gaussian_binomials():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 4) == 21
    assert count_subspaces(2, 2) == 5
    assert count_subspaces(4, 2) == 67


def test_subspace_count_matches_enumeration(f2, gf4):
    for spec, n in ((f2, 3), (gf4, 2)):
        m = SemilinearModule(spec, identity(n, spec))
        assert sum(1 for _ in m.iter_subspaces()) == count_subspaces(n, spec.order)


def test_enumerate_identity_all_fixed(f2):
    m = module_from_ints(f2, [[1, 0], [0, 1]])
    infos = m.enumerate_submodules()
    assert len(infos) == 5
    assert all(info.surjective for info in infos)


def test_enumerate_zero_matrix(f2):
    m = module_from_ints(f2, [[0, 0], [0, 0]])
    infos = m.enumerate_submodules()
    assert len(infos) == 5  # every subspace is stable under the zero map
    assert [i.subspace.dim for i in infos if i.surjective] == [0]


def test_enumerate_example_fixed_set(f2):
    m = module_from_ints(f2, [[1, 1], [0, 0]])
    fixed = [i.subspace for i in m.enumerate_submodules() if i.surjective]
    assert fixed == [
        Subspace.zero(f2, 2),
        Subspace.from_vectors(f2, 2, [(f2.one, f2.zero)]),
    ]


def test_enumerate_cap(f2):
    m = module_from_ints(f2, [[1, 0], [0, 1]])
    with pytest.raises(ResourceError):
        m.enumerate_submodules(cap=3)


def test_fixed_lattice_closed_under_sum_and_intersection():
    for m in random_suite(count=40, max_dim=3, seed=123):
        fixed = [i.subspace for i in m.enumerate_submodules() if i.surjective]
        as_set = set(fixed)
        for a in fixed:
            for b in fixed:
                assert a.add(b) in as_set
                assert a.intersect(b) in as_set


# -- simplicity and endomorphism rings -----------------------------------------


def test_simple_gf4_sigma_inverse(gf4):
    m = SemilinearModule(gf4, [[gf4.one]])
    assert m.is_simple()
    order, is_field = m.end_ring()
    assert order == 2 and is_field


def test_simple_zero_structural_map(gf4):
    m = SemilinearModule(gf4, [[gf4.zero]])
    assert m.is_simple()
    order, is_field = m.end_ring()
    assert order == 4 and is_field  # all of GF(4) commutes with the zero map


def test_identity_not_simple(f2):
    m = module_from_ints(f2, [[1, 0], [0, 1]])
    assert not m.is_simple()
    with pytest.raises(UsageError):
        m.end_ring()


# -- duality ---------------------------------------------------------------------


def test_dual_zero(f2):
    m = module_from_ints(f2, [[0]])
    d = m.dual()
    assert is_zero_matrix(d.matrix)
    assert d.nilord() == m.nilord() == 1


def test_dual_gf4(gf4):
    w = gf4.gen
    m = SemilinearModule(gf4, [[w]])
    d = m.dual()
    assert d.matrix == ((w * w,),)
    assert d.nilord() is None and m.nilord() is None


def test_dual_left_twist(gf4):
    w = gf4.gen
    m = SemilinearModule(gf4, [[w]])
    d = m.dual()
    for a in gf4.elements():
        for v in gf4.elements():
            lhs = d.apply((a * v,))
            rhs = tuple(a.frobenius(1) * x for x in d.apply((v,)))
            assert lhs == rhs


def test_double_dual_identical(f2, gf4):
    rng = random.Random(5)
    for spec in (f2, gf4):
        for _ in range(20):
            m = random_module(rng, spec, rng.randint(1, 3))
            dd = m.dual().dual()
            assert dd.matrix == m.matrix


def test_dual_preserves_nilord_on_suite():
    for m in random_suite(count=100, max_dim=4, seed=31):
        assert m.dual().nilord() == m.nilord()


# -- restriction and quotient ------------------------------------------------------


def test_restrict_to_stable_image(f2):
    m = module_from_ints(f2, [[1, 1], [0, 0]])
    r = m.restrict_to(m.stable_image())
    assert r.dim == 1 and r.matrix == ((f2.one,),)


def test_restrict_requires_stability(f2):
    m = module_from_ints(f2, [[0, 1], [1, 0]])
    line = Subspace.from_vectors(f2, 2, [(f2.one, f2.zero)])
    with pytest.raises(UsageError):
        m.restrict_to(line)


def test_quotient_kills_stable_part(f2):
    m = module_from_ints(f2, [[1, 1], [0, 0]])
    q, qmap = m.quotient_by(m.stable_image())
    assert q.dim == 1
    assert q.nilord() == 1  # C(0,1) = (1,0) vanishes in the quotient


def test_quotient_projection_well_defined(gf4):
    rng = random.Random(17)
    for _ in range(10):
        m = random_module(rng, gf4, 3)
        sub = m.nilpotent_part()
        q, qmap = m.quotient_by(sub)
        for _ in range(10):
            v = tuple(random_element(rng, gf4) for _ in range(3))
            w_rows = list(sub.rows)
            shift = v
            if w_rows:
                shift = tuple(a + b for a, b in zip(v, w_rows[0]))
            assert qmap.project(v) == qmap.project(shift)
            # projection intertwines the actions
            assert qmap.project(m.apply(v)) == q.apply(qmap.project(v))


# -- serialization ------------------------------------------------------------------


def test_module_json_round_trip(gf4):
    m = SemilinearModule(gf4, [[gf4.gen, gf4.one], [gf4.zero, gf4.gen]])
    data = m.to_json()
    again = SemilinearModule.from_json(data)
    assert again == m


def test_module_json_twist_mismatch(gf4):
    m = SemilinearModule(gf4, [[gf4.one]])
    data = m.to_json()
    data["e"] = 2
    with pytest.raises(UsageError):
        SemilinearModule.from_json(data)


def test_subfield_elements(gf4):
    elems = subfield_elements(gf4)
    assert len(elems) == 2
    assert gf4.zero in elems and gf4.one in elems
