from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acslie import catalog
from acslie.cstruct import (AlmostComplexStructure, BFormUndefined, NotAnAcsError, ad_antilinearity_check,
                            bform_signature, check_structure, commutator_derivation_relation,
                            conjugate_structure, gJ_prime, gJ_series, one_zero_subalgebra,
                            pair_derivation_space)
from acslie.lie import LieAlgebra, transport
from acslie.linalg import QI, GaussianRational, Mat, Subspace, unit_vectors

from conftest import small_rationals

I = GaussianRational(0, 1)


def std_j(dim):
    return AlmostComplexStructure.from_images(dim, {2 * k: unit_vectors(dim)[2 * k + 1] for k in range(dim // 2)})


def inst(name, **p):
    return catalog.instantiate(name, p)


class TestAcs:
    def test_rejects_non_acs(self):
        with pytest.raises(NotAnAcsError):
            AlmostComplexStructure(Mat.identity(4))
        with pytest.raises(NotAnAcsError):
            AlmostComplexStructure(Mat([[0, -1, 0], [1, 0, 0], [0, 0, 1]]))

    def test_from_images_completes(self):
        J = std_j(4)
        assert J.J @ J.J == -Mat.identity(4)

    def test_inconsistent_images(self):
        with pytest.raises(NotAnAcsError):
            AlmostComplexStructure.from_images(2, {0: (0, 1), 1: (0, 1)})


class TestCheckStructure:
    def test_affc_j1(self):
        r = check_structure(*inst("affC-J1"))
        assert r.abelian and not r.bi_invariant and r.integrable

    def test_affc_biinvariant(self):
        r = check_structure(*inst("affC-biinv"))
        assert r.bi_invariant and not r.abelian and r.integrable
        assert r.witnesses["abelian"]

    def test_abelian_algebra(self):
        r = check_structure(LieAlgebra.abelian(6), std_j(6))
        assert r.flags() == (True, True, True, True)

    def test_non_integrable(self):
        # h3 x R with J e1 = e3 mixes the centre into the complex lines
        L = LieAlgebra.from_table(4, [(1, 2, {3: 1})])
        J = AlmostComplexStructure.from_images(4, {0: unit_vectors(4)[2], 1: unit_vectors(4)[3]})
        r = check_structure(L, J)
        assert not r.integrable and not r.abelian
        assert r.witnesses["integrable"]


class TestOneZero:
    def test_r2(self):
        r = one_zero_subalgebra(LieAlgebra.abelian(2), std_j(2))
        assert r.space == Subspace(2, [(GaussianRational(1), -I)], field=QI)
        assert r.is_subalgebra and r.is_abelian_subalgebra and r.is_ideal

    def test_affc_j2(self):
        assert one_zero_subalgebra(*inst("affC-J2")).is_abelian_subalgebra

    def test_affc_biinvariant(self):
        r = one_zero_subalgebra(*inst("affC-biinv"))
        assert r.is_ideal and not r.is_abelian_subalgebra

    @given(st.lists(small_rationals, min_size=16, max_size=16), st.sampled_from(["affC-J1", "affC-J2", "affC-biinv", "g5"]))
    def test_flags_agree_after_basis_change(self, vals, name):
        P = Mat([vals[4 * r:4 * r + 4] for r in range(4)], 4)
        if not P.is_invertible():
            return
        L, J = inst(name)
        L2, J2 = transport(L, P), conjugate_structure(J, P)
        r1, r2 = check_structure(L, J), check_structure(L2, J2)
        assert r1.flags() == r2.flags()
        oz = one_zero_subalgebra(L2, J2)
        assert oz.is_abelian_subalgebra == r2.abelian
        assert oz.is_ideal == r2.bi_invariant


class TestGJ:
    def test_n1(self):
        gJ, proper = gJ_prime(*inst("n1"))
        assert gJ.dim == 2 and proper

    def test_affc_j2(self):
        gJ, proper = gJ_prime(*inst("affC-J2"))
        assert gJ.dim == 4 and not proper

    def test_abelian(self):
        gJ, proper = gJ_prime(LieAlgebra.abelian(6), std_j(6))
        assert gJ.dim == 0 and proper

    def test_series(self):
        assert gJ_series(*inst("n7-canonical", t=1)) == ([6, 4, 2, 0], True)
        assert gJ_series(*inst("n1")) == ([6, 2, 0], True)
        assert gJ_series(LieAlgebra.abelian(6), std_j(6)) == ([6, 0], True)


class TestBForm:
    def test_n2(self):
        assert bform_signature(*inst("n2-minus")) == (2, 2)
        assert bform_signature(*inst("n2-plus")) == (0, 4)

    def test_h3_times_r(self):
        assert bform_signature(*inst("h3xR1", r=0)) == (0, 2)

    def test_undefined(self):
        with pytest.raises(BFormUndefined):
            bform_signature(*inst("n3-canonical", s=1))


class TestPairDerivations:
    def test_examples(self):
        from acslie.cstruct import restrict_structure
        L, J = inst("thm42-1")
        gJ, _ = gJ_prime(L, J)
        assert len(pair_derivation_space(*restrict_structure(L, J, gJ))) == 6
        assert len(pair_derivation_space(*inst("g5"))) == 4
        assert len(pair_derivation_space(LieAlgebra.abelian(4), std_j(4))) == 16


class TestAntilinearity:
    def test_every_abelian_entry(self):
        for e in catalog.entries():
            if e.structure_class != catalog.ABELIAN:
                continue
            L, J = catalog.instantiate(e.id, catalog.parameter_grid(e.id, 1)[0])
            assert ad_antilinearity_check(L, J), e.id

    def test_biinvariant_fails(self):
        assert not ad_antilinearity_check(*inst("affC-biinv"))

    def test_abelian_algebra(self):
        assert ad_antilinearity_check(LieAlgebra.abelian(4), std_j(4))


class TestConjugation:
    def test_identity(self):
        _, J = inst("affC-J1")
        assert conjugate_structure(J, Mat.identity(4)) == J

    def test_singular(self):
        _, J = inst("affC-J1")
        with pytest.raises(ValueError):
            conjugate_structure(J, Mat.zeros(4, 4))


class TestCommutatorRelation:
    def test_holds_where_defined(self):
        applied = 0
        for e in catalog.entries():
            if e.dim != 6 or e.structure_class != catalog.ABELIAN:
                continue
            for p in catalog.parameter_grid(e.id, 2):
                try:
                    rel, _ = commutator_derivation_relation(*catalog.instantiate(e.id, p))
                except ValueError:
                    continue
                applied += 1
                assert rel, (e.id, p)
        assert applied >= 10

    def test_needs_codimension_two(self):
        with pytest.raises(ValueError):
            commutator_derivation_relation(*inst("n1"))
