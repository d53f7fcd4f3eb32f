from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acslie import catalog
from acslie.affalg import (ASSOC_TABLES, CATALOG_IDS, REALIZATIONS, CommAssocAlgebra, aff_of, algebra_of_nonproper,
                           assoc_algebra, check_assoc, has_unit, invariants, phi_map, relabeling_matrix,
                           square_subspace, table_from_realization)
from acslie.cstruct import check_structure, gJ_prime
from acslie.equivalence import intertwiner_check
from acslie.lie import jacobi_violations, transport

from conftest import small_rationals

NAMES = sorted(ASSOC_TABLES)


def one_dim(square):
    return CommAssocAlgebra.from_table(1, [(1, 1, {1: square})] if square else [])


class TestAssociativity:
    def test_a4(self):
        assert check_assoc(assoc_algebra("A4")) == []

    def test_one_dim(self):
        assert check_assoc(one_dim(1)) == []

    def test_violation(self):
        A = CommAssocAlgebra.from_table(2, [(1, 1, {2: 1}), (1, 2, {1: 1})])
        bad = check_assoc(A)
        assert (0, 0, 1) in bad

    def test_conflicting_entries(self):
        with pytest.raises(ValueError):
            CommAssocAlgebra(2, {(0, 1): (1, 0), (1, 0): (0, 1)})


class TestSquareAndUnit:
    @pytest.mark.parametrize("name", NAMES)
    def test_a_i(self, name):
        A = assoc_algebra(name)
        assert square_subspace(A).dim == 3
        assert has_unit(A)

    def test_nil(self):
        A = one_dim(0)
        assert square_subspace(A).dim == 0
        assert not has_unit(A)


class TestRealizations:
    @pytest.mark.parametrize("name", NAMES)
    def test_tables_regenerate(self, name):
        assert table_from_realization(REALIZATIONS[name]) == [
            (i, j, {k: v for k, v in res.items()}) for i, j, res in ASSOC_TABLES[name]]

    def test_invariants_pairwise_distinct(self):
        tuples = {name: invariants(assoc_algebra(name)).as_tuple() for name in NAMES}
        for a, b in combinations(NAMES, 2):
            assert tuples[a] != tuples[b], (a, b)

    def test_invariant_values(self):
        assert invariants(assoc_algebra("A1")).as_tuple() == (0, 0, 3, 0, (3, 0, 0))
        assert invariants(assoc_algebra("A4")).as_tuple() == (2, 0, 3, 1, (1, 0, 2))
        assert invariants(assoc_algebra("A5")).as_tuple() == (2, 0, 3, 0, (1, 0, 2))


class TestAffOf:
    def test_aff_r(self):
        L, J = aff_of(one_dim(1))
        assert L.brackets == {(0, 1): (0, 1)}
        assert check_structure(L, J).abelian

    @pytest.mark.parametrize("name", NAMES)
    def test_matches_catalog(self, name):
        L, J = aff_of(assoc_algebra(name))
        target, Jt = catalog.instantiate(CATALOG_IDS[name])
        P = relabeling_matrix(name)
        assert transport(L, P) == target
        assert P @ J.J == Jt.J @ P

    def test_a4_table(self):
        L, _ = catalog.instantiate("s3")
        lines = set(L.table_lines())
        assert {"[e2,f1] = f2", "[e2,f2] = f3", "[e3,f1] = f3"} <= lines

    @given(st.lists(small_rationals, min_size=3, max_size=3))
    def test_structure_of_random_products(self, coeffs):
        # A = Q[x]/(x^2 - c x) scaled: a1 a1 = c a1 is commutative associative for every c
        c = coeffs[0]
        A = CommAssocAlgebra.from_table(2, [(1, 1, {1: c}), (1, 2, {2: c})])
        assert check_assoc(A) == []
        L, J = aff_of(A)
        assert jacobi_violations(L) == []
        assert check_structure(L, J).abelian
        _, proper = gJ_prime(L, J)
        assert proper == (square_subspace(A).dim != A.dim)


class TestNonProper:
    @pytest.mark.parametrize("name", NAMES)
    def test_recovered_algebra(self, name):
        L, J = catalog.instantiate(CATALOG_IDS[name])
        A, basis = algebra_of_nonproper(L, J)
        assert check_assoc(A) == []
        assert invariants(A) == invariants(assoc_algebra(name))
        La, Ja = aff_of(A)
        assert intertwiner_check(La, Ja, L, J, phi_map(J, basis))
