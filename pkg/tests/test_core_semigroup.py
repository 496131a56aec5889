import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from workbench.config import SETTINGS
from workbench.core_semigroup import (
    SemilatticeOfGroupsSpec,
    build_chain_semilattice,
    build_clifford,
    build_cyclic_group,
    build_from_table,
    build_semilattice_from_order,
    build_symmetric_inverse_monoid,
    check_order_properties,
    clifford_spec,
    diamond_semilattice,
    find_nonassociative_triple,
    meet_idempotents,
    natural_leq,
    npo_clauses,
    symmetric_inverse_monoid_size,
    validate_semilattice_of_groups,
)
from workbench.errors import (
    LinkingIncompatible,
    MalformedTable,
    NotAssociative,
    NotIdempotent,
    NotInductive,
    NotInverse,
    SizeCapExceeded,
)


class TestBuildFromTable:
    def test_cyclic_group(self):
        S = build_from_table(["0", "1", "2"], [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
        assert S.size == 3
        assert S.identity == 0
        assert S.zero is None
        assert S.inverse(1) == 2
        assert S.idempotents == (0,)

    def test_non_associative_reports_triple(self):
        with pytest.raises(NotAssociative) as err:
            build_from_table(None, [[1, 0], [0, 0]])
        assert err.value.witness == (0, 0, 1)

    def test_left_zero_band_is_not_inverse(self):
        with pytest.raises(NotInverse) as err:
            build_from_table(None, [[0, 0], [1, 1]])
        assert err.value.witness == (0, [0, 1])

    @pytest.mark.parametrize("table", [[], [[0, 1]], [[0, 2], [1, 0]]])
    def test_malformed(self, table):
        with pytest.raises(MalformedTable):
            build_from_table(None, table)

    def test_duplicate_names(self):
        with pytest.raises(MalformedTable):
            build_from_table(["x", "x"], [[0, 1], [1, 0]])

    def test_size_cap(self):
        with pytest.raises(SizeCapExceeded):
            build_from_table(None, [[0, 1], [1, 0]], size_cap=1)

    def test_tables_are_read_only(self):
        S = build_cyclic_group(2)
        with pytest.raises(ValueError):
            S.mul[0, 0] = 1


class TestSymmetricInverseMonoid:
    @pytest.mark.parametrize("n, size", [(0, 1), (1, 2), (2, 7), (3, 34)])
    def test_sizes(self, n, size):
        assert symmetric_inverse_monoid_size(n) == size
        assert build_symmetric_inverse_monoid(n).size == size

    def test_i2_structure(self):
        S = build_symmetric_inverse_monoid(2)
        assert S.names == ("[- -]", "[- 1]", "[- 2]", "[1 -]", "[1 2]", "[2 -]", "[2 1]")
        assert S.identity == S.names.index("[1 2]")
        assert S.zero == S.names.index("[- -]")
        assert len(S.idempotents) == 4

    def test_i2_order(self):
        S = build_symmetric_inverse_monoid(2)
        i = S.names.index
        assert S.leq(i("[1 -]"), i("[1 2]"))
        assert S.leq(i("[- 1]"), i("[2 1]"))
        assert not S.leq(i("[1 -]"), i("[2 1]"))

    def test_cap(self):
        SETTINGS.update(size_cap=10)
        with pytest.raises(SizeCapExceeded):
            build_symmetric_inverse_monoid(3)


class TestNaturalOrder:
    def test_catalog_order_properties(self, example):
        report = check_order_properties(example)
        assert report.passed, report.to_text()

    def test_characterizations_agree(self, small_example):
        S = small_example
        for a in range(S.size):
            for b in range(S.size):
                clauses = npo_clauses(S, a, b)
                assert len(set(clauses)) == 1
                assert clauses[0] == S.leq(a, b)

    def test_diagnostic_leq(self):
        SETTINGS.update(diagnostic=True)
        S = build_symmetric_inverse_monoid(2)
        assert natural_leq(S, S.zero, S.identity)
        assert not natural_leq(S, S.identity, S.zero)

    def test_meets(self):
        D = diamond_semilattice()
        assert meet_idempotents(D, 1, 2) == 3
        assert meet_idempotents(D, 0, 1) == 1

    def test_meet_needs_idempotents(self):
        with pytest.raises(NotIdempotent):
            meet_idempotents(build_cyclic_group(2), 0, 1)

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_group_order_is_equality(self, a, b):
        G = build_cyclic_group(7)
        assert G.leq(a, b) == (a == b)


class TestSemilattices:
    def test_chain(self):
        C = build_chain_semilattice(3)
        assert C.names == ("e0", "e1", "e2")
        assert C.leq(2, 0) and not C.leq(0, 2)
        assert C.identity == 0 and C.zero == 2

    def test_chain2_names(self):
        assert build_chain_semilattice(2).names == ("1", "e")

    def test_missing_meet(self):
        with pytest.raises(NotInductive):
            build_semilattice_from_order(["x", "y"], [[True, False], [False, True]])

    def test_diamond(self):
        D = diamond_semilattice()
        assert D.product(1, 2) == 3
        assert D.identity == 0


class TestSemilatticeOfGroups:
    def test_clifford_sizes(self):
        assert build_clifford(2, 1).size == 3
        assert build_clifford(2, 2).size == 4

    def test_clifford_product_reduces(self):
        spec = clifford_spec(2, 1)
        S = build_clifford(2, 1)
        top_one = spec.element(0, 1)
        bottom = spec.element(1, 0)
        assert S.product(top_one, bottom) == bottom
        assert S.product(top_one, top_one) == spec.element(0, 0)

    def test_clifford_order(self):
        spec = clifford_spec(2, 2)
        S = build_clifford(2, 2)
        assert S.leq(spec.element(1, 1), spec.element(0, 1))
        assert not S.leq(spec.element(1, 1), spec.element(0, 0))

    def test_linking_not_homomorphism(self):
        E = build_chain_semilattice(2)
        Z2 = build_cyclic_group(2)
        spec = SemilatticeOfGroupsSpec(E, (Z2, Z2), {(0, 1): (1, 1)})
        with pytest.raises(LinkingIncompatible) as err:
            validate_semilattice_of_groups(spec)
        assert err.value.witness[:2] == (0, 1)

    def test_missing_linking(self):
        E = build_chain_semilattice(2)
        Z2 = build_cyclic_group(2)
        with pytest.raises(LinkingIncompatible):
            validate_semilattice_of_groups(SemilatticeOfGroupsSpec(E, (Z2, Z2)))


def test_catalog_examples_are_associative(example):
    assert find_nonassociative_triple(example.mul) is None
    idx = np.arange(example.size)
    assert np.array_equal(example.mul[example.mul[idx, example.inv], idx], idx)
