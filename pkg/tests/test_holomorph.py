import pytest

from workbench.config import SETTINGS
from workbench.core_semigroup import build_example, build_from_table
from workbench.errors import NotMonoid
from workbench.holomorph import (
    HolElement,
    MonHolElement,
    enumerate_holomorph,
    from_mon,
    hol_action,
    hol_diamond,
    hol_groupoid_compose,
    hol_groupoid_inverse,
    hol_identity,
    hol_tables,
    holomorph_units,
    is_hol_element,
    mon_diamond,
    mon_hol,
    to_mon,
    verify_group_holomorph,
    verify_hol_laws,
    verify_hol_matches_end,
    verify_interchange,
    verify_mon_hol,
)
from workbench.morphisms import enumerate_premorphisms


def tables_of(name):
    S = build_example(name)
    return S, hol_tables(S, enumerate_holomorph(S))


@pytest.mark.parametrize(
    "name, size, units",
    [
        ("Z2", 4, 2),
        ("Z3", 9, 6),
        ("Z4", 16, 8),
        pytest.param("S3", 60, 36, marks=pytest.mark.slow),
    ],
)
def test_group_holomorph_sizes(name, size, units):
    G, tables = tables_of(name)
    assert tables.size == size
    assert len(holomorph_units(tables)) == units
    report = verify_group_holomorph(G, tables)
    assert report.passed, report.to_text()
    assert report.stats["units"] == report.stats["aut_times_order"]


def test_chain2_holomorph():
    S, tables = tables_of("chain2")
    assert tables.size == 3
    # alpha determines tau on a semilattice
    assert len({x.alpha for x in tables.elements}) == 3


def test_elements_are_sorted():
    S = build_example("I2")
    hol = enumerate_holomorph(S)
    assert hol == sorted(hol, key=lambda x: (x.alpha, x.tau))
    assert all(is_hol_element(S, x) for x in hol)


@pytest.mark.parametrize("name", ["Z3", "chain2", "chain3", "I2", "clifford3"])
def test_hol_laws(name):
    S, tables = tables_of(name)
    report = verify_hol_laws(S, tables)
    assert report.passed, report.to_text()


@pytest.mark.parametrize("name", ["Z3", "chain2", "I2"])
def test_interchange(name):
    _, tables = tables_of(name)
    report = verify_interchange(tables)
    assert report.passed, report.to_text()
    assert report.stats["composable_pairs"] > 0


def test_identity_and_action():
    S = build_example("I2")
    one = hol_identity(S)
    assert all(hol_action(S, s, one) == s for s in range(S.size))
    for x in enumerate_holomorph(S):
        assert hol_diamond(S, one, x) == x
        assert hol_diamond(S, x, one) == x


def test_diagnostic_diamond():
    SETTINGS.update(diagnostic=True)
    S = build_example("chain3")
    hol = enumerate_holomorph(S)
    for x in hol:
        for y in hol:
            assert hol_diamond(S, x, y) in hol


def test_groupoid_inverse():
    S = build_example("Z3")
    for x in enumerate_holomorph(S):
        y = hol_groupoid_inverse(S, x)
        composite = hol_groupoid_compose(S, x, y)
        assert composite is not None
        assert composite.alpha == x.alpha
        assert composite.tau == tuple(S.idempotents)


def test_undefined_groupoid_composite():
    S = build_example("chain2")
    # (id, (1, e)) then (const e, (e, e)): target of the first is the identity
    x = HolElement((0, 1), (0, 1))
    y = HolElement((1, 1), (1, 1))
    assert hol_groupoid_compose(S, x, y) is None


def test_parallel_enumeration():
    S = build_example("I2")
    assert enumerate_holomorph(S, jobs=2) == enumerate_holomorph(S)


class TestMonoidForm:
    @pytest.mark.parametrize("name", ["Z3", "chain2", "I2", "clifford4"])
    def test_verify(self, name):
        M, tables = tables_of(name)
        report = verify_mon_hol(M, tables)
        assert report.passed, report.to_text()
        assert report.stats["mon_hol"] == tables.size

    def test_round_trip(self):
        M = build_example("I2")
        for x in enumerate_holomorph(M):
            assert from_mon(M, to_mon(M, x)) == x

    def test_product(self):
        M = build_example("Z3")
        x = MonHolElement((0, 2, 1), 1)
        y = MonHolElement((0, 1, 2), 2)
        # (1 beta) 2 with beta the identity
        assert mon_diamond(M, x, y) == MonHolElement((0, 2, 1), 0)

    def test_needs_monoid(self):
        S = build_example("chain2")
        assert len(mon_hol(S, enumerate_premorphisms(S))) == 3
        with pytest.raises(NotMonoid):
            mon_hol(brandt())


def brandt():
    """Rank at most one partial bijections of a 2-set: an inverse semigroup with no identity."""
    I2 = build_example("I2")
    keep = [a for a, name in enumerate(I2.names) if name.count("-") >= 1]
    pos = {a: i for i, a in enumerate(keep)}
    table = [[pos[I2.product(a, b)] for b in keep] for a in keep]
    return build_from_table([I2.names[a] for a in keep], table)


@pytest.mark.parametrize("name", ["Z2", "chain2"])
def test_matches_end(name):
    S, tables = tables_of(name)
    report = verify_hol_matches_end(S, tables)
    assert report.passed, report.to_text()
    assert report.stats["end"] == tables.size
