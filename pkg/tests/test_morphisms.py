import pytest
from hypothesis import given
from hypothesis import strategies as st

from workbench.config import SETTINGS
from workbench.core_semigroup import build_example, clifford_spec
from workbench.errors import SearchBudgetExceeded
from workbench.morphisms import (
    ElementMap,
    compose_maps,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    enumerate_premorphisms,
    identity_map,
    is_endomorphism,
    is_ordered,
    is_premorphism,
    sog_premorphism_data,
    verify_morphism_inclusions,
    verify_premorphism_laws,
)


@pytest.mark.parametrize("name, count", [("trivial", 1), ("Z2", 2), ("Z3", 3), ("chain2", 3)])
def test_premorphism_counts(name, count):
    assert len(enumerate_premorphisms(build_example(name))) == count


@pytest.mark.parametrize("name, count", [("S3", 6), ("Z4", 2), ("V4", 6), ("Z5", 4), ("Z6", 2)])
def test_automorphism_counts(name, count):
    assert len(enumerate_automorphisms(build_example(name))) == count


def test_chain2_premorphisms():
    S = build_example("chain2")
    prem = enumerate_premorphisms(S)
    # the swap 1 <-> e is not ordered
    assert (1, 0) not in prem
    assert identity_map(S) in prem
    assert prem == sorted(prem)


def test_enumeration_is_lexicographic(small_example):
    prem = enumerate_premorphisms(small_example)
    assert prem == sorted(prem)
    assert all(is_premorphism(small_example, t) for t in prem)


def test_group_endomorphisms_are_premorphisms():
    G = build_example("Z4")
    assert enumerate_endomorphisms(G) == enumerate_premorphisms(G)


def test_premorphism_laws(small_example):
    report = verify_premorphism_laws(small_example)
    assert report.passed, report.to_text()


def test_inclusions(small_example):
    report = verify_morphism_inclusions(small_example)
    assert report.passed, report.to_text()
    assert report.stats["automorphisms"] <= report.stats["endomorphisms"] <= report.stats["premorphisms"]


def test_diagnostic_premorphism_check():
    SETTINGS.update(diagnostic=True)
    S = build_example("I2")
    for theta in enumerate_premorphisms(S):
        assert is_premorphism(S, theta)


def test_premorphism_into_another_semigroup():
    S, T = build_example("chain2"), build_example("Z2")
    assert is_premorphism(S, (0, 0), T=T)
    assert is_ordered(S, T, (1, 1))
    assert not is_premorphism(S, (1, 1), T=T)
    assert ElementMap(S, T, (0, 0)).is_endomorphism
    with pytest.raises(TypeError):
        is_premorphism(S, T, (0, 0))


def test_parallel_search_matches_serial():
    S = build_example("I2")
    assert enumerate_premorphisms(S, jobs=2) == enumerate_premorphisms(S, jobs=1)


def test_budget_exhausted():
    with pytest.raises(SearchBudgetExceeded) as err:
        enumerate_premorphisms(build_example("S3"), budget=5)
    assert err.value.visited > 5


def test_element_map_predicates():
    S = build_example("chain2")
    constant_bottom = ElementMap(S, S, [1, 1])
    swap = ElementMap(S, S, [1, 0])
    assert constant_bottom.is_endomorphism
    assert not swap.is_ordered
    assert not swap.is_premorphism
    assert not constant_bottom.is_bijective
    assert constant_bottom.then(swap).theta == (0, 0)


def test_sog_premorphism_data():
    spec = clifford_spec(2, 1)
    S = build_example("clifford3")
    for theta in enumerate_premorphisms(S):
        data = sog_premorphism_data(spec, S, theta)
        assert data.report.passed, data.report.to_text()
        assert len(data.lam) == 2


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_endomorphisms_compose(theta, phi):
    G = build_example("Z3")
    if is_endomorphism(G, theta) and is_endomorphism(G, phi):
        assert is_endomorphism(G, compose_maps(theta, phi))
    assert is_ordered(G, G, theta)
