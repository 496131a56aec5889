import pytest

from workbench.errors import SearchBudgetExceeded
from workbench.search import MapConstraint, search_maps


class AllMaps(MapConstraint):
    def __init__(self, size: int, values: int):
        self.size = size
        self.values = values

    def candidates(self, k: int) -> range:
        return range(self.values)

    def check(self, theta: list[int], k: int) -> bool:
        return True


# 6 branches of 1 + 6 + 36 + 216 + 1296 nodes each
NODES = 6 * 1555


def test_serial_and_parallel_agree():
    assert search_maps(AllMaps(3, 3), 1000, jobs=2) == search_maps(AllMaps(3, 3), 1000)


def test_serial_budget():
    with pytest.raises(SearchBudgetExceeded) as info:
        search_maps(AllMaps(5, 6), 3000)
    assert info.value.visited == 3001


def test_parallel_budget_is_shared():
    budget = 3000
    with pytest.raises(SearchBudgetExceeded) as info:
        search_maps(AllMaps(5, 6), budget, jobs=2)
    assert "across 2 workers" in str(info.value)
    assert budget < info.value.visited <= 2 * budget < NODES
