"""Depth-first search over total maps ``{0..n-1} -> values`` with pruning.

Positions are assigned in index order and candidate values in increasing
order, so complete assignments come out in lexicographic order of their
value vectors. A constraint only has to judge the conditions that become
decidable once position ``k`` is assigned.
"""
import logging
from multiprocessing import Pool, Value
from typing import Sequence

from tqdm import tqdm

from workbench.errors import SearchBudgetExceeded

SYNC_EVERY = 256

log = logging.getLogger(__name__)

# node counter shared by the workers of one parallel search
_shared_visited = None


def _init_worker(counter) -> None:
    global _shared_visited
    _shared_visited = counter


class MapConstraint:
    """Base class; subclasses must be module-level so worker pools can pickle them."""

    size: int = 0

    def candidates(self, k: int) -> Sequence[int]:
        raise NotImplementedError

    def check(self, theta: list[int], k: int) -> bool:
        raise NotImplementedError


class _State:
    __slots__ = ("visited", "budget", "results", "shared", "sync_every", "synced")

    def __init__(self, budget: int, shared=None, sync_every: int = 1):
        self.visited = 0
        self.budget = budget
        self.results: list[tuple[int, ...]] = []
        self.shared = shared
        self.sync_every = sync_every
        self.synced = 0

    def sync(self) -> int:
        """Push unsynced nodes to the shared counter and return the total over all workers."""
        with self.shared.get_lock():
            self.shared.value += self.visited - self.synced
            self.synced = self.visited
            return self.shared.value

    def over_budget(self) -> bool:
        if self.visited > self.budget:
            return True
        if self.shared is None or self.visited - self.synced < self.sync_every:
            return False
        return self.sync() > self.budget


def _dfs(constraint: MapConstraint, theta: list[int], k: int, state: _State) -> None:
    if k == constraint.size:
        state.results.append(tuple(theta))
        return
    for value in constraint.candidates(k):
        state.visited += 1
        if state.over_budget():
            raise SearchBudgetExceeded(
                f"node budget {state.budget} exhausted at depth {k}",
                visited=state.visited,
                found=len(state.results),
            )
        theta[k] = value
        if constraint.check(theta, k):
            _dfs(constraint, theta, k + 1, state)
    theta[k] = -1


def _run_branch(args: tuple[MapConstraint, int, int, int]) -> tuple[list[tuple[int, ...]], int]:
    constraint, first, budget, sync_every = args
    state = _State(budget, _shared_visited, sync_every)
    theta = [-1] * constraint.size
    theta[0] = first
    state.visited = 1
    try:
        if constraint.check(theta, 0):
            _dfs(constraint, theta, 1, state)
    finally:
        if state.shared is not None:
            state.sync()
    return state.results, state.visited


def search_maps(
    constraint: MapConstraint,
    budget: int,
    jobs: int = 1,
    progress: bool = False,
    label: str = "search",
) -> list[tuple[int, ...]]:
    """Return every complete assignment accepted by ``constraint``.

    Parameters
    ----------
    constraint : MapConstraint
        Supplies candidate values per position and the incremental check.
    budget : int
        Maximum number of visited partial assignments (summed over branches).
    jobs : int
        Worker processes; the first position is split across them. Workers share one
        node counter, synced every few hundred nodes, so the whole search stops
        shortly after the budget is spent.
    progress : bool
        Show a tqdm bar over first-level branches.
    """
    if constraint.size == 0:
        return [()]

    firsts = list(constraint.candidates(0))
    results: list[tuple[int, ...]] = []
    visited = 0

    if jobs > 1 and len(firsts) > 1:
        counter = Value("q", 0)
        sync_every = max(1, min(SYNC_EVERY, budget // (4 * jobs)))
        try:
            with Pool(jobs, initializer=_init_worker, initargs=(counter,)) as pool:
                branches = pool.map(_run_branch, [(constraint, v, budget, sync_every) for v in firsts])
        except SearchBudgetExceeded as e:
            raise SearchBudgetExceeded(
                f"node budget {budget} exhausted across {jobs} workers",
                visited=counter.value,
                found=e.found,
            ) from e
        for found, seen in branches:
            results.extend(found)
            visited += seen
        if visited > budget:
            raise SearchBudgetExceeded(
                f"node budget {budget} exhausted across {jobs} workers",
                visited=visited,
                found=len(results),
            )
    else:
        for first in tqdm(firsts, desc=label, disable=not progress, leave=False):
            try:
                found, seen = _run_branch((constraint, first, budget - visited, 1))
            except SearchBudgetExceeded as e:
                raise SearchBudgetExceeded(
                    f"node budget {budget} exhausted",
                    visited=visited + e.visited,
                    found=len(results) + e.found,
                ) from e
            results.extend(found)
            visited += seen

    results.sort()
    log.debug("%s: %d solutions, %d nodes visited", label, len(results), visited)
    return results
