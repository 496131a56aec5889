"""Hol(S): pairs ``(alpha, tau)`` of a premorphism and an ordered idempotent-indexed family.

``tau`` is stored as a tuple over ``S.idempotents`` (same positions), ``alpha`` as
a value vector. Two compositions live on the same set: the monoid product
``diamond`` and a partial groupoid composition. Undefined composites are
``None`` (and ``-1`` in index tables).
"""
import logging
from functools import cached_property
from multiprocessing import Pool
from typing import Sequence

import numpy as np
from attrs import define, field, frozen
from tqdm import tqdm

from workbench.config import SETTINGS, diagnostic_enabled
from workbench.core_semigroup import InverseSemigroup, find_nonassociative_triple
from workbench.errors import ClosureViolation, DiagnosticFailure, NotMonoid
from workbench.morphisms import (
    compose_maps,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    enumerate_premorphisms,
    identity_map,
)
from workbench.ordered_groupoid import end_compose, end_diamond, enumerate_end, esn_forward
from workbench.report import Report
from workbench.search import MapConstraint, search_maps

log = logging.getLogger(__name__)


@frozen
class HolElement:
    alpha: tuple[int, ...]
    tau: tuple[int, ...]


@frozen
class MonHolElement:
    alpha: tuple[int, ...]
    m: int


def is_hol_element(S: InverseSemigroup, x: HolElement) -> bool:
    E = S.idempotents
    if any(S.dom(t) != x.alpha[e] for e, t in zip(E, x.tau)):
        return False
    return all(S.leq(x.tau[i], x.tau[j]) for i, e in enumerate(E) for j, f in enumerate(E) if S.leq(e, f))


# ---------- operations ----------


def hol_identity(S: InverseSemigroup) -> HolElement:
    return HolElement(identity_map(S), tuple(S.idempotents))


def hol_diamond(S: InverseSemigroup, x: HolElement, y: HolElement) -> HolElement:
    """``(alpha beta, e -> (e tau) beta . ((e tau)^-1 (e tau)) sigma)``."""
    pos = S.idempotent_position
    M = S.rows
    psi = tuple(M[y.alpha[t]][y.tau[pos[S.ran(t)]]] for t in x.tau)
    out = HolElement(compose_maps(x.alpha, y.alpha), psi)
    if diagnostic_enabled() and not is_hol_element(S, out):
        raise DiagnosticFailure("diamond product left Hol(S)", witness=(x, y))
    return out


def hol_target(S: InverseSemigroup, x: HolElement) -> tuple[int, ...]:
    """The premorphism ``s -> ((ss^-1) tau)^-1 (s alpha) (s^-1 s) tau``."""
    pos = S.idempotent_position
    M = S.rows
    out = []
    for s in range(S.size):
        left = S.inverse(x.tau[pos[S.dom(s)]])
        right = x.tau[pos[S.ran(s)]]
        out.append(M[M[left][x.alpha[s]]][right])
    return tuple(out)


def hol_groupoid_compose(S: InverseSemigroup, x: HolElement, y: HolElement) -> HolElement | None:
    if y.alpha != hol_target(S, x):
        return None
    M = S.rows
    return HolElement(x.alpha, tuple(M[a][b] for a, b in zip(x.tau, y.tau)))


def hol_groupoid_inverse(S: InverseSemigroup, x: HolElement) -> HolElement:
    return HolElement(hol_target(S, x), tuple(S.inverse(t) for t in x.tau))


def hol_action(S: InverseSemigroup, s: int, x: HolElement) -> int:
    """``s <| (alpha, tau) = (s alpha) . (s^-1 s) tau``."""
    return S.product(x.alpha[s], x.tau[S.idempotent_position[S.ran(s)]])


# ---------- enumeration ----------


class HolTauConstraint(MapConstraint):
    """``tau`` on idempotents: ``(e tau)(e tau)^-1 = e alpha`` and order preserving."""

    def __init__(self, S: InverseSemigroup, alpha: Sequence[int]):
        E = S.idempotents
        self.size = len(E)
        self.options = [tuple(s for s in range(S.size) if S.dom(s) == alpha[e]) for e in E]
        self.leq = S.order.rows
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in E]
        for i, e in enumerate(E):
            for j, f in enumerate(E):
                if i != j and S.leq(e, f):
                    self.pairs[max(i, j)].append((i, j))

    def candidates(self, k: int) -> tuple[int, ...]:
        return self.options[k]

    def check(self, theta: list[int], k: int) -> bool:
        leq = self.leq
        return all(leq[theta[i]][theta[j]] for i, j in self.pairs[k])


def _tau_branch(args: tuple[tuple[int, ...], HolTauConstraint, int]) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    alpha, constraint, budget = args
    return alpha, search_maps(constraint, budget, label="tau")


def enumerate_holomorph(
    S: InverseSemigroup,
    premorphisms: Sequence[tuple[int, ...]] | None = None,
    budget: int | None = None,
    jobs: int = 1,
    progress: bool = False,
) -> list[HolElement]:
    """All ``(alpha, tau)``, ordered by ``alpha`` then ``tau``."""
    budget = budget or SETTINGS.node_budget
    alphas = list(premorphisms) if premorphisms is not None else enumerate_premorphisms(S, budget, jobs)
    tasks = [(alpha, HolTauConstraint(S, alpha), budget) for alpha in alphas]

    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            branches = pool.map(_tau_branch, tasks)
    else:
        branches = [_tau_branch(t) for t in tqdm(tasks, desc="hol", disable=not progress, leave=False)]

    elements = [HolElement(tuple(alpha), tau) for alpha, taus in branches for tau in taus]
    elements.sort(key=lambda x: (x.alpha, x.tau))
    log.info("Hol(S): %d elements over %d premorphisms", len(elements), len(alphas))
    return elements


@define(frozen=True, eq=False, slots=False)
class HolTables:
    """Index tables over an enumerated Hol(S); ``compose`` holds ``-1`` where undefined."""

    elements: tuple[HolElement, ...]
    diamond: np.ndarray = field(repr=False)
    compose: np.ndarray = field(repr=False)
    identity: int

    @cached_property
    def index(self) -> dict[HolElement, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)


def hol_tables(S: InverseSemigroup, elements: Sequence[HolElement]) -> HolTables:
    """Both composition tables; raises ClosureViolation if a product leaves ``elements``."""
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    diamond = np.empty((n, n), dtype=np.int64)
    compose = np.full((n, n), -1, dtype=np.int64)
    targets = [hol_target(S, x) for x in elements]
    by_alpha: dict[tuple[int, ...], list[int]] = {}
    for j, y in enumerate(elements):
        by_alpha.setdefault(y.alpha, []).append(j)

    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            product = hol_diamond(S, x, y)
            if product not in index:
                raise ClosureViolation("Hol(S) is not closed under the diamond product", witness=(i, j))
            diamond[i, j] = index[product]
        for j in by_alpha.get(targets[i], ()):
            composite = hol_groupoid_compose(S, x, elements[j])
            if composite not in index:
                raise ClosureViolation("Hol(S) is not closed under groupoid composition", witness=(i, j))
            compose[i, j] = index[composite]

    identity = index.get(hol_identity(S))
    if identity is None:
        raise ClosureViolation("identity pair missing from Hol(S)")
    return HolTables(tuple(elements), diamond, compose, identity)


def holomorph_units(tables: HolTables) -> list[int]:
    one = tables.diamond == tables.identity
    return [int(i) for i in np.flatnonzero((one & one.T).any(axis=1))]


def action_table(S: InverseSemigroup, elements: Sequence[HolElement]) -> np.ndarray:
    """``table[s, i] = s <| elements[i]``."""
    return np.array([[hol_action(S, s, x) for x in elements] for s in range(S.size)], dtype=np.int64)


# ---------- reports ----------


def verify_hol_laws(S: InverseSemigroup, tables: HolTables) -> Report:
    report = Report("holomorph laws")
    report.stats["hol"] = tables.size
    D = tables.diamond
    idx = np.arange(tables.size)
    u = tables.identity

    bad = [x for x in tables.elements if not is_hol_element(S, x)]
    report.add("elements_valid", not bad, bad[0] if bad else None)
    report.add("identity_left", bool((D[u] == idx).all()))
    report.add("identity_right", bool((D[:, u] == idx).all()))
    triple = find_nonassociative_triple(D)
    report.add("diamond_associative", triple is None, triple)

    A = action_table(S, tables.elements)
    report.add("identity_acts_trivially", bool((A[:, u] == np.arange(S.size)).all()))
    bad_action = None
    for s in range(S.size):
        hits = np.argwhere(A[s][D] != A[A[s]])
        if len(hits):
            bad_action = (s, int(hits[0][0]), int(hits[0][1]))
            break
    report.add("action_law", bad_action is None, bad_action, "s <| (x diamond y) = (s <| x) <| y")

    maxima = [e for e in S.idempotents if not any(S.leq(e, f) and e != f for f in S.idempotents)]
    above = {e: next(f for f in maxima if S.leq(e, f)) for e in S.idempotents}
    pos = S.idempotent_position
    bad_max = None
    for x in tables.elements:
        rebuilt = tuple(S.product(x.alpha[e], x.tau[pos[above[e]]]) for e in S.idempotents)
        if rebuilt != x.tau:
            bad_max = x
            break
    report.add("tau_from_maxima", bad_max is None, bad_max, f"{len(maxima)} maximal idempotents")
    return report


def verify_interchange(tables: HolTables, chunk: int = 256) -> Report:
    """``(x.y) diamond (z.w) = (x diamond z).(y diamond w)`` whenever ``x.y`` and ``z.w`` exist."""
    report = Report("interchange law")
    D, C = tables.diamond, tables.compose
    first, second = np.nonzero(C >= 0)
    composite = C[first, second]
    report.stats["composable_pairs"] = len(first)
    report.stats["quadruples"] = len(first) ** 2

    witness = None
    for start in range(0, len(first), chunk):
        a, b = first[start : start + chunk, None], second[start : start + chunk, None]
        lhs = D[composite[start : start + chunk, None], composite[None, :]]
        rhs = C[D[a, first[None, :]], D[b, second[None, :]]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j = bad[0]
            witness = [int(first[start + i]), int(second[start + i]), int(first[j]), int(second[j])]
            break
    report.add("interchange", witness is None, witness)
    return report


def verify_group_holomorph(G: InverseSemigroup, tables: HolTables, budget: int | None = None) -> Report:
    """Hol(G) against End(G) x| G, and its units against an independent Aut(G) x| G count."""
    report = Report("group holomorph")
    if len(G.idempotents) != 1:
        report.add("is_group", False, detail="more than one idempotent")
        return report
    endo = enumerate_endomorphisms(G, budget)
    aut = enumerate_automorphisms(G)
    units = holomorph_units(tables)
    report.stats.update(
        {
            "hol": tables.size,
            "endomorphisms": len(endo),
            "automorphisms": len(aut),
            "units": len(units),
            "aut_times_order": len(aut) * G.size,
        }
    )

    pairs = [(x.alpha, x.tau[0]) for x in tables.elements]
    expected = {(a, g) for a in endo for g in range(G.size)}
    report.add("bijection_onto_end_x_g", len(set(pairs)) == len(pairs) and set(pairs) == expected)

    index = {p: i for i, p in enumerate(pairs)}
    bad = None
    for i, (sigma, g) in enumerate(pairs):
        for j, (rho, h) in enumerate(pairs):
            semidirect = (compose_maps(sigma, rho), G.product(rho[g], h))
            if index.get(semidirect) != tables.diamond[i, j]:
                bad = (i, j)
                break
        if bad:
            break
    report.add("semidirect_product", bad is None, bad, "(s,g)(r,h) = (sr, (g r) h)")

    report.add("units_count", len(units) == len(aut) * G.size, detail=f"{len(units)} vs {len(aut)}*{G.size}")
    bijective = {i for i, x in enumerate(tables.elements) if len(set(x.alpha)) == G.size}
    report.add("bijective_pairs_are_units", bijective == set(units))
    return report


def mon_hol(M: InverseSemigroup, premorphisms: Sequence[tuple[int, ...]] | None = None) -> list[MonHolElement]:
    if M.identity is None:
        raise NotMonoid("mon_hol needs an inverse monoid")
    alphas = premorphisms if premorphisms is not None else enumerate_premorphisms(M)
    one = M.identity
    return [MonHolElement(tuple(a), m) for a in alphas for m in range(M.size) if M.dom(m) == a[one]]


def mon_diamond(M: InverseSemigroup, x: MonHolElement, y: MonHolElement) -> MonHolElement:
    """``(alpha, m) diamond (beta, n) = (alpha beta, (m beta) n)``."""
    return MonHolElement(compose_maps(x.alpha, y.alpha), M.product(y.alpha[x.m], y.m))


def to_mon(M: InverseSemigroup, x: HolElement) -> MonHolElement:
    if M.identity is None:
        raise NotMonoid("not an inverse monoid")
    return MonHolElement(x.alpha, x.tau[M.idempotent_position[M.identity]])


def from_mon(M: InverseSemigroup, x: MonHolElement) -> HolElement:
    """``e tau = (e alpha) m``."""
    return HolElement(x.alpha, tuple(M.product(x.alpha[e], x.m) for e in M.idempotents))


def verify_mon_hol(M: InverseSemigroup, tables: HolTables) -> Report:
    if M.identity is None:
        raise NotMonoid("verify_mon_hol needs an inverse monoid")
    report = Report("monoid form of Hol(M)")
    alphas = sorted({x.alpha for x in tables.elements})
    compressed = mon_hol(M, alphas)
    report.stats.update({"hol": tables.size, "mon_hol": len(compressed)})

    image = [to_mon(M, x) for x in tables.elements]
    report.add("same_size", len(compressed) == tables.size)
    report.add("bijection", set(image) == set(compressed) and len(set(image)) == len(image))
    back = [x for x, m in zip(tables.elements, image) if from_mon(M, m) != x]
    report.add("round_trip", not back, back[0] if back else None, "e tau = (e alpha) m")

    index = {m: i for i, m in enumerate(compressed)}
    n = len(compressed)
    table = np.empty((n, n), dtype=np.int64)
    bad = None
    for i, x in enumerate(compressed):
        for j, y in enumerate(compressed):
            product = mon_diamond(M, x, y)
            if product not in index:
                raise ClosureViolation("monoid form is not closed", witness=(x, y))
            table[i, j] = index[product]
    for i, x in enumerate(tables.elements):
        for j, y in enumerate(tables.elements):
            if image[tables.diamond[i, j]] != mon_diamond(M, image[i], image[j]):
                bad = (i, j)
                break
        if bad:
            break
    report.add("diamond_agrees", bad is None, bad)
    triple = find_nonassociative_triple(table)
    report.add("mon_diamond_associative", triple is None, triple)
    return report


def verify_hol_matches_end(S: InverseSemigroup, tables: HolTables, budget: int | None = None) -> Report:
    """Hol(S) is END of the inductive groupoid of ``S``, with the same products."""
    report = Report("Hol(S) against END(ESN(S))")
    G = esn_forward(S)
    end = enumerate_end(G, budget=budget)
    as_pairs = [(x.alpha, x.tau) for x in tables.elements]
    report.stats.update({"hol": tables.size, "end": len(end)})
    report.add("same_elements", sorted(as_pairs) == sorted(end))

    bad_diamond = bad_compose = None
    for i, x in enumerate(as_pairs):
        for j, y in enumerate(as_pairs):
            if bad_diamond is None and end_diamond(G, x, y) != as_pairs[tables.diamond[i, j]]:
                bad_diamond = (i, j)
            c = tables.compose[i, j]
            expected = as_pairs[c] if c >= 0 else None
            if bad_compose is None and end_compose(G, x, y) != expected:
                bad_compose = (i, j)
    report.add("diamond_agrees", bad_diamond is None, bad_diamond)
    report.add("compose_agrees", bad_compose is None, bad_compose)
    return report
