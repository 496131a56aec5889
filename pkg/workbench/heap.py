"""The heap operation ``<a, b, c> = a b^-1 c`` and the monoid of ordered maps preserving it."""
import logging
from typing import Sequence

import numpy as np
from attrs import frozen

from workbench.config import SETTINGS
from workbench.core_semigroup import InverseSemigroup, SemilatticeOfGroupsSpec, build_semilattice_of_groups
from workbench.errors import NotHeapPreserving, NotMonoid
from workbench.holomorph import (
    HolElement,
    MonHolElement,
    enumerate_holomorph,
    hol_action,
    hol_diamond,
    is_hol_element,
    mon_diamond,
    to_mon,
)
from workbench.morphisms import (
    check_closure,
    compose_maps,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    identity_map,
    is_ordered,
    is_premorphism,
)
from workbench.report import Report
from workbench.search import MapConstraint, search_maps

log = logging.getLogger(__name__)


def heap(S: InverseSemigroup, a: int, b: int, c: int) -> int:
    return S.product(S.product(a, S.inverse(b)), c)


def heap_table(S: InverseSemigroup) -> np.ndarray:
    """``table[a, b, c] = <a, b, c>``."""
    return S.mul[S.mul[:, S.inv]]


def is_heap_preserving(S: InverseSemigroup, eta: Sequence[int]) -> bool:
    H = heap_table(S)
    e = np.asarray(eta, dtype=np.int64)
    return bool((e[H] == H[e[:, None, None], e[None, :, None], e[None, None, :]]).all())


def heap_phi(S: InverseSemigroup, eta: Sequence[int]) -> tuple[int, ...]:
    """``a phi = (a eta) ((a^-1 a) eta)^-1``."""
    return tuple(S.product(eta[a], S.inverse(eta[S.ran(a)])) for a in range(S.size))


def heap_tau(S: InverseSemigroup, eta: Sequence[int]) -> tuple[int, ...]:
    return tuple(eta[e] for e in S.idempotents)


@frozen
class HeapMap:
    eta: tuple[int, ...]
    phi: tuple[int, ...]
    tau: tuple[int, ...]

    @classmethod
    def of(cls, S: InverseSemigroup, eta: Sequence[int]) -> "HeapMap":
        eta = tuple(eta)
        return cls(eta, heap_phi(S, eta), heap_tau(S, eta))

    @property
    def hol(self) -> HolElement:
        return HolElement(self.phi, self.tau)


class HeapConstraint(MapConstraint):
    """Ordered maps preserving every heap instance whose arguments and value are assigned."""

    def __init__(self, S: InverseSemigroup):
        n = S.size
        self.size = n
        self.values = list(range(n))
        self.leq = S.order.rows
        self.H = heap_table(S).tolist()
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.triples: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if self.leq[a][b]:
                    self.pairs[max(a, b)].append((a, b))
                for c in range(n):
                    d = self.H[a][b][c]
                    self.triples[max(a, b, c, d)].append((a, b, c, d))

    def candidates(self, k: int) -> list[int]:
        return self.values

    def check(self, theta: list[int], k: int) -> bool:
        leq, H = self.leq, self.H
        if not all(leq[theta[a]][theta[b]] for a, b in self.pairs[k]):
            return False
        return all(theta[d] == H[theta[a]][theta[b]][theta[c]] for a, b, c, d in self.triples[k])


def enumerate_sha(
    S: InverseSemigroup,
    budget: int | None = None,
    jobs: int = 1,
    progress: bool = False,
) -> list[tuple[int, ...]]:
    """Every ordered heap-preserving self-map; closure under composition is asserted."""
    found = search_maps(HeapConstraint(S), budget or SETTINGS.node_budget, jobs=jobs, progress=progress, label="sha")
    check_closure(found, "Sha(S)")
    log.info("heap-preserving ordered maps: %d", len(found))
    return found


def sha_embed(S: InverseSemigroup, eta: Sequence[int]) -> HolElement:
    if not is_ordered(S, S, eta):
        raise NotHeapPreserving("map is not ordered", witness=tuple(eta))
    if not is_heap_preserving(S, eta):
        raise NotHeapPreserving("map does not preserve the heap operation", witness=tuple(eta))
    return HeapMap.of(S, eta).hol


def verify_sha(S: InverseSemigroup, sha: Sequence[tuple[int, ...]] | None = None, budget: int | None = None) -> Report:
    maps = list(sha) if sha is not None else enumerate_sha(S, budget)
    report = Report("heap-preserving maps")
    report.stats["sha"] = len(maps)
    report.add("identity_member", identity_map(S) in set(maps))

    embedded = {eta: sha_embed(S, eta) for eta in maps}
    bad = [eta for eta, x in embedded.items() if not is_hol_element(S, x)]
    report.add("embeds_in_hol", not bad, bad[0] if bad else None)
    bad = [eta for eta, x in embedded.items() if not is_premorphism(S, x.alpha)]
    report.add("phi_premorphism", not bad, bad[0] if bad else None)

    bad = []
    for eta, x in embedded.items():
        for a in range(S.size):
            e = S.ran(a)
            if x.alpha[e] != S.product(eta[e], S.inverse(eta[e])):
                bad.append((eta, a))
                break
    report.add("phi_on_domains", not bad, bad[0] if bad else None, "(a^-1 a) phi = (a^-1 a) eta ((a^-1 a) eta)^-1")

    images = list(embedded.values())
    report.add("injective", len(set(images)) == len(images))

    bad = [eta for eta, x in embedded.items() if any(hol_action(S, s, x) != eta[s] for s in range(S.size))]
    report.add("action_agrees", not bad, bad[0] if bad else None, "s eta = s <| (phi, tau)")

    bad = []
    for eta1 in maps:
        for eta2 in maps:
            if embedded[compose_maps(eta1, eta2)] != hol_diamond(S, embedded[eta1], embedded[eta2]):
                bad.append((eta1, eta2))
                break
        if bad:
            break
    report.add("embedding_multiplicative", not bad, bad[0] if bad else None)

    bijective = [eta for eta in maps if len(set(eta)) == S.size]
    report.stats["bijective"] = len(bijective)
    if len(S.idempotents) == 1:
        endo = enumerate_endomorphisms(S, budget)
        aut = enumerate_automorphisms(S)
        report.add("group_sha_is_end_x_g", len(maps) == len(endo) * S.size, detail=f"{len(endo)}*{S.size}")
        report.add("group_bijective_is_hol", len(bijective) == len(aut) * S.size, detail=f"{len(aut)}*{S.size}")
    return report


def verify_sha_monoid_iso(M: InverseSemigroup, sha: Sequence[tuple[int, ...]] | None = None, budget: int | None = None) -> Report:
    """Sha(M) against ``End(M) x| M = {(alpha, m) : alpha in End(M), m m^-1 = 1 alpha}``."""
    if M.identity is None:
        raise NotMonoid("the heap isomorphism needs an inverse monoid")
    maps = list(sha) if sha is not None else enumerate_sha(M, budget)
    endo = enumerate_endomorphisms(M, budget)
    one = M.identity
    target = [MonHolElement(a, m) for a in endo for m in range(M.size) if M.dom(m) == a[one]]
    report = Report("heap monoid against End(M) x| M")
    report.stats.update({"sha": len(maps), "end_x_m": len(target)})

    image = {eta: to_mon(M, sha_embed(M, eta)) for eta in maps}
    target_set, image_set = set(target), set(image.values())
    outside = sorted(image_set - target_set, key=lambda x: (x.alpha, x.m))
    missing = sorted(target_set - image_set, key=lambda x: (x.alpha, x.m))
    report.add("image_in_end_x_m", not outside, outside[0] if outside else None)
    report.add("end_x_m_in_image", not missing, missing[0] if missing else None)
    report.add("injective", len(image_set) == len(maps))

    bad = None
    for eta1 in maps:
        for eta2 in maps:
            if image[compose_maps(eta1, eta2)] != mon_diamond(M, image[eta1], image[eta2]):
                bad = (eta1, eta2)
                break
        if bad:
            break
    report.add("multiplicative", bad is None, bad)
    return report


def verify_sog_sha(spec: SemilatticeOfGroupsSpec, S: InverseSemigroup, budget: int | None = None) -> Report:
    """For a semilattice of groups the heap-preserving part of Hol(S) is exactly ``alpha in End(S)``."""
    report = Report("heap maps of a semilattice of groups")
    report.stats["components"] = len(spec.groups)
    built = build_semilattice_of_groups(spec)
    sizes = "+".join(str(g.size) for g in spec.groups)
    report.add("matches_components", built.same_table(S), (built.size, S.size), f"groups of orders {sizes}")
    if not report.passed:
        return report
    hol = enumerate_holomorph(S, budget=budget)
    endo = set(enumerate_endomorphisms(S, budget))
    by_endo = {x for x in hol if x.alpha in endo}
    preserving = set()
    for x in hol:
        eta = tuple(hol_action(S, s, x) for s in range(S.size))
        if is_heap_preserving(S, eta):
            preserving.add(x)
    sha_image = {sha_embed(S, eta) for eta in enumerate_sha(S, budget)}
    report.stats.update({"hol": len(hol), "alpha_endomorphism": len(by_endo), "heap_preserving": len(preserving)})
    diff = sorted(preserving ^ by_endo, key=lambda x: (x.alpha, x.tau))
    report.add("heap_preserving_iff_endomorphism", not diff, diff[0] if diff else None)
    report.add("sha_image", sha_image == by_endo, detail=f"{len(sha_image)} embedded maps")
    return report
