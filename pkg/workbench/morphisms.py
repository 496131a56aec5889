"""Ordered maps, premorphisms and endomorphisms of finite inverse semigroups.

A map is a value vector ``theta`` with ``theta[a]`` the image of ``a``.
Enumerations return value vectors in lexicographic order.
"""
import logging
from functools import cached_property
from itertools import permutations
from typing import Sequence

import numpy as np
from attrs import define, field, frozen

from workbench.config import SETTINGS, diagnostic_enabled
from workbench.core_semigroup import (
    InverseSemigroup,
    SemilatticeOfGroupsSpec,
    build_semilattice_of_groups,
)
from workbench.errors import ClosureViolation, DiagnosticFailure, NotSemilatticeOfGroups
from workbench.report import Report
from workbench.search import MapConstraint, search_maps

log = logging.getLogger(__name__)

Theta = tuple[int, ...]


# ---------- predicates ----------


def compose_maps(theta: Sequence[int], phi: Sequence[int]) -> Theta:
    """``x -> (x theta) phi``."""
    return tuple(phi[v] for v in theta)


def identity_map(S: InverseSemigroup) -> Theta:
    return tuple(range(S.size))


def is_ordered(S: InverseSemigroup, T: InverseSemigroup, theta: Sequence[int]) -> bool:
    th = np.asarray(theta, dtype=np.int64)
    lo, hi = np.nonzero(S.order.leq)
    return bool(T.order.leq[th[lo], th[hi]].all())


def _multiplicative_on_composable(S: InverseSemigroup, T: InverseSemigroup, th: np.ndarray) -> bool:
    idx = np.arange(S.size)
    ran = S.mul[S.inv, idx]
    dom = S.mul[idx, S.inv]
    a, b = np.nonzero(ran[:, None] == dom[None, :])
    return bool((th[S.mul[a, b]] == T.mul[th[a], th[b]]).all())


def is_premorphism(S: InverseSemigroup, theta: Sequence[int], *, T: InverseSemigroup | None = None) -> bool:
    """``(ab)theta <= (a theta)(b theta)`` for every pair.

    Self-maps read ``is_premorphism(S, theta)``; a map ``S -> T`` passes the target as
    ``T=``, unlike ``is_ordered(S, T, theta)``.
    """
    T = T or S
    th = np.asarray(theta, dtype=np.int64)
    lhs = th[S.mul]
    rhs = T.mul[th[:, None], th[None, :]]
    value = bool(T.order.leq[lhs, rhs].all())
    if diagnostic_enabled():
        other = is_ordered(S, T, theta) and _multiplicative_on_composable(S, T, th)
        if other != value:
            raise DiagnosticFailure(
                f"premorphism test disagrees with ordered+composable test on {tuple(theta)}",
                witness=tuple(theta),
            )
    return value


def is_endomorphism(S: InverseSemigroup, theta: Sequence[int], *, T: InverseSemigroup | None = None) -> bool:
    T = T or S
    th = np.asarray(theta, dtype=np.int64)
    return bool((th[S.mul] == T.mul[th[:, None], th[None, :]]).all())


@define(frozen=True, slots=False)
class ElementMap:
    """A total map between two semigroups with cached predicate results."""

    source: InverseSemigroup = field(eq=False, repr=False)
    target: InverseSemigroup = field(eq=False, repr=False)
    theta: Theta = field(converter=tuple)

    def __call__(self, a: int) -> int:
        return self.theta[a]

    @cached_property
    def is_ordered(self) -> bool:
        return is_ordered(self.source, self.target, self.theta)

    @cached_property
    def is_premorphism(self) -> bool:
        return is_premorphism(self.source, self.theta, T=self.target)

    @cached_property
    def is_endomorphism(self) -> bool:
        return is_endomorphism(self.source, self.theta, T=self.target)

    @property
    def is_bijective(self) -> bool:
        return len(set(self.theta)) == self.target.size == self.source.size

    def then(self, other: "ElementMap") -> "ElementMap":
        return ElementMap(self.source, other.target, compose_maps(self.theta, other.theta))


# ---------- search constraints ----------


class _ProductConstraint(MapConstraint):
    """Conditions on ``(a, b, ab)`` become decidable once all three are assigned."""

    def __init__(self, S: InverseSemigroup, T: InverseSemigroup | None = None):
        T = T or S
        self.size = S.size
        self.values = list(range(T.size))
        self.mul = T.rows
        self.leq = T.order.rows
        self.triples: list[list[tuple[int, int, int]]] = [[] for _ in range(S.size)]
        for a in range(S.size):
            for b in range(S.size):
                c = S.rows[a][b]
                self.triples[max(a, b, c)].append((a, b, c))

    def candidates(self, k: int) -> list[int]:
        return self.values


class PremorphismConstraint(_ProductConstraint):
    def check(self, theta: list[int], k: int) -> bool:
        leq, mul = self.leq, self.mul
        return all(leq[theta[c]][mul[theta[a]][theta[b]]] for a, b, c in self.triples[k])


class EndomorphismConstraint(_ProductConstraint):
    def check(self, theta: list[int], k: int) -> bool:
        mul = self.mul
        return all(theta[c] == mul[theta[a]][theta[b]] for a, b, c in self.triples[k])


class OrderedComposableConstraint(MapConstraint):
    """Ordered and multiplicative on pairs with ``a^-1 a = b b^-1``."""

    def __init__(self, S: InverseSemigroup):
        self.size = S.size
        self.values = list(range(S.size))
        self.mul = S.rows
        self.leq = S.order.rows
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in range(S.size)]
        self.triples: list[list[tuple[int, int, int]]] = [[] for _ in range(S.size)]
        for a in range(S.size):
            for b in range(S.size):
                if S.leq(a, b):
                    self.pairs[max(a, b)].append((a, b))
                if S.ran(a) == S.dom(b):
                    c = S.product(a, b)
                    self.triples[max(a, b, c)].append((a, b, c))

    def candidates(self, k: int) -> list[int]:
        return self.values

    def check(self, theta: list[int], k: int) -> bool:
        leq, mul = self.leq, self.mul
        if not all(leq[theta[a]][theta[b]] for a, b in self.pairs[k]):
            return False
        return all(theta[c] == mul[theta[a]][theta[b]] for a, b, c in self.triples[k])


# ---------- enumeration ----------


def check_closure(maps: Sequence[Theta], label: str) -> None:
    """Raise ClosureViolation unless ``maps`` is closed under composition."""
    members = set(maps)
    for theta in maps:
        for phi in maps:
            composite = compose_maps(theta, phi)
            if composite not in members:
                raise ClosureViolation(f"{label} is not closed under composition", witness=(theta, phi))


def enumerate_premorphisms(
    S: InverseSemigroup,
    budget: int | None = None,
    jobs: int = 1,
    progress: bool = False,
) -> list[Theta]:
    """Every premorphism ``S -> S``; closure under composition is asserted."""
    found = search_maps(
        PremorphismConstraint(S),
        budget or SETTINGS.node_budget,
        jobs=jobs,
        progress=progress,
        label="premorphisms",
    )
    check_closure(found, "Prem(S)")
    log.info("premorphisms: %d of %d self-maps", len(found), S.size**S.size)
    return found


def enumerate_endomorphisms(
    S: InverseSemigroup,
    budget: int | None = None,
    jobs: int = 1,
    progress: bool = False,
) -> list[Theta]:
    return search_maps(
        EndomorphismConstraint(S),
        budget or SETTINGS.node_budget,
        jobs=jobs,
        progress=progress,
        label="endomorphisms",
    )


def enumerate_automorphisms(S: InverseSemigroup) -> list[Theta]:
    """Brute force over all permutations; kept independent of the pruned search."""
    return [p for p in permutations(range(S.size)) if is_endomorphism(S, p)]


def enumerate_ordered_composable(S: InverseSemigroup, budget: int | None = None) -> list[Theta]:
    return search_maps(OrderedComposableConstraint(S), budget or SETTINGS.node_budget, label="ordered maps")


# ---------- law reports ----------


def verify_premorphism_laws(
    S: InverseSemigroup,
    premorphisms: Sequence[Theta] | None = None,
    budget: int | None = None,
) -> Report:
    """Idempotents to idempotents, inverses, domains, and products over comparable idempotents."""
    maps = list(premorphisms) if premorphisms is not None else enumerate_premorphisms(S, budget)
    report = Report("premorphism laws")
    report.stats["premorphisms"] = len(maps)

    n = S.size
    idx = np.arange(n)
    E = np.asarray(S.idempotents, dtype=np.int64)
    dom = S.mul[idx, S.inv]
    ran = S.mul[S.inv, idx]
    comparable = S.order.leq[ran[:, None], dom[None, :]] | S.order.leq[dom[None, :], ran[:, None]]
    pa, pb = np.nonzero(comparable)

    failures: dict[str, object] = {}
    for theta in maps:
        th = np.asarray(theta, dtype=np.int64)
        if "idempotents" not in failures and not S.idempotent_mask[th[E]].all():
            failures["idempotents"] = theta
        if "inverses" not in failures and not (th[S.inv] == S.inv[th]).all():
            failures["inverses"] = theta
        if "domains" not in failures and not (th[dom] == S.mul[th, S.inv[th]]).all():
            failures["domains"] = theta
        if "comparable_products" not in failures and not (th[S.mul[pa, pb]] == S.mul[th[pa], th[pb]]).all():
            failures["comparable_products"] = theta

    report.add("idempotents", "idempotents" not in failures, failures.get("idempotents"), "e theta is idempotent")
    report.add("inverses", "inverses" not in failures, failures.get("inverses"), "(a^-1) theta = (a theta)^-1")
    report.add("domains", "domains" not in failures, failures.get("domains"), "(ss^-1) theta = s theta (s theta)^-1")
    report.add(
        "comparable_products",
        "comparable_products" not in failures,
        failures.get("comparable_products"),
        "(ab) theta = a theta b theta when a^-1a, bb^-1 are comparable",
    )

    alternative = enumerate_ordered_composable(S, budget)
    missing = sorted(set(alternative) ^ set(maps))
    report.add(
        "ordered_composable_equivalence",
        not missing,
        missing[0] if missing else None,
        "premorphisms = ordered maps multiplicative on composable pairs",
    )
    return report


def verify_morphism_inclusions(S: InverseSemigroup, budget: int | None = None, jobs: int = 1) -> Report:
    prem = enumerate_premorphisms(S, budget, jobs)
    end = enumerate_endomorphisms(S, budget, jobs)
    aut = enumerate_automorphisms(S)
    report = Report("morphism inclusions")
    report.stats.update({"premorphisms": len(prem), "endomorphisms": len(end), "automorphisms": len(aut)})

    prem_set, end_set = set(prem), set(end)
    report.add("identity_in_prem", identity_map(S) in prem_set)
    not_prem = [t for t in end if t not in prem_set]
    report.add("end_in_prem", not not_prem, not_prem[0] if not_prem else None)
    not_ordered = [t for t in prem if not is_ordered(S, S, t)]
    report.add("prem_ordered", not not_ordered, not_ordered[0] if not_ordered else None)
    not_end = [t for t in aut if t not in end_set]
    report.add("aut_in_end", not not_end, not_end[0] if not_end else None)
    if len(S.idempotents) == 1:
        report.add("group_prem_is_end", prem_set == end_set, sorted(prem_set ^ end_set)[:1] or None)
    return report


# ---------- semilattices of groups ----------


@frozen(eq=False)
class SogPremorphismData:
    lam: tuple[int, ...]
    phi: tuple[tuple[int, ...], ...]
    induced: Theta
    relinked: SemilatticeOfGroupsSpec
    report: Report


def sog_premorphism_data(spec: SemilatticeOfGroupsSpec, S: InverseSemigroup, theta: Sequence[int]) -> SogPremorphismData:
    """Split a premorphism of a semilattice of groups into ``lambda`` on ``E`` and the ``phi_e``.

    Also builds the induced map into the semilattice of groups re-linked along
    ``lambda`` and checks it is a homomorphism.
    """
    E = spec.semilattice
    layout = spec.layout
    if S.size != len(layout):
        raise NotSemilatticeOfGroups(f"{S.size} elements do not match the {len(layout)}-element layout")

    lam = []
    phi = []
    for e, G in enumerate(spec.groups):
        image = layout[theta[spec.element(e, G.identity)]]
        lam.append(image[0])
        row = []
        for g in range(G.size):
            x, h = layout[theta[spec.element(e, g)]]
            if x != image[0]:
                raise NotSemilatticeOfGroups(
                    f"theta sends G_{E.name(e)} into more than one component",
                    witness=(e, g),
                )
            row.append(h)
        phi.append(tuple(row))

    report = Report("semilattice-of-groups premorphism data")
    pairs = [(e, f) for e in range(E.size) for f in range(E.size) if E.leq(f, e)]

    bad_order = [(e, f) for e, f in pairs if not E.leq(lam[f], lam[e])]
    report.add("lambda_ordered", not bad_order, bad_order[0] if bad_order else None)

    bad_hom = []
    for e, G in enumerate(spec.groups):
        H = spec.groups[lam[e]]
        for g in range(G.size):
            for h in range(G.size):
                if phi[e][G.rows[g][h]] != H.rows[phi[e][g]][phi[e][h]]:
                    bad_hom.append((e, g, h))
    report.add("phi_homomorphisms", not bad_hom, bad_hom[0] if bad_hom else None)

    bad_square = []
    if not bad_order:
        for e, f in pairs:
            down = spec.link(lam[e], lam[f])
            across = spec.link(e, f)
            for g in range(spec.groups[e].size):
                if down[phi[e][g]] != phi[f][across[g]]:
                    bad_square.append((e, f, g))
    report.add("compatibility_square", not bad_order and not bad_square, bad_square[0] if bad_square else None)

    induced: Theta = ()
    relinked = spec
    if not bad_order:
        relinked = SemilatticeOfGroupsSpec(
            E,
            tuple(spec.groups[lam[e]] for e in range(E.size)),
            {(e, f): spec.link(lam[e], lam[f]) for e, f in pairs},
        )
        K = build_semilattice_of_groups(relinked)
        induced = tuple(relinked.element(e, phi[e][g]) for e, g in layout)
        report.add("induced_homomorphism", is_endomorphism(S, induced, T=K))
    return SogPremorphismData(tuple(lam), tuple(phi), induced, relinked, report)
