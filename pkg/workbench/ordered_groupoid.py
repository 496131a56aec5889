"""Finite ordered groupoids, the ESN conversions, flows and the monoid END(A).

Arrows are dense indices. Composition is written left to right: ``compose(g, h)``
is defined iff ``ran(g) == dom(h)``. Anything undefined (a composite, a meet,
a pseudoproduct) comes back as ``None``.
"""
import logging
from functools import cached_property
from itertools import product
from math import prod
from typing import Sequence

import numpy as np
from attrs import define, field, frozen
from cachetools import LRUCache, cachedmethod

from workbench.config import SETTINGS
from workbench.core_semigroup import InverseSemigroup, build_from_table, find_identity, find_nonassociative_triple, glb
from workbench.errors import ClosureViolation, NotBelowDomain, NotInductive, SizeCapExceeded
from workbench.report import Report
from workbench.search import MapConstraint, search_maps

log = logging.getLogger(__name__)

Flow = tuple[int, ...]  # arrow chosen for each identity, in the order of ``identities``


@define(frozen=True, eq=False, slots=False)
class OrderedGroupoid:
    dom: tuple[int, ...]
    ran: tuple[int, ...]
    inv: tuple[int, ...]
    composites: dict[tuple[int, int], int] = field(repr=False)
    leq: np.ndarray = field(repr=False)
    names: tuple[str, ...] = ()
    _restrictions: LRUCache = field(init=False, repr=False, factory=lambda: LRUCache(maxsize=1 << 16))

    def __attrs_post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(len(self.dom))))

    @property
    def size(self) -> int:
        return len(self.dom)

    @cached_property
    def order_rows(self) -> list[list[bool]]:
        return np.asarray(self.leq, dtype=bool).tolist()

    @cached_property
    def identities(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.size) if self.dom[a] == a == self.ran[a])

    @cached_property
    def identity_position(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.identities)}

    @cached_property
    def stars(self) -> dict[int, tuple[int, ...]]:
        """Arrows leaving each identity."""
        out: dict[int, list[int]] = {x: [] for x in self.identities}
        for a in range(self.size):
            out.setdefault(self.dom[a], []).append(a)
        return {x: tuple(v) for x, v in out.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(a for a in self.stars.get(x, ()) if self.ran[a] == y)

    def is_identity(self, a: int) -> bool:
        return self.dom[a] == a == self.ran[a]

    def compose(self, g: int, h: int) -> int | None:
        return self.composites.get((g, h))

    def leq_(self, a: int, b: int) -> bool:
        return self.order_rows[a][b]

    @cachedmethod(lambda self: self._restrictions)
    def restriction_candidates(self, x: int, g: int) -> tuple[int, ...]:
        return tuple(a for a in self.stars.get(x, ()) if self.order_rows[a][g])


@frozen(eq=False)
class FiniteMonoid:
    labels: tuple
    table: np.ndarray = field(repr=False)
    identity: int

    @property
    def size(self) -> int:
        return len(self.labels)


def make_groupoid(
    dom: Sequence[int],
    ran: Sequence[int],
    inv: Sequence[int],
    compose: dict[tuple[int, int], int] | Sequence[Sequence[int]],
    leq: np.ndarray | Sequence[Sequence[bool]] | None = None,
    leq_pairs: Sequence[Sequence[int]] = (),
    names: Sequence[str] | None = None,
) -> OrderedGroupoid:
    """Wrap raw tables without validating them.

    ``compose`` is a dict or a list of ``(g, h, gh)`` triples. The order is either a
    boolean table ``leq`` or ``(lower, upper)`` pairs, reflexive pairs implied.
    """
    n = len(dom)
    if isinstance(compose, dict):
        composites = {(int(g), int(h)): int(v) for (g, h), v in compose.items()}
    else:
        composites = {(int(g), int(h)): int(v) for g, h, v in compose}
    if leq is not None:
        order = np.array(leq, dtype=bool)
    else:
        order = np.eye(n, dtype=bool)
        for lo, hi in leq_pairs:
            order[lo, hi] = True
    order.setflags(write=False)
    return OrderedGroupoid(
        tuple(int(v) for v in dom),
        tuple(int(v) for v in ran),
        tuple(int(v) for v in inv),
        composites,
        order,
        tuple(names) if names else (),
    )


# ---------- validation ----------


def verify_ordered_groupoid(G: OrderedGroupoid) -> Report:
    """Groupoid axioms, the partial order, OG1-OG3 and the dual corestriction axiom."""
    report = Report(f"ordered groupoid ({G.size} arrows, {len(G.identities)} identities)")
    report.stats["arrows"] = G.size
    report.stats["identities"] = len(G.identities)
    n = G.size
    L = G.order_rows
    ids = set(G.identities)

    def first(items):
        return items[0] if items else None

    bad = [a for a in range(n) if G.dom[a] not in ids or G.ran[a] not in ids]
    report.add("dom_ran_are_identities", not bad, first(bad))

    bad = [x for x in G.identities if G.inv[x] != x or G.compose(x, x) != x]
    report.add("identities", not bad, first(bad))

    bad = [(g, h) for g in range(n) for h in range(n) if (G.compose(g, h) is not None) != (G.ran[g] == G.dom[h])]
    report.add("composition_domain", not bad, first(bad))

    bad = [
        (g, h)
        for (g, h), v in G.composites.items()
        if G.ran[g] == G.dom[h] and (G.dom[v] != G.dom[g] or G.ran[v] != G.ran[h])
    ]
    report.add("composite_endpoints", not bad, first(bad))

    bad = []
    for (g, h), gh in G.composites.items():
        for k in G.stars.get(G.ran[h], ()):
            left = G.compose(gh, k)
            hk = G.compose(h, k)
            right = G.compose(g, hk) if hk is not None else None
            if left != right:
                bad.append((g, h, k))
                break
        if bad:
            break
    report.add("associative", not bad, first(bad))

    bad = [g for g in range(n) if G.compose(G.dom[g], g) != g or G.compose(g, G.ran[g]) != g]
    report.add("units", not bad, first(bad))

    bad = [g for g in range(n) if G.compose(g, G.inv[g]) != G.dom[g] or G.compose(G.inv[g], g) != G.ran[g]]
    report.add("inverses", not bad, first(bad))

    # --- partial order ---
    M = np.asarray(G.leq, dtype=bool)
    report.add("reflexive", bool(M.diagonal().all()))
    anti = np.argwhere(M & M.T & ~np.eye(n, dtype=bool))
    report.add("antisymmetric", not len(anti), anti[0].tolist() if len(anti) else None)
    Mi = M.astype(np.int64)
    trans = np.argwhere(((Mi @ Mi) > 0) & ~M)
    report.add("transitive", not len(trans), trans[0].tolist() if len(trans) else None)

    pairs = [(a, b) for a in range(n) for b in range(n) if L[a][b]]
    bad = [(a, b) for a, b in pairs if not L[G.inv[a]][G.inv[b]]]
    report.add("OG1", not bad, first(bad), "g <= h implies g^-1 <= h^-1")

    bad = []
    for g1, g2 in pairs:
        for h1, h2 in pairs:
            c1, c2 = G.compose(g1, h1), G.compose(g2, h2)
            if c1 is not None and c2 is not None and not L[c1][c2]:
                bad.append((g1, g2, h1, h2))
                break
        if bad:
            break
    report.add("OG2", not bad, first(bad), "order is compatible with composition")

    bad = []
    for g in range(n):
        for x in G.identities:
            if L[x][G.dom[g]]:
                found = [a for a in G.stars.get(x, ()) if L[a][g]]
                if len(found) != 1:
                    bad.append((x, g, len(found)))
    report.add("OG3", not bad, first(bad), "unique restriction (x|g) for x <= dom g")

    bad = []
    for g in range(n):
        for y in G.identities:
            if L[y][G.ran[g]]:
                found = [G.inv[a] for a in G.stars.get(y, ()) if L[a][G.inv[g]]]
                if len(found) != 1 or G.ran[found[0]] != y or not L[found[0]][g]:
                    bad.append((g, y))
    report.add("OG3*", not bad, first(bad), "corestriction (g|y) = (y|g^-1)^-1")

    bad = [(a, x) for x in G.identities for a in range(n) if L[a][x] and not G.is_identity(a)]
    report.add("identities_down_closed", not bad, first(bad))
    return report


# ---------- restriction, meets, pseudoproduct ----------


def restriction(G: OrderedGroupoid, x: int, g: int) -> int:
    """The arrow ``(x|g)``: domain ``x`` and below ``g``."""
    if not G.is_identity(x) or not G.leq_(x, G.dom[g]):
        raise NotBelowDomain(f"{G.names[x]} is not an identity below dom({G.names[g]})", witness=(x, g))
    found = G.restriction_candidates(x, g)
    if not found:
        raise NotBelowDomain(f"no restriction of {G.names[g]} to {G.names[x]}", witness=(x, g))
    return found[0]


def corestriction(G: OrderedGroupoid, g: int, y: int) -> int:
    """The arrow ``(g|y)`` with range ``y``, as ``(y|g^-1)^-1``."""
    return G.inv[restriction(G, y, G.inv[g])]


def meet_identities(G: OrderedGroupoid, x: int, y: int) -> int | None:
    return glb(G.order_rows, x, y, among=G.identities)


def missing_meet(G: OrderedGroupoid) -> tuple[int, int] | None:
    for i, x in enumerate(G.identities):
        for y in G.identities[i + 1 :]:
            if meet_identities(G, x, y) is None:
                return x, y
    return None


def missing_composite(G: OrderedGroupoid) -> tuple[int, int] | None:
    """First composable pair ``(g, h)`` with no entry in the composition table."""
    for g in range(G.size):
        for h in G.stars.get(G.ran[g], ()):
            if (g, h) not in G.composites:
                return g, h
    return None


def is_inductive(G: OrderedGroupoid) -> bool:
    return missing_meet(G) is None


def pseudoproduct(G: OrderedGroupoid, a: int, b: int) -> int | None:
    """``(a|l)(l|b)`` with ``l`` the meet of ``ran a`` and ``dom b``."""
    ell = meet_identities(G, G.ran[a], G.dom[b])
    if ell is None:
        return None
    return G.compose(corestriction(G, a, ell), restriction(G, ell, b))


def check_pseudoproduct_associative(G: OrderedGroupoid) -> Report:
    report = Report("pseudoproduct associativity")
    witness = None
    n = G.size
    for a in range(n):
        for b in range(n):
            ab = pseudoproduct(G, a, b)
            for c in range(n):
                bc = pseudoproduct(G, b, c)
                left = pseudoproduct(G, ab, c) if ab is not None else None
                right = pseudoproduct(G, a, bc) if bc is not None else None
                if left != right:
                    witness = (a, b, c)
                    break
            if witness:
                break
        if witness:
            break
    report.add("associative", witness is None, witness)
    return report


# ---------- ESN ----------


def esn_forward(S: InverseSemigroup) -> OrderedGroupoid:
    """Restricted product: ``a . b`` defined iff ``a^-1 a = b b^-1``; order is the natural order."""
    n = S.size
    dom = tuple(S.dom(a) for a in range(n))
    ran = tuple(S.ran(a) for a in range(n))
    composites = {(a, b): S.product(a, b) for a in range(n) for b in range(n) if ran[a] == dom[b]}
    return OrderedGroupoid(dom, ran, tuple(S.inverses), composites, S.order.leq, S.names)


def esn_back(G: OrderedGroupoid) -> InverseSemigroup:
    """Inverse semigroup of an inductive groupoid under the pseudoproduct."""
    pair = missing_meet(G)
    if pair is not None:
        x, y = pair
        raise NotInductive(f"identities {G.names[x]} and {G.names[y]} have no meet", witness=pair)
    table = [[pseudoproduct(G, a, b) for b in range(G.size)] for a in range(G.size)]
    return build_from_table(G.names, table)


# ---------- builders ----------


def build_connected_groupoid(k: int, group: InverseSemigroup) -> OrderedGroupoid:
    """``k`` objects with local group ``group``: arrows ``(x, g, y)``, trivial order."""
    m = group.size
    e = group.identity if group.identity is not None else 0

    def index(x: int, g: int, y: int) -> int:
        return (x * m + g) * k + y

    dom, ran, inv, names = [], [], [], []
    for x in range(k):
        for g in range(m):
            for y in range(k):
                dom.append(index(x, e, x))
                ran.append(index(y, e, y))
                inv.append(index(y, group.inverse(g), x))
                names.append(f"{x}:{group.name(g)}:{y}")
    composites = {
        (index(x, g, y), index(y, h, z)): index(x, group.product(g, h), z)
        for x in range(k)
        for y in range(k)
        for z in range(k)
        for g in range(m)
        for h in range(m)
    }
    n = k * m * k
    return OrderedGroupoid(tuple(dom), tuple(ran), tuple(inv), composites, np.eye(n, dtype=bool), tuple(names))


def disjoint_union(G: OrderedGroupoid, H: OrderedGroupoid) -> OrderedGroupoid:
    off = G.size
    n = off + H.size
    leq = np.zeros((n, n), dtype=bool)
    leq[:off, :off] = G.leq
    leq[off:, off:] = H.leq
    composites = dict(G.composites)
    composites.update({(g + off, h + off): v + off for (g, h), v in H.composites.items()})
    return OrderedGroupoid(
        G.dom + tuple(v + off for v in H.dom),
        G.ran + tuple(v + off for v in H.ran),
        G.inv + tuple(v + off for v in H.inv),
        composites,
        leq,
        tuple(f"L{a}" for a in G.names) + tuple(f"R{a}" for a in H.names),
    )


def connected_components(G: OrderedGroupoid) -> list[tuple[int, ...]]:
    """Identities grouped by connecting arrows, each group sorted, groups by first member."""
    parent = {x: x for x in G.identities}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(G.size):
        rx, ry = find(G.dom[a]), find(G.ran[a])
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in G.identities:
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(sorted(v)) for v in groups.values())


def component_subgroupoid(G: OrderedGroupoid, objects: Sequence[int]) -> tuple[OrderedGroupoid, tuple[int, ...]]:
    """Full subgroupoid on ``objects`` and the original index of each of its arrows."""
    keep = [a for a in range(G.size) if G.dom[a] in objects]
    new = {a: i for i, a in enumerate(keep)}
    composites = {(new[g], new[h]): new[v] for (g, h), v in G.composites.items() if g in new}
    leq = np.asarray(G.leq, dtype=bool)[np.ix_(keep, keep)]
    sub = OrderedGroupoid(
        tuple(new[G.dom[a]] for a in keep),
        tuple(new[G.ran[a]] for a in keep),
        tuple(new[G.inv[a]] for a in keep),
        composites,
        leq,
        tuple(G.names[a] for a in keep),
    )
    return sub, tuple(keep)


# ---------- flows ----------


def flow_compose(G: OrderedGroupoid, tau: Flow, sigma: Flow) -> Flow:
    """``x -> (x tau) . (ran(x tau)) sigma``."""
    pos = G.identity_position
    out = []
    for a in tau:
        out.append(G.composites[(a, sigma[pos[G.ran[a]]])])
    return tuple(out)


def identity_flow(G: OrderedGroupoid) -> Flow:
    return tuple(G.identities)


def enumerate_flows(G: OrderedGroupoid, size_cap: int | None = None) -> list[Flow]:
    cap = size_cap or SETTINGS.size_cap
    stars = [G.stars[x] for x in G.identities]
    count = prod(len(s) for s in stars)
    if count > cap:
        raise SizeCapExceeded(f"{count} flows exceed the size cap {cap}", witness=count)
    return sorted(product(*stars))


def monoid_table(G: OrderedGroupoid, flows: Sequence[Flow]) -> FiniteMonoid:
    index = {f: i for i, f in enumerate(flows)}
    table = np.empty((len(flows), len(flows)), dtype=np.int64)
    for i, tau in enumerate(flows):
        for j, sigma in enumerate(flows):
            composite = flow_compose(G, tau, sigma)
            if composite not in index:
                raise ClosureViolation("flows are not closed under composition", witness=(tau, sigma))
            table[i, j] = index[composite]
    return FiniteMonoid(tuple(flows), table, index[identity_flow(G)])


def ordered_flows(G: OrderedGroupoid, flows: Sequence[Flow] | None = None) -> list[Flow]:
    """Flows with ``x <= y`` implying ``x tau <= y tau``; closure is asserted."""
    flows = enumerate_flows(G) if flows is None else flows
    L = G.order_rows
    ids = G.identities
    pairs = [(i, j) for i, x in enumerate(ids) for j, y in enumerate(ids) if L[x][y]]
    kept = [t for t in flows if all(L[t[i]][t[j]] for i, j in pairs)]
    members = set(kept)
    for tau in kept:
        for sigma in kept:
            if flow_compose(G, tau, sigma) not in members:
                raise ClosureViolation("ordered flows are not closed under composition", witness=(tau, sigma))
    return kept


# ---------- wreath products and isomorphisms ----------


def wreath_product(local: InverseSemigroup | Sequence[Sequence[int]], k: int) -> FiniteMonoid:
    """``L wr T(k)``: pairs ``(lam, theta)`` with ``(l1,t1)(l2,t2) = (x -> l1(x) l2(x t1), t1 t2)``."""
    rows = local.rows if isinstance(local, InverseSemigroup) else [list(r) for r in local]
    m = len(rows)
    unit = find_identity(np.asarray(rows))
    if unit is None:
        raise ValueError("local structure has no identity")
    lambdas = list(product(range(m), repeat=k))
    thetas = list(product(range(k), repeat=k))
    elements = [(lam, theta) for lam in lambdas for theta in thetas]
    index = {e: i for i, e in enumerate(elements)}
    table = np.empty((len(elements), len(elements)), dtype=np.int64)
    for i, (l1, t1) in enumerate(elements):
        for j, (l2, t2) in enumerate(elements):
            lam = tuple(rows[l1[x]][l2[t1[x]]] for x in range(k))
            theta = tuple(t2[t1[x]] for x in range(k))
            table[i, j] = index[(lam, theta)]
    return FiniteMonoid(tuple(elements), table, index[(tuple([unit] * k), tuple(range(k)))])


class MonoidIsoConstraint(MapConstraint):
    def __init__(self, A: FiniteMonoid, B: FiniteMonoid):
        self.size = A.size
        self.values = list(range(B.size))
        self.b_rows = B.table.tolist()
        a_rows = A.table.tolist()
        self.triples: list[list[tuple[int, int, int]]] = [[] for _ in range(A.size)]
        for a in range(A.size):
            for b in range(A.size):
                c = a_rows[a][b]
                self.triples[max(a, b, c)].append((a, b, c))

    def candidates(self, k: int) -> list[int]:
        return self.values

    def check(self, theta: list[int], k: int) -> bool:
        if theta[k] in theta[:k]:
            return False
        rows = self.b_rows
        return all(theta[c] == rows[theta[a]][theta[b]] for a, b, c in self.triples[k])


def is_monoid_isomorphism(A: FiniteMonoid, B: FiniteMonoid, phi: Sequence[int]) -> bool:
    if A.size != B.size or len(set(phi)) != A.size:
        return False
    ph = np.asarray(phi, dtype=np.int64)
    return bool((ph[A.table] == B.table[ph[:, None], ph[None, :]]).all()) and phi[A.identity] == B.identity


def find_monoid_isomorphism(A: FiniteMonoid, B: FiniteMonoid, budget: int | None = None) -> tuple[int, ...] | None:
    """Backtracking search; returns the lexicographically first isomorphism or None."""
    if A.size != B.size:
        return None
    found = search_maps(MonoidIsoConstraint(A, B), budget or SETTINGS.node_budget, label="isomorphism")
    return found[0] if found else None


def direct_product_monoid(factors: Sequence[FiniteMonoid]) -> FiniteMonoid:
    elements = list(product(*[range(f.size) for f in factors]))
    index = {e: i for i, e in enumerate(elements)}
    tables = [f.table.tolist() for f in factors]
    table = np.empty((len(elements), len(elements)), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[tuple(t[a][b] for t, a, b in zip(tables, x, y))]
    return FiniteMonoid(tuple(elements), table, index[tuple(f.identity for f in factors)])


def _explicit_wreath_map(G: OrderedGroupoid, flows: Sequence[Flow], wreath: FiniteMonoid) -> tuple[int, ...] | None:
    """Flow ``tau -> (x -> c_x . x tau . c_{x theta}^-1, theta)`` with connecting arrows from the lowest object."""
    objects = G.identities
    base = objects[0]
    local = G.hom(base, base)
    local_pos = {a: i for i, a in enumerate(local)}
    connect = {}
    for x in objects:
        arrows = G.hom(base, x)
        if not arrows:
            return None
        connect[x] = base if x == base else arrows[0]
    index = {e: i for i, e in enumerate(wreath.labels)}
    pos = G.identity_position
    image = []
    for tau in flows:
        lam, theta = [], []
        for x, a in zip(objects, tau):
            y = G.ran[a]
            arrow = G.compose(G.compose(connect[x], a), G.inv[connect[y]])
            lam.append(local_pos[arrow])
            theta.append(pos[y])
        image.append(index[(tuple(lam), tuple(theta))])
    return tuple(image)


def check_flow_monoid_structure(G: OrderedGroupoid, budget: int | None = None) -> Report:
    """Flow monoid of each component against ``L wr T(X)``, and of ``G`` against their product."""
    report = Report("flow monoid structure")
    components = connected_components(G)
    report.stats["components"] = len(components)

    flows = enumerate_flows(G)
    whole = monoid_table(G, flows)
    report.stats["flows"] = len(flows)
    assoc = find_nonassociative_triple(whole.table)
    report.add("associative", assoc is None, assoc)
    idx = np.arange(whole.size)
    unit_ok = (whole.table[whole.identity] == idx).all() and (whole.table[:, whole.identity] == idx).all()
    report.add("identity_flow_is_unit", bool(unit_ok))

    parts = []
    for c, objects in enumerate(components):
        sub, keep = component_subgroupoid(G, objects)
        sub_flows = enumerate_flows(sub)
        phi_c = monoid_table(sub, sub_flows)
        parts.append((objects, {a: i for i, a in enumerate(keep)}, phi_c))
        base = sub.identities[0]
        local_rows = [
            [sub.hom(base, base).index(sub.compose(g, h)) for h in sub.hom(base, base)] for g in sub.hom(base, base)
        ]
        wreath = wreath_product(local_rows, len(sub.identities))
        report.stats[f"component_{c}_objects"] = len(sub.identities)
        report.stats[f"component_{c}_local_group"] = len(local_rows)
        report.stats[f"component_{c}_flows"] = len(sub_flows)

        phi = _explicit_wreath_map(sub, sub_flows, wreath)
        method = "explicit"
        if phi is None or not is_monoid_isomorphism(phi_c, wreath, phi):
            method = "search"
            phi = find_monoid_isomorphism(phi_c, wreath, budget)
        report.add(
            f"component_{c}_wreath_iso",
            phi is not None,
            None if phi is not None else objects,
            detail=f"{method}; |flows| = {len(sub_flows)}, |wreath| = {wreath.size}",
        )

    product_monoid = direct_product_monoid([m for _, _, m in parts])
    product_index = {e: i for i, e in enumerate(product_monoid.labels)}
    flow_index = [{f: i for i, f in enumerate(m.labels)} for _, _, m in parts]
    pos = G.identity_position
    split = []
    for tau in flows:
        coords = []
        for (objects, renumber, _), index in zip(parts, flow_index):
            restricted = tuple(renumber[tau[pos[x]]] for x in objects)
            coords.append(index[restricted])
        split.append(product_index[tuple(coords)])
    report.add("product_of_components", is_monoid_isomorphism(whole, product_monoid, split))
    return report


# ---------- END(A) ----------


class OrderedFunctorConstraint(MapConstraint):
    """Arrow maps preserving composition and order."""

    def __init__(self, G: OrderedGroupoid):
        self.size = G.size
        self.values = list(range(G.size))
        self.composites = G.composites
        self.leq = G.order_rows
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in range(G.size)]
        self.triples: list[list[tuple[int, int, int]]] = [[] for _ in range(G.size)]
        for a in range(G.size):
            for b in range(G.size):
                if self.leq[a][b]:
                    self.pairs[max(a, b)].append((a, b))
        for (g, h), c in G.composites.items():
            self.triples[max(g, h, c)].append((g, h, c))

    def candidates(self, k: int) -> list[int]:
        return self.values

    def check(self, theta: list[int], k: int) -> bool:
        leq, comp = self.leq, self.composites
        if not all(leq[theta[a]][theta[b]] for a, b in self.pairs[k]):
            return False
        return all(comp.get((theta[g], theta[h])) == theta[c] for g, h, c in self.triples[k])


class TransformationConstraint(MapConstraint):
    """Ordered ``tau`` on identities with ``dom(x tau) = x f``."""

    def __init__(self, G: OrderedGroupoid, functor: Sequence[int]):
        ids = G.identities
        self.size = len(ids)
        self.options = [G.stars[functor[x]] for x in ids]
        self.leq = G.order_rows
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in ids]
        for i, x in enumerate(ids):
            for j, y in enumerate(ids):
                if i != j and self.leq[x][y]:
                    self.pairs[max(i, j)].append((i, j))

    def candidates(self, k: int) -> tuple[int, ...]:
        return self.options[k]

    def check(self, theta: list[int], k: int) -> bool:
        leq = self.leq
        return all(leq[theta[i]][theta[j]] for i, j in self.pairs[k])


EndElement = tuple[tuple[int, ...], tuple[int, ...]]


def enumerate_ordered_functors(G: OrderedGroupoid, budget: int | None = None) -> list[tuple[int, ...]]:
    return search_maps(OrderedFunctorConstraint(G), budget or SETTINGS.node_budget, label="ordered functors")


def enumerate_end(
    G: OrderedGroupoid,
    functors: Sequence[tuple[int, ...]] | None = None,
    budget: int | None = None,
) -> list[EndElement]:
    functors = enumerate_ordered_functors(G, budget) if functors is None else functors
    out = []
    for f in functors:
        for tau in search_maps(TransformationConstraint(G, f), budget or SETTINGS.node_budget, label="end"):
            out.append((tuple(f), tau))
    return out


def end_identity(G: OrderedGroupoid) -> EndElement:
    return tuple(range(G.size)), identity_flow(G)


def end_target(G: OrderedGroupoid, x: EndElement) -> tuple[int, ...]:
    """The functor ``a -> (dom a tau)^-1 . a f . (ran a tau)``."""
    f, tau = x
    pos = G.identity_position
    out = []
    for a in range(G.size):
        left = G.inv[tau[pos[G.dom[a]]]]
        right = tau[pos[G.ran[a]]]
        out.append(G.composites[(G.composites[(left, f[a])], right)])
    return tuple(out)


def end_diamond(G: OrderedGroupoid, x: EndElement, y: EndElement) -> EndElement:
    """``(fg, z -> (z tau) g . (ran(z tau)) sigma)``."""
    f, tau = x
    g, sigma = y
    pos = G.identity_position
    fg = tuple(g[v] for v in f)
    psi = tuple(G.composites[(g[a], sigma[pos[G.ran[a]]])] for a in tau)
    return fg, psi


def end_compose(G: OrderedGroupoid, x: EndElement, y: EndElement) -> EndElement | None:
    """Vertical composite ``(f, z -> z tau . z sigma)``, defined when ``g`` is the target of ``x``."""
    f, tau = x
    g, sigma = y
    if end_target(G, x) != tuple(g):
        return None
    return f, tuple(G.composites[(a, b)] for a, b in zip(tau, sigma))
