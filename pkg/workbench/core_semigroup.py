"""Finite inverse semigroups given by multiplication tables.

Elements are dense indices ``0..size-1`` with a display name each. Tables are
row-major numpy arrays, validated eagerly when a semigroup is built: an
enumeration workload wants to fail at construction, not halfway through a
search. Maps act on the right, as in ``x(fg) = (xf)g``.
"""
import logging
import math
from functools import cached_property
from itertools import combinations, permutations
from typing import Callable, Sequence

import numpy as np
import pandas as pd
from attrs import define, field, frozen

from workbench.config import ORDER_CHECK_CAP, SETTINGS, diagnostic_enabled
from workbench.errors import (
    DiagnosticFailure,
    LinkingIncompatible,
    MalformedTable,
    NotAssociative,
    NotIdempotent,
    NotInductive,
    NotInverse,
    NotSemilatticeOfGroups,
    SizeCapExceeded,
)
from workbench.report import Report

log = logging.getLogger(__name__)


# ---------- table utilities ----------


def as_table(mul: Sequence[Sequence[int]] | np.ndarray) -> np.ndarray:
    """Coerce a nested sequence into a square int64 table with entries in range."""
    table = np.asarray(mul, dtype=np.int64)
    if table.size == 0:
        raise MalformedTable("empty multiplication table")
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise MalformedTable(f"table must be square, got shape {table.shape}")
    n = table.shape[0]
    bad = np.argwhere((table < 0) | (table >= n))
    if len(bad):
        r, c = (int(v) for v in bad[0])
        raise MalformedTable(f"entry [{r}][{c}] = {int(table[r, c])} is out of range 0..{n - 1}", witness=(r, c))
    return table


def find_nonassociative_triple(table: np.ndarray) -> tuple[int, int, int] | None:
    n = len(table)
    for a in range(n):
        left = table[table[a]]  # left[b, c] = (ab)c
        right = table[a][table]  # right[b, c] = a(bc)
        bad = np.argwhere(left != right)
        if len(bad):
            return a, int(bad[0][0]), int(bad[0][1])
    return None


def find_identity(table: np.ndarray) -> int | None:
    idx = np.arange(len(table))
    left = (table == idx[None, :]).all(axis=1)
    right = (table == idx[:, None]).all(axis=0)
    hits = np.flatnonzero(left & right)
    return int(hits[0]) if len(hits) else None


def find_zero(table: np.ndarray) -> int | None:
    idx = np.arange(len(table))
    left = (table == idx[:, None]).all(axis=1)
    right = (table == idx[None, :]).all(axis=0)
    hits = np.flatnonzero(left & right)
    return int(hits[0]) if len(hits) else None


def compute_inverses(table: np.ndarray) -> np.ndarray:
    """The unique ``b`` with ``aba = a`` and ``bab = b`` for every ``a``."""
    n = len(table)
    idx = np.arange(n)
    inv = np.empty(n, dtype=np.int64)
    for a in range(n):
        aba = table[table[a], a]
        bab = table[table[:, a], idx]
        candidates = np.flatnonzero((aba == a) & (bab == idx))
        if len(candidates) != 1:
            raise NotInverse(
                f"element {a} has {len(candidates)} inverses (need exactly one)",
                witness=(a, candidates.tolist()),
            )
        inv[a] = candidates[0]
    return inv


# ---------- types ----------


@define(frozen=True, eq=False, slots=False)
class NaturalOrder:
    leq: np.ndarray = field(repr=False)

    @cached_property
    def rows(self) -> list[list[bool]]:
        return self.leq.tolist()

    def __call__(self, a: int, b: int) -> bool:
        return self.rows[a][b]


@define(frozen=True, eq=False, slots=False)
class InverseSemigroup:
    names: tuple[str, ...]
    mul: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)
    idempotent_mask: np.ndarray = field(repr=False)
    identity: int | None = None
    zero: int | None = None

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.mul.tolist()

    @cached_property
    def inverses(self) -> list[int]:
        return self.inv.tolist()

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.idempotent_mask))

    @cached_property
    def idempotent_position(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.idempotents)}

    @cached_property
    def order(self) -> NaturalOrder:
        return natural_order(self)

    def product(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def is_idempotent(self, a: int) -> bool:
        return bool(self.idempotent_mask[a])

    def dom(self, a: int) -> int:
        """``a a^-1``."""
        return self.rows[a][self.inverses[a]]

    def ran(self, a: int) -> int:
        """``a^-1 a``."""
        return self.rows[self.inverses[a]][a]

    def leq(self, a: int, b: int) -> bool:
        return self.order(a, b)

    def name(self, a: int) -> str:
        return self.names[a]

    def same_table(self, other: "InverseSemigroup") -> bool:
        return self.size == other.size and bool(np.array_equal(self.mul, other.mul))

    def to_frame(self) -> pd.DataFrame:
        labels = list(self.names)
        return pd.DataFrame([[labels[v] for v in row] for row in self.rows], index=labels, columns=labels)


@frozen(eq=False)
class SemilatticeOfGroupsSpec:
    """Groups ``G_e`` over a semilattice ``E`` with linking maps ``(e, f) -> G_e -> G_f`` for ``f <= e``."""

    semilattice: InverseSemigroup
    groups: tuple[InverseSemigroup, ...]
    linking: dict[tuple[int, int], tuple[int, ...]] = field(factory=dict)

    def link(self, e: int, f: int) -> tuple[int, ...]:
        if e == f and (e, f) not in self.linking:
            return tuple(range(self.groups[e].size))
        try:
            return tuple(self.linking[(e, f)])
        except KeyError:
            raise LinkingIncompatible(f"missing linking map {e} -> {f}", witness=(e, f)) from None

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        acc, out = 0, []
        for g in self.groups:
            out.append(acc)
            acc += g.size
        return tuple(out)

    def element(self, e: int, g: int) -> int:
        return self.offsets[e] + g

    @cached_property
    def layout(self) -> tuple[tuple[int, int], ...]:
        """``(component, group element)`` for every element index."""
        return tuple((e, g) for e, group in enumerate(self.groups) for g in range(group.size))


# ---------- construction ----------


def build_from_table(
    names: Sequence[str] | None,
    mul_table: Sequence[Sequence[int]] | np.ndarray,
    size_cap: int | None = None,
) -> InverseSemigroup:
    """Validate a multiplication table and return the inverse semigroup it defines.

    Raises NotAssociative with the offending triple and NotInverse with the
    element lacking a unique inverse (or a non-commuting idempotent pair).
    """
    table = as_table(mul_table)
    n = len(table)
    cap = size_cap or SETTINGS.size_cap
    if n > cap:
        raise SizeCapExceeded(f"{n} elements exceed the size cap {cap}", witness=n)

    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(x) for x in names)
    if len(names) != n:
        raise MalformedTable(f"{len(names)} names for a table of size {n}")
    if len(set(names)) != n:
        dup = next(x for x in names if names.count(x) > 1)
        raise MalformedTable(f"duplicate element name {dup!r}", witness=dup)

    triple = find_nonassociative_triple(table)
    if triple is not None:
        a, b, c = triple
        raise NotAssociative(
            f"({names[a]}*{names[b]})*{names[c]} != {names[a]}*({names[b]}*{names[c]})",
            witness=triple,
        )

    inv = compute_inverses(table)

    idx = np.arange(n)
    mask = table[idx, idx] == idx
    E = np.flatnonzero(mask)
    sub = table[np.ix_(E, E)]
    bad = np.argwhere(sub != sub.T)
    if len(bad):
        e, f = int(E[bad[0][0]]), int(E[bad[0][1]])
        raise NotInverse(f"idempotents {names[e]} and {names[f]} do not commute", witness=(e, f))

    for arr in (table, inv, mask):
        arr.setflags(write=False)

    S = InverseSemigroup(
        names=names,
        mul=table,
        inv=inv,
        idempotent_mask=mask,
        identity=find_identity(table),
        zero=find_zero(table),
    )
    log.debug("built inverse semigroup: %d elements, %d idempotents", n, len(E))
    return S


def natural_order(S: InverseSemigroup) -> NaturalOrder:
    idx = np.arange(S.size)
    dom = S.mul[idx, S.inv]
    leq = S.mul[dom] == idx[:, None]
    leq.setflags(write=False)
    return NaturalOrder(leq)


def npo_clauses(S: InverseSemigroup, a: int, b: int) -> tuple[bool, bool, bool, bool]:
    """The four equivalent characterizations of ``a <= b``."""
    M, ainv = S.rows, S.inverse(a)
    return (
        any(M[b][e] == a for e in S.idempotents),
        any(M[f][b] == a for f in S.idempotents),
        M[M[a][ainv]][b] == a,
        M[M[b][ainv]][a] == a,
    )


def natural_leq(S: InverseSemigroup, a: int, b: int) -> bool:
    value = S.leq(a, b)
    if diagnostic_enabled():
        clauses = npo_clauses(S, a, b)
        if len(set(clauses)) != 1 or clauses[0] != value:
            raise DiagnosticFailure(f"order characterizations disagree on ({a}, {b}): {clauses}", witness=(a, b))
    return value


def meet_idempotents(S: InverseSemigroup, e: int, f: int) -> int:
    for x in (e, f):
        if not S.is_idempotent(x):
            raise NotIdempotent(f"{S.name(x)} is not an idempotent", witness=x)
    m = S.product(e, f)
    lower = [g for g in S.idempotents if S.leq(g, e) and S.leq(g, f)]
    if m not in lower or not all(S.leq(g, m) for g in lower):
        raise DiagnosticFailure(f"{S.name(m)} is not the meet of {S.name(e)} and {S.name(f)}", witness=(e, f))
    return m


# ---------- builders ----------


def symmetric_inverse_monoid_size(n: int) -> int:
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def partial_bijection_name(images: Sequence[int]) -> str:
    return "[" + " ".join(str(v) if v else "-" for v in images) + "]"


def build_symmetric_inverse_monoid(n: int, size_cap: int | None = None) -> InverseSemigroup:
    """All partial bijections of ``{1..n}`` under composition (apply left factor first).

    An element is stored as its image vector with ``0`` for "undefined".
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    cap = size_cap or SETTINGS.size_cap
    size = symmetric_inverse_monoid_size(n)
    if size > cap:
        raise SizeCapExceeded(f"I_{n} has {size} elements, above the size cap {cap}", witness=size)

    points = range(1, n + 1)
    maps = []
    for k in range(n + 1):
        for dom in combinations(points, k):
            for img in permutations(points, k):
                images = [0] * n
                for d, i in zip(dom, img):
                    images[d - 1] = i
                maps.append(tuple(images))
    maps.sort()
    index = {m: i for i, m in enumerate(maps)}

    def compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(g[v - 1] if v else 0 for v in f)

    table = [[index[compose(f, g)] for g in maps] for f in maps]
    return build_from_table([partial_bijection_name(m) for m in maps], table, size_cap=cap)


def build_cyclic_group(n: int) -> InverseSemigroup:
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    return build_from_table([str(i) for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)])


def build_symmetric_group(k: int) -> InverseSemigroup:
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(q[x] for x in p)] for q in perms] for p in perms]
    names = ["".join(str(x + 1) for x in p) or "()" for p in perms]
    return build_from_table(names, table)


def build_direct_product(S: InverseSemigroup, T: InverseSemigroup) -> InverseSemigroup:
    m = T.size
    names = [f"({s},{t})" for s in S.names for t in T.names]
    table = [
        [S.rows[a // m][b // m] * m + T.rows[a % m][b % m] for b in range(S.size * m)]
        for a in range(S.size * m)
    ]
    return build_from_table(names, table)


def build_chain_semilattice(k: int) -> InverseSemigroup:
    """Chain ``e0 > e1 > ...``; for ``k = 2`` the elements are named ``1 > e``."""
    names = ["1", "e"] if k == 2 else [f"e{i}" for i in range(k)]
    return build_from_table(names, [[max(i, j) for j in range(k)] for i in range(k)])


def build_semilattice_from_order(names: Sequence[str], leq: Sequence[Sequence[bool]]) -> InverseSemigroup:
    """Meet-semilattice from its order table; the product is the meet."""
    order = np.asarray(leq, dtype=bool)
    n = len(names)
    table = []
    for x in range(n):
        row = []
        for y in range(n):
            meet = glb(order, x, y)
            if meet is None:
                raise NotInductive(f"{names[x]} and {names[y]} have no meet", witness=(x, y))
            row.append(meet)
        table.append(row)
    return build_from_table(names, table)


def glb(order: np.ndarray, x: int, y: int, among: Sequence[int] | None = None) -> int | None:
    """Greatest lower bound of ``x`` and ``y`` in a partial order table, or None."""
    pool = range(len(order)) if among is None else among
    lower = [z for z in pool if order[z][x] and order[z][y]]
    for z in lower:
        if all(order[w][z] for w in lower):
            return z
    return None


def validate_semilattice_of_groups(spec: SemilatticeOfGroupsSpec) -> None:
    E = spec.semilattice
    if len(E.idempotents) != E.size or not np.array_equal(E.mul, E.mul.T):
        raise NotSemilatticeOfGroups("index structure is not a semilattice")
    if len(spec.groups) != E.size:
        raise NotSemilatticeOfGroups(f"{len(spec.groups)} groups for {E.size} semilattice elements")
    for e, G in enumerate(spec.groups):
        if len(G.idempotents) != 1 or G.identity is None:
            raise NotSemilatticeOfGroups(f"component {E.name(e)} is not a group", witness=e)

    pairs = [(e, f) for e in range(E.size) for f in range(E.size) if E.leq(f, e)]
    for e, f in pairs:
        link = spec.link(e, f)
        Ge, Gf = spec.groups[e], spec.groups[f]
        if len(link) != Ge.size or any(not 0 <= v < Gf.size for v in link):
            raise LinkingIncompatible(f"linking map {e} -> {f} has the wrong shape", witness=(e, f))
        if e == f and list(link) != list(range(Ge.size)):
            raise LinkingIncompatible(f"linking map {e} -> {e} is not the identity", witness=(e, e))
        for g in range(Ge.size):
            for h in range(Ge.size):
                if link[Ge.rows[g][h]] != Gf.rows[link[g]][link[h]]:
                    raise LinkingIncompatible(
                        f"linking map {e} -> {f} is not a homomorphism",
                        witness=(e, f, g, h),
                    )
    for e, f in pairs:
        for k in range(E.size):
            if not E.leq(k, f):
                continue
            down = spec.link(f, k)
            composite = tuple(down[v] for v in spec.link(e, f))
            if composite != spec.link(e, k):
                raise LinkingIncompatible(
                    f"linking maps are not functorial along {e} >= {f} >= {k}",
                    witness=(e, f, k),
                )


def build_semilattice_of_groups(spec: SemilatticeOfGroupsSpec) -> InverseSemigroup:
    """Disjoint union of the ``G_e`` with ``g * h = (g link)(h link)`` in ``G_{xy}``."""
    validate_semilattice_of_groups(spec)
    E = spec.semilattice
    layout = spec.layout
    table = []
    for x, g in layout:
        row = []
        for y, h in layout:
            z = E.product(x, y)
            gz = spec.link(x, z)[g]
            hz = spec.link(y, z)[h]
            row.append(spec.element(z, spec.groups[z].rows[gz][hz]))
        table.append(row)
    names = [f"{E.name(e)}:{spec.groups[e].name(g)}" for e, g in layout]
    S = build_from_table(names, table)

    if diagnostic_enabled():
        expected = np.zeros((S.size, S.size), dtype=bool)
        for a, (x, g) in enumerate(layout):
            for b, (y, h) in enumerate(layout):
                expected[a, b] = E.leq(x, y) and spec.link(y, x)[h] == g
        if not np.array_equal(expected, S.order.leq):
            raise DiagnosticFailure("natural order does not match the linking maps")
    return S


def check_order_properties(S: InverseSemigroup, cap: int = ORDER_CHECK_CAP) -> Report:
    """Natural-order invariants, exhaustive when ``S.size <= cap``."""
    report = Report(f"natural order of a {S.size}-element inverse semigroup")
    report.stats["size"] = S.size
    report.stats["idempotents"] = len(S.idempotents)
    if S.size > cap:
        report.add("exhaustive", True, detail=f"skipped: size above {cap}", informational=True)
        return report

    n = S.size
    idx = np.arange(n)
    M, inv, L = S.mul, S.inv, S.order.leq

    # --- 1) partial order ---
    report.add("reflexive", bool(L[idx, idx].all()))
    anti = np.argwhere(L & L.T & ~np.eye(n, dtype=bool))
    report.add("antisymmetric", not len(anti), witness=anti[0].tolist() if len(anti) else None)
    Li = L.astype(np.int64)
    trans = np.argwhere(((Li @ Li) > 0) & ~L)
    report.add("transitive", not len(trans), witness=trans[0].tolist() if len(trans) else None)

    # --- 2) the four characterizations agree ---
    right_unit = np.zeros((n, n), dtype=bool)
    left_unit = np.zeros((n, n), dtype=bool)
    for e in S.idempotents:
        right_unit[M[idx, e], idx] = True
        left_unit[M[e, idx], idx] = True
    via_right = np.zeros((n, n), dtype=bool)
    for a in range(n):
        via_right[a] = M[M[idx, inv[a]], a] == a
    disagree = np.argwhere((L != right_unit) | (L != left_unit) | (L != via_right))
    report.add(
        "characterizations_agree",
        not len(disagree),
        witness=disagree[0].tolist() if len(disagree) else None,
    )

    # --- 3) compatibility with inversion and multiplication ---
    lo, hi = np.nonzero(L)
    report.add("inversion_compatible", bool(L[inv[lo], inv[hi]].all()))
    products_ok = L[M[lo[:, None], lo[None, :]], M[hi[:, None], hi[None, :]]]
    bad = np.argwhere(~products_ok)
    witness = None
    if len(bad):
        i, j = bad[0]
        witness = [int(lo[i]), int(hi[i]), int(lo[j]), int(hi[j])]
    report.add("multiplication_compatible", not len(bad), witness=witness)

    # --- 4) x <= x^2 forces x idempotent ---
    squares = M[idx, idx]
    climbing = L[idx, squares]
    report.add("archimedean_idempotents", bool((squares[climbing] == idx[climbing]).all()))

    # --- 5) meets of idempotents ---
    E = list(S.idempotents)
    sub = M[np.ix_(E, E)]
    report.add("meet_commutative", bool(np.array_equal(sub, sub.T)))
    report.add("meet_associative", all(M[M[e, f], g] == M[e, M[f, g]] for e in E for f in E for g in E))
    glb_failures = []
    for e in E:
        for f in E:
            try:
                meet_idempotents(S, e, f)
            except DiagnosticFailure:
                glb_failures.append((e, f))
    report.add("meet_is_glb", not glb_failures, witness=glb_failures[0] if glb_failures else None)
    return report


# ---------- catalog ----------


def clifford_spec(top_group: int, bottom_group: int) -> SemilatticeOfGroupsSpec:
    """Two-chain ``1 > e`` with ``G_1 = Z_top`` and ``G_e = Z_bottom``, linked by reduction mod bottom."""
    E = build_chain_semilattice(2)
    G1, Ge = build_cyclic_group(top_group), build_cyclic_group(bottom_group)
    return SemilatticeOfGroupsSpec(E, (G1, Ge), {(0, 1): tuple(g % bottom_group for g in range(top_group))})


def build_clifford(top_group: int, bottom_group: int) -> InverseSemigroup:
    return build_semilattice_of_groups(clifford_spec(top_group, bottom_group))


def diamond_semilattice() -> InverseSemigroup:
    names = ["1", "a", "b", "0"]
    leq = [
        [True, False, False, False],
        [True, True, False, False],
        [True, False, True, False],
        [True, True, True, True],
    ]
    return build_semilattice_from_order(names, leq)


CATALOG: dict[str, Callable[[], InverseSemigroup]] = {
    "trivial": lambda: build_cyclic_group(1),
    "Z2": lambda: build_cyclic_group(2),
    "Z3": lambda: build_cyclic_group(3),
    "Z4": lambda: build_cyclic_group(4),
    "Z5": lambda: build_cyclic_group(5),
    "Z6": lambda: build_cyclic_group(6),
    "V4": lambda: build_direct_product(build_cyclic_group(2), build_cyclic_group(2)),
    "S3": lambda: build_symmetric_group(3),
    "chain2": lambda: build_chain_semilattice(2),
    "chain3": lambda: build_chain_semilattice(3),
    "chain4": lambda: build_chain_semilattice(4),
    "diamond4": diamond_semilattice,
    "I1": lambda: build_symmetric_inverse_monoid(1),
    "I2": lambda: build_symmetric_inverse_monoid(2),
    "clifford3": lambda: build_clifford(2, 1),
    "clifford4": lambda: build_clifford(2, 2),
}


def build_example(name: str) -> InverseSemigroup:
    try:
        builder = CATALOG[name]
    except KeyError:
        raise KeyError(f"Unknown example {name!r}; choose from {sorted(CATALOG)}") from None
    return builder()
