"""
Finite topological groupoids
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from errors import InvalidInstanceError, NotAUnitError, UnknownPointError, Violation
from fintop import FiniteSpace, continuous_table, discrete, open_table, product_subspace, subspace

LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Groupoid:
    """Arrows with a topology, units among them, d, r, inversion and the
    multiplication table on composable pairs (d(ξ) = r(η)).

    Equality is identity: two groupoids are the same only if they are the
    same object.
    """
    space: FiniteSpace
    units: frozenset[int]
    src: tuple[int, ...]
    rng: tuple[int, ...]
    inv: tuple[int, ...]
    mul: Mapping[tuple[int, int], int]

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def arrows(self) -> range:
        return self.space.points

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    def d(self, xi: int) -> int:
        return self.src[xi]

    def r(self, xi: int) -> int:
        return self.rng[xi]

    def composable(self, xi: int, eta: int) -> bool:
        return self.src[xi] == self.rng[eta]

    def m(self, xi: int, eta: int) -> int:
        try:
            return self.mul[(xi, eta)]
        except KeyError:
            raise UnknownPointError(f"arrows {xi},{eta} are not composable") from None

    def arrow(self, label: str) -> int:
        return self.space.index(label)

    @cached_property
    def unit_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.units))

    @cached_property
    def unit_pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.unit_list)}

    @cached_property
    def unit_space(self) -> FiniteSpace:
        """Units with the subspace topology, point i being unit_list[i]."""
        return subspace(self.space, self.units)[0]

    @cached_property
    def source_fibers(self) -> dict[int, tuple[int, ...]]:
        out = {x: [] for x in self.unit_list}
        for xi in self.arrows:
            out.setdefault(self.src[xi], []).append(xi)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def range_fibers(self) -> dict[int, tuple[int, ...]]:
        out = {x: [] for x in self.unit_list}
        for xi in self.arrows:
            out.setdefault(self.rng[xi], []).append(xi)
        return {x: tuple(v) for x, v in out.items()}

    def check_units(self, s: Iterable[int]) -> frozenset[int]:
        s = self.space.check(s)
        bad = s - self.units
        if bad:
            raise NotAUnitError(f"arrows {sorted(bad)} are not units")
        return s

    def __repr__(self) -> str:
        return f"Groupoid({self.n} arrows, {len(self.units)} units)"


def from_functions(keys: Sequence[Hashable], labels: Sequence[str], space: FiniteSpace | None,
                   is_unit: Callable, d: Callable, r: Callable,
                   compose: Callable, inverse: Callable) -> Groupoid:
    """Tabulate a groupoid given on arbitrary hashable arrow keys."""
    idx = {k: i for i, k in enumerate(keys)}
    if space is None:
        space = discrete(labels)
    src = tuple(idx[d(k)] for k in keys)
    rng = tuple(idx[r(k)] for k in keys)
    units = frozenset(i for i, k in enumerate(keys) if is_unit(k))
    inv = tuple(idx[inverse(k)] for k in keys)
    by_range = {}
    for j in range(len(keys)):
        by_range.setdefault(rng[j], []).append(j)
    mul = {}
    for i, k in enumerate(keys):
        for j in by_range.get(src[i], ()):
            mul[(i, j)] = idx[compose(k, keys[j])]
    return Groupoid(space, units, src, rng, inv, mul)


# =============================================================================
# Validation
# =============================================================================
def validate_groupoid(g: Groupoid) -> Violation | None:
    n = g.n
    for name, table in (('src', g.src), ('rng', g.rng), ('inv', g.inv)):
        if len(table) != n or any(not (0 <= v < n) for v in table):
            return Violation('tables', name)
    if not g.units <= frozenset(range(n)):
        return Violation('units', sorted(g.units - frozenset(range(n))))
    for x in g.unit_list:
        if g.src[x] != x or g.rng[x] != x:
            return Violation('units', x)
    for xi in g.arrows:
        if g.src[xi] not in g.units or g.rng[xi] not in g.units:
            return Violation('units', xi)

    composable = {(xi, eta) for xi in g.arrows for eta in g.range_fibers.get(g.src[xi], ())}
    keys = set(g.mul)
    if keys != composable:
        extra = sorted(keys - composable)
        missing = sorted(composable - keys)
        return Violation('mul_domain', extra[0] if extra else missing[0])
    for (xi, eta), zeta in sorted(g.mul.items()):
        if not (0 <= zeta < n):
            return Violation('mul_domain', (xi, eta))
        if g.src[zeta] != g.src[eta] or g.rng[zeta] != g.rng[xi]:
            return Violation('mul_endpoints', (xi, eta))

    for xi in g.arrows:
        if g.mul[(xi, g.src[xi])] != xi or g.mul[(g.rng[xi], xi)] != xi:
            return Violation('unit_law', xi)

    for xi in g.arrows:
        i = g.inv[xi]
        if g.inv[i] != xi:
            return Violation('inverse', xi)
        if g.mul.get((xi, i)) != g.rng[xi] or g.mul.get((i, xi)) != g.src[xi]:
            return Violation('inverse', xi)

    for (xi, eta), p in sorted(g.mul.items()):
        for zeta in g.range_fibers.get(g.src[eta], ()):
            if g.mul[(p, zeta)] != g.mul[(xi, g.mul[(eta, zeta)])]:
                return Violation('associativity', (xi, eta, zeta))

    bad = continuous_table(g.space, g.space, g.inv)
    if bad is not None:
        return Violation('continuity_inv', bad)
    bad = continuous_table(g.space, g.space, g.src)
    if bad is not None:
        return Violation('continuity_src', bad)
    bad = _mul_discontinuity(g)
    if bad is not None:
        return Violation('continuity_mul', bad)
    return None


def _mul_discontinuity(g: Groupoid):
    base = g.space.base
    for (xi, eta), p in sorted(g.mul.items()):
        target = base[p]
        for a in base[xi]:
            for b in base[eta]:
                q = g.mul.get((a, b))
                if q is not None and q not in target:
                    return (xi, eta)
    return None


def validate_functor(g: Groupoid, h: Groupoid, table: Sequence[int]) -> Violation | None:
    """Checks that `table` is a continuous groupoid morphism g → h."""
    if len(table) != g.n or any(not (0 <= v < h.n) for v in table):
        return Violation('functor_table', len(table))
    for x in g.unit_list:
        if table[x] not in h.units:
            return Violation('functor_units', x)
    for xi in g.arrows:
        if h.src[table[xi]] != table[g.src[xi]] or h.rng[table[xi]] != table[g.rng[xi]]:
            return Violation('functor_endpoints', xi)
    for (xi, eta), p in sorted(g.mul.items()):
        if h.mul.get((table[xi], table[eta])) != table[p]:
            return Violation('functor_mul', (xi, eta))
    bad = continuous_table(g.space, h.space, table)
    if bad is not None:
        return Violation('functor_continuity', bad)
    return None


# =============================================================================
# Fibers, orbits, openness
# =============================================================================
def fibers(g: Groupoid, m: Iterable[int], n: Iterable[int]):
    """(Ξ_M, Ξ^N, Ξ_M^N) with Ξ_M = d⁻¹(M) and Ξ^N = r⁻¹(N)."""
    m = g.check_units(m)
    n = g.check_units(n)
    from_m = frozenset(xi for xi in g.arrows if g.src[xi] in m)
    into_n = frozenset(xi for xi in g.arrows if g.rng[xi] in n)
    return from_m, into_n, from_m & into_n


def isotropy(g: Groupoid, x: int) -> frozenset[int]:
    g.check_units({x})
    return frozenset(xi for xi in g.source_fibers[x] if g.rng[xi] == x)


def unit_orbit(g: Groupoid, x: int) -> frozenset[int]:
    g.check_units({x})
    return frozenset(g.rng[xi] for xi in g.source_fibers[x])


def unit_orbits(g: Groupoid) -> list[frozenset[int]]:
    seen, out = set(), []
    for x in g.unit_list:
        if x not in seen:
            o = unit_orbit(g, x)
            seen |= o
            out.append(o)
    return out


def is_transitive_groupoid(g: Groupoid) -> bool:
    return len(unit_orbits(g)) == 1


def _unit_valued_open(g: Groupoid, table: Sequence[int]) -> int | None:
    pos = g.unit_pos
    return open_table(g.space, g.unit_space, [pos[t] for t in table])


def is_open_groupoid(g: Groupoid) -> bool:
    """Whether d is open onto the unit subspace; r must agree."""
    d_open = _unit_valued_open(g, g.src) is None
    r_open = _unit_valued_open(g, g.rng) is None
    if d_open != r_open:
        LOG.error("d open=%s but r open=%s", d_open, r_open)
        raise InvalidInstanceError("source and range maps disagree on openness",
                                   Violation('open_agreement', (d_open, r_open)))
    return d_open


@dataclass(frozen=True)
class SubgroupoidCheck:
    is_subgroupoid: bool
    is_wide: bool


def subgroupoid_check(g: Groupoid, delta: Iterable[int]) -> SubgroupoidCheck:
    delta = g.space.check(delta)
    closed = all(g.inv[xi] in delta for xi in delta) and all(
        g.mul[(xi, eta)] in delta
        for xi in delta for eta in delta if g.composable(xi, eta))
    return SubgroupoidCheck(closed, closed and g.units <= delta)


def product_set(g: Groupoid, a: Iterable[int], b: Iterable[int]) -> frozenset[int]:
    a = g.space.check(a)
    b = g.space.check(b)
    return frozenset(g.mul[(xi, eta)] for xi in a for eta in b if g.src[xi] == g.rng[eta])


@dataclass(frozen=True)
class Recognition:
    is_group: bool
    is_group_bundle: bool
    is_pair_groupoid: bool


def recognize(g: Groupoid) -> Recognition:
    pairs = {(g.rng[xi], g.src[xi]) for xi in g.arrows}
    return Recognition(
        is_group=len(g.units) == 1,
        is_group_bundle=all(g.src[xi] == g.rng[xi] for xi in g.arrows),
        is_pair_groupoid=len(pairs) == g.n and len(pairs) == len(g.units) ** 2,
    )


# =============================================================================
# Constructions
# =============================================================================
def pair_groupoid(space: FiniteSpace) -> Groupoid:
    keys = [(x, y) for x in space.points for y in space.points]
    labels = [f"({space.labels[x]},{space.labels[y]})" for x, y in keys]
    topo = product_subspace([space, space], keys, labels)
    return from_functions(
        keys, labels, topo,
        is_unit=lambda k: k[0] == k[1],
        d=lambda k: (k[1], k[1]),
        r=lambda k: (k[0], k[0]),
        compose=lambda k, l: (k[0], l[1]),
        inverse=lambda k: (k[1], k[0]),
    )


def group_groupoid(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                   space: FiniteSpace | None = None) -> Groupoid:
    """A group from its Cayley table (table[a][b] = ab) as a one-unit groupoid."""
    n = len(table)
    e = next(a for a in range(n) if all(table[a][b] == b for b in range(n)))
    inverse = [next(b for b in range(n) if table[a][b] == e) for a in range(n)]
    if labels is None:
        labels = [str(a) for a in range(n)]
    return from_functions(
        list(range(n)), labels, space,
        is_unit=lambda a: a == e,
        d=lambda a: e,
        r=lambda a: e,
        compose=lambda a, b: table[a][b],
        inverse=lambda a: inverse[a],
    )


def cyclic_labels(n: int) -> list[str]:
    return ['e', 'g'] + [f"g^{k}" for k in range(2, n)] if n > 1 else ['e']


def cyclic_group(n: int, space: FiniteSpace | None = None) -> Groupoid:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_groupoid(table, cyclic_labels(n), space)


def trivial_groupoid(space: FiniteSpace) -> Groupoid:
    return Groupoid(space, frozenset(space.points), tuple(space.points), tuple(space.points),
                    tuple(space.points), {(x, x): x for x in space.points})


def disjoint_union(gs: Sequence[Groupoid]) -> Groupoid:
    labels, base, offsets = [], [], []
    units, src, rng, inv, mul = set(), [], [], [], {}
    off = 0
    for g in gs:
        offsets.append(off)
        labels.extend(g.labels)
        base.extend(frozenset(q + off for q in b) for b in g.space.base)
        units |= {x + off for x in g.units}
        src.extend(v + off for v in g.src)
        rng.extend(v + off for v in g.rng)
        inv.extend(v + off for v in g.inv)
        mul.update({(a + off, b + off): c + off for (a, b), c in g.mul.items()})
        off += g.n
    labels = _disambiguate(labels)
    return Groupoid(FiniteSpace(tuple(labels), tuple(base)), frozenset(units),
                    tuple(src), tuple(rng), tuple(inv), mul)


def group_bundle(groups: Sequence[Groupoid]) -> Groupoid:
    return disjoint_union(groups)


def product_groupoid(g: Groupoid, h: Groupoid) -> Groupoid:
    keys = [(a, b) for a in g.arrows for b in h.arrows]
    labels = [f"({g.labels[a]},{h.labels[b]})" for a, b in keys]
    topo = product_subspace([g.space, h.space], keys, labels)
    return from_functions(
        keys, labels, topo,
        is_unit=lambda k: k[0] in g.units and k[1] in h.units,
        d=lambda k: (g.src[k[0]], h.src[k[1]]),
        r=lambda k: (g.rng[k[0]], h.rng[k[1]]),
        compose=lambda k, l: (g.mul[(k[0], l[0])], h.mul[(k[1], l[1])]),
        inverse=lambda k: (g.inv[k[0]], h.inv[k[1]]),
    )


def subgroupoid(g: Groupoid, delta: Iterable[int]) -> tuple[Groupoid, list[int]]:
    """The subgroupoid on `delta`, reindexed, with the old arrow ids."""
    delta = g.space.check(delta)
    if not subgroupoid_check(g, delta).is_subgroupoid:
        raise InvalidInstanceError("not a subgroupoid", Violation('subgroupoid', sorted(delta)))
    sub, old = subspace(g.space, delta | {g.src[xi] for xi in delta})
    pos = {p: i for i, p in enumerate(old)}
    units = frozenset(pos[x] for x in old if x in g.units)
    mul = {(pos[a], pos[b]): pos[g.mul[(a, b)]]
           for a in old for b in old if g.composable(a, b)}
    return Groupoid(sub, units, tuple(pos[g.src[a]] for a in old), tuple(pos[g.rng[a]] for a in old),
                    tuple(pos[g.inv[a]] for a in old), mul), old


def _disambiguate(labels: list[str]) -> list[str]:
    if len(set(labels)) == len(labels):
        return labels
    seen: dict[str, int] = {}
    out = []
    for x in labels:
        k = seen.get(x, 0)
        seen[x] = k + 1
        out.append(x if k == 0 else f"{x}#{k}")
    return out
