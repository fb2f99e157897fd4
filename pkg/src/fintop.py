"""
Finite topological spaces, maps between them, and bornologies
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from errors import CarrierMismatchError, InvalidInstanceError, SerializationError, UnknownPointError, Violation
from utils import powerset

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteSpace:
    """A finite space given by the minimal open neighbourhood of each point.

    `base[p]` is the intersection of all opens containing p; a set is open
    iff it contains `base[p]` for each of its points. Every finite topology
    has exactly one such description.
    """
    labels: tuple[str, ...]
    base: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.labels) != len(self.base):
            raise ValueError("one minimal neighbourhood per point is required")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def points(self) -> range:
        return range(len(self.labels))

    @cached_property
    def full(self) -> frozenset[int]:
        return frozenset(range(len(self.labels)))

    def check(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        bad = [p for p in s if not (isinstance(p, int) and 0 <= p < self.n)]
        if bad:
            raise UnknownPointError(f"unknown point id(s) {sorted(bad, key=str)} in a space of {self.n} points")
        return s

    def label(self, p: int) -> str:
        return self.labels[p]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownPointError(f"no point labelled {label!r}") from None

    def ids(self, *labels: str) -> frozenset[int]:
        return frozenset(self.index(x) for x in labels)

    def minimal_open(self, p: int) -> frozenset[int]:
        return self.base[p]

    def is_open(self, s: Iterable[int]) -> bool:
        s = self.check(s)
        return all(self.base[p] <= s for p in s)

    def is_closed(self, s: Iterable[int]) -> bool:
        return self.is_open(self.full - self.check(s))

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        s = self.check(s)
        return frozenset(p for p in self.points if self.base[p] & s)

    def interior(self, s: Iterable[int]) -> frozenset[int]:
        s = self.check(s)
        return frozenset(p for p in s if self.base[p] <= s)

    def iter_opens(self, limit: int | None = None) -> Iterator[frozenset[int]]:
        """Opens in order of discovery, at most `limit` of them."""
        seen = {frozenset()}
        frontier = [frozenset()]
        yield frozenset()
        count = 1
        while frontier:
            nxt = []
            for o in frontier:
                for p in self.points:
                    if p in o:
                        continue
                    u = o | self.base[p]
                    if u not in seen:
                        if limit is not None and count >= limit:
                            return
                        seen.add(u)
                        nxt.append(u)
                        count += 1
                        yield u
            frontier = nxt

    def is_hausdorff(self) -> bool:
        # finite and Hausdorff means discrete
        return all(self.base[p] == frozenset((p,)) for p in self.points)

    # =========================
    # Constructors
    # =========================
    @classmethod
    def from_opens(cls, labels: Sequence[str], opens: Iterable[Iterable[int]]) -> 'FiniteSpace':
        labels = tuple(str(x) for x in labels)
        opens = [frozenset(o) for o in opens]
        v = validate_space(labels, opens)
        if v is not None:
            raise InvalidInstanceError("open family is not a topology", v)
        base = []
        for p in range(len(labels)):
            m = frozenset(range(len(labels)))
            for o in opens:
                if p in o:
                    m &= o
            base.append(m)
        return cls(labels, tuple(base))

    @classmethod
    def from_base(cls, labels: Sequence[str], base: Sequence[Iterable[int]]) -> 'FiniteSpace':
        labels = tuple(str(x) for x in labels)
        base = tuple(frozenset(b) for b in base)
        for p, b in enumerate(base):
            if p not in b:
                raise InvalidInstanceError("neighbourhood base", Violation('base_contains_point', p))
            for q in b:
                if not (0 <= q < len(labels)):
                    raise UnknownPointError(f"unknown point id {q}")
                if not base[q] <= b:
                    raise InvalidInstanceError("neighbourhood base", Violation('base_transitive', (p, q)))
        return cls(labels, base)


def validate_space(labels: Sequence[str], opens: Iterable[Iterable[int]]) -> Violation | None:
    """None when `opens` is a topology on the points, else the first failure.

    Pairs are scanned in deterministic order: opens sorted by size, then by
    their sorted ids.
    """
    n = len(labels)
    family = {frozenset(o) for o in opens}
    for o in sorted(family, key=_open_key):
        bad = [p for p in o if not (0 <= p < n)]
        if bad:
            return Violation('unknown_point', sorted(bad))
    full = frozenset(range(n))
    if frozenset() not in family:
        return Violation('empty_set', [])
    if full not in family:
        return Violation('full_set', sorted(full))
    ordered = sorted(family, key=_open_key)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a | b not in family:
                return Violation('union', (sorted(a), sorted(b)))
            if a & b not in family:
                return Violation('intersection', (sorted(a), sorted(b)))
    return None


def _open_key(o: frozenset[int]):
    return (len(o), sorted(o))


def closure(s: FiniteSpace, subset: Iterable[int]) -> frozenset[int]:
    return s.closure(subset)


def interior(s: FiniteSpace, subset: Iterable[int]) -> frozenset[int]:
    return s.interior(subset)


def is_dense(s: FiniteSpace, subset: Iterable[int]) -> bool:
    return s.closure(subset) == s.full


def is_nowhere_dense(s: FiniteSpace, subset: Iterable[int]) -> bool:
    return not s.interior(s.closure(subset))


# =============================================================================
# Standard spaces
# =============================================================================
def discrete(labels: Sequence[str] | int) -> FiniteSpace:
    labels = _labels(labels)
    return FiniteSpace(labels, tuple(frozenset((p,)) for p in range(len(labels))))


def indiscrete(labels: Sequence[str] | int) -> FiniteSpace:
    labels = _labels(labels)
    full = frozenset(range(len(labels)))
    return FiniteSpace(labels, tuple(full for _ in labels))


def sierpinski() -> FiniteSpace:
    """({0,1}, {∅, {1}, {0,1}})"""
    return FiniteSpace(('0', '1'), (frozenset({0, 1}), frozenset({1})))


def point_space() -> FiniteSpace:
    return FiniteSpace(('*',), (frozenset({0}),))


def generated_topology(labels: Sequence[str] | int, family: Iterable[Iterable[int]]) -> FiniteSpace:
    """Coarsest topology containing `family` (closed under union and intersection)."""
    labels = _labels(labels)
    family = [frozenset(f) for f in family]
    full = frozenset(range(len(labels)))
    base = []
    for p in range(len(labels)):
        m = full
        for f in family:
            if p in f:
                m &= f
        base.append(m)
    return FiniteSpace(labels, tuple(base))


def initial_topology(labels: Sequence[str], maps: Sequence[tuple[FiniteSpace, Sequence[int]]]) -> FiniteSpace:
    """Coarsest topology making every (codomain, table) map continuous."""
    labels = tuple(labels)
    n = len(labels)
    base = []
    for p in range(n):
        base.append(frozenset(q for q in range(n)
                              if all(t[q] in cod.base[t[p]] for cod, t in maps)))
    return FiniteSpace(labels, tuple(base))


def final_topology(domain: FiniteSpace, table: Sequence[int], labels: Sequence[str]) -> FiniteSpace:
    """Finest topology on `labels` making the map continuous."""
    labels = tuple(labels)
    pre = {}
    for p, y in enumerate(table):
        pre.setdefault(y, set()).add(p)
    base = []
    for y in range(len(labels)):
        v = {y}
        while True:
            grown = set(v)
            for z in v:
                for p in pre.get(z, ()):
                    grown |= {table[q] for q in domain.base[p]}
            if grown == v:
                break
            v = grown
        base.append(frozenset(v))
    return FiniteSpace(labels, tuple(base))


def subspace(s: FiniteSpace, subset: Iterable[int]) -> tuple[FiniteSpace, list[int]]:
    """Subspace on `subset`, reindexed in id order, with the old ids."""
    old = sorted(s.check(subset))
    pos = {p: i for i, p in enumerate(old)}
    base = tuple(frozenset(pos[q] for q in s.base[p] if q in pos) for p in old)
    return FiniteSpace(tuple(s.labels[p] for p in old), base), old


def product_subspace(factors: Sequence[FiniteSpace], tuples: Sequence[tuple[int, ...]],
                     labels: Sequence[str] | None = None) -> FiniteSpace:
    """The points `tuples` of the product of `factors`, with the induced topology."""
    if labels is None:
        labels = ['(' + ','.join(f.labels[c] for f, c in zip(factors, t)) + ')' for t in tuples]
    nbhd = [tuple(f.base[c] for f, c in zip(factors, t)) for t in tuples]
    base = []
    for i in range(len(tuples)):
        bi = nbhd[i]
        base.append(frozenset(j for j, u in enumerate(tuples)
                              if all(c in b for c, b in zip(u, bi))))
    return FiniteSpace(tuple(labels), tuple(base))


def _labels(labels: Sequence[str] | int) -> tuple[str, ...]:
    if isinstance(labels, int):
        return tuple(str(i) for i in range(labels))
    return tuple(str(x) for x in labels)


# =============================================================================
# Maps
# =============================================================================
@dataclass(frozen=True)
class SpaceMap:
    domain: FiniteSpace
    codomain: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'table', tuple(self.table))
        if len(self.table) != self.domain.n:
            raise UnknownPointError(f"map table has {len(self.table)} entries for {self.domain.n} points")
        self.codomain.check(self.table)

    def __call__(self, p: int) -> int:
        return self.table[p]

    def image(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.table[p] for p in self.domain.check(s))

    def preimage(self, s: Iterable[int]) -> frozenset[int]:
        s = self.codomain.check(s)
        return frozenset(p for p, y in enumerate(self.table) if y in s)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table) == set(self.codomain.points)

    def then(self, other: 'SpaceMap') -> 'SpaceMap':
        """self followed by other."""
        if other.domain != self.codomain:
            raise CarrierMismatchError("composable maps must share the middle space")
        return SpaceMap(self.domain, other.codomain, tuple(other.table[y] for y in self.table))

    @classmethod
    def identity(cls, s: FiniteSpace) -> 'SpaceMap':
        return cls(s, s, tuple(s.points))

    @classmethod
    def constant(cls, domain: FiniteSpace, codomain: FiniteSpace, value: int) -> 'SpaceMap':
        return cls(domain, codomain, tuple(value for _ in domain.points))


def continuous_table(domain: FiniteSpace, codomain: FiniteSpace, table: Sequence[int]) -> int | None:
    """None if continuous, else the first point where continuity fails."""
    for p in domain.points:
        target = codomain.base[table[p]]
        if any(table[q] not in target for q in domain.base[p]):
            return p
    return None


def open_table(domain: FiniteSpace, codomain: FiniteSpace, table: Sequence[int]) -> int | None:
    """None if the map is open, else a point whose neighbourhood image is not open."""
    for p in domain.points:
        if not codomain.is_open({table[q] for q in domain.base[p]}):
            return p
    return None


def is_continuous(f: SpaceMap) -> bool:
    return continuous_table(f.domain, f.codomain, f.table) is None


def is_open_map(f: SpaceMap) -> bool:
    return open_table(f.domain, f.codomain, f.table) is None


def is_homeomorphism(f: SpaceMap) -> bool:
    if not (f.is_injective() and f.is_surjective()):
        return False
    inv = [0] * f.codomain.n
    for p, y in enumerate(f.table):
        inv[y] = p
    return is_continuous(f) and continuous_table(f.codomain, f.domain, inv) is None


# =============================================================================
# Bornologies
# =============================================================================
@dataclass(frozen=True)
class BornologyKind:
    """'all' (every subset bounded) or 'restricted' around a core."""
    name: str = 'all'
    core: frozenset[int] | None = None

    @classmethod
    def all_subsets(cls) -> 'BornologyKind':
        return cls('all', None)

    @classmethod
    def restricted(cls, core: Iterable[int]) -> 'BornologyKind':
        return cls('restricted', frozenset(core))

    @classmethod
    def parse(cls, spec: str | None) -> 'BornologyKind':
        """'all' or 'core=0,2' (ids)."""
        if spec is None or spec == 'all':
            return cls.all_subsets()
        if spec.startswith('core='):
            body = spec[len('core='):].strip()
            try:
                ids = [int(x) for x in body.split(',') if x.strip()] if body else []
            except ValueError:
                raise SerializationError(f"bornology core must list point ids, got {body!r}") from None
            return cls.restricted(ids)
        raise SerializationError(f"bornology spec must be 'all' or 'core=<ids>', got {spec!r}")

    @property
    def is_all(self) -> bool:
        return self.name == 'all'

    def resolve(self, carrier: FiniteSpace) -> 'Bornology':
        if self.is_all:
            return Bornology.all_subsets(carrier)
        return Bornology.restricted(carrier, self.core)

    def to_spec(self) -> dict:
        if self.is_all:
            return {'kind': 'all'}
        return {'kind': 'restricted', 'core': sorted(self.core)}


@dataclass(frozen=True)
class Bornology:
    """Bounded sets of a finite carrier: the subsets of a closed core."""
    carrier: FiniteSpace
    core: frozenset[int]

    def __post_init__(self):
        self.carrier.check(self.core)
        if not self.carrier.is_closed(self.core):
            raise InvalidInstanceError("bornology", Violation('core_closed', sorted(self.core)))

    @classmethod
    def all_subsets(cls, carrier: FiniteSpace) -> 'Bornology':
        return cls(carrier, carrier.full)

    @classmethod
    def restricted(cls, carrier: FiniteSpace, core: Iterable[int]) -> 'Bornology':
        return cls(carrier, carrier.closure(core))

    @property
    def is_all(self) -> bool:
        return self.core == self.carrier.full

    @property
    def kind(self) -> BornologyKind:
        return BornologyKind.all_subsets() if self.is_all else BornologyKind.restricted(self.core)

    def is_bounded(self, s: Iterable[int]) -> bool:
        return self.carrier.check(s) <= self.core

    def is_relatively_compact(self, s: Iterable[int]) -> bool:
        return self.carrier.closure(s) <= self.core

    def bounded_sets(self) -> Iterator[frozenset[int]]:
        return powerset(self.core)

    def to_spec(self) -> dict:
        return self.kind.to_spec()


def is_proper(f: SpaceMap, bd: Bornology, bc: Bornology) -> bool:
    """Preimage of every bounded set is bounded; decided on the codomain core."""
    if bd.carrier != f.domain or bc.carrier != f.codomain:
        raise CarrierMismatchError("bornology carriers do not match the map's spaces")
    return f.preimage(bc.core) <= bd.core


def proper_table(domain_core: frozenset[int], codomain_core: frozenset[int], table: Sequence[int]) -> bool:
    return all(p in domain_core for p, y in enumerate(table) if y in codomain_core)
