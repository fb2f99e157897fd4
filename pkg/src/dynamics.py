"""
Topological dynamics of groupoid actions: transitivity, minimality,
limit sets, recurrence, periodicity
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from action import (Action, orbit, orbit_closure, orbits, recurrence_set, saturate,
                    smallest_closed_invariant)
from config import ORBIT_UNION_CAP
from errors import CarrierMismatchError, HypothesisError, SizeCapError
from fintop import Bornology
from groupoid import Groupoid, is_open_groupoid, product_set
from utils import powerset
from verdict import CheckReport, Mode, first_failing

LOG = logging.getLogger(__name__)


def _bornology(a: Action, b: Bornology | None) -> Bornology:
    if b is None:
        return Bornology.all_subsets(a.gpd.space)
    if b.carrier != a.gpd.space:
        raise CarrierMismatchError("the bornology must live on the arrows of the acting groupoid")
    return b


def _mode(b: Bornology) -> Mode:
    return Mode.FAITHFUL if b.is_all else Mode.MODEL_LEVEL


# =============================================================================
# Transitivity hierarchy
# =============================================================================
@dataclass
class DynProfile:
    T: bool
    PT: bool
    WPT: bool
    TT1: bool
    TT2: bool
    TT3: bool
    RT: bool
    minimal: bool
    witnesses: dict = field(default_factory=dict)

    FLAGS = ('T', 'PT', 'WPT', 'TT1', 'TT2', 'TT3', 'RT', 'minimal')

    def flag(self, name: str) -> bool:
        return getattr(self, name)

    def to_dict(self) -> dict:
        d = {f: getattr(self, f) for f in self.FLAGS}
        d['witnesses'] = {k: sorted(v) if isinstance(v, (set, frozenset)) else v
                          for k, v in self.witnesses.items()}
        return d


def invariant_sets(a: Action) -> list[frozenset[int]]:
    """Every invariant set, as a union of orbits."""
    orbs = orbits(a)
    if len(orbs) > ORBIT_UNION_CAP:
        raise SizeCapError(f"{len(orbs)} orbits, invariant sets are enumerated up to {ORBIT_UNION_CAP}")
    out = []
    for chosen in powerset(range(len(orbs))):
        s = frozenset()
        for i in chosen:
            s |= orbs[i]
        out.append(s)
    return out


def classify(a: Action) -> DynProfile:
    sp = a.space
    orbs = orbits(a)
    wit = {}

    transitive = len(orbs) == 1
    dense = next((min(o) for o in orbs if sp.closure(o) == sp.full), None)
    if dense is not None:
        wit['PT'] = dense
    weak = next((s for s in a.points if smallest_closed_invariant(a, s) == sp.full), None)
    if weak is not None:
        wit['WPT'] = weak

    inv = invariant_sets(a)
    open_inv = [s for s in inv if s and sp.is_open(s)]

    tt1 = True
    for u, v in combinations(open_inv, 2):
        if not (u & v):
            tt1 = False
            wit['TT1'] = [sorted(u), sorted(v)]
            break
    tt2 = True
    for u in open_inv:
        if sp.closure(u) != sp.full:
            tt2 = False
            wit['TT2'] = sorted(u)
            break
    tt3 = True
    for s in inv:
        if sp.closure(s) != sp.full and sp.interior(sp.closure(s)):
            tt3 = False
            wit['TT3'] = sorted(s)
            break

    # recurrence sets are monotone, minimal neighbourhoods decide
    rt = True
    for p in a.points:
        for q in a.points:
            if not recurrence_set(a, sp.base[p], sp.base[q]):
                rt = False
                wit['RT'] = [p, q]
                break
        if not rt:
            break

    minimal = a.n > 0 and all(sp.closure(o) == sp.full for o in orbs)
    return DynProfile(T=transitive, PT=dense is not None, WPT=weak is not None,
                      TT1=tt1, TT2=tt2, TT3=tt3, RT=rt, minimal=minimal, witnesses=wit)


_CHAIN = (
    ('T', 'PT'), ('PT', 'WPT'), ('WPT', 'TT1'), ('TT3', 'RT'), ('RT', 'TT2'),
    ('TT2', 'TT1'), ('PT', 'RT'), ('minimal', 'PT'), ('T', 'minimal'),
)


def audit_implications(a: Action, profile: DynProfile | None = None) -> CheckReport:
    """The transitivity chain, plus the collapse TT1 ⇒ TT3 for open groupoids."""
    p = profile or classify(a)
    report = CheckReport('prostie')
    for lhs, rhs in _CHAIN:
        report.expect(f"{lhs}=>{rhs}", not p.flag(lhs) or p.flag(rhs), p.to_dict())
    is_open = is_open_groupoid(a.gpd)
    report.gated('TT1=>TT3', {'groupoid open': is_open},
                 lambda: (not p.TT1 or p.TT3, p.to_dict()))

    def closures_agree():
        for s in a.points:
            if smallest_closed_invariant(a, s) != orbit_closure(a, s):
                return False, s
        return True, None

    report.expect_all('orbit_closure_in_C', a.points,
                      lambda s: orbit_closure(a, s) <= smallest_closed_invariant(a, s))
    report.gated('C_equals_orbit_closure', {'groupoid open': is_open}, closures_agree)
    return report


def minimal_subsets(a: Action) -> list[frozenset[int]]:
    """Nonempty closed invariant sets in which every orbit is dense."""
    out = []
    for o in orbits(a):
        m = a.space.closure(o)
        if m not in out and is_minimal_subset(a, m):
            out.append(m)
    return sorted(out, key=lambda m: (len(m), sorted(m)))


def is_minimal_subset(a: Action, m) -> bool:
    m = a.space.check(m)
    if not m or not a.space.is_closed(m) or saturate(a, m) != m:
        return False
    return all(a.space.closure(orbit(a, s)) == m for s in m)


# =============================================================================
# Limit sets and recurrence
# =============================================================================
def limit_set(a: Action, sigma: int, b: Bornology | None = None) -> frozenset[int]:
    """⋂ over bounded k ⊆ Ξ_{ρ(σ)} of closure((Ξ_{ρ(σ)} ∖ k)•σ).

    The core is closed and contains every bounded set, so the intersection
    is attained at k = fibre ∩ core.
    """
    b = _bornology(a, b)
    a.space.check({sigma})
    far = [xi for xi in a.arrows_at(sigma) if xi not in b.core]
    return a.space.closure(a.act[(xi, sigma)] for xi in far)


def limit_set_via_recurrence(a: Action, sigma: int, b: Bornology | None = None) -> frozenset[int]:
    """τ such that Ξ̃_σ^V is not relatively compact for every open V ∋ τ."""
    b = _bornology(a, b)
    a.space.check({sigma})
    return frozenset(t for t in a.points
                     if not b.is_relatively_compact(recurrence_set(a, {sigma}, a.space.base[t])))


def recurrent_points(a: Action, b: Bornology | None = None) -> frozenset[int]:
    return frozenset(s for s in a.points if s in limit_set(a, s, b))


def wandering_points(a: Action, b: Bornology | None = None) -> frozenset[int]:
    """σ with a neighbourhood W for which Ξ̃_W^W is relatively compact."""
    b = _bornology(a, b)
    base = a.space.base
    return frozenset(s for s in a.points
                     if b.is_relatively_compact(recurrence_set(a, base[s], base[s])))


def fixed_points(a: Action) -> frozenset[int]:
    return frozenset(s for s in a.points if all(a.act[(xi, s)] == s for xi in a.arrows_at(s)))


def fixed_points_by_recurrence(a: Action) -> frozenset[int]:
    return frozenset(s for s in a.points if recurrence_set(a, {s}, {s}) == set(a.arrows_at(s)))


# =============================================================================
# Syndetic sets and periodicity
# =============================================================================
def is_syndetic(g: Groupoid, x: int, arrows, b: Bornology | None = None) -> bool:
    """Some bounded K has KA = Ξ_x; the largest bounded set decides."""
    g.check_units({x})
    arrows = g.space.check(arrows)
    fibre = frozenset(g.source_fibers[x])
    if not arrows <= fibre:
        raise HypothesisError(f"{sorted(arrows - fibre)} do not start at unit {x}")
    core = g.space.full if b is None else b.core
    return fibre <= product_set(g, core, arrows)


def _self_returns(a: Action, sigma: int) -> frozenset[int]:
    return recurrence_set(a, {sigma}, {sigma})


def periodic_points(a: Action, b: Bornology | None = None) -> frozenset[int]:
    b = _bornology(a, b)
    return frozenset(s for s in a.points
                     if is_syndetic(a.gpd, a.anchor[s], _self_returns(a, s), b))


def weakly_periodic_points(a: Action, b: Bornology | None = None) -> frozenset[int]:
    b = _bornology(a, b)
    out = set()
    for s in a.points:
        returns = _self_returns(a, s)
        if not subgroup_of_isotropy(a.gpd, returns):
            LOG.info("self-returns of point %d do not form a subgroup", s)
        if not b.is_bounded(returns):
            out.add(s)
    return frozenset(out)


def almost_periodic_points(a: Action, b: Bornology | None = None) -> frozenset[int]:
    """Ξ̃_σ^U syndetic for every neighbourhood U; the minimal one decides."""
    b = _bornology(a, b)
    return frozenset(s for s in a.points
                     if is_syndetic(a.gpd, a.anchor[s],
                                    recurrence_set(a, {s}, a.space.base[s]), b))


def subgroup_of_isotropy(g: Groupoid, arrows) -> bool:
    return all(g.inv[xi] in arrows for xi in arrows) and product_set(g, arrows, arrows) <= arrows


@dataclass
class PointClasses:
    fixed: frozenset[int]
    recurrent: frozenset[int]
    wandering: frozenset[int]
    nonwandering: frozenset[int]
    periodic: frozenset[int]
    weakly_periodic: frozenset[int]
    almost_periodic: frozenset[int]
    limit_sets: dict[int, frozenset[int]]
    bornology: Bornology

    def to_dict(self) -> dict:
        d = {name: sorted(getattr(self, name)) for name in
             ('fixed', 'recurrent', 'wandering', 'nonwandering', 'periodic',
              'weakly_periodic', 'almost_periodic')}
        d['limit_sets'] = {str(s): sorted(l) for s, l in sorted(self.limit_sets.items())}
        d['bornology'] = self.bornology.to_spec()
        return d


def point_classes(a: Action, b: Bornology | None = None) -> PointClasses:
    b = _bornology(a, b)
    wandering = wandering_points(a, b)
    return PointClasses(
        fixed=fixed_points(a),
        recurrent=recurrent_points(a, b),
        wandering=wandering,
        nonwandering=a.space.full - wandering,
        periodic=periodic_points(a, b),
        weakly_periodic=weakly_periodic_points(a, b),
        almost_periodic=almost_periodic_points(a, b),
        limit_sets={s: limit_set(a, s, b) for s in a.points},
        bornology=b,
    )


# =============================================================================
# Checks
# =============================================================================
def flacara_check(a: Action, b: Bornology | None = None, bs: Bornology | None = None) -> CheckReport:
    """Periodic points have compact orbits, almost periodic points have
    minimal compact orbit closures, and the converses for open groupoids.

    `bs` bounds subsets of Σ (default: all of them, finite sets being compact).
    """
    b = _bornology(a, b)
    bs = bs or Bornology.all_subsets(a.space)
    mode = Mode.FAITHFUL if b.is_all and bs.is_all else Mode.MODEL_LEVEL
    report = CheckReport('flacara', bornology={'arrows': b.to_spec(), 'points': bs.to_spec()})
    periodic = periodic_points(a, b)
    almost = almost_periodic_points(a, b)
    is_open = is_open_groupoid(a.gpd)

    report.expect_all('periodic_orbit_bounded', sorted(periodic),
                      lambda s: bs.is_bounded(orbit(a, s)), mode=mode)
    report.gated('bounded_orbit_periodic', {'groupoid open': is_open},
                 lambda: first_failing(a.points, lambda s: not bs.is_bounded(orbit(a, s)) or s in periodic),
                 mode=mode)
    report.expect_all('almost_periodic_closure_bounded', sorted(almost),
                      lambda s: bs.is_bounded(orbit_closure(a, s)), mode=mode)
    report.gated('almost_periodic_closure_minimal', {'space Hausdorff': a.space.is_hausdorff()},
                 lambda: first_failing(sorted(almost), lambda s: is_minimal_subset(a, orbit_closure(a, s))),
                 mode=mode)

    def converse(s):
        c = orbit_closure(a, s)
        return not (is_minimal_subset(a, c) and bs.is_bounded(c)) or s in almost

    report.gated('minimal_closure_almost_periodic', {'groupoid open': is_open},
                 lambda: first_failing(a.points, converse), mode=mode)
    return report


def nonwandering_check(a: Action, b: Bornology | None = None) -> CheckReport:
    b = _bornology(a, b)
    report = CheckReport('nonwandering', bornology=b.to_spec())
    nw = a.space.full - wandering_points(a, b)
    report.expect('closed', a.space.is_closed(nw), sorted(nw))
    limits = frozenset().union(*(limit_set(a, s, b) for s in a.points)) if a.n else frozenset()
    report.expect('contains_limit_points', limits <= nw, sorted(limits - nw), mode=_mode(b))
    return report


def baseline_check(a: Action, bornologies=()) -> CheckReport:
    """Limit-set coherence for each bornology, and the all-bounded baseline."""
    report = CheckReport('precisely')
    everything = Bornology.all_subsets(a.gpd.space)
    for b in [everything, *bornologies]:
        tag = 'all' if b.is_all else 'core=' + ','.join(str(i) for i in sorted(b.core))
        report.expect_all(f"coherence[{tag}]", a.points,
                          lambda s, b=b: limit_set(a, s, b) == limit_set_via_recurrence(a, s, b))
        report.expect_all(f"limit_in_orbit_closure[{tag}]", a.points,
                          lambda s, b=b: limit_set(a, s, b) <= orbit_closure(a, s))
    pc = point_classes(a, everything)
    full = a.space.full
    report.expect('baseline.limit_sets_empty', not any(pc.limit_sets.values()),
                  {s: l for s, l in pc.limit_sets.items() if l})
    report.expect('baseline.recurrent_empty', not pc.recurrent, pc.recurrent)
    report.expect('baseline.wandering_all', pc.wandering == full, full - pc.wandering)
    report.expect('baseline.periodic_all', pc.periodic == full, full - pc.periodic)
    report.expect('baseline.almost_periodic_all', pc.almost_periodic == full, full - pc.almost_periodic)
    report.expect('baseline.weakly_periodic_empty', not pc.weakly_periodic, pc.weakly_periodic)
    report.expect('fixed_by_recurrence', fixed_points(a) == fixed_points_by_recurrence(a),
                  fixed_points(a) ^ fixed_points_by_recurrence(a))
    return report
