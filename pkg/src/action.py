"""
Groupoid actions, recurrence sets and ordinary morphisms of actions
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from errors import (EndpointMismatchError, HypothesisError, InvalidInstanceError, NotBundleError,
                    NotWideError, Violation)
from fintop import FiniteSpace, SpaceMap, continuous_table, is_homeomorphism, subspace
from groupoid import (Groupoid, is_open_groupoid, product_set, recognize, subgroupoid,
                      subgroupoid_check, validate_functor)
from utils import fmt_set, subset_pairs
from verdict import CheckReport, first_failing

LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Action:
    """(Ξ, ρ, •, Σ): `anchor[σ]` is the unit arrow ρ(σ), `act[(ξ, σ)]` is ξ•σ
    for every pair with d(ξ) = ρ(σ)."""
    gpd: Groupoid
    space: FiniteSpace
    anchor: tuple[int, ...]
    act: Mapping[tuple[int, int], int]

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def points(self) -> range:
        return self.space.points

    def rho(self, sigma: int) -> int:
        return self.anchor[sigma]

    def arrows_at(self, sigma: int) -> tuple[int, ...]:
        """Ξ_{ρ(σ)}, the arrows that can act on σ."""
        return self.gpd.source_fibers.get(self.anchor[sigma], ())

    def apply(self, xi: int, sigma: int) -> int:
        return self.act[(xi, sigma)]

    @cached_property
    def points_over(self) -> dict[int, tuple[int, ...]]:
        out = {x: [] for x in self.gpd.unit_list}
        for s in self.points:
            out.setdefault(self.anchor[s], []).append(s)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def anchor_map(self) -> SpaceMap:
        pos = self.gpd.unit_pos
        return SpaceMap(self.space, self.gpd.unit_space, tuple(pos[x] for x in self.anchor))

    def __repr__(self) -> str:
        return f"Action({self.gpd!r} on {self.n} points)"


def validate_action(a: Action, require_surjective_anchor: bool = True) -> Violation | None:
    g = a.gpd
    if len(a.anchor) != a.n or any(x not in g.units for x in a.anchor):
        return Violation('anchor_units', next((s for s, x in enumerate(a.anchor) if x not in g.units), None))
    if require_surjective_anchor and set(a.anchor) != set(g.units):
        return Violation('anchor_surjective', sorted(g.units - set(a.anchor)))
    expected = {(xi, s) for s in a.points for xi in a.arrows_at(s)}
    keys = set(a.act)
    if keys != expected:
        extra = sorted(keys - expected)
        missing = sorted(expected - keys)
        return Violation('act_domain', extra[0] if extra else missing[0])
    for pair, t in sorted(a.act.items()):
        if not (0 <= t < a.n):
            return Violation('act_domain', pair)
    for s in a.points:
        if a.act[(a.anchor[s], s)] != s:
            return Violation('unit_law', s)
    for (xi, s), t in sorted(a.act.items()):
        if a.anchor[t] != g.rng[xi]:
            return Violation('anchor_compat', (xi, s))
    for (xi, eta), p in sorted(g.mul.items()):
        for s in a.points_over.get(g.src[eta], ()):
            if a.act[(p, s)] != a.act[(xi, a.act[(eta, s)])]:
                return Violation('associativity', (xi, eta, s))
    bad = continuous_table(a.space, g.space, a.anchor)
    if bad is not None:
        return Violation('anchor_continuity', bad)
    abase, sbase = g.space.base, a.space.base
    for (xi, s), t in sorted(a.act.items()):
        target = sbase[t]
        for x2 in abase[xi]:
            for s2 in sbase[s]:
                u = a.act.get((x2, s2))
                if u is not None and u not in target:
                    return Violation('act_continuity', (xi, s))
    return None


# =============================================================================
# Standard actions
# =============================================================================
def canonical_action(g: Groupoid) -> Action:
    """Ξ acting on its units: ξ∗d(ξ) = r(ξ). Point i is unit_list[i]."""
    pos = g.unit_pos
    act = {(xi, pos[g.src[xi]]): pos[g.rng[xi]] for xi in g.arrows}
    return Action(g, g.unit_space, g.unit_list, act)


def self_action(g: Groupoid) -> Action:
    return Action(g, g.space, g.rng, dict(g.mul))


def restrict(a: Action, delta: Iterable[int]) -> Action:
    return restrict_with_inclusion(a, delta)[0]


def restrict_with_inclusion(a: Action, delta: Iterable[int]) -> tuple[Action, 'ActionMorphism']:
    """The action of a wide subgroupoid and the natural morphism (ι, id) into `a`."""
    g = a.gpd
    delta = g.space.check(delta)
    if not subgroupoid_check(g, delta).is_wide:
        raise NotWideError(f"{sorted(delta)} is not a wide subgroupoid")
    sub, old = subgroupoid(g, delta)
    pos = {p: i for i, p in enumerate(old)}
    act = {(pos[xi], s): t for (xi, s), t in a.act.items() if xi in pos}
    restricted = Action(sub, a.space, tuple(pos[x] for x in a.anchor), act)
    inclusion = ActionMorphism(restricted, a, tuple(old), tuple(a.points))
    return restricted, inclusion


def subaction(a: Action, keep: Iterable[int]) -> Action:
    """The action restricted to an invariant set of points."""
    keep = a.space.check(keep)
    if not keep or not is_invariant(a, keep):
        raise HypothesisError("subaction needs a nonempty invariant set")
    g = a.gpd
    units = {a.anchor[s] for s in keep}
    arrows = {xi for xi in g.arrows if g.src[xi] in units}
    sub, old = subgroupoid(g, arrows)
    apos = {p: i for i, p in enumerate(old)}
    space, kept = subspace(a.space, keep)
    spos = {p: i for i, p in enumerate(kept)}
    act = {(apos[xi], spos[s]): spos[t] for (xi, s), t in a.act.items() if s in spos}
    return Action(sub, space, tuple(apos[a.anchor[s]] for s in kept), act)


def relabel_action(a: Action, arrow_perm: Sequence[int], point_perm: Sequence[int]) -> tuple[Action, 'ActionMorphism']:
    """Transport `a` along permutations of arrow and point ids.

    Returns the relabelled action and the isomorphism from `a` onto it.
    """
    g = a.gpd
    ap, sp = list(arrow_perm), list(point_perm)
    ainv = _inverse_perm(ap)
    sinv = _inverse_perm(sp)
    space = FiniteSpace(tuple(g.labels[ainv[i]] for i in range(g.n)),
                        tuple(frozenset(ap[q] for q in g.space.base[ainv[i]]) for i in range(g.n)))
    h = Groupoid(space, frozenset(ap[x] for x in g.units),
                 tuple(ap[g.src[ainv[i]]] for i in range(g.n)),
                 tuple(ap[g.rng[ainv[i]]] for i in range(g.n)),
                 tuple(ap[g.inv[ainv[i]]] for i in range(g.n)),
                 {(ap[x], ap[y]): ap[z] for (x, y), z in g.mul.items()})
    sspace = FiniteSpace(tuple(a.space.labels[sinv[i]] for i in range(a.n)),
                         tuple(frozenset(sp[q] for q in a.space.base[sinv[i]]) for i in range(a.n)))
    b = Action(h, sspace, tuple(ap[a.anchor[sinv[i]]] for i in range(a.n)),
               {(ap[x], sp[s]): sp[t] for (x, s), t in a.act.items()})
    return b, ActionMorphism(a, b, tuple(ap), tuple(sp))


def _inverse_perm(p: Sequence[int]) -> list[int]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return inv


# =============================================================================
# Orbits, saturation, invariance
# =============================================================================
def recurrence_set(a: Action, m: Iterable[int], n: Iterable[int]) -> frozenset[int]:
    """Ξ̃_M^N: arrows moving some point of M into N."""
    m = a.space.check(m)
    n = a.space.check(n)
    out = set()
    for s in m:
        for xi in a.arrows_at(s):
            if a.act[(xi, s)] in n:
                out.add(xi)
    return frozenset(out)


def recurrence_set_bundle_formula(a: Action, seed: int = 0) -> bool:
    """Recurrence sets of a group bundle action against the fibrewise union."""
    g = a.gpd
    if not recognize(g).is_group_bundle:
        raise NotBundleError("the acting groupoid is not a group bundle")
    for m, n in subset_pairs(a.points, seed)[0]:
        fibrewise = set()
        for x in g.unit_list:
            over = set(a.points_over.get(x, ()))
            m_x, n_x = m & over, n & over
            group = g.source_fibers[x]
            fibrewise |= {xi for xi in group if any(a.act[(xi, s)] in n_x for s in m_x)}
        if recurrence_set(a, m, n) != fibrewise:
            labels = a.space.labels
            LOG.warning("bundle formula differs at M=%s N=%s", fmt_set(m, labels), fmt_set(n, labels))
            return False
    return True


def orbit(a: Action, sigma: int) -> frozenset[int]:
    a.space.check({sigma})
    return frozenset(a.act[(xi, sigma)] for xi in a.arrows_at(sigma))


def orbits(a: Action) -> list[frozenset[int]]:
    seen, out = set(), []
    for s in a.points:
        if s not in seen:
            o = orbit(a, s)
            seen |= o
            out.append(o)
    return out


def orbit_closure(a: Action, sigma: int) -> frozenset[int]:
    return a.space.closure(orbit(a, sigma))


def saturate(a: Action, m: Iterable[int]) -> frozenset[int]:
    out = set()
    for s in a.space.check(m):
        out |= orbit(a, s)
    return frozenset(out)


def is_invariant(a: Action, m: Iterable[int]) -> bool:
    m = a.space.check(m)
    return saturate(a, m) == m


def smallest_closed_invariant(a: Action, sigma: int) -> frozenset[int]:
    """C_σ: alternate saturation and closure from {σ} until stable."""
    s = frozenset({sigma})
    for _ in range(a.n + 1):
        nxt = a.space.closure(saturate(a, s))
        if nxt == s:
            break
        s = nxt
    return s


def translate(a: Action, arrows: Iterable[int], m: Iterable[int]) -> frozenset[int]:
    """A•M."""
    arrows = a.gpd.space.check(arrows)
    m = a.space.check(m)
    return frozenset(a.act[(xi, s)] for s in m for xi in a.arrows_at(s) if xi in arrows)


def translation_openness_check(a: Action) -> CheckReport:
    """A•M is open for open A and M once d is open; decided on basic opens."""
    report = CheckReport('caofi')

    def evaluate():
        abase, sbase = a.gpd.space.base, a.space.base
        for xi in a.gpd.arrows:
            for s in a.points:
                moved = translate(a, abase[xi], sbase[s])
                if not a.space.is_open(moved):
                    return False, (xi, s)
        return True, None

    report.gated('caofi', {'groupoid open': is_open_groupoid(a.gpd)}, evaluate)
    return report


def self_action_formula_check(g: Groupoid, seed: int = 0) -> bool:
    """Ξ̃_M^N = {ξ : Ξ^{d(ξ)} ∩ M ∩ ξ⁻¹N ≠ ∅} for the action of Ξ on itself."""
    a = self_action(g)
    for m, n in subset_pairs(g.arrows, seed)[0]:
        formula = set()
        for xi in g.arrows:
            landing = g.range_fibers.get(g.src[xi], ())
            pulled = product_set(g, {g.inv[xi]}, n)
            if set(landing) & m & pulled:
                formula.add(xi)
        if recurrence_set(a, m, n) != formula:
            return False
    return True


# =============================================================================
# Morphisms
# =============================================================================
@dataclass(frozen=True, eq=False)
class ActionMorphism:
    """(Ψ, f): an arrow map `psi` and a point map `f`."""
    source: Action
    target: Action
    psi: tuple[int, ...]
    f: tuple[int, ...]

    @property
    def psi_units(self) -> dict[int, int]:
        return {x: self.psi[x] for x in self.source.gpd.unit_list}

    @property
    def f_map(self) -> SpaceMap:
        return SpaceMap(self.source.space, self.target.space, self.f)

    def __repr__(self) -> str:
        return f"ActionMorphism({self.source!r} -> {self.target!r})"


def validate_morphism(m: ActionMorphism) -> Violation | None:
    src, tgt = m.source, m.target
    if len(m.f) != src.n or any(not (0 <= t < tgt.n) for t in m.f):
        return Violation('f_table', len(m.f))
    v = validate_functor(src.gpd, tgt.gpd, m.psi)
    if v is not None:
        return v
    bad = continuous_table(src.space, tgt.space, m.f)
    if bad is not None:
        return Violation('f_continuity', bad)
    for s in src.points:
        if tgt.anchor[m.f[s]] != m.psi[src.anchor[s]]:
            return Violation('anchor_diagram', s)
    for (xi, s), t in sorted(src.act.items()):
        if m.f[t] != tgt.act[(m.psi[xi], m.f[s])]:
            return Violation('equivariance', (xi, s))
    return None


def _checked(m: ActionMorphism, what: str) -> ActionMorphism:
    v = validate_morphism(m)
    if v is not None:
        raise InvalidInstanceError(what, v)
    return m


def compose_morphisms(m2: ActionMorphism, m1: ActionMorphism) -> ActionMorphism:
    """m2 after m1."""
    if m1.target is not m2.source:
        raise EndpointMismatchError("the first morphism's target is not the second's source")
    return _checked(ActionMorphism(m1.source, m2.target,
                                   tuple(m2.psi[x] for x in m1.psi),
                                   tuple(m2.f[s] for s in m1.f)),
                    "composite morphism")


def identity_morphism(a: Action) -> ActionMorphism:
    return ActionMorphism(a, a, tuple(a.gpd.arrows), tuple(a.points))


def terminal_morphism(a: Action, can: Action | None = None) -> ActionMorphism:
    """(id, ρ) onto the canonical action of the same groupoid."""
    if can is None:
        can = canonical_action(a.gpd)
    elif can.gpd is not a.gpd:
        raise EndpointMismatchError("canonical action of another groupoid")
    pos = a.gpd.unit_pos
    return ActionMorphism(a, can, tuple(a.gpd.arrows), tuple(pos[x] for x in a.anchor))


def is_epimorphism(m: ActionMorphism) -> bool:
    return set(m.psi) == set(m.target.gpd.arrows) and set(m.f) == set(m.target.points)


def homoconstruction(target: Action, source_gpd: Groupoid,
                     psi: Sequence[int]) -> tuple[Action, ActionMorphism]:
    """Pull `target` back along Ψ: Ξ → Ξ′ whose unit part is a homeomorphism.

    ρ := ψ⁻¹∘ρ′ and ξ•σ′ := Ψ(ξ)•′σ′ on the same space; the morphism is (Ψ, id).
    """
    psi = tuple(psi)
    v = validate_functor(source_gpd, target.gpd, psi)
    if v is not None:
        raise InvalidInstanceError("arrow map is not a groupoid morphism", v)
    tpos = target.gpd.unit_pos
    unit_map = SpaceMap(source_gpd.unit_space, target.gpd.unit_space,
                        tuple(tpos[psi[x]] for x in source_gpd.unit_list))
    if not is_homeomorphism(unit_map):
        raise HypothesisError("the unit restriction of Ψ is not a homeomorphism")
    back = {psi[x]: x for x in source_gpd.unit_list}
    anchor = tuple(back[x] for x in target.anchor)
    by_unit: dict[int, list[int]] = {}
    for s, x in enumerate(anchor):
        by_unit.setdefault(x, []).append(s)
    act = {(xi, s): target.act[(psi[xi], s)]
           for xi in source_gpd.arrows for s in by_unit.get(source_gpd.src[xi], ())}
    pulled = Action(source_gpd, target.space, anchor, act)
    v = validate_action(pulled)
    if v is not None:
        raise InvalidInstanceError("pulled-back action", v)
    return pulled, _checked(ActionMorphism(pulled, target, psi, tuple(target.points)), "pullback morphism")


@dataclass(frozen=True)
class RecurrenceTransport:
    lhs: frozenset[int]
    rhs: frozenset[int]
    inclusion: bool
    equality_hypotheses_met: bool
    equality: bool

    def to_dict(self) -> dict:
        return {'lhs': sorted(self.lhs), 'rhs': sorted(self.rhs), 'inclusion': self.inclusion,
                'equality_hypotheses_met': self.equality_hypotheses_met, 'equality': self.equality}


def label_hypotheses(m: ActionMorphism) -> bool:
    """Ψ surjective, ψ and f injective."""
    units = m.source.gpd.unit_list
    return (set(m.psi) == set(m.target.gpd.arrows)
            and len({m.psi[x] for x in units}) == len(units)
            and len(set(m.f)) == len(m.f))


def transport_recurrence(m: ActionMorphism, mm: Iterable[int], nn: Iterable[int]) -> RecurrenceTransport:
    """Ψ(Ξ̃_M^N) against (Ξ̃′)_{f(M)}^{f(N)}."""
    mm = m.source.space.check(mm)
    nn = m.source.space.check(nn)
    lhs = frozenset(m.psi[xi] for xi in recurrence_set(m.source, mm, nn))
    rhs = recurrence_set(m.target, {m.f[s] for s in mm}, {m.f[s] for s in nn})
    return RecurrenceTransport(lhs, rhs, lhs <= rhs, label_hypotheses(m), lhs == rhs)


def label_sweep(m: ActionMorphism, seed: int = 0) -> CheckReport:
    pairs, _ = subset_pairs(m.source.points, seed)
    results = [(mn, transport_recurrence(m, *mn)) for mn in pairs]
    report = CheckReport('label')
    report.expect_all('inclusion', results, lambda r: r[1].inclusion)
    units = m.source.gpd.unit_list
    hyps = {'Psi surjective': set(m.psi) == set(m.target.gpd.arrows),
            'psi injective': len({m.psi[x] for x in units}) == len(units),
            'f injective': len(set(m.f)) == len(m.f)}
    report.gated('equality', hyps, lambda: first_failing(results, lambda r: r[1].equality))
    return report
