"""
Algebraic morphisms (actors) of groupoids and of groupoid actions
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from action import (Action, ActionMorphism, canonical_action, is_epimorphism, is_invariant, orbit,
                    orbit_closure, orbits, recurrence_set, saturate, validate_action, validate_morphism)
from dynamics import (almost_periodic_points, classify, invariant_sets, is_minimal_subset, limit_set,
                      minimal_subsets, periodic_points, recurrent_points, weakly_periodic_points)
from errors import EndpointMismatchError, HypothesisError, InvalidInstanceError, Violation
from fintop import Bornology, SpaceMap, continuous_table, is_homeomorphism
from groupoid import Groupoid, is_open_groupoid, product_set, subgroupoid_check, trivial_groupoid, validate_functor
from utils import powerset, subset_pairs
from verdict import CheckReport, Clause, Mode, Status, first_failing

LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Actor:
    """Ξ ⇝ Ξ′: an action of Ξ on the arrows of Ξ′ commuting with right translations.

    `mu[η′]` is a unit arrow of Ξ, `diamond[(ξ, η′)]` is ξ⋄η′ for d(ξ) = μ(η′).
    `relaxed` accepts a non-surjective μ.
    """
    source: Groupoid
    target: Groupoid
    mu: tuple[int, ...]
    diamond: Mapping[tuple[int, int], int]
    relaxed: bool = False

    @property
    def nu(self) -> dict[int, int]:
        return {x: self.mu[x] for x in self.target.unit_list}

    @cached_property
    def as_action(self) -> Action:
        return Action(self.source, self.target.space, self.mu, self.diamond)

    def apply(self, xi: int, eta: int) -> int:
        return self.diamond[(xi, eta)]

    def __repr__(self) -> str:
        return f"Actor({self.source!r} ~> {self.target!r})"


def actor_as_action(phi: Actor) -> Action:
    return phi.as_action


def validate_actor(phi: Actor, relax: bool | None = None) -> Violation | None:
    relax = phi.relaxed if relax is None else relax
    g, h = phi.source, phi.target
    if len(phi.mu) != h.n or any(x not in g.units for x in phi.mu):
        return Violation('mu_table', len(phi.mu))
    v = validate_action(phi.as_action, require_surjective_anchor=not relax)
    if v is not None:
        return v
    if relax and set(phi.mu) != set(g.units):
        LOG.warning("accepting actor with non-surjective mu, missing units %s", sorted(g.units - set(phi.mu)))
    for (eta, zeta) in sorted(h.mul):
        if phi.mu[h.mul[(eta, zeta)]] != phi.mu[eta]:
            return Violation('beans', (eta, zeta))
    for (xi, eta), t in sorted(phi.diamond.items()):
        if h.src[t] != h.src[eta]:
            return Violation('teans', (xi, eta))
    for (xi, eta), t in sorted(phi.diamond.items()):
        for zeta in h.range_fibers.get(h.src[eta], ()):
            if phi.diamond[(xi, h.mul[(eta, zeta)])] != h.mul[(t, zeta)]:
                return Violation('means', (xi, eta, zeta))
    for eta in h.arrows:
        if phi.mu[eta] != phi.mu[h.rng[eta]]:
            return Violation('commut', eta)
    return None


def _checked(phi: Actor, what: str) -> Actor:
    v = validate_actor(phi)
    if v is not None:
        raise InvalidInstanceError(what, v)
    return phi


# =============================================================================
# Constructors
# =============================================================================
def identity_actor(g: Groupoid) -> Actor:
    """Left translation of Ξ on itself."""
    return Actor(g, g, g.rng, dict(g.mul))


def group_actor(group: Groupoid, group2: Groupoid, beta: Sequence[int]) -> Actor:
    """ξ⋄ξ′ = β(ξ)ξ′ for a group morphism β."""
    if len(group.units) != 1 or len(group2.units) != 1:
        raise HypothesisError("group actors need one-unit groupoids on both sides")
    v = validate_functor(group, group2, beta)
    if v is not None:
        raise InvalidInstanceError("β", v)
    e = group.unit_list[0]
    diamond = {(xi, eta): group2.mul[(beta[xi], eta)] for xi in group.arrows for eta in group2.arrows}
    return _checked(Actor(group, group2, tuple(e for _ in group2.arrows), diamond), "group actor")


def space_actor(xspace, x2space, nu: Sequence[int], relaxed: bool = False) -> Actor:
    """Trivial groupoids on X and X′ and a continuous ν: X′ → X."""
    g, h = trivial_groupoid(xspace), trivial_groupoid(x2space)
    nu = tuple(nu)
    bad = continuous_table(x2space, xspace, nu)
    if bad is not None:
        raise InvalidInstanceError("ν", Violation('nu_continuity', bad))
    diamond = {(nu[x], x): x for x in h.arrows}
    return _checked(Actor(g, h, nu, diamond, relaxed), "space actor")


def bundle_actor(bundle: Groupoid, bundle2: Groupoid, nu: Mapping[int, int],
                 beta: Mapping[tuple[int, int], int], relaxed: bool = False) -> Actor:
    """Group bundles with ν on units and a group morphism β_{x′} per unit x′.

    `beta[(x′, ξ)]` is β_{x′}(ξ) for ξ over ν(x′); ξ⋄η′ = β_{r′(η′)}(ξ) η′.
    """
    mu = tuple(nu[bundle2.rng[eta]] for eta in bundle2.arrows)
    diamond = {}
    for eta in bundle2.arrows:
        x2 = bundle2.rng[eta]
        for xi in bundle.source_fibers[mu[eta]]:
            diamond[(xi, eta)] = bundle2.mul[(beta[(x2, xi)], eta)]
    return _checked(Actor(bundle, bundle2, mu, diamond, relaxed), "bundle actor")


def compose_actors(phi23: Actor, phi12: Actor) -> Actor:
    """ξ₁⋄₁₃ξ₃ = (ξ₁⋄₁₂μ₂₃(ξ₃))⋄₂₃ξ₃ and μ₁₃ = μ₁₂∘μ₂₃."""
    if phi12.target is not phi23.source:
        raise EndpointMismatchError("the first actor's target is not the second's source")
    g1, g3 = phi12.source, phi23.target
    mu13 = tuple(phi12.mu[phi23.mu[z]] for z in g3.arrows)
    diamond = {}
    for z in g3.arrows:
        x2 = phi23.mu[z]
        for xi in g1.source_fibers.get(mu13[z], ()):
            diamond[(xi, z)] = phi23.diamond[(phi12.diamond[(xi, x2)], z)]
    return _checked(Actor(g1, g3, mu13, diamond, phi12.relaxed or phi23.relaxed), "composite actor")


def diamond_orbit(phi: Actor, eta: int) -> frozenset[int]:
    return orbit(phi.as_action, eta)


def diamond_saturation(phi: Actor, arrows: Iterable[int]) -> frozenset[int]:
    """Sat^⋄(S): union of ⋄-orbits."""
    return saturate(phi.as_action, arrows)


# =============================================================================
# Algebraic morphisms of actions
# =============================================================================
@dataclass(frozen=True, eq=False)
class ActorOfActions:
    actor: Actor
    theta: Action
    theta2: Action
    g: tuple[int, ...]

    @property
    def actions(self) -> tuple[Action, Action]:
        return self.theta, self.theta2

    def image(self, m: Iterable[int]) -> frozenset[int]:
        return frozenset(self.g[s] for s in self.theta.space.check(m))

    def preimage(self, m: Iterable[int]) -> frozenset[int]:
        m = self.theta2.space.check(m)
        return frozenset(s for s in self.theta.points if self.g[s] in m)

    @cached_property
    def reached_units(self) -> frozenset[int]:
        """ρ′(g(Σ))."""
        return frozenset(self.theta2.anchor[t] for t in self.g)

    @cached_property
    def saturates(self) -> bool:
        """Sat^⋄[ρ′(g(Σ))] = Ξ′."""
        return diamond_saturation(self.actor, self.reached_units) == self.theta2.gpd.space.full

    def is_g_injective(self) -> bool:
        return len(set(self.g)) == len(self.g)

    def is_g_surjective(self) -> bool:
        return set(self.g) == set(self.theta2.points)


def validate_actor_of_actions(pa: ActorOfActions) -> Violation | None:
    phi, theta, theta2 = pa.actor, pa.theta, pa.theta2
    if theta.gpd is not phi.source or theta2.gpd is not phi.target:
        return Violation('endpoints', None)
    v = validate_actor(phi)
    if v is not None:
        return v
    if len(pa.g) != theta.n or any(not (0 <= t < theta2.n) for t in pa.g):
        return Violation('g_table', len(pa.g))
    bad = continuous_table(theta.space, theta2.space, pa.g)
    if bad is not None:
        return Violation('g_continuity', bad)
    for s in theta.points:
        if theta.anchor[s] != phi.mu[theta2.anchor[pa.g[s]]]:
            return Violation('fuame', s)
    for (xi, s), t in sorted(theta.act.items()):
        x2 = theta2.anchor[pa.g[s]]
        if pa.g[t] != theta2.act[(phi.diamond[(xi, x2)], pa.g[s])]:
            return Violation('siete', (xi, s))
    return None


def _checked_pair(pa: ActorOfActions, what: str) -> ActorOfActions:
    v = validate_actor_of_actions(pa)
    if v is not None:
        raise InvalidInstanceError(what, v)
    return pa


def compose_actor_of_actions(pa23: ActorOfActions, pa12: ActorOfActions) -> ActorOfActions:
    if pa12.theta2 is not pa23.theta:
        raise EndpointMismatchError("the first morphism's target action is not the second's source")
    actor = compose_actors(pa23.actor, pa12.actor)
    g = tuple(pa23.g[t] for t in pa12.g)
    return _checked_pair(ActorOfActions(actor, pa12.theta, pa23.theta2, g), "composite algebraic morphism")


def identity_actor_of_actions(a: Action) -> ActorOfActions:
    return ActorOfActions(identity_actor(a.gpd), a, a, tuple(a.points))


def terminal_actor_of_actions(phi: Actor, g: Sequence[int]) -> ActorOfActions:
    """Between the canonical actions; `g` maps unit positions of Ξ to those of Ξ′."""
    return _checked_pair(ActorOfActions(phi, canonical_action(phi.source), canonical_action(phi.target), tuple(g)),
                         "algebraic morphism of canonical actions")


# =============================================================================
# Checks
# =============================================================================
def lemma_constant_check(phi: Actor, pa: ActorOfActions | None = None) -> CheckReport:
    h = phi.target
    report = CheckReport('constant')
    report.expect_all('d_constant_on_orbits', h.arrows,
                      lambda eta: all(h.src[z] == h.src[eta] for z in diamond_orbit(phi, eta)))
    if pa is None:
        return report
    hyps = {'saturating': pa.saturates}
    report.gated('orbits_are_fibres', hyps,
                 lambda: first_failing(h.arrows, lambda eta: diamond_orbit(phi, eta) == set(h.source_fibers[h.src[eta]])))
    report.gated('anchor_image_surjective', hyps,
                 lambda: (pa.reached_units == h.units, sorted(h.units - pa.reached_units)))
    return report


@dataclass(frozen=True)
class LiemaResult:
    lhs: frozenset[int]
    rhs: frozenset[int]
    inclusion: bool
    eq_hyp: bool
    equality: bool

    def to_dict(self) -> dict:
        return {'lhs': sorted(self.lhs), 'rhs': sorted(self.rhs), 'inclusion': self.inclusion,
                'eq_hyp': self.eq_hyp, 'equality': self.equality}


def liema_check(pa: ActorOfActions, m: Iterable[int], n: Iterable[int]) -> LiemaResult:
    """Ξ̃_M^N ⋄ ρ′(g(M)) against (Ξ̃′)_{g(M)}^{g(N)}.

    Each ξ is paired with a point σ ∈ M it carries into N; candidates are
    scanned in id order.
    """
    theta, theta2, phi = pa.theta, pa.theta2, pa.actor
    m = theta.space.check(m)
    n = theta.space.check(n)
    lhs = set()
    for s in sorted(m):
        x2 = theta2.anchor[pa.g[s]]
        for xi in theta.arrows_at(s):
            if theta.act[(xi, s)] in n:
                lhs.add(phi.diamond[(xi, x2)])
    lhs = frozenset(lhs)
    rhs = recurrence_set(theta2, pa.image(m), pa.image(n))
    return LiemaResult(lhs, rhs, lhs <= rhs, pa.saturates and pa.is_g_injective(), lhs == rhs)


def liema_sweep(pa: ActorOfActions, seed: int = 0) -> CheckReport:
    pairs, _ = subset_pairs(pa.theta.points, seed)
    results = [(mn, liema_check(pa, *mn)) for mn in pairs]
    report = CheckReport('liema')
    report.expect_all('inclusion', results, lambda r: r[1].inclusion)
    report.gated('equality', {'saturating': pa.saturates, 'g injective': pa.is_g_injective()},
                 lambda: first_failing(results, lambda r: r[1].equality))
    return report


def jnitzel_transport(pa: ActorOfActions, b: Bornology | None = None, b2: Bornology | None = None) -> CheckReport:
    """Orbits, invariant sets, transitivity and periodicity carried by g."""
    theta, theta2, g = pa.theta, pa.theta2, pa.g
    b = b or Bornology.all_subsets(theta.gpd.space)
    b2 = b2 or Bornology.all_subsets(theta2.gpd.space)
    mode = Mode.FAITHFUL if b.is_all and b2.is_all else Mode.MODEL_LEVEL
    report = CheckReport('jnitzel', bornology={'arrows': b.to_spec(), 'arrows_prime': b2.to_spec()})

    orb2 = {t: orbit(theta2, t) for t in theta2.points}
    report.expect_all('jnitzel.same_orbit', [(s, t) for o in orbits(theta) for s in o for t in o],
                      lambda st: g[st[1]] in orb2[g[st[0]]])
    report.expect_all('jnitzel.orbit_image', theta.points, lambda s: pa.image(orbit(theta, s)) <= orb2[g[s]])
    report.expect_all('jnitzel.orbit_closure_image', theta.points,
                      lambda s: pa.image(orbit_closure(theta, s)) <= orbit_closure(theta2, g[s]))
    report.expect_all('jnitzel.preimage_invariant', invariant_sets(theta2),
                      lambda m: is_invariant(theta, pa.preimage(m)))

    sat = {'saturating': pa.saturates}
    report.gated('jnitzel.orbit_image_equality', sat,
                 lambda: first_failing(theta.points, lambda s: pa.image(orbit(theta, s)) == orb2[g[s]]))
    report.gated('jnitzel.image_invariant', sat,
                 lambda: first_failing(invariant_sets(theta), lambda m: is_invariant(theta2, pa.image(m))))
    periodic2 = periodic_points(theta2, b2)
    report.gated('siaia.periodic', sat,
                 lambda: first_failing(sorted(periodic_points(theta, b)), lambda s: g[s] in periodic2), mode=mode)
    almost2 = almost_periodic_points(theta2, b2)
    # finite spaces are locally compact
    report.gated('siaia2.almost_periodic', {**sat, "Sigma' locally compact": True},
                 lambda: first_failing(sorted(almost_periodic_points(theta, b)), lambda s: g[s] in almost2), mode=mode)

    surj = {'g surjective': pa.is_g_surjective()}
    p, p2 = classify(theta), classify(theta2)
    for flag in ('T', 'PT', 'WPT', 'TT1', 'TT2', 'minimal'):
        report.gated(f"sentintaa.{flag}", surj, lambda f=flag: (not p.flag(f) or p2.flag(f), [p.to_dict(), p2.to_dict()]))
    eligible = [m for m in minimal_subsets(theta)
                if theta2.space.is_closed(pa.image(m)) and is_invariant(theta2, pa.image(m))]
    report.gated('sentintaa.minimal_image', {**surj, 'closed invariant image': bool(eligible)},
                 lambda: first_failing(eligible, lambda m: is_minimal_subset(theta2, pa.image(m))))
    report.gated('sentinta.RT', surj, lambda: (not p.RT or p2.RT, [p.to_dict(), p2.to_dict()]))
    return report


def is_proper_actor(phi: Actor, b: Bornology | None = None, b2: Bornology | None = None) -> bool:
    """Every ξ ↦ ξ⋄x′ on Ξ_{ν(x′)} pulls bounded sets back to bounded sets."""
    core = phi.source.space.full if b is None else b.core
    core2 = phi.target.space.full if b2 is None else b2.core
    for x2 in phi.target.unit_list:
        for xi in phi.source.source_fibers.get(phi.mu[x2], ()):
            if phi.diamond[(xi, x2)] in core2 and xi not in core:
                return False
    return True


def transflim_check(pa: ActorOfActions, b: Bornology | None = None, b2: Bornology | None = None) -> CheckReport:
    theta, theta2, g = pa.theta, pa.theta2, pa.g
    b = b or Bornology.all_subsets(theta.gpd.space)
    b2 = b2 or Bornology.all_subsets(theta2.gpd.space)
    mode = Mode.FAITHFUL if b.is_all and b2.is_all else Mode.MODEL_LEVEL
    report = CheckReport('transflim', bornology={'arrows': b.to_spec(), 'arrows_prime': b2.to_spec()})
    hyps = {'actor proper': is_proper_actor(pa.actor, b, b2)}

    def limits():
        for s in theta.points:
            if not pa.image(limit_set(theta, s, b)) <= limit_set(theta2, g[s], b2):
                return False, s
        return True, None

    report.gated('limit_points', hyps, limits, mode=mode)
    rec2 = recurrent_points(theta2, b2)
    report.gated('recurrent', hyps,
                 lambda: first_failing(sorted(recurrent_points(theta, b)), lambda s: g[s] in rec2), mode=mode)
    weak2 = weakly_periodic_points(theta2, b2)
    report.gated('weakly_periodic', hyps,
                 lambda: first_failing(sorted(weakly_periodic_points(theta, b)), lambda s: g[s] in weak2), mode=mode)
    return report


# =============================================================================
# Ordinary morphisms as actors
# =============================================================================
def _unit_map(g: Groupoid, h: Groupoid, table: Mapping[int, int]) -> SpaceMap:
    pos = h.unit_pos
    return SpaceMap(g.unit_space, h.unit_space, tuple(pos[table[x]] for x in g.unit_list))


def miraj_to_actor(m: ActionMorphism) -> ActorOfActions:
    """ν = ψ⁻¹, μ = ψ⁻¹∘r′ and ξ⋄ξ′ = Ψ(ξ)ξ′, with g = f."""
    v = validate_morphism(m)
    if v is not None:
        raise InvalidInstanceError("ordinary morphism", v)
    g, h = m.source.gpd, m.target.gpd
    psi = m.psi_units
    if not is_homeomorphism(_unit_map(g, h, psi)):
        raise HypothesisError("the unit restriction of Ψ is not a homeomorphism")
    back = {y: x for x, y in psi.items()}
    mu = tuple(back[h.rng[eta]] for eta in h.arrows)
    diamond = {(xi, eta): h.mul[(m.psi[xi], eta)]
               for eta in h.arrows for xi in g.source_fibers[mu[eta]]}
    return _checked_pair(ActorOfActions(Actor(g, h, mu, diamond), m.source, m.target, m.f),
                         "actor of an ordinary morphism")


def miraj_to_morphism(pa: ActorOfActions) -> ActionMorphism:
    """ψ = ν⁻¹ and Ψ(ξ) = ξ⋄ψ(d(ξ)), with f = g."""
    phi = pa.actor
    g, h = phi.source, phi.target
    nu = phi.nu
    if not is_homeomorphism(_unit_map(h, g, nu)):
        raise HypothesisError("ν is not a homeomorphism")
    psi_units = {x: x2 for x2, x in nu.items()}
    psi = tuple(phi.diamond[(xi, psi_units[g.src[xi]])] for xi in g.arrows)
    m = ActionMorphism(pa.theta, pa.theta2, psi, pa.g)
    v = validate_morphism(m)
    if v is not None:
        raise InvalidInstanceError("morphism of an actor", v)
    return m


def miraj_check(m: ActionMorphism) -> CheckReport:
    """Both round trips between morphisms and actors are identities."""
    report = CheckReport('miraj')
    pa = miraj_to_actor(m)
    back = miraj_to_morphism(pa)
    report.expect('morphism_round_trip', back.psi == m.psi and back.f == m.f,
                  {'psi': [list(m.psi), list(back.psi)], 'f': [list(m.f), list(back.f)]})
    again = miraj_to_actor(back)
    same = (again.actor.mu == pa.actor.mu and dict(again.actor.diamond) == dict(pa.actor.diamond)
            and again.g == pa.g)
    report.expect('actor_round_trip', same)
    return report


def image_saturation_check(m: ActionMorphism, pa: ActorOfActions | None = None) -> CheckReport:
    """Ψ(Ξ) = Sat^⋄(X′), and epimorphisms are the saturating surjective ones."""
    pa = pa or miraj_to_actor(m)
    h = m.target.gpd
    report = CheckReport('image')
    image = frozenset(m.psi)
    sat = diamond_saturation(pa.actor, h.units)
    report.expect('image_is_saturation', image == sat, {'image': image, 'saturation': sat})
    report.expect('epimorphism_criterion', is_epimorphism(m) == (pa.is_g_surjective() and pa.saturates),
                  {'epimorphism': is_epimorphism(m), 'g surjective': pa.is_g_surjective(),
                   'saturating': pa.saturates})
    return report


def structure_check(phi: Actor, y: Iterable[int], z: Iterable[int],
                    pa: ActorOfActions | None = None) -> CheckReport:
    h = phi.target
    y = h.check_units(y)
    z = h.check_units(z)
    report = CheckReport('structure')
    sat_y = diamond_saturation(phi, y)
    sat_all = diamond_saturation(phi, h.units)
    report.expect('subsemigroupoid', product_set(h, sat_y, sat_y) <= sat_y, sorted(sat_y))
    report.expect('absorbs_saturated_units', product_set(h, sat_all, sat_y) <= sat_y, sorted(sat_y))
    y_invariant = all((h.src[e] in y) == (h.rng[e] in y) for e in h.arrows)
    report.gated('subgroupoid', {'Y invariant': y_invariant},
                 lambda: (subgroupoid_check(h, sat_y).is_subgroupoid, sorted(sat_y)))
    report.expect('saturation_determines_units',
                  (sat_y == diamond_saturation(phi, z)) == (y == z), [sorted(y), sorted(z)])
    if pa is not None:
        reached = diamond_saturation(phi, pa.reached_units)
        report.expect('anchor_image_subgroupoid', subgroupoid_check(h, reached).is_subgroupoid, sorted(reached))
    return report


def structure_sweep(phi: Actor, pa: ActorOfActions | None = None) -> CheckReport:
    """structure_check over every pair of unit subsets."""
    subsets = list(powerset(phi.target.unit_list))
    kept: dict[str, Clause] = {}
    for y in subsets:
        for z in subsets:
            for c in structure_check(phi, y, z, pa).clauses:
                seen = kept.get(c.name)
                if seen is None or (c.status is Status.VIOLATED and seen.status is not Status.VIOLATED) \
                        or (c.status is Status.HOLDS and seen.status is Status.NOT_APPLICABLE):
                    kept[c.name] = c
    return CheckReport('structure', list(kept.values()))


def enfin_check(phi: Actor) -> CheckReport:
    report = CheckReport('enfin')
    saturating = diamond_saturation(phi, phi.target.units) == phi.target.space.full
    report.gated('target_open', {'source groupoid open': is_open_groupoid(phi.source),
                                 'units saturate': saturating},
                 lambda: (is_open_groupoid(phi.target), None))
    return report


def saspermam_check(pa23: ActorOfActions, pa12: ActorOfActions) -> CheckReport:
    """The composite of two algebraic morphisms of actions validates."""
    report = CheckReport('saspermam')
    try:
        pa13 = compose_actor_of_actions(pa23, pa12)
    except InvalidInstanceError as e:
        report.expect('composite_valid', False, e.violation.to_dict() if e.violation else str(e))
        return report
    report.expect('composite_valid', True)
    report.expect_all('g_composes', pa12.theta.points, lambda s: pa13.g[s] == pa23.g[pa12.g[s]])
    return report


def commut_check(phi: Actor) -> CheckReport:
    """μ = ν∘r′ recomputed from the unit restriction."""
    h = phi.target
    nu = phi.nu
    report = CheckReport('commut')
    report.expect_all('mu_factors_through_range', h.arrows, lambda eta: phi.mu[eta] == nu[h.rng[eta]])
    report.expect('nu_lands_in_units', all(x in phi.source.units for x in nu.values()), nu)
    return report
