"""
Pullback groupoids and actions, generalized vague morphisms and the
transport of recurrence and dynamics along them
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from action import (Action, ActionMorphism, is_epimorphism, is_invariant, orbit, orbit_closure,
                    recurrence_set, validate_action, validate_morphism)
from dynamics import (almost_periodic_points, classify, invariant_sets,
                      is_minimal_subset, limit_set, minimal_subsets, periodic_points, recurrent_points,
                      wandering_points)
from errors import (EndpointMismatchError, HypothesisError, InvalidInstanceError, NotAUnitError,
                    Violation)
from fintop import Bornology, FiniteSpace, SpaceMap, continuous_table, product_subspace, proper_table
from groupoid import (Groupoid, from_functions, is_open_groupoid, isotropy, product_set, validate_functor,
                      validate_groupoid)
from utils import subset_pairs
from verdict import CheckReport, Mode, first_failing

LOG = logging.getLogger(__name__)


# =============================================================================
# Pullback groupoid Ξ(π, A)
# =============================================================================
@dataclass(frozen=True, eq=False)
class PullbackGroupoid:
    """Triples (a, ξ, b) with π(a) = r(ξ) and π(b) = d(ξ), in lexicographic id order.

    `pi[a]` is the unit arrow π(a) of the base groupoid.
    """
    base: Groupoid
    aspace: FiniteSpace
    pi: tuple[int, ...]
    realized: Groupoid
    triples: tuple[tuple[int, int, int], ...]

    @cached_property
    def index(self) -> dict[tuple[int, int, int], int]:
        return {t: i for i, t in enumerate(self.triples)}

    @cached_property
    def Pi(self) -> tuple[int, ...]:
        return tuple(t[1] for t in self.triples)

    @cached_property
    def unit_of(self) -> tuple[int, ...]:
        """Arrow id of the unit (a, π(a), a), per point a of A."""
        return tuple(self.index[(a, self.pi[a], a)] for a in self.aspace.points)

    @cached_property
    def point_of_unit(self) -> dict[int, int]:
        return {u: a for a, u in enumerate(self.unit_of)}

    def pi_preimage(self, arrows: Iterable[int]) -> frozenset[int]:
        """Π⁻¹(S)."""
        s = self.base.space.check(arrows)
        return frozenset(i for i, xi in enumerate(self.Pi) if xi in s)

    def __repr__(self) -> str:
        return f"PullbackGroupoid({self.realized.n} triples over {self.base!r})"


def build_pullback(g: Groupoid, pi: Sequence[int], aspace: FiniteSpace) -> PullbackGroupoid:
    pi = tuple(pi)
    if len(pi) != aspace.n:
        raise InvalidInstanceError("π", Violation('pi_table', len(pi)))
    bad = [a for a, x in enumerate(pi) if x not in g.units]
    if bad:
        raise NotAUnitError(f"π sends {bad} outside the units")
    if set(pi) != set(g.units):
        raise HypothesisError("π must be surjective onto the units")
    bad_point = continuous_table(aspace, g.space, pi)
    if bad_point is not None:
        raise InvalidInstanceError("π", Violation('pi_continuity', bad_point))

    over: dict[int, list[int]] = {}
    for a, x in enumerate(pi):
        over.setdefault(x, []).append(a)
    triples = [(a, xi, b) for a in aspace.points for xi in g.range_fibers[pi[a]] for b in over[g.src[xi]]]
    labels = [f"({aspace.labels[a]},{g.labels[xi]},{aspace.labels[b]})" for a, xi, b in triples]
    topo = product_subspace([aspace, g.space, aspace], triples, labels)
    realized = from_functions(
        triples, labels, topo,
        is_unit=lambda t: t[0] == t[2] and t[1] == pi[t[0]],
        d=lambda t: (t[2], pi[t[2]], t[2]),
        r=lambda t: (t[0], pi[t[0]], t[0]),
        compose=lambda t, u: (t[0], g.mul[(t[1], u[1])], u[2]),
        inverse=lambda t: (t[2], g.inv[t[1]], t[0]),
    )
    LOG.debug("pullback over %r has %d arrows", g, realized.n)
    return PullbackGroupoid(g, aspace, pi, realized, tuple(triples))


def pullback_map(pb: PullbackGroupoid) -> SpaceMap:
    """π as a map into the unit space of the base."""
    pos = pb.base.unit_pos
    return SpaceMap(pb.aspace, pb.base.unit_space, tuple(pos[x] for x in pb.pi))


def product_bornology(pb: PullbackGroupoid, b_a: Bornology, b_arr: Bornology) -> Bornology:
    """Triples whose three coordinates are bounded."""
    core = [i for i, (a, xi, b) in enumerate(pb.triples)
            if a in b_a.core and xi in b_arr.core and b in b_a.core]
    return Bornology.restricted(pb.realized.space, core)


def pullback_proper_check(pb: PullbackGroupoid, b_a: Bornology | None = None, b_x: Bornology | None = None,
                          b_arr: Bornology | None = None, b_pb: Bornology | None = None) -> CheckReport:
    """Π is proper once π is; `b_x` lives on the unit space of the base."""
    b_a = b_a or Bornology.all_subsets(pb.aspace)
    b_x = b_x or Bornology.all_subsets(pb.base.unit_space)
    b_arr = b_arr or Bornology.all_subsets(pb.base.space)
    b_pb = b_pb or product_bornology(pb, b_a, b_arr)
    pos = pb.base.unit_pos
    pi_pos = [pos[x] for x in pb.pi]
    g = pb.base
    ends_bounded = all(pos[g.src[xi]] in b_x.core and pos[g.rng[xi]] in b_x.core for xi in b_arr.core)
    mode = Mode.FAITHFUL if all(b.is_all for b in (b_a, b_x, b_arr, b_pb)) else Mode.MODEL_LEVEL
    report = CheckReport('joser', bornology={'A': b_a.to_spec(), 'X': b_x.to_spec(),
                                             'arrows': b_arr.to_spec(), 'pullback': b_pb.to_spec()})

    def evaluate():
        pulled = pb.pi_preimage(b_arr.core)
        escaped = pulled - b_pb.core
        return not escaped, sorted(escaped)

    report.gated('Pi_proper', {'pi proper': proper_table(b_a.core, b_x.core, pi_pos),
                               'bounded arrows have bounded ends': ends_bounded},
                 evaluate, mode=mode)
    return report


def pullback_structure_check(pb: PullbackGroupoid, seed: int = 0) -> CheckReport:
    """Projection identities of a pullback groupoid."""
    g, r = pb.base, pb.realized
    report = CheckReport('pullback')
    report.expect('valid', validate_groupoid(r) is None, validate_groupoid(r))
    report.expect('Pi_functor', validate_functor(r, g, pb.Pi) is None, validate_functor(r, g, pb.Pi))
    report.expect('Pi_surjective', set(pb.Pi) == set(g.arrows))
    report.expect_all('Pi_on_units', pb.aspace.points, lambda a: pb.Pi[pb.unit_of[a]] == pb.pi[a])
    pairs = subset_pairs(g.arrows, seed)[0]
    report.expect_all('preimage_products', pairs,
                      lambda st: product_set(r, pb.pi_preimage(st[0]), pb.pi_preimage(st[1]))
                      >= pb.pi_preimage(product_set(g, st[0], st[1])))
    report.gated('preimage_products_equal', {'pi injective': len(set(pb.pi)) == len(pb.pi)},
                 lambda: first_failing(pairs, lambda st: product_set(r, pb.pi_preimage(st[0]), pb.pi_preimage(st[1]))
                                        == pb.pi_preimage(product_set(g, st[0], st[1]))))
    return report


# =============================================================================
# Pullback action Θ(π, A)
# =============================================================================
@dataclass(frozen=True, eq=False)
class PullbackAction:
    source: Action
    pb: PullbackGroupoid
    realized: Action
    pairs: tuple[tuple[int, int], ...]
    projection: ActionMorphism

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def pr1_preimage(self, m: Iterable[int]) -> frozenset[int]:
        m = self.source.space.check(m)
        return frozenset(i for i, (s, _) in enumerate(self.pairs) if s in m)


def build_pullback_action(theta: Action, pb: PullbackGroupoid) -> PullbackAction:
    """Σ⋈A with anchor pr₂ and (a,ξ,b)~•(σ,b) = (ξ•σ, a)."""
    if theta.gpd is not pb.base:
        raise EndpointMismatchError("the action and the pullback have different groupoids")
    pairs = [(s, a) for s in theta.points for a in pb.aspace.points if theta.anchor[s] == pb.pi[a]]
    idx = {p: i for i, p in enumerate(pairs)}
    space = product_subspace([theta.space, pb.aspace], pairs)
    over_a: dict[int, list[int]] = {}
    for i, (s, a) in enumerate(pairs):
        over_a.setdefault(a, []).append(i)
    act = {}
    for t, (a, xi, b) in enumerate(pb.triples):
        for i in over_a.get(b, ()):
            s = pairs[i][0]
            act[(t, i)] = idx[(theta.act[(xi, s)], a)]
    realized = Action(pb.realized, space, tuple(pb.unit_of[a] for _, a in pairs), act)
    v = validate_action(realized)
    if v is not None:
        raise InvalidInstanceError("pullback action", v)
    projection = ActionMorphism(realized, theta, pb.Pi, tuple(s for s, _ in pairs))
    v = validate_morphism(projection)
    if v is not None or not is_epimorphism(projection):
        raise InvalidInstanceError("projection onto the original action", v)
    return PullbackAction(theta, pb, realized, tuple(pairs), projection)


def pullback_recurrence_identity(pa: PullbackAction, m: Iterable[int], n: Iterable[int]) -> bool:
    """Ξ(π,A)~ over pr₁⁻¹(M), pr₁⁻¹(N) equals Π⁻¹(Ξ̃_M^N)."""
    lhs = recurrence_set(pa.realized, pa.pr1_preimage(m), pa.pr1_preimage(n))
    return lhs == pa.pb.pi_preimage(recurrence_set(pa.source, m, n))


def inzbor_check(pa: PullbackAction, seed: int = 0) -> CheckReport:
    report = CheckReport('inzbor')
    pairs, exhaustive = subset_pairs(pa.source.points, seed)
    report.expect_all('recurrence_preimage', pairs, lambda mn: pullback_recurrence_identity(pa, *mn))
    LOG.debug("pullback recurrence identity over %d pairs (exhaustive=%s)", len(pairs), exhaustive)
    return report


def saex_identity_check(pa: PullbackAction) -> CheckReport:
    """For the canonical action, Σ⋈A ≅ A and (a,ξ,b)∗̃b = a."""
    report = CheckReport('saex_identity')
    second = [a for _, a in pa.pairs]
    report.expect('pairs_match_A', sorted(second) == list(pa.pb.aspace.points), second)
    report.expect_all('lands_at_first_leg', sorted(pa.realized.act.items()),
                      lambda kv: pa.pairs[kv[1]][1] == pa.pb.triples[kv[0][0]][0])
    return report


# =============================================================================
# Generalized vague morphisms
# =============================================================================
@dataclass(frozen=True, eq=False)
class GeneralizedVagueMorphism:
    """γ: A → A′ and Γ: Ξ(π,A) → Ξ′(π′,A′) on arrow ids."""
    pb: PullbackGroupoid
    pb2: PullbackGroupoid
    gamma: tuple[int, ...]
    Gamma: tuple[int, ...]

    @cached_property
    def gamma2(self) -> tuple[int, ...]:
        """Γ₂ = Π′∘Γ."""
        return tuple(self.pb2.Pi[t] for t in self.Gamma)

    @property
    def gpds(self) -> tuple[Groupoid, Groupoid]:
        return self.pb.base, self.pb2.base

    def is_Gamma_surjective(self) -> bool:
        return set(self.Gamma) == set(self.pb2.realized.arrows)

    def is_gamma_injective(self) -> bool:
        return len(set(self.gamma)) == len(self.gamma)


def validate_gvm(v: GeneralizedVagueMorphism) -> Violation | None:
    pb, pb2 = v.pb, v.pb2
    if len(v.gamma) != pb.aspace.n or any(not (0 <= a < pb2.aspace.n) for a in v.gamma):
        return Violation('gamma_table', len(v.gamma))
    bad = continuous_table(pb.aspace, pb2.aspace, v.gamma)
    if bad is not None:
        return Violation('gamma_continuity', bad)
    viol = validate_functor(pb.realized, pb2.realized, v.Gamma)
    if viol is not None:
        return viol
    for a in pb.aspace.points:
        if v.Gamma[pb.unit_of[a]] != pb2.unit_of[v.gamma[a]]:
            return Violation('unit_restriction', a)
    for t, (a, _, b) in enumerate(pb.triples):
        a2, _, b2 = pb2.triples[v.Gamma[t]]
        if a2 != v.gamma[a] or b2 != v.gamma[b]:
            return Violation('triple_form', t)
    g2, gamma2 = pb2.base, v.gamma2
    for (t, u), p in sorted(pb.realized.mul.items()):
        if g2.mul.get((gamma2[t], gamma2[u])) != gamma2[p]:
            return Violation('cocycle', (t, u))
    return None


def gvm_from_gamma2(pb: PullbackGroupoid, pb2: PullbackGroupoid, gamma: Sequence[int],
                    gamma2: Sequence[int]) -> GeneralizedVagueMorphism:
    """Rebuild Γ(a,ξ,b) = (γ(a), Γ₂(a,ξ,b), γ(b))."""
    gamma = tuple(gamma)
    Gamma = []
    for t, (a, _, b) in enumerate(pb.triples):
        key = (gamma[a], gamma2[t], gamma[b])
        if key not in pb2.index:
            raise InvalidInstanceError("Γ₂ and γ do not assemble into triples", Violation('triple_form', t))
        Gamma.append(pb2.index[key])
    return GeneralizedVagueMorphism(pb, pb2, gamma, tuple(Gamma))


@dataclass(frozen=True, eq=False)
class GVMOfActions:
    gvm: GeneralizedVagueMorphism
    theta: Action
    theta2: Action
    h: tuple[int, ...]
    pa: PullbackAction
    pa2: PullbackAction

    @property
    def actions(self) -> tuple[Action, Action]:
        return self.theta, self.theta2

    def is_h_surjective(self) -> bool:
        return set(self.h) == set(self.theta2.points)

    def is_h_injective(self) -> bool:
        return len(set(self.h)) == len(self.h)

    def equality_hypotheses(self) -> bool:
        """Γ surjective with h and γ injective."""
        return self.gvm.is_Gamma_surjective() and self.is_h_injective() and self.gvm.is_gamma_injective()

    def image(self, m: Iterable[int]) -> frozenset[int]:
        return frozenset(self.h[s] for s in self.theta.space.check(m))

    def preimage(self, m: Iterable[int]) -> frozenset[int]:
        m = self.theta2.space.check(m)
        return frozenset(s for s in self.theta.points if self.h[s] in m)

    @cached_property
    def pair_map(self) -> tuple[int, ...] | None:
        """h×γ on Σ⋈A, None when some pair leaves Σ′⋈A′."""
        out = []
        for s, a in self.pa.pairs:
            j = self.pa2.index.get((self.h[s], self.gvm.gamma[a]))
            if j is None:
                return None
            out.append(j)
        return tuple(out)


def make_gvm_action(gvm: GeneralizedVagueMorphism, theta: Action, theta2: Action,
                    h: Sequence[int]) -> GVMOfActions:
    pa = build_pullback_action(theta, gvm.pb)
    pa2 = build_pullback_action(theta2, gvm.pb2)
    return GVMOfActions(gvm, theta, theta2, tuple(h), pa, pa2)


def validate_gvm_action(va: GVMOfActions) -> Violation | None:
    v = validate_gvm(va.gvm)
    if v is not None:
        return v
    theta, theta2, gvm = va.theta, va.theta2, va.gvm
    if len(va.h) != theta.n or any(not (0 <= t < theta2.n) for t in va.h):
        return Violation('h_table', len(va.h))
    bad = continuous_table(theta.space, theta2.space, va.h)
    if bad is not None:
        return Violation('h_continuity', bad)
    pi, pi2 = gvm.pb.pi, gvm.pb2.pi
    for s in theta.points:
        for a in gvm.pb.aspace.points:
            if (theta.anchor[s] == pi[a]) != (theta2.anchor[va.h[s]] == pi2[gvm.gamma[a]]):
                return Violation('condition_i', (s, a))
    inner = validate_morphism(gvm_morphism(va))
    if inner is not None:
        return Violation('condition_ii', (inner.axiom, inner.witness))
    return None


def gvm_morphism(va: GVMOfActions) -> ActionMorphism:
    """(Γ, h×γ) between the pullback actions."""
    return ActionMorphism(va.pa.realized, va.pa2.realized, va.gvm.Gamma, va.pair_map)


def embed_ordinary(m: ActionMorphism) -> GVMOfActions:
    """A = X, π = id: an ordinary morphism as a vague one."""
    v = validate_morphism(m)
    if v is not None:
        raise InvalidInstanceError("ordinary morphism", v)
    g, g2 = m.source.gpd, m.target.gpd
    pb = build_pullback(g, g.unit_list, g.unit_space)
    pb2 = build_pullback(g2, g2.unit_list, g2.unit_space)
    pos, pos2 = g.unit_pos, g2.unit_pos
    gamma = tuple(pos2[m.psi[x]] for x in g.unit_list)
    Gamma = tuple(pb2.index[(gamma[a], m.psi[xi], gamma[b])] for a, xi, b in pb.triples)
    va = make_gvm_action(GeneralizedVagueMorphism(pb, pb2, gamma, Gamma), m.source, m.target, m.f)
    v = validate_gvm_action(va)
    if v is not None:
        raise InvalidInstanceError("embedded morphism", v)
    return va


def twist_stabilizer(m: ActionMorphism, x: int) -> frozenset[int]:
    """Isotropy at Ψ(x) fixing every f(σ) with ρ(σ) = x."""
    g2, theta2 = m.target.gpd, m.target
    over = [m.f[s] for s in m.source.points if m.source.anchor[s] == x]
    return frozenset(k for k in isotropy(g2, m.psi[x]) if all(theta2.act[(k, t)] == t for t in over))


def twisted_gvm_action(m: ActionMorphism, pi: Sequence[int], aspace: FiniteSpace,
                       twist: Sequence[int]) -> GVMOfActions:
    """π′ = Ψ∘π on the same A, γ = id and Γ₂(a,ξ,b) = c(a)Ψ(ξ)c(b)⁻¹.

    With c varying inside a fibre of π, Γ₂ does not factor through Π.
    """
    v = validate_morphism(m)
    if v is not None:
        raise InvalidInstanceError("ordinary morphism", v)
    g2 = m.target.gpd
    twist = tuple(twist)
    if len(twist) != aspace.n:
        raise InvalidInstanceError("twist", Violation('twist_table', len(twist)))
    pb = build_pullback(m.source.gpd, pi, aspace)
    pb2 = build_pullback(g2, tuple(m.psi[x] for x in pb.pi), aspace)
    for a, c in enumerate(twist):
        if c not in twist_stabilizer(m, pb.pi[a]):
            raise HypothesisError(f"twist {c} at point {a} does not fix the image points over its unit")
    Gamma = tuple(pb2.index[(a, g2.mul[(g2.mul[(twist[a], m.psi[xi])], g2.inv[twist[b]])], b)]
                  for a, xi, b in pb.triples)
    va = make_gvm_action(GeneralizedVagueMorphism(pb, pb2, tuple(aspace.points), Gamma), m.source, m.target, m.f)
    v = validate_gvm_action(va)
    if v is not None:
        raise InvalidInstanceError("twisted vague morphism", v)
    return va


# =============================================================================
# Recurrence transport
# =============================================================================
@dataclass(frozen=True)
class BothResult:
    inclusion: bool
    eq_hyp: bool
    equality: bool
    stift_forms: tuple[bool, bool]
    stift_equalities: tuple[bool, bool]

    def to_dict(self) -> dict:
        return {'inclusion': self.inclusion, 'eq_hyp': self.eq_hyp, 'equality': self.equality,
                'stift_forms': list(self.stift_forms), 'stift_equalities': list(self.stift_equalities)}


def thm_both_check(va: GVMOfActions, m: Iterable[int], n: Iterable[int]) -> BothResult:
    """Γ(Π⁻¹(Ξ̃_M^N)) against (Π′)⁻¹((Ξ̃′)_{h(M)}^{h(N)}), and its two projected forms."""
    m = va.theta.space.check(m)
    n = va.theta.space.check(n)
    gvm = va.gvm
    here = recurrence_set(va.theta, m, n)
    there = recurrence_set(va.theta2, va.image(m), va.image(n))
    lhs = frozenset(gvm.Gamma[t] for t in gvm.pb.pi_preimage(here))
    rhs = gvm.pb2.pi_preimage(there)
    projected = frozenset(gvm.pb2.Pi[t] for t in lhs)
    pulled = frozenset(gvm.pb.Pi[t] for t in gvm.pb.realized.arrows if gvm.Gamma[t] in rhs)
    return BothResult(
        inclusion=lhs <= rhs,
        eq_hyp=va.equality_hypotheses(),
        equality=lhs == rhs,
        stift_forms=(projected <= there, here <= pulled),
        stift_equalities=(projected == there, here == pulled),
    )


def thm_both_sweep(va: GVMOfActions, seed: int = 0) -> CheckReport:
    pairs, _ = subset_pairs(va.theta.points, seed)
    results = [(mn, thm_both_check(va, *mn)) for mn in pairs]
    eq_hyp = va.equality_hypotheses()
    hyps = {'Gamma surjective, h and gamma injective': eq_hyp}
    report = CheckReport('both')
    report.expect_all('both.inclusion', results, lambda r: r[1].inclusion)
    report.gated('both.equality', hyps, lambda: first_failing(results, lambda r: r[1].equality))
    report.expect_all('stift.projected', results, lambda r: r[1].stift_forms[0])
    report.expect_all('stift.pulled_back', results, lambda r: r[1].stift_forms[1])
    report.gated('stift.projected_equality', hyps, lambda: first_failing(results, lambda r: r[1].stift_equalities[0]))
    report.gated('stift.pulled_back_equality', hyps, lambda: first_failing(results, lambda r: r[1].stift_equalities[1]))

    pair_map = va.pair_map
    if pair_map is not None:
        def image_of_fibre(mn):
            m = mn[0]
            moved = frozenset(pair_map[i] for i in va.pa.pr1_preimage(m))
            return moved, va.pa2.pr1_preimage(va.image(m))

        report.expect_all('both.fibre_image', pairs, lambda mn: image_of_fibre(mn)[0] <= image_of_fibre(mn)[1])
        report.gated('both.fibre_image_equality', {'Gamma surjective': va.gvm.is_Gamma_surjective()},
                     lambda: first_failing(pairs, lambda mn: image_of_fibre(mn)[0] == image_of_fibre(mn)[1]))
    return report


# =============================================================================
# Orbits, invariant sets, transitivity
# =============================================================================
def thm_color_check(va: GVMOfActions) -> CheckReport:
    theta, theta2, h = va.theta, va.theta2, va.h
    eq_hyp = va.equality_hypotheses()
    hyps = {'Gamma surjective, h and gamma injective': eq_hyp}
    report = CheckReport('color')
    report.expect_all('orbit_image', theta.points,
                      lambda s: va.image(orbit(theta, s)) <= orbit(theta2, h[s]))
    report.expect_all('orbit_closure_image', theta.points,
                      lambda s: va.image(orbit_closure(theta, s)) <= orbit_closure(theta2, h[s]))
    report.gated('orbit_image_equality', hyps,
                 lambda: first_failing(theta.points, lambda s: va.image(orbit(theta, s)) == orbit(theta2, h[s])))
    report.gated('image_invariant', hyps,
                 lambda: first_failing(invariant_sets(theta), lambda m: is_invariant(theta2, va.image(m))))
    report.expect_all('preimage_invariant', invariant_sets(theta2),
                      lambda m: is_invariant(theta, va.preimage(m)))
    return report


def _maps_closed_invariant(theta: Action, theta2: Action, image) -> bool:
    for m in invariant_sets(theta):
        if theta.space.is_closed(m):
            im = image(m)
            if not (theta2.space.is_closed(im) and is_invariant(theta2, im)):
                return False
    return True


@dataclass
class VagueBornologies:
    """Bornologies on Ξ, Ξ′, A, A′, X, X′; missing ones are all-subsets."""
    arr: Bornology | None = None
    arr2: Bornology | None = None
    a: Bornology | None = None
    a2: Bornology | None = None
    x: Bornology | None = None
    x2: Bornology | None = None
    extra: dict = field(default_factory=dict)

    def resolved(self, va: GVMOfActions) -> 'VagueBornologies':
        g, g2 = va.gvm.gpds
        return VagueBornologies(
            arr=self.arr or Bornology.all_subsets(g.space),
            arr2=self.arr2 or Bornology.all_subsets(g2.space),
            a=self.a or Bornology.all_subsets(va.gvm.pb.aspace),
            a2=self.a2 or Bornology.all_subsets(va.gvm.pb2.aspace),
            x=self.x or Bornology.all_subsets(g.unit_space),
            x2=self.x2 or Bornology.all_subsets(g2.unit_space),
        )

    def pullbacks(self, va: GVMOfActions) -> tuple[Bornology, Bornology]:
        r = self.resolved(va)
        return product_bornology(va.gvm.pb, r.a, r.arr), product_bornology(va.gvm.pb2, r.a2, r.arr2)

    @property
    def mode(self) -> Mode:
        parts = [b for b in (self.arr, self.arr2, self.a, self.a2, self.x, self.x2) if b is not None]
        return Mode.FAITHFUL if all(b.is_all for b in parts) else Mode.MODEL_LEVEL

    def to_spec(self) -> dict:
        return {k: (b.to_spec() if b is not None else {'kind': 'all'})
                for k, b in (('arrows', self.arr), ('arrows_prime', self.arr2), ('A', self.a),
                             ('A_prime', self.a2), ('X', self.x), ('X_prime', self.x2))}


def transport_profile(va: GVMOfActions, vb: VagueBornologies | None = None) -> CheckReport:
    """Transitivity, minimality and periodicity carried by h."""
    vb = vb or VagueBornologies()
    b = vb.resolved(va)
    theta, theta2, h = va.theta, va.theta2, va.h
    report = CheckReport('transport', bornology=vb.to_spec())
    p, p2 = classify(theta), classify(theta2)
    surj = {'h surjective': va.is_h_surjective()}

    for flag in ('T', 'PT', 'WPT', 'TT1', 'TT2', 'minimal'):
        report.gated(f"secinta.{flag}", surj, lambda f=flag: (not p.flag(f) or p2.flag(f), [p.to_dict(), p2.to_dict()]))
    both_open = is_open_groupoid(theta.gpd) and is_open_groupoid(theta2.gpd)
    report.gated('secinta.TT3', {**surj, 'both groupoids open': both_open},
                 lambda: (not p.TT3 or p2.TT3, [p.to_dict(), p2.to_dict()]))
    report.gated('securinta.RT', surj, lambda: (not p.RT or p2.RT, [p.to_dict(), p2.to_dict()]))

    eligible = [m for m in minimal_subsets(theta)
                if theta2.space.is_closed(va.image(m)) and is_invariant(theta2, va.image(m))]
    report.gated('secinta.minimal_image', {**surj, 'closed invariant image': bool(eligible)},
                 lambda: first_failing(eligible, lambda m: is_minimal_subset(theta2, va.image(m))))

    def garbanzos():
        mins = minimal_subsets(theta)
        for m2 in minimal_subsets(theta2):
            if not any(va.image(m) == m2 for m in mins):
                return False, m2
        return True, None

    report.gated('garbanzos.minimal_preimage',
                 {**surj, 'source groupoid open': is_open_groupoid(theta.gpd),
                  'closed invariant sets map to closed invariant sets': _maps_closed_invariant(theta, theta2, va.image)},
                 garbanzos)

    hyps = {'Gamma surjective, h and gamma injective': va.equality_hypotheses(),
            'target groupoid open': is_open_groupoid(theta2.gpd)}
    periodic2 = periodic_points(theta2, b.arr2)
    report.gated('gogonata.periodic', hyps,
                 lambda: first_failing(sorted(periodic_points(theta, b.arr)), lambda s: h[s] in periodic2),
                 mode=vb.mode)
    almost2 = almost_periodic_points(theta2, b.arr2)
    report.gated('rolar.almost_periodic', hyps,
                 lambda: first_failing(sorted(almost_periodic_points(theta, b.arr)), lambda s: h[s] in almost2),
                 mode=vb.mode)
    return report


def prop_rollar_check(va: GVMOfActions, vb: VagueBornologies | None = None) -> CheckReport:
    vb = vb or VagueBornologies()
    b = vb.resolved(va)
    gvm, theta, theta2, h = va.gvm, va.theta, va.theta2, va.h
    pb, pb2 = gvm.pb, gvm.pb2
    pi = pb.pi
    pos = pb.base.unit_pos
    composite = [pb2.pi[gvm.gamma[a]] for a in pb.aspace.points]
    hyps = {
        'Gamma surjective': gvm.is_Gamma_surjective(),
        'pi injective': len(set(pi)) == len(pi),
        'pi proper': proper_table(b.a.core, b.x.core, [pos[x] for x in pi]),
        "pi' gamma injective": len(set(composite)) == len(composite),
    }
    report = CheckReport('rollar', bornology=vb.to_spec())
    almost2 = almost_periodic_points(theta2, b.arr2)
    periodic2 = periodic_points(theta2, b.arr2)
    report.gated('rollar.almost_periodic', hyps,
                 lambda: first_failing(sorted(almost_periodic_points(theta, b.arr)), lambda s: h[s] in almost2),
                 mode=vb.mode)
    report.gated('rollar.periodic', hyps,
                 lambda: first_failing(sorted(periodic_points(theta, b.arr)), lambda s: h[s] in periodic2),
                 mode=vb.mode)

    def fibre_images():
        for a in pb.aspace.points:
            starting = {gvm.gamma2[t] for t in pb.realized.source_fibers[pb.unit_of[a]]}
            if starting != set(pb2.base.source_fibers[composite[a]]):
                return False, a
        return True, None

    report.gated('rollar.fibre_images', hyps, fibre_images)
    back = {x: a for a, x in enumerate(pi)}
    report.gated('rollar.anchors_commute', hyps,
                 lambda: first_failing(theta.points,
                                        lambda s: composite[back[theta.anchor[s]]] == theta2.anchor[h[s]]))
    return report


def prop_caciu_check(va: GVMOfActions, vb: VagueBornologies | None = None) -> CheckReport:
    vb = vb or VagueBornologies()
    b = vb.resolved(va)
    gvm, theta, theta2, h = va.gvm, va.theta, va.theta2, va.h
    b_pb, b_pb2 = vb.pullbacks(va)
    pos2 = gvm.pb2.base.unit_pos
    hyps = {
        'Gamma proper': proper_table(b_pb.core, b_pb2.core, gvm.Gamma),
        "pi' proper": proper_table(b.a2.core, b.x2.core, [pos2[x] for x in gvm.pb2.pi]),
    }
    report = CheckReport('caciu', bornology=vb.to_spec())

    def limits():
        for s in theta.points:
            target = limit_set(theta2, h[s], b.arr2)
            if not va.image(limit_set(theta, s, b.arr)) <= target:
                return False, s
        return True, None

    report.gated('caciu.limit_sets', hyps, limits, mode=vb.mode)
    rec2 = recurrent_points(theta2, b.arr2)
    report.gated('caciu.recurrent', hyps,
                 lambda: first_failing(sorted(recurrent_points(theta, b.arr)), lambda s: h[s] in rec2),
                 mode=vb.mode)
    nw = theta.space.full - wandering_points(theta, b.arr)
    nw2 = theta2.space.full - wandering_points(theta2, b.arr2)
    report.gated('caciu.nonwandering', hyps,
                 lambda: first_failing(sorted(nw), lambda s: h[s] in nw2), mode=vb.mode)
    return report
