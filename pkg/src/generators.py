"""
Seeded generators of groupoids, actions and morphisms
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from action import (Action, ActionMorphism, canonical_action, homoconstruction, identity_morphism,
                    relabel_action, restrict_with_inclusion, terminal_morphism, validate_action,
                    validate_morphism)
from actor import (ActorOfActions, bundle_actor, identity_actor_of_actions, miraj_to_actor, space_actor,
                   terminal_actor_of_actions, validate_actor_of_actions)
from config import (GENERATOR_KINDS, GROUP_ORDERS, MAX_ARROWS, MAX_ORBITS, MAX_POINTS, MAX_UNITS,
                    PULLBACK_BASE_ARROWS, PULLBACK_FIBER, TOPOLOGIES)
from errors import InfeasibleSpecError, InvalidInstanceError
from fintop import Bornology, BornologyKind, FiniteSpace, discrete, generated_topology, initial_topology
from groupoid import (Groupoid, cyclic_group, from_functions, group_bundle, pair_groupoid, trivial_groupoid,
                      validate_groupoid)
from vague import (GeneralizedVagueMorphism, GVMOfActions, PullbackAction, PullbackGroupoid, build_pullback,
                   build_pullback_action, embed_ordinary, make_gvm_action, twist_stabilizer, twisted_gvm_action,
                   validate_gvm_action)

LOG = logging.getLogger(__name__)


@dataclass
class GeneratorSpec:
    kind: str
    seed: int = 0
    units: int | None = None
    order: int | None = None
    points: int | None = None
    topology: str = 'discrete'
    bornology: BornologyKind = field(default_factory=BornologyKind.all_subsets)

    def check(self):
        if self.kind not in GENERATOR_KINDS:
            raise InfeasibleSpecError(f"unknown generator kind {self.kind!r}")
        if self.topology not in TOPOLOGIES:
            raise InfeasibleSpecError(f"unknown topology mode {self.topology!r}")
        if self.units is not None and not (1 <= self.units <= MAX_UNITS):
            raise InfeasibleSpecError(f"units must lie in 1..{MAX_UNITS}, got {self.units}")
        if self.order is not None and not (1 <= self.order <= MAX_ARROWS):
            raise InfeasibleSpecError(f"group order must lie in 1..{MAX_ARROWS}, got {self.order}")
        if self.points is not None and not (1 <= self.points <= MAX_POINTS):
            raise InfeasibleSpecError(f"points must lie in 1..{MAX_POINTS}, got {self.points}")
        if self.kind == 'pair' and self.units is not None and self.units ** 2 > MAX_ARROWS:
            raise InfeasibleSpecError(f"pair groupoid on {self.units} units exceeds {MAX_ARROWS} arrows")


# =============================================================================
# Blueprints: disjoint unions of pair(n) × Z_m
# =============================================================================
@dataclass(frozen=True, eq=False)
class Blueprint:
    """A groupoid given by components (n, m) and its arrow keys (c, a, x, y)."""
    components: tuple[tuple[int, int], ...]
    gpd: Groupoid
    keys: tuple[tuple[int, int, int, int], ...]

    def arrow(self, c: int, a: int, x: int, y: int) -> int:
        return self.keys.index((c, a, x, y))

    def unit(self, c: int, u: int) -> int:
        return self.keys.index((c, 0, u, u))


def _divisors(m: int) -> list[int]:
    return [k for k in range(1, m + 1) if m % k == 0]


def _random_topology(rng: random.Random, labels: Sequence[str] | int) -> FiniteSpace:
    n = labels if isinstance(labels, int) else len(labels)
    family = [frozenset(p for p in range(n) if rng.random() < 0.5) for _ in range(rng.randint(0, 3))]
    return generated_topology(labels, family)


def blueprint(components: Sequence[tuple[int, int]], unit_space: FiniteSpace | None = None) -> Blueprint:
    """`unit_space` topologizes the units in (c, u) order; arrows get the initial topology of (r, d)."""
    components = tuple(components)
    keys = [(c, a, x, y) for c, (n, m) in enumerate(components)
            for a in range(m) for x in range(n) for y in range(n)]
    if len(keys) > MAX_ARROWS:
        raise InfeasibleSpecError(f"{len(keys)} arrows exceed the cap of {MAX_ARROWS}")

    def label(k):
        c, a, x, y = k
        return f"{c}:{x}{y}" + (f"^{a}" if components[c][1] > 1 else '')

    labels = [label(k) for k in keys]
    space = None
    if unit_space is not None:
        upos = {}
        for c, (n, _) in enumerate(components):
            for u in range(n):
                upos[(c, u)] = len(upos)
        rtable = [upos[(c, x)] for c, _, x, _ in keys]
        dtable = [upos[(c, y)] for c, _, _, y in keys]
        space = initial_topology(labels, [(unit_space, rtable), (unit_space, dtable)])
    g = from_functions(
        keys, labels, space,
        is_unit=lambda k: k[1] == 0 and k[2] == k[3],
        d=lambda k: (k[0], 0, k[3], k[3]),
        r=lambda k: (k[0], 0, k[2], k[2]),
        compose=lambda k, l: (k[0], (k[1] + l[1]) % components[k[0]][1], k[2], l[3]),
        inverse=lambda k: (k[0], (-k[1]) % components[k[0]][1], k[3], k[2]),
    )
    return Blueprint(components, g, tuple(keys))


def orbit_action(bp: Blueprint, orbits: Sequence[tuple[int, int]], rng: random.Random | None = None,
                 topology: str = 'discrete') -> tuple[Action, list[tuple[int, int, int, int]]]:
    """Orbits (c, k) with k | m_c: points (c, o, u, r), r ∈ Z_k, acted on by translation.

    Returns the action and its point keys.
    """
    comps = bp.components
    if {c for c, _ in orbits} != set(range(len(comps))):
        raise InfeasibleSpecError("every component needs an orbit for the anchor to be surjective")
    points = [(c, o, u, r) for o, (c, k) in enumerate(orbits) for u in range(comps[c][0]) for r in range(k)]
    if len(points) > MAX_POINTS:
        raise InfeasibleSpecError(f"{len(points)} points exceed the cap of {MAX_POINTS}")
    idx = {p: i for i, p in enumerate(points)}
    ks = {o: k for o, (_, k) in enumerate(orbits)}
    g = bp.gpd
    anchor = tuple(bp.unit(c, u) for c, _, u, _ in points)
    act = {}
    for xi, (c, a, x, y) in enumerate(bp.keys):
        for (c2, o, u, r), i in idx.items():
            if c2 == c and u == y:
                act[(xi, i)] = idx[(c, o, x, (r + a) % ks[o])]
    labels = [f"{c}.{o}.{u}" + (f"+{r}" if ks[o] > 1 else '') for c, o, u, r in points]
    if topology == 'discrete' and all(len(b) == 1 for b in g.space.base):
        space = discrete(labels)
    else:
        space = initial_topology(labels, [(g.space, anchor)])
        if rng is not None and rng.random() < 0.5:
            orbit_of = [o for _, o, _, _ in points]
            space = FiniteSpace(space.labels, tuple(frozenset(q for q in b if orbit_of[q] == orbit_of[p])
                                                    for p, b in enumerate(space.base)))
    a = Action(g, space, anchor, act)
    v = validate_action(a)
    if v is not None:
        raise InvalidInstanceError("generated action", v)
    return a, points


# =============================================================================
# Generator
# =============================================================================
class InstanceGenerator:
    """Deterministic in its seed; every instance passes its validator."""

    def __init__(self, seed: int = 0, topology: str | None = None):
        self.seed = seed
        self.rng = random.Random(seed)
        self.topology = topology

    def _topology_mode(self) -> str:
        return self.topology or self.rng.choice(TOPOLOGIES)

    def components(self, max_arrows: int = MAX_ARROWS) -> list[tuple[int, int]]:
        rng = self.rng
        while True:
            comps = []
            for _ in range(rng.randint(1, 3)):
                n = rng.choice([1, 1, 2, 2, 3])
                m = rng.choice([o for o in GROUP_ORDERS if o <= 4])
                comps.append((n, m))
            units = sum(n for n, _ in comps)
            arrows = sum(n * n * m for n, m in comps)
            if units <= MAX_UNITS and arrows <= max_arrows:
                return comps

    def blueprint(self, components=None, topology: str | None = None) -> Blueprint:
        comps = components or self.components()
        mode = topology or self._topology_mode()
        units = sum(n for n, _ in comps)
        unit_space = None if mode == 'discrete' else _random_topology(self.rng, units)
        bp = blueprint(comps, unit_space)
        v = validate_groupoid(bp.gpd)
        if v is not None:
            raise InvalidInstanceError("generated groupoid", v)
        return bp

    def groupoid(self) -> Groupoid:
        return self.blueprint().gpd

    def orbits_for(self, bp: Blueprint) -> list[tuple[int, int]]:
        rng = self.rng
        for _ in range(50):
            orbits = []
            for c, (n, m) in enumerate(bp.components):
                for _ in range(rng.choice([1, 1, 2])):
                    orbits.append((c, rng.choice(_divisors(m))))
            size = sum(bp.components[c][0] * k for c, k in orbits)
            if size <= MAX_POINTS and len(orbits) <= MAX_ORBITS:
                return orbits
        orbits = [(c, 1) for c in range(len(bp.components))]
        if sum(n for n, _ in bp.components) > MAX_POINTS or len(orbits) > MAX_ORBITS:
            raise InfeasibleSpecError("no orbit choice fits the point cap")
        return orbits

    def action(self, bp: Blueprint | None = None) -> Action:
        return self.action_with_keys(bp)[0]

    def action_with_keys(self, bp: Blueprint | None = None):
        bp = bp or self.blueprint(self._small_components())
        orbits = self.orbits_for(bp)
        a, points = orbit_action(bp, orbits, self.rng, self._topology_mode())
        return a, bp, orbits, points

    def _small_components(self) -> list[tuple[int, int]]:
        rng = self.rng
        while True:
            comps = [(rng.choice([1, 1, 2]), rng.choice([1, 2, 2, 3, 4])) for _ in range(rng.randint(1, 2))]
            if sum(n for n, _ in comps) * max(m for _, m in comps) <= MAX_POINTS:
                return comps

    def bornology(self, carrier: FiniteSpace, restricted: bool | None = None) -> Bornology:
        if restricted is None:
            restricted = self.rng.random() < 0.5
        if not restricted:
            return Bornology.all_subsets(carrier)
        return Bornology.restricted(carrier, {p for p in carrier.points if self.rng.random() < 0.4})

    # =========================
    # Ordinary morphisms
    # =========================
    MORPHISM_KINDS = ('identity', 'iso', 'terminal', 'inclusion', 'quotient', 'homoconstruction')

    def morphism(self, kind: str | None = None) -> ActionMorphism:
        kind = kind or self.rng.choice(self.MORPHISM_KINDS)
        a, bp, orbits, points = self.action_with_keys()
        if kind == 'identity':
            m = identity_morphism(a)
        elif kind == 'iso':
            arrows = list(a.gpd.arrows)
            pts = list(a.points)
            self.rng.shuffle(arrows)
            self.rng.shuffle(pts)
            m = relabel_action(a, arrows, pts)[1]
        elif kind == 'terminal':
            m = terminal_morphism(a)
        elif kind == 'inclusion':
            m = restrict_with_inclusion(a, a.gpd.units)[1]
        elif kind == 'quotient':
            m = self._quotient(a, bp, orbits, points)
        elif kind == 'homoconstruction':
            m = self._homoconstruction(a, bp)
        else:
            raise InfeasibleSpecError(f"unknown morphism kind {kind!r}")
        v = validate_morphism(m)
        if v is not None:
            raise InvalidInstanceError(f"generated {kind} morphism", v)
        return m

    def _quotient(self, a: Action, bp: Blueprint, orbits, points) -> ActionMorphism:
        """Same groupoid, each orbit Z_k folded onto Z_j for a divisor j of k."""
        coarse = [(c, self.rng.choice(_divisors(k))) for c, k in orbits]
        b, points2 = orbit_action(bp, coarse, None, 'random_valid')
        idx2 = {p: i for i, p in enumerate(points2)}
        f = tuple(idx2[(c, o, u, r % coarse[o][1])] for c, o, u, r in points)
        return ActionMorphism(a, b, tuple(a.gpd.arrows), f)

    def _homoconstruction(self, target: Action, bp: Blueprint) -> ActionMorphism:
        """Pull back along Z_{jm} → Z_m, same units and unit topology."""
        j = 2 if sum(n * n * m * 2 for n, m in bp.components) <= MAX_ARROWS else 1
        comps = [(n, m * j) for n, m in bp.components]
        unit_space = None
        if any(len(b) > 1 for b in target.gpd.space.base):
            unit_space = target.gpd.unit_space
        src = blueprint(comps, unit_space)
        psi = tuple(bp.arrow(c, a % bp.components[c][1], x, y) for c, a, x, y in src.keys)
        return homoconstruction(target, src.gpd, psi)[1]

    def composable_morphisms(self) -> tuple[ActionMorphism, ActionMorphism]:
        m1 = self.morphism(self.rng.choice(('identity', 'iso', 'inclusion', 'quotient', 'homoconstruction')))
        tail = self.rng.choice(('identity', 'iso', 'terminal'))
        a = m1.target
        if tail == 'identity':
            m2 = identity_morphism(a)
        elif tail == 'terminal':
            m2 = terminal_morphism(a)
        else:
            arrows, pts = list(a.gpd.arrows), list(a.points)
            self.rng.shuffle(arrows)
            self.rng.shuffle(pts)
            m2 = relabel_action(a, arrows, pts)[1]
        return m1, m2

    # =========================
    # Generalized vague morphisms
    # =========================
    GVM_MODES = ('embedded', 'fanned', 'shared', 'twisted')

    def gvm_action(self, steer: str | None = None, mode: str | None = None) -> GVMOfActions:
        """`steer='equality'` yields Γ surjective with h and γ injective.

        `mode='twisted'` conjugates Ψ by isotropy arrows varying along the fibres of π.
        """
        if steer == 'equality':
            m = self.morphism(self.rng.choice(('identity', 'iso')))
            mode = mode or self.rng.choice(('embedded', 'shared', 'twisted'))
        else:
            m = self.morphism(self.rng.choice(('identity', 'iso', 'terminal', 'quotient', 'inclusion')))
            mode = mode or self.rng.choice(('embedded', 'fanned', 'shared', 'twisted'))
        if mode not in self.GVM_MODES:
            raise InfeasibleSpecError(f"unknown vague morphism mode {mode!r}")
        if mode == 'embedded':
            return embed_ordinary(m)
        if mode == 'twisted':
            return self._twisted_from_morphism(m)
        return self._vague_from_morphism(m, shared=(mode == 'shared'))

    def _vague_from_morphism(self, m: ActionMorphism, shared: bool) -> GVMOfActions:
        g, g2 = m.source.gpd, m.target.gpd
        pi = []
        for x in g.unit_list:
            pi.extend([x] * self.rng.randint(1, PULLBACK_FIBER))
        if g.n > PULLBACK_BASE_ARROWS:
            return embed_ordinary(m)
        labels = [f"a{i}" for i in range(len(pi))]
        aspace = initial_topology(labels, [(g.space, pi)])
        pb = build_pullback(g, pi, aspace)
        if shared:
            pi2 = tuple(m.psi[x] for x in pi)
            pb2 = build_pullback(g2, pi2, aspace)
            gamma = tuple(range(len(pi)))
        else:
            pb2 = build_pullback(g2, g2.unit_list, g2.unit_space)
            pos2 = g2.unit_pos
            gamma = tuple(pos2[m.psi[x]] for x in pi)
        Gamma = tuple(pb2.index[(gamma[a], m.psi[xi], gamma[b])] for a, xi, b in pb.triples)
        va = make_gvm_action(GeneralizedVagueMorphism(pb, pb2, gamma, Gamma), m.source, m.target, m.f)
        v = validate_gvm_action(va)
        if v is not None:
            raise InvalidInstanceError("generated vague morphism", v)
        return va

    def _twisted_from_morphism(self, m: ActionMorphism) -> GVMOfActions:
        """Two points over every unit with a nontrivial twist, given different twists."""
        g = m.source.gpd
        if g.n > PULLBACK_BASE_ARROWS:
            return embed_ordinary(m)
        pi, twist = [], []
        for x in g.unit_list:
            stab = sorted(twist_stabilizer(m, x))
            if len(stab) > 1:
                first = self.rng.choice(stab)
                chosen = [first, self.rng.choice([k for k in stab if k != first])]
            else:
                chosen = stab * self.rng.randint(1, PULLBACK_FIBER)
            pi.extend([x] * len(chosen))
            twist.extend(chosen)
        aspace = discrete([f"a{i}" for i in range(len(pi))])
        va = twisted_gvm_action(m, pi, aspace, twist)
        LOG.debug("twisted vague morphism over %d points of A", len(pi))
        return va

    def pullback(self, g: Groupoid | None = None) -> PullbackGroupoid:
        """Random fibres of at most PULLBACK_FIBER points over the units of `g`."""
        if g is None:
            g = self.blueprint(self._small_components()).gpd
            while g.n > PULLBACK_BASE_ARROWS:
                g = self.blueprint(self._small_components()).gpd
        pi = []
        for x in g.unit_list:
            pi.extend([x] * self.rng.randint(1, PULLBACK_FIBER))
        labels = [f"a{i}" for i in range(len(pi))]
        return build_pullback(g, pi, initial_topology(labels, [(g.space, pi)]))

    def pullback_action(self, canonical: bool = False) -> PullbackAction:
        """Θ(π, A) of a generated action, or of the canonical action when `canonical` is set."""
        while True:
            bp = self.blueprint(self._small_components())
            if bp.gpd.n <= PULLBACK_BASE_ARROWS:
                break
        theta = canonical_action(bp.gpd) if canonical else self.action(bp)
        return build_pullback_action(theta, self.pullback(theta.gpd))

    def group_pullback(self) -> PullbackGroupoid:
        """A cyclic group pulled back along the constant map on one or two points."""
        g = cyclic_group(self.rng.choice([1, 2, 3]))
        k = self.rng.randint(1, 2)
        aspace = _random_topology(self.rng, [f"a{i}" for i in range(k)]) if self._topology_mode() != 'discrete' \
            else discrete([f"a{i}" for i in range(k)])
        return build_pullback(g, (0,) * k, aspace)

    def bundle_action(self) -> Action:
        """An action of a cyclic group bundle."""
        comps = [(1, self.rng.choice([1, 2, 3, 4])) for _ in range(self.rng.randint(1, 3))]
        return self.action(self.blueprint(comps))

    def small_groupoid(self, cap: int) -> Groupoid:
        g = self.blueprint(self._small_components()).gpd
        while g.n > cap:
            g = self.blueprint([(1, self.rng.choice([1, 2, 3]))]).gpd
        return g

    # =========================
    # Algebraic morphisms
    # =========================
    def actor_action(self, steer: str | None = None) -> ActorOfActions:
        """`steer='equality'` yields a saturating actor with g injective."""
        if steer == 'equality':
            m = self.morphism(self.rng.choice(('identity', 'iso')))
            return miraj_to_actor(m)
        mode = self.rng.choice(('ordinary', 'ordinary', 'bundle', 'spaces', 'identity'))
        if mode == 'ordinary':
            return miraj_to_actor(self.morphism(self.rng.choice(self.MORPHISM_KINDS)))
        if mode == 'bundle':
            return self._bundle_actor_action()
        if mode == 'spaces':
            return self._space_actor_action()
        return identity_actor_of_actions(self.action())

    def _section_of(self, nu: Sequence[int], n: int) -> tuple[int, ...]:
        fibres = {}
        for x2, x in enumerate(nu):
            fibres.setdefault(x, []).append(x2)
        return tuple(self.rng.choice(fibres[x]) for x in range(n))

    def _space_actor_action(self) -> ActorOfActions:
        """Trivial groupoids on X and X′ with ν: X′ → X onto and g a section of ν."""
        rng = self.rng
        n = rng.randint(1, 3)
        nu = list(range(n)) + [rng.randrange(n) for _ in range(rng.randint(0, 2))]
        rng.shuffle(nu)
        x = discrete([f"x{i}" for i in range(n)])
        x2 = discrete([f"y{i}" for i in range(len(nu))])
        phi = space_actor(x, x2, nu)
        pa = terminal_actor_of_actions(phi, self._section_of(nu, n))
        return pa

    def _bundle_actor_action(self) -> ActorOfActions:
        """Cyclic bundles, ν onto, β_{x′}: Z_m → Z_{m′} given by a ↦ ta."""
        rng = self.rng
        orders = [rng.choice([1, 2, 3, 4]) for _ in range(rng.randint(1, 3))]
        nu_pos = list(range(len(orders))) + [rng.randrange(len(orders)) for _ in range(rng.randint(0, 1))]
        rng.shuffle(nu_pos)
        orders2 = [rng.choice([k for k in (1, 2, 3, 4, 6) if k * len(nu_pos) <= MAX_ARROWS]) for _ in nu_pos]
        g = group_bundle([cyclic_group(m) for m in orders])
        g2 = group_bundle([cyclic_group(m) for m in orders2])
        units, units2 = g.unit_list, g2.unit_list
        nu = {units2[i]: units[p] for i, p in enumerate(nu_pos)}
        beta = {}
        for i, p in enumerate(nu_pos):
            m, m2 = orders[p], orders2[i]
            # a ↦ ta is a homomorphism Z_m → Z_{m2} iff m2 divides tm
            ts = [t for t in range(m2) if (t * m) % m2 == 0]
            t = rng.choice(ts)
            for a in range(m):
                beta[(units2[i], units[p] + a)] = units2[i] + (a * t) % m2
        phi = bundle_actor(g, g2, nu, beta)
        gpos2 = g2.unit_pos
        section = self._section_of([units.index(nu[x2]) for x2 in units2], len(units))
        return terminal_actor_of_actions(phi, tuple(gpos2[units2[i]] for i in section))

    def composable_actor_actions(self) -> tuple[ActorOfActions, ActorOfActions]:
        pa12 = self.actor_action()
        theta2 = pa12.theta2
        tail = self.rng.choice(('identity', 'ordinary'))
        if tail == 'identity':
            pa23 = identity_actor_of_actions(theta2)
        else:
            arrows, pts = list(theta2.gpd.arrows), list(theta2.points)
            self.rng.shuffle(arrows)
            self.rng.shuffle(pts)
            pa23 = miraj_to_actor(relabel_action(theta2, arrows, pts)[1])
        v = validate_actor_of_actions(pa23)
        if v is not None:
            raise InvalidInstanceError("generated actor", v)
        return pa12, pa23


# =============================================================================
# Entry point
# =============================================================================
def generate(spec: GeneratorSpec):
    """One instance of `spec.kind`, deterministic in `spec.seed`."""
    spec.check()
    gen = InstanceGenerator(spec.seed, spec.topology)
    rng = gen.rng

    def space(n: int) -> FiniteSpace:
        labels = [chr(ord('a') + i) for i in range(n)]
        return discrete(labels) if spec.topology == 'discrete' else _random_topology(rng, labels)

    units = spec.units or rng.randint(1, 3)
    if spec.kind == 'trivial':
        return trivial_groupoid(space(units))
    if spec.kind == 'pair':
        return pair_groupoid(space(units))
    if spec.kind == 'group':
        return cyclic_group(spec.order or rng.choice(GROUP_ORDERS))
    if spec.kind == 'group_bundle':
        return group_bundle([cyclic_group(spec.order or rng.choice(GROUP_ORDERS)) for _ in range(units)])
    if spec.kind == 'transformation':
        order = spec.order or rng.choice([o for o in GROUP_ORDERS if o <= MAX_POINTS])
        bp = blueprint([(1, order)])
        budget = spec.points or rng.randint(1, MAX_POINTS)
        orbits = []
        while budget > 0:
            k = rng.choice([d for d in _divisors(order) if d <= budget])
            orbits.append((0, k))
            budget -= k
        return orbit_action(bp, orbits, rng, spec.topology)[0]
    if spec.kind == 'pullback_of':
        return gen.pullback()
    if spec.kind == 'random_topologized':
        return gen.blueprint(topology='random_valid').gpd
    raise InfeasibleSpecError(f"unknown generator kind {spec.kind!r}")


def generated_bornology(spec: GeneratorSpec, inst) -> Bornology:
    """`spec.bornology` resolved on the arrows of a generated instance."""
    if isinstance(inst, Groupoid):
        carrier = inst.space
    elif isinstance(inst, Action):
        carrier = inst.gpd.space
    elif isinstance(inst, PullbackGroupoid):
        carrier = inst.realized.space
    else:
        raise InfeasibleSpecError(f"no arrow space on {type(inst).__name__}")
    return spec.bornology.resolve(carrier)
