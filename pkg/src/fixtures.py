"""
Named small instances used by the tests, the corpus and the CLI
"""
from action import Action, ActionMorphism, canonical_action, restrict, restrict_with_inclusion, terminal_morphism
from actor import (ActorOfActions, bundle_actor, group_actor, identity_actor, identity_actor_of_actions,
                   miraj_to_actor, space_actor, terminal_actor_of_actions)
from fintop import Bornology, FiniteSpace, discrete, point_space, sierpinski
from groupoid import Groupoid, cyclic_group, group_bundle, pair_groupoid, product_groupoid, trivial_groupoid
from vague import build_pullback, build_pullback_action, embed_ordinary, twisted_gvm_action


# =============================================================================
# SPACES AND GROUPOIDS
# =============================================================================
def d2() -> FiniteSpace:
    """Discrete {a, b}."""
    return discrete(['a', 'b'])


def sier() -> FiniteSpace:
    return sierpinski()


def pair2() -> Groupoid:
    return pair_groupoid(d2())


def c2() -> Groupoid:
    """{e, g} with g² = e; arrow 0 is e, arrow 1 is g."""
    return cyclic_group(2)


def bun2() -> Groupoid:
    """Two copies of C2 over the units x (arrows 0, 1) and y (arrows 2, 3)."""
    return group_bundle([c2(), c2()])


def triv_d2() -> Groupoid:
    return trivial_groupoid(d2())


def triv_sier() -> Groupoid:
    return trivial_groupoid(sier())


# =============================================================================
# ACTIONS
# =============================================================================
def swap() -> Action:
    """C2 on D2 with g•a = b and g•b = a."""
    return Action(c2(), d2(), (0, 0), {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})


def broken_swap() -> Action:
    """g•a = a and g•b = a, so g•(g•b) ≠ b."""
    return Action(c2(), d2(), (0, 0), {(0, 0): 0, (0, 1): 1, (1, 0): 0, (1, 1): 0})


def can(g: Groupoid) -> Action:
    return canonical_action(g)


def bun2_swap() -> Action:
    """BUN2 swapping s_x, t_x over x and s_y, t_y over y."""
    g = bun2()
    space = discrete(['s_x', 't_x', 's_y', 't_y'])
    act = {}
    for off, (s, t) in ((0, (0, 1)), (2, (2, 3))):
        act.update({(off, s): s, (off, t): t, (off + 1, s): t, (off + 1, t): s})
    return Action(g, space, (0, 0, 2, 2), act)


def fixed_swap() -> Action:
    """SWAP restricted to {e}: two fixed points."""
    return restrict(swap(), {0})


def restricted_arrow_bornology(a: Action | None = None) -> Bornology:
    """Only {e} bounded on the arrows of C2; L_a = {b} for SWAP."""
    a = a or swap()
    return Bornology.restricted(a.gpd.space, {0})


# =============================================================================
# MORPHISMS
# =============================================================================
def swap_to_canonical() -> ActionMorphism:
    """(id, ρ): SWAP → CAN(C2); f is not injective."""
    return terminal_morphism(swap())


def collapse_into_swap() -> ActionMorphism:
    """TRIV(D2) on its units into SWAP, both units to e and f = id.

    The minimal set {a} maps onto a set which is not invariant.
    """
    return ActionMorphism(can(triv_d2()), swap(), (0, 0), (0, 1))


def pullback_c2_constant():
    """C2 pulled back along the constant map D2 → {e}; isomorphic to C2 × PAIR2."""
    return build_pullback(c2(), (0, 0), d2())


def c2_times_pair2() -> Groupoid:
    return product_groupoid(c2(), pair2())


def pullback_swap():
    a = swap()
    return build_pullback_action(a, build_pullback(a.gpd, (0, 0), d2()))


def pullback_canonical_c2():
    """CAN(C2) pulled back along the constant map; Σ⋈A is A."""
    a = can(c2())
    return build_pullback_action(a, build_pullback(a.gpd, (0, 0), d2()))


def embedded_identity():
    return embed_ordinary(ActionMorphism(swap(), swap(), (0, 1), (0, 1)))


def embedded_collapse():
    return embed_ordinary(collapse_into_swap())


def c2_fixing_d2() -> Action:
    """C2 acting trivially on D2."""
    return Action(c2(), d2(), (0, 0), {(0, 0): 0, (0, 1): 1, (1, 0): 0, (1, 1): 1})


def twisted_inclusion():
    """{e} ⊂ C2 on D2, A = {a, b} over the one unit, Γ(a,e,b) = (a,g,b).

    Γ₂ sends the four triples over e to e, g, g, e, so it does not factor through Π.
    """
    m = restrict_with_inclusion(c2_fixing_d2(), {0})[1]
    return twisted_gvm_action(m, (0, 0), d2(), (0, 1))


# =============================================================================
# ACTORS
# =============================================================================
def c2_identity_actor():
    return group_actor(c2(), c2(), (0, 1))


def point_to_d2_actor():
    """Trivial groupoids, ν: D2 → point."""
    return space_actor(point_space(), d2(), (0, 0))


def bun2_actor():
    """BUN2 ⇝ BUN2 with ν = id, β_x = id and β_y trivial."""
    g = bun2()
    beta = {(0, 0): 0, (0, 1): 1, (2, 2): 2, (2, 3): 2}
    return bundle_actor(g, g, {0: 0, 2: 2}, beta)


def swap_identity_actor_of_actions() -> ActorOfActions:
    return identity_actor_of_actions(swap())


def swap_terminal_actor_of_actions() -> ActorOfActions:
    """The actor of (id, ρ): SWAP → CAN(C2); g is constant."""
    return miraj_to_actor(swap_to_canonical())


def canonical_pair_actor() -> ActorOfActions:
    """Left translation of PAIR2 between its canonical actions."""
    g = pair2()
    return terminal_actor_of_actions(identity_actor(g), tuple(range(len(g.units))))


def swap_actor_pair():
    """Identity algebraic morphism of SWAP, twice."""
    pa = identity_actor_of_actions(swap())
    return pa, pa


def swap_morphism_pair():
    """SWAP → SWAP → CAN(C2)."""
    m2 = swap_to_canonical()
    return ActionMorphism(m2.source, m2.source, (0, 1), (1, 0)), m2


# =============================================================================
# CATALOG
# =============================================================================
# name -> (kind, builder)
CATALOG = {
    'D2': ('space', d2),
    'SIER': ('space', sier),
    'PAIR2': ('groupoid', pair2),
    'C2': ('groupoid', c2),
    'BUN2': ('groupoid', bun2),
    'TRIV_D2': ('groupoid', triv_d2),
    'TRIV_SIER': ('groupoid', triv_sier),
    'SWAP': ('action', swap),
    'CAN_PAIR2': ('action', lambda: can(pair2())),
    'CAN_TRIV_D2': ('action', lambda: can(triv_d2())),
    'CAN_TRIV_SIER': ('action', lambda: can(triv_sier())),
    'BUN2_SWAP': ('action', bun2_swap),
    'FIXED_SWAP': ('action', fixed_swap),
    'SWAP_TO_CAN': ('action_morphism', swap_to_canonical),
    'COLLAPSE_INTO_SWAP': ('action_morphism', collapse_into_swap),
    'PULLBACK_C2_CONST': ('pullback', pullback_c2_constant),
    'PULLBACK_SWAP': ('pullback_action', pullback_swap),
    'PULLBACK_CAN_C2': ('pullback_action', pullback_canonical_c2),
    'EMBEDDED_IDENTITY': ('gvm_action', embedded_identity),
    'EMBEDDED_COLLAPSE': ('gvm_action', embedded_collapse),
    'TWISTED_INCLUSION': ('gvm_action', twisted_inclusion),
    'C2_FIXING_D2': ('action', c2_fixing_d2),
    'C2_ACTOR': ('actor', c2_identity_actor),
    'POINT_D2_ACTOR': ('actor', point_to_d2_actor),
    'BUN2_ACTOR': ('actor', bun2_actor),
    'SWAP_IDENTITY_ACTOR': ('actor_action', swap_identity_actor_of_actions),
    'SWAP_TERMINAL_ACTOR': ('actor_action', swap_terminal_actor_of_actions),
    'PAIR2_CANONICAL_ACTOR': ('actor_action', canonical_pair_actor),
    'SWAP_ACTOR_PAIR': ('composable_pair', swap_actor_pair),
    'SWAP_MORPHISM_PAIR': ('composable_pair', swap_morphism_pair),
}


def build(name: str):
    """(kind, instance) of a catalog entry."""
    kind, builder = CATALOG[name]
    return kind, builder()
