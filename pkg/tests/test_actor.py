import pytest

from actor import (Actor, actor_as_action, commut_check, compose_actor_of_actions, compose_actors, diamond_saturation,
                   enfin_check, group_actor, identity_actor, image_saturation_check, is_proper_actor, jnitzel_transport,
                   lemma_constant_check, liema_check, liema_sweep, miraj_check, miraj_to_actor, saspermam_check,
                   space_actor, structure_check, structure_sweep, transflim_check, validate_actor,
                   validate_actor_of_actions)
from errors import EndpointMismatchError, HypothesisError, InvalidInstanceError
from fintop import Bornology, point_space
from fixtures import (bun2_actor, c2, c2_identity_actor, canonical_pair_actor, collapse_into_swap, d2, pair2,
                      point_to_d2_actor, swap_actor_pair, swap_identity_actor_of_actions,
                      swap_terminal_actor_of_actions, swap_to_canonical)
from verdict import Status


def _source_swapping_actor():
    """C2 acting on the arrows of PAIR2 by changing their source."""
    diamond = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3,
               (1, 0): 1, (1, 1): 0, (1, 2): 3, (1, 3): 2}
    return Actor(c2(), pair2(), (0, 0, 0, 0), diamond)


def test_named_actors_validate():
    for phi in (c2_identity_actor(), point_to_d2_actor(), bun2_actor(), identity_actor(pair2())):
        assert validate_actor(phi) is None
    for pa in (swap_identity_actor_of_actions(), swap_terminal_actor_of_actions(), canonical_pair_actor()):
        assert validate_actor_of_actions(pa) is None


def test_action_moving_sources_is_not_an_actor():
    v = validate_actor(_source_swapping_actor())
    assert v is not None
    assert v.axiom == 'teans'


def test_relaxed_actor_accepts_non_surjective_mu():
    with pytest.raises(InvalidInstanceError):
        space_actor(d2(), point_space(), (0,))
    phi = space_actor(d2(), point_space(), (0,), relaxed=True)
    assert validate_actor(phi) is None
    assert validate_actor(phi, relax=False) is not None


def test_constructor_preconditions():
    with pytest.raises(HypothesisError):
        group_actor(pair2(), c2(), (0, 0, 0, 0))
    with pytest.raises(EndpointMismatchError):
        compose_actors(c2_identity_actor(), c2_identity_actor())


def test_compose_actors_through_a_shared_groupoid():
    g = c2()
    phi = group_actor(g, g, (0, 1))
    composite = compose_actors(phi, phi)
    assert validate_actor(composite) is None
    assert composite.diamond[(1, 1)] == 0


def test_liema_on_terminal_actor():
    pa = swap_terminal_actor_of_actions()
    assert pa.saturates
    r = liema_check(pa, {0}, {1})
    assert r.inclusion and not r.eq_hyp
    report = liema_sweep(pa)
    assert report.clause('inclusion').status is Status.HOLDS
    assert report.clause('equality').status is Status.NOT_APPLICABLE


def test_liema_equality_for_identity():
    report = liema_sweep(swap_identity_actor_of_actions())
    assert report.clause('equality').status is Status.HOLDS


def test_ordinary_morphisms_round_trip_through_actors():
    assert miraj_check(swap_to_canonical()).status is Status.HOLDS
    with pytest.raises(HypothesisError):
        miraj_to_actor(collapse_into_swap())


def test_image_is_the_saturation():
    assert image_saturation_check(swap_to_canonical()).status is Status.HOLDS


def test_structure_and_openness():
    assert structure_sweep(identity_actor(pair2())).status is Status.HOLDS
    assert enfin_check(c2_identity_actor()).clause('target_open').status is Status.HOLDS
    assert commut_check(bun2_actor()).status is Status.HOLDS


def test_constant_fibres_for_saturating_pair():
    pa = swap_identity_actor_of_actions()
    report = lemma_constant_check(pa.actor, pa)
    assert report.clause('orbits_are_fibres').status is Status.HOLDS
    assert report.status is Status.HOLDS


def test_transport_along_terminal_actor():
    pa = swap_terminal_actor_of_actions()
    assert jnitzel_transport(pa).holds
    assert transflim_check(pa).holds


def test_composite_of_algebraic_morphisms():
    pa23, pa12 = swap_actor_pair()
    report = saspermam_check(pa23, pa12)
    assert report.clause('composite_valid').status is Status.HOLDS
    assert report.clause('g_composes').status is Status.HOLDS


def test_actor_is_an_action_on_the_target_arrows():
    phi = c2_identity_actor()
    a = actor_as_action(phi)
    assert a.gpd is phi.source
    assert a.n == 2
    assert a.apply(1, 0) == phi.apply(1, 0)


def test_diamond_saturation_and_structure():
    phi = identity_actor(pair2())
    assert diamond_saturation(phi, {0}) == {0, 2}
    report = structure_check(phi, {0}, {0})
    assert report.clause('subsemigroupoid').status is Status.HOLDS
    assert report.clause('subgroupoid').status is Status.NOT_APPLICABLE


def test_properness_of_an_actor_depends_on_bornologies():
    phi = c2_identity_actor()
    assert is_proper_actor(phi)
    assert not is_proper_actor(phi, Bornology.restricted(c2().space, {0}))


def test_composite_actor_of_actions():
    pa23, pa12 = swap_actor_pair()
    composite = compose_actor_of_actions(pa23, pa12)
    assert composite.g == (0, 1)
    assert validate_actor_of_actions(composite) is None
