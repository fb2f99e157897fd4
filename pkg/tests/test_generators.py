import pytest
from hypothesis import given, settings, strategies as st

from action import validate_action, validate_morphism
from actor import validate_actor_of_actions
from errors import InfeasibleSpecError
from fintop import BornologyKind
from generators import GeneratorSpec, InstanceGenerator, blueprint, generate, generated_bornology, orbit_action
from groupoid import recognize, validate_groupoid
from serialization import dumps
from vague import thm_both_sweep, validate_gvm_action
from verdict import Status

seeds = st.integers(min_value=0, max_value=2 ** 32)


def test_named_families():
    assert generate(GeneratorSpec('pair', units=2)).n == 4
    g = generate(GeneratorSpec('group', order=2))
    assert g.n == 2 and recognize(g).is_group
    assert recognize(generate(GeneratorSpec('group_bundle', units=3, order=2))).is_group_bundle
    assert validate_groupoid(generate(GeneratorSpec('trivial', units=3, topology='random_valid'))) is None


def test_transformation_groupoid_validates():
    a = generate(GeneratorSpec('transformation', seed=3, order=4, points=6))
    assert a.n == 6
    assert validate_action(a) is None


def test_infeasible_specs():
    with pytest.raises(InfeasibleSpecError):
        generate(GeneratorSpec('pair', units=0))
    with pytest.raises(InfeasibleSpecError):
        generate(GeneratorSpec('pair', units=7))
    with pytest.raises(InfeasibleSpecError):
        generate(GeneratorSpec('monoid'))
    with pytest.raises(InfeasibleSpecError):
        orbit_action(blueprint([(1, 2), (1, 2)]), [(0, 1)])


def test_generation_is_deterministic():
    spec = GeneratorSpec('random_topologized', seed=11)
    assert dumps(generate(spec)) == dumps(generate(GeneratorSpec('random_topologized', seed=11)))


def test_blueprint_components():
    bp = blueprint([(2, 1), (1, 3)])
    assert bp.gpd.n == 4 + 3
    assert len(bp.gpd.units) == 3
    assert validate_groupoid(bp.gpd) is None


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_generated_actions_validate(seed):
    gen = InstanceGenerator(seed)
    assert validate_action(gen.action()) is None
    assert validate_action(gen.bundle_action()) is None


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_generated_morphisms_validate(seed):
    gen = InstanceGenerator(seed)
    assert validate_morphism(gen.morphism()) is None
    m1, m2 = gen.composable_morphisms()
    assert m1.target is m2.source


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_generated_vague_morphisms_validate(seed):
    va = InstanceGenerator(seed).gvm_action()
    assert validate_gvm_action(va) is None
    steered = InstanceGenerator(seed).gvm_action(steer='equality')
    assert steered.equality_hypotheses()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_generated_actors_validate(seed):
    gen = InstanceGenerator(seed)
    assert validate_actor_of_actions(gen.actor_action()) is None
    pa12, pa23 = gen.composable_actor_actions()
    assert pa12.theta2 is pa23.theta


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_generated_pullbacks_validate(seed):
    gen = InstanceGenerator(seed)
    assert validate_groupoid(gen.pullback().realized) is None
    assert validate_action(gen.pullback_action().realized) is None
    assert len(gen.group_pullback().base.units) == 1


def _factors_through_pi(gvm):
    over = {}
    for p, xi in zip(gvm.pb.Pi, gvm.gamma2):
        over.setdefault(p, set()).add(xi)
    return all(len(v) == 1 for v in over.values())


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_twisted_vague_morphisms_validate(seed):
    assert validate_gvm_action(InstanceGenerator(seed).gvm_action(mode='twisted')) is None
    steered = InstanceGenerator(seed).gvm_action(steer='equality', mode='twisted')
    assert steered.equality_hypotheses()
    assert thm_both_sweep(steered).clause('both.equality').status is Status.HOLDS


def test_twisted_mode_leaves_the_fibres_of_pi():
    drawn = [InstanceGenerator(seed).gvm_action(mode='twisted') for seed in range(30)]
    assert not all(_factors_through_pi(va.gvm) for va in drawn)
    steered = [InstanceGenerator(seed).gvm_action(steer='equality', mode='twisted') for seed in range(30)]
    assert not all(_factors_through_pi(va.gvm) for va in steered)


def test_unknown_vague_mode():
    with pytest.raises(InfeasibleSpecError):
        InstanceGenerator(0).gvm_action(mode='folded')


def test_generated_bornology_resolves_on_the_arrows():
    spec = GeneratorSpec('pair', units=2, bornology=BornologyKind.restricted({0}))
    b = generated_bornology(spec, generate(spec))
    assert b.core == {0}
    assert not b.is_all
    assert generated_bornology(GeneratorSpec('pair', units=2), generate(GeneratorSpec('pair', units=2))).is_all
