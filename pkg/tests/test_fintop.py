import random

import pytest
from hypothesis import given, settings, strategies as st

from errors import InvalidInstanceError, SerializationError, UnknownPointError
from fintop import (Bornology, BornologyKind, FiniteSpace, SpaceMap, discrete, final_topology, generated_topology,
                    indiscrete, initial_topology, is_continuous, is_dense, is_homeomorphism, is_nowhere_dense,
                    is_open_map, is_proper, point_space, subspace, validate_space)
from fixtures import d2, sier


def _family(n, seed):
    rng = random.Random(seed)
    return [[p for p in range(n) if rng.random() < 0.5] for _ in range(rng.randint(0, 4))]


def test_discrete_and_sierpinski_validate():
    assert validate_space(['a', 'b'], [[], [0], [1], [0, 1]]) is None
    assert validate_space(['0', '1'], [[], [1], [0, 1]]) is None


def test_missing_full_set_is_reported():
    v = validate_space(['0', '1'], [[], [0], [1]])
    assert v is not None
    assert v.axiom == 'full_set'


def test_from_opens_rejects_non_topology():
    with pytest.raises(InvalidInstanceError):
        FiniteSpace.from_opens(['0', '1'], [[], [0], [1]])


def test_from_base_rejects_non_transitive_base():
    with pytest.raises(InvalidInstanceError):
        FiniteSpace.from_base(['a', 'b', 'c'], [[0, 1], [1, 2], [2]])


def test_closure_examples():
    s = sier()
    assert s.closure({1}) == {0, 1}
    assert d2().closure({0}) == {0}
    assert s.closure(set()) == frozenset()


def test_dense_and_nowhere_dense():
    s = sier()
    assert is_dense(s, {1})
    assert is_nowhere_dense(s, {0})
    assert d2().interior({0, 1}) == {0, 1}


def test_unknown_point_raises():
    with pytest.raises(UnknownPointError):
        d2().closure({5})


def test_iter_opens_lists_every_open_once():
    opens = list(sier().iter_opens())
    assert opens[0] == frozenset()
    assert sorted(map(sorted, opens)) == [[], [0, 1], [1]]
    assert len(list(discrete(4).iter_opens())) == 16
    assert len(list(discrete(6).iter_opens(limit=10))) == 10


def test_map_properties():
    s = sier()
    assert is_continuous(SpaceMap.identity(s))
    assert is_open_map(SpaceMap.identity(s))
    const = SpaceMap.constant(d2(), s, 0)
    assert is_continuous(const)
    assert not is_open_map(const)
    to_point = SpaceMap.constant(s, point_space(), 0)
    assert is_continuous(to_point) and is_open_map(to_point)


def test_homeomorphism_needs_continuous_inverse():
    swap_points = SpaceMap(d2(), d2(), (1, 0))
    assert is_homeomorphism(swap_points)
    assert not is_homeomorphism(SpaceMap(d2(), sier(), (0, 1)))


def test_proper_maps():
    d = d2()
    ident = SpaceMap.identity(d)
    assert is_proper(ident, Bornology.all_subsets(d), Bornology.all_subsets(d))
    assert not is_proper(ident, Bornology.restricted(d, {0}), Bornology.all_subsets(d))
    single = discrete(['a'])
    inclusion = SpaceMap(single, d, (0,))
    assert is_proper(inclusion, Bornology.all_subsets(single), Bornology.restricted(d, {0}))


def test_restricted_core_is_closed():
    b = Bornology.restricted(sier(), {1})
    assert b.core == {0, 1}
    assert b.is_all
    assert not Bornology.restricted(d2(), {0}).is_bounded({0, 1})


def test_bornology_kind_parse():
    assert BornologyKind.parse('all').is_all
    kind = BornologyKind.parse('core=0,2')
    assert kind.to_spec() == {'kind': 'restricted', 'core': [0, 2]}
    assert BornologyKind.parse('core=').to_spec() == {'kind': 'restricted', 'core': []}
    with pytest.raises(SerializationError):
        BornologyKind.parse('bounded')
    with pytest.raises(SerializationError):
        BornologyKind.parse('core=a')


def test_subspace_and_indiscrete():
    s, old = subspace(sier(), {0})
    assert old == [0]
    assert s.base == (frozenset({0}),)
    assert list(map(sorted, indiscrete(2).iter_opens())) == [[], [0, 1]]


def test_final_topology_makes_map_continuous():
    table = (0, 0, 1)
    dom = FiniteSpace.from_base(['p', 'q', 'r'], [[0, 1], [1], [2]])
    cod = final_topology(dom, table, ['x', 'y'])
    assert is_continuous(SpaceMap(dom, cod, table))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=10 ** 6))
def test_generated_topology_is_a_topology(n, seed):
    s = generated_topology(n, _family(n, seed))
    opens = list(s.iter_opens())
    assert validate_space(s.labels, opens) is None
    for o in _family(n, seed):
        assert s.is_open(o)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=10 ** 6))
def test_initial_topology_makes_maps_continuous(n, seed):
    rng = random.Random(seed)
    cod = generated_topology(3, _family(3, seed))
    table = [rng.randrange(3) for _ in range(n)]
    dom = initial_topology([str(i) for i in range(n)], [(cod, table)])
    assert is_continuous(SpaceMap(dom, cod, table))


def test_minimal_opens_and_bounded_sets():
    s = sier()
    assert s.minimal_open(0) == {0, 1}
    assert s.minimal_open(1) == {1}
    assert sorted(map(sorted, Bornology.restricted(d2(), {0}).bounded_sets())) == [[], [0]]
    assert SpaceMap(d2(), sier(), (1, 0))(0) == 1


def test_bornology_with_open_core_is_rejected():
    with pytest.raises(InvalidInstanceError):
        Bornology(sier(), frozenset({1}))
