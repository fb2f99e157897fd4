import pytest

from dynamics import (DynProfile, audit_implications, baseline_check, classify, fixed_points, flacara_check,
                      invariant_sets, is_syndetic, limit_set, minimal_subsets, nonwandering_check, periodic_points,
                      point_classes, recurrent_points)
from errors import CarrierMismatchError
from fintop import Bornology
from fixtures import c2, can, d2, fixed_swap, restricted_arrow_bornology, swap, triv_d2, triv_sier
from verdict import Mode, Status


def test_swap_has_every_flag():
    p = classify(swap())
    assert all(p.flag(f) for f in DynProfile.FLAGS)


def test_disconnected_canonical_action():
    p = classify(can(triv_d2()))
    assert not p.T and not p.PT and not p.RT
    assert p.witnesses['RT'] == [0, 1]


def test_sierpinski_canonical_action_is_point_transitive():
    p = classify(can(triv_sier()))
    assert p.PT and not p.T
    assert p.witnesses['PT'] == 1
    assert not p.minimal


def test_invariant_sets_and_minimal_subsets():
    assert sorted(map(sorted, invariant_sets(swap()))) == [[], [0, 1]]
    assert minimal_subsets(can(triv_sier())) == [{0}]


def test_limit_sets_depend_on_the_bornology():
    a = swap()
    assert limit_set(a, 0) == frozenset()
    assert limit_set(a, 0, restricted_arrow_bornology()) == {1}
    assert limit_set(a, 1, restricted_arrow_bornology()) == {0}
    assert recurrent_points(a) == frozenset()
    assert recurrent_points(a, restricted_arrow_bornology()) == frozenset()


def test_bornology_must_live_on_the_arrows():
    with pytest.raises(CarrierMismatchError):
        limit_set(swap(), 0, Bornology.all_subsets(d2()))


def test_all_bounded_point_classes():
    pc = point_classes(swap())
    assert pc.wandering == {0, 1}
    assert pc.periodic == {0, 1}
    assert pc.almost_periodic == {0, 1}
    assert not pc.recurrent and not pc.weakly_periodic
    assert pc.to_dict()['bornology'] == {'kind': 'all'}


def test_fixed_points():
    assert fixed_points(fixed_swap()) == {0, 1}
    assert fixed_points(swap()) == frozenset()


def test_syndetic_sets():
    assert is_syndetic(c2(), 0, {0})
    assert not is_syndetic(c2(), 0, {0}, Bornology.restricted(c2().space, {0}))


def test_checks_hold_on_swap():
    a = swap()
    assert audit_implications(a).status is Status.HOLDS
    assert nonwandering_check(a).holds
    report = baseline_check(a, [restricted_arrow_bornology(a)])
    assert report.status is Status.HOLDS
    assert report.clause('coherence[core=0]').status is Status.HOLDS


def test_flacara_under_restricted_bornology_is_model_level():
    a = swap()
    report = flacara_check(a, restricted_arrow_bornology(a))
    assert report.mode is Mode.MODEL_LEVEL
    assert flacara_check(a).mode is Mode.FAITHFUL
    assert flacara_check(a).holds


def test_flacara_under_restricted_point_bornology_is_model_level():
    a = swap()
    report = flacara_check(a, None, Bornology.restricted(a.space, set()))
    assert report.mode is Mode.MODEL_LEVEL
    assert not report.failures(faithful_only=True)
    assert report.bornology == {'arrows': {'kind': 'all'}, 'points': {'kind': 'restricted', 'core': []}}
    assert flacara_check(a).bornology['points'] == {'kind': 'all'}


def test_periodic_points():
    assert periodic_points(swap()) == {0, 1}
    assert periodic_points(swap(), Bornology.restricted(c2().space, {0})) == frozenset()
