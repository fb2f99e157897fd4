import pytest

from action import (canonical_action, compose_morphisms, homoconstruction, identity_morphism, is_epimorphism,
                    is_invariant, label_sweep, orbit, orbits, recurrence_set, recurrence_set_bundle_formula,
                    relabel_action, restrict_with_inclusion, saturate, self_action_formula_check,
                    smallest_closed_invariant, subaction, transport_recurrence, translate, translation_openness_check,
                    validate_action, validate_morphism)
from errors import EndpointMismatchError, HypothesisError, NotBundleError, NotWideError
from fixtures import (broken_swap, bun2_swap, can, collapse_into_swap, pair2, swap, swap_morphism_pair,
                      swap_to_canonical, triv_sier)
from groupoid import cyclic_group
from verdict import Status


def test_swap_validates_and_broken_swap_does_not():
    assert validate_action(swap()) is None
    v = validate_action(broken_swap())
    assert v is not None
    assert v.axiom == 'associativity'


def test_recurrence_of_swap():
    a = swap()
    assert recurrence_set(a, {0}, {0}) == {0}
    assert recurrence_set(a, {0}, {1}) == {1}
    assert recurrence_set(a, {0, 1}, {0, 1}) == {0, 1}


def test_recurrence_of_canonical_pair_action():
    a = can(pair2())
    # points: 0 is a, 1 is b; arrow 2 is (b,a)
    assert recurrence_set(a, {0}, {1}) == {2}
    assert recurrence_set(a, set(), {0, 1}) == frozenset()


def test_terminal_morphism_transport():
    t = transport_recurrence(swap_to_canonical(), {0}, {1})
    assert t.lhs == {1}
    assert t.rhs == {0, 1}
    assert t.inclusion
    assert not t.equality
    assert not t.equality_hypotheses_met


def test_label_sweep_gates_equality():
    report = label_sweep(swap_to_canonical())
    assert report.clause('inclusion').status is Status.HOLDS
    assert report.clause('equality').status is Status.NOT_APPLICABLE
    report = label_sweep(identity_morphism(swap()))
    assert report.clause('equality').status is Status.HOLDS


def test_invariance_and_orbits():
    a = swap()
    assert not is_invariant(a, {0})
    assert is_invariant(a, {0, 1})
    assert is_invariant(a, set())
    assert orbits(bun2_swap()) == [{0, 1}, {2, 3}]
    assert translate(a, {1}, {0}) == {1}


def test_smallest_closed_invariant_on_sierpinski():
    a = can(triv_sier())
    assert smallest_closed_invariant(a, 1) == {0, 1}
    assert smallest_closed_invariant(a, 0) == {0}


def test_bundle_and_self_action_formulas():
    assert recurrence_set_bundle_formula(bun2_swap())
    assert recurrence_set_bundle_formula(swap())
    with pytest.raises(NotBundleError):
        recurrence_set_bundle_formula(can(pair2()))
    assert self_action_formula_check(pair2())


def test_translation_openness_on_open_groupoid():
    assert translation_openness_check(swap()).clause('caofi').status is Status.HOLDS


def test_restriction_to_wide_subgroupoid():
    restricted, inclusion = restrict_with_inclusion(swap(), {0})
    assert restricted.gpd.n == 1
    assert validate_action(restricted) is None
    assert validate_morphism(inclusion) is None
    with pytest.raises(NotWideError):
        restrict_with_inclusion(swap(), {1})


def test_subaction_needs_invariant_set():
    with pytest.raises(HypothesisError):
        subaction(swap(), {0})
    sub = subaction(bun2_swap(), {0, 1})
    assert sub.n == 2 and sub.gpd.n == 2
    assert validate_action(sub) is None


def test_morphisms_validate_and_compose():
    assert validate_morphism(swap_to_canonical()) is None
    assert validate_morphism(collapse_into_swap()) is None
    assert is_epimorphism(swap_to_canonical())
    first, second = swap_morphism_pair()
    composite = compose_morphisms(second, first)
    assert composite.f == (0, 0)
    assert validate_morphism(composite) is None


def test_compose_rejects_mismatched_endpoints():
    with pytest.raises(EndpointMismatchError):
        compose_morphisms(swap_to_canonical(), collapse_into_swap())


def test_relabel_and_homoconstruction():
    b, iso = relabel_action(swap(), (0, 1), (1, 0))
    assert validate_action(b) is None
    assert validate_morphism(iso) is None
    pulled, m = homoconstruction(swap(), cyclic_group(2), (0, 1))
    assert validate_action(pulled) is None
    assert m.f == (0, 1)


def test_action_accessors():
    a = swap()
    assert a.rho(1) == 0
    assert a.apply(1, 0) == 1
    assert a.anchor_map.table == (0, 0)
    assert swap_to_canonical().f_map(1) == 0


def test_canonical_action_orbits_and_saturation():
    a = canonical_action(pair2())
    assert validate_action(a) is None
    assert orbit(a, 0) == {0, 1}
    assert saturate(swap(), {0}) == {0, 1}
    assert saturate(bun2_swap(), {2}) == {2, 3}
