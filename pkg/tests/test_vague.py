import pytest

from action import ActionMorphism, validate_morphism
from dynamics import minimal_subsets
from errors import EndpointMismatchError, HypothesisError, InvalidInstanceError, NotAUnitError
from fixtures import (c2, d2, embedded_collapse, embedded_identity, pair2, pullback_c2_constant,
                      pullback_canonical_c2, pullback_swap, swap, twisted_inclusion)
from groupoid import recognize, validate_groupoid
from vague import (build_pullback, build_pullback_action, embed_ordinary, gvm_from_gamma2, gvm_morphism,
                   inzbor_check, prop_caciu_check, prop_rollar_check, pullback_map, pullback_proper_check,
                   pullback_recurrence_identity, pullback_structure_check, saex_identity_check, thm_both_check,
                   thm_both_sweep, thm_color_check, transport_profile, twisted_gvm_action, validate_gvm,
                   validate_gvm_action)
from verdict import Mode, Status


def test_pullback_along_constant_map():
    pb = pullback_c2_constant()
    assert pb.realized.n == 8
    assert len(pb.realized.units) == 2
    assert validate_groupoid(pb.realized) is None
    assert not recognize(pb.realized).is_pair_groupoid
    assert pb.Pi[pb.unit_of[0]] == 0


def test_pullback_structure():
    report = pullback_structure_check(pullback_c2_constant())
    assert report.holds
    assert report.clause('preimage_products_equal').status is Status.NOT_APPLICABLE
    proper = pullback_proper_check(pullback_c2_constant())
    assert proper.clause('Pi_proper').status is Status.HOLDS
    assert proper.mode is Mode.FAITHFUL


def test_pullback_rejects_bad_maps():
    with pytest.raises(NotAUnitError):
        build_pullback(c2(), (1, 1), d2())
    with pytest.raises(HypothesisError):
        build_pullback(pair2(), (0, 0), d2())
    with pytest.raises(EndpointMismatchError):
        build_pullback_action(swap(), pullback_c2_constant())


def test_pullback_recurrence_identity():
    assert inzbor_check(pullback_swap()).clause('recurrence_preimage').status is Status.HOLDS


def test_pullback_of_canonical_action_is_A():
    pa = pullback_canonical_c2()
    assert pa.realized.n == 2
    assert saex_identity_check(pa).holds


def test_embedded_identity_gets_equality():
    va = embedded_identity()
    assert validate_gvm_action(va) is None
    report = thm_both_sweep(va)
    assert report.clause('both.inclusion').status is Status.HOLDS
    assert report.clause('both.equality').status is Status.HOLDS
    assert report.clause('stift.pulled_back_equality').status is Status.HOLDS


def test_embedded_collapse_only_gets_inclusion():
    va = embedded_collapse()
    assert validate_gvm(va.gvm) is None
    result = thm_both_check(va, {0}, {1})
    assert result.inclusion
    assert not result.eq_hyp
    report = thm_both_sweep(va)
    assert report.clause('both.inclusion').status is Status.HOLDS
    assert report.clause('both.equality').status is Status.NOT_APPLICABLE


def test_color_on_collapse():
    report = thm_color_check(embedded_collapse())
    assert report.clause('orbit_image').status is Status.HOLDS
    assert report.clause('image_invariant').status is Status.NOT_APPLICABLE
    assert thm_color_check(embedded_identity()).status is Status.HOLDS


def test_minimal_preimage_needs_closed_invariant_images():
    report = transport_profile(embedded_collapse())
    assert report.clause('garbanzos.minimal_preimage').status is Status.NOT_APPLICABLE
    assert report.clause('secinta.T').status is Status.HOLDS
    assert report.holds


def test_transport_along_identity():
    va = embedded_identity()
    assert transport_profile(va).status is Status.HOLDS
    assert prop_caciu_check(va).status is Status.HOLDS
    assert prop_rollar_check(va).holds


def test_gamma_rebuilt_from_second_component():
    gvm = embedded_identity().gvm
    rebuilt = gvm_from_gamma2(gvm.pb, gvm.pb2, gvm.gamma, gvm.gamma2)
    assert rebuilt.Gamma == gvm.Gamma


def test_ungated_minimal_preimage_fails_on_collapse():
    va = embedded_collapse()
    images = [va.image(m) for m in minimal_subsets(va.theta)]
    assert minimal_subsets(va.theta2) == [{0, 1}]
    assert {0, 1} not in images


def test_pullback_map_and_unit_points():
    pb = pullback_c2_constant()
    assert pullback_map(pb).table == (0, 0)
    assert pb.point_of_unit == {pb.unit_of[0]: 0, pb.unit_of[1]: 1}


def test_gvm_morphism_is_an_ordinary_morphism_of_pullbacks():
    va = embedded_identity()
    m = gvm_morphism(va)
    assert m.source is va.pa.realized
    assert validate_morphism(m) is None


def test_pullback_recurrence_identity_on_single_pair():
    pa = pullback_swap()
    assert pullback_recurrence_identity(pa, {0}, {1})
    assert pullback_recurrence_identity(pa, set(), {0, 1})


def test_embedding_rejects_a_non_morphism():
    with pytest.raises(InvalidInstanceError):
        embed_ordinary(ActionMorphism(swap(), swap(), (0, 1), (0, 0)))


def test_twisted_gamma_depends_on_fibre_points():
    va = twisted_inclusion()
    gvm = va.gvm
    assert validate_gvm_action(va) is None
    assert validate_morphism(gvm_morphism(va)) is None
    assert set(gvm.pb.Pi) == {0}
    assert gvm.gamma2 == (0, 1, 1, 0)


def test_twisted_inclusion_transports_recurrence():
    va = twisted_inclusion()
    report = thm_both_sweep(va)
    assert report.clause('both.inclusion').status is Status.HOLDS
    assert report.clause('both.equality').status is Status.NOT_APPLICABLE
    assert report.holds
    assert thm_color_check(va).holds
    assert transport_profile(va).holds
    assert prop_caciu_check(va).holds


def test_twist_must_fix_the_image_points():
    m = ActionMorphism(swap(), swap(), (0, 1), (0, 1))
    with pytest.raises(HypothesisError):
        twisted_gvm_action(m, (0, 0), d2(), (0, 1))
    gvm = twisted_gvm_action(m, (0, 0), d2(), (0, 0)).gvm
    assert gvm.gamma2 == tuple(xi for _, xi, _ in gvm.pb.triples)
