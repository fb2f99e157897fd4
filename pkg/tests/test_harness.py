import pytest

from errors import KindMismatchError
from fintop import Bornology
from fixtures import (CATALOG, bun2_swap, collapse_into_swap, embedded_collapse, embedded_identity,
                      pullback_swap, restricted_arrow_bornology, swap, swap_actor_pair, swap_morphism_pair,
                      swap_terminal_actor_of_actions)
from harness import THEOREMS, Entry, TheoremId, VerifyOptions, cell_seed, coverage, run_cell, run_suite, verify
from verdict import CheckReport, Mode, Status


def _fails_with_t_y(a, opts):
    report = CheckReport('caofi')
    report.expect('caofi', 't_y' not in a.space.labels, sorted(a.space.labels))
    return report


def test_every_theorem_has_an_entry():
    assert set(THEOREMS) == set(TheoremId)
    assert TheoremId.parse(' LIEMA ') is TheoremId.LIEMA
    with pytest.raises(KindMismatchError):
        TheoremId.parse('fermat')


def test_pullback_recurrence_holds():
    v = verify('inzbor', pullback_swap())
    assert v.status is Status.HOLDS
    assert v.exhaustive
    assert not v.faithful_violation


def test_vague_transport_on_embedded_morphisms():
    assert verify(TheoremId.BOTH, embedded_identity()).status is Status.HOLDS
    v = verify(TheoremId.BOTH, embedded_collapse())
    assert v.status is Status.HOLDS
    assert ('Gamma surjective, h and gamma injective', False) in v.hypotheses
    assert v.to_dict()['theorem'] == 'both'


def test_liema_hypotheses_are_reported():
    v = verify('liema', swap_terminal_actor_of_actions())
    assert v.status is Status.HOLDS
    assert dict(v.hypotheses) == {'saturating': True, 'g injective': False}


def test_label_on_collapse_and_miraj_outside_its_hypothesis():
    assert verify('label', collapse_into_swap()).status is Status.HOLDS
    assert verify('miraj', collapse_into_swap()).status is Status.NOT_APPLICABLE


def test_kind_mismatch():
    with pytest.raises(KindMismatchError):
        verify('inzbor', swap())
    with pytest.raises(KindMismatchError):
        verify('saspermam', swap_morphism_pair())
    assert verify('saspermam', swap_actor_pair()).status is Status.HOLDS


def test_restricted_bornology_is_model_level():
    v = verify('flacara', swap(), VerifyOptions(arrows=restricted_arrow_bornology()))
    assert v.mode is Mode.MODEL_LEVEL
    assert verify('flacara', swap()).mode is Mode.FAITHFUL


def test_restricted_point_bornology_is_model_level():
    a = swap()
    v = verify('flacara', a, VerifyOptions(points=Bornology.restricted(a.space, set())))
    assert v.mode is Mode.MODEL_LEVEL
    assert not v.faithful_violation
    assert v.bornology['points'] == {'kind': 'restricted', 'core': []}


def test_restricted_flacara_cells_are_never_faithful_violations():
    for index in range(3, 48, 4):
        cell = run_cell(TheoremId.FLACARA, index, 42)
        assert 'error' not in cell
        assert not cell.get('faithful_violation')


def test_faithful_violation_on_an_action_is_minimized(monkeypatch):
    monkeypatch.setitem(THEOREMS, TheoremId.CAOFI, Entry(('action',), _fails_with_t_y, lambda gen, steer: swap()))
    v = verify(TheoremId.CAOFI, bun2_swap())
    assert v.faithful_violation
    assert v.witness['clause'] == 'caofi'
    assert v.minimized['points'] == 2
    assert verify(TheoremId.CAOFI, bun2_swap(), VerifyOptions(minimize=False)).minimized is None


def test_cells_are_deterministic():
    assert cell_seed(7, TheoremId.LABEL, 3) == cell_seed(7, TheoremId.LABEL, 3)
    assert cell_seed(7, TheoremId.LABEL, 3) != cell_seed(7, TheoremId.LABEL, 4)
    assert run_cell(TheoremId.INZBOR, 1, 7) == run_cell(TheoremId.INZBOR, 1, 7)


def test_small_suite():
    report = run_suite(seed=3, count=2, theorems=['inzbor', 'label', 'vasnatoare_formula'])
    assert report['ok']
    assert set(report['theorems']) == {'inzbor', 'label', 'vasnatoare_formula'}
    for row in report['theorems'].values():
        assert sum(row.values()) == 2


def test_suite_over_every_theorem_reaches_restricted_cells():
    report = run_suite(seed=42, count=8)
    assert report['ok'], report['violations']
    assert set(report['theorems']) == {t.value for t in TheoremId}
    for row in report['theorems'].values():
        assert sum(row.values()) == 8
        assert row['errors'] == 0


def test_coverage_names_a_fixture_for_every_theorem():
    cov = coverage(CATALOG)
    assert set(cov) == {t.value for t in TheoremId}
    assert all(cov.values())
    assert 'SWAP' in cov['prostie']
