from fixtures import bun2_swap, swap
from minimize import minimize_witness, shrink_action
from verdict import CheckReport


def _mentions_t_y(a):
    report = CheckReport('labels')
    report.expect('no_t_y', 't_y' not in a.space.labels)
    return report


def test_shrink_keeps_the_failing_orbit():
    small = shrink_action(bun2_swap(), lambda a: 't_y' in a.space.labels)
    assert small.space.labels == ('s_y', 't_y')
    assert small.gpd.n == 2


def test_single_orbit_cannot_shrink():
    a = swap()
    assert shrink_action(a, lambda _: True) is a


def test_minimize_witness_returns_the_report_of_the_small_instance():
    small, report = minimize_witness(bun2_swap(), _mentions_t_y, 'no_t_y')
    assert small.n == 2
    assert not report.holds
