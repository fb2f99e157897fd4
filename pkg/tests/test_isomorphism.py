import pytest

from errors import SizeCapError
from fixtures import bun2, c2, c2_times_pair2, pair2, pullback_c2_constant
from groupoid import cyclic_group
from isomorphism import are_isomorphic, find_isomorphism, furnal_check, myex_check
from verdict import Status


def test_group_pulled_back_along_constant_map_is_a_product():
    assert are_isomorphic(pullback_c2_constant().realized, c2_times_pair2())
    assert myex_check(pullback_c2_constant()).clause('pullback_is_product').status is Status.HOLDS


def test_non_isomorphic_groupoids():
    assert not are_isomorphic(pair2(), bun2())
    assert not are_isomorphic(cyclic_group(4), c2())


def test_isomorphism_table_is_a_bijection():
    table = find_isomorphism(c2(), c2())
    assert sorted(table) == [0, 1]
    assert table[0] == 0


def test_pullback_along_identity_gives_the_groupoid_back():
    for g in (pair2(), c2(), bun2()):
        report = furnal_check(g)
        assert report.clause('arrow_count').status is Status.HOLDS
        assert report.clause('pullback_is_original').status is Status.HOLDS


def test_search_is_capped():
    with pytest.raises(SizeCapError):
        find_isomorphism(cyclic_group(13), cyclic_group(13))
