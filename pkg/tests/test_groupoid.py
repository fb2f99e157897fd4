from dataclasses import replace

import pytest

from errors import NotAUnitError
from fintop import FiniteSpace
from fixtures import bun2, c2, pair2, triv_d2
from groupoid import (Groupoid, cyclic_group, disjoint_union, fibers, is_open_groupoid, is_transitive_groupoid,
                      isotropy, product_groupoid, product_set, recognize, subgroupoid, subgroupoid_check,
                      unit_orbit, unit_orbits, validate_functor, validate_groupoid)

# PAIR2 arrows: 0=(a,a) 1=(a,b) 2=(b,a) 3=(b,b); (x,y) goes from y to x
AA, AB, BA, BB = 0, 1, 2, 3


def _bundle_over_sierpinski():
    """C2 at x and at y, x in every neighbourhood of y, g_x isolated."""
    space = FiniteSpace.from_base(['x', 'gx', 'y', 'gy'], [[0, 2], [1], [2], [3]])
    mul = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0, (2, 2): 2, (2, 3): 3, (3, 2): 3, (3, 3): 2}
    return Groupoid(space, frozenset({0, 2}), (0, 0, 2, 2), (0, 0, 2, 2), (0, 1, 2, 3), mul)


def test_named_groupoids_validate():
    for g in (pair2(), c2(), bun2(), triv_d2(), cyclic_group(4)):
        assert validate_groupoid(g) is None


def test_inverse_redefined_as_identity_fails():
    g = pair2()
    broken = replace(g, inv=tuple(g.arrows))
    v = validate_groupoid(broken)
    assert v is not None
    assert v.axiom == 'inverse'


def test_fibers_of_pair_groupoid():
    g = pair2()
    from_a, into_b, both = fibers(g, {AA}, {BB})
    assert from_a == {AA, BA}
    assert into_b == {BA, BB}
    assert both == {BA}


def test_fibers_of_a_group_and_empty_fibers():
    g = c2()
    assert fibers(g, {0}, {0}) == ({0, 1}, {0, 1}, {0, 1})
    g = pair2()
    assert fibers(g, set(), g.units) == (frozenset(), frozenset(g.arrows), frozenset())


def test_fibers_reject_non_units():
    with pytest.raises(NotAUnitError):
        fibers(pair2(), {AB}, set())


def test_transitivity():
    assert is_transitive_groupoid(pair2())
    assert not is_transitive_groupoid(bun2())
    assert len(unit_orbits(bun2())) == 2


def test_openness():
    assert is_open_groupoid(pair2())
    assert is_open_groupoid(c2())
    g = _bundle_over_sierpinski()
    assert validate_groupoid(g) is None
    assert not is_open_groupoid(g)


def test_subgroupoid_checks():
    g = pair2()
    units = subgroupoid_check(g, g.units)
    assert units.is_subgroupoid and units.is_wide
    whole = subgroupoid_check(g, g.arrows)
    assert whole.is_subgroupoid and whole.is_wide
    assert not subgroupoid_check(g, {AB}).is_subgroupoid


def test_product_set_and_recognition():
    assert product_set(pair2(), {AB}, {BA}) == {AA}
    assert recognize(c2()).is_group
    assert recognize(bun2()).is_group_bundle
    assert recognize(pair2()).is_pair_groupoid
    assert not recognize(bun2()).is_group


def test_constructions_validate():
    g = product_groupoid(c2(), pair2())
    assert g.n == 8
    assert validate_groupoid(g) is None
    u = disjoint_union([c2(), pair2()])
    assert u.n == 6 and len(u.units) == 3
    assert validate_groupoid(u) is None


def test_subgroupoid_reindexes():
    sub, old = subgroupoid(bun2(), {0, 1})
    assert old == [0, 1]
    assert validate_groupoid(sub) is None
    assert recognize(sub).is_group


def test_functor_checks():
    g = c2()
    assert validate_functor(g, g, (0, 1)) is None
    assert validate_functor(g, g, (0, 0)) is None
    v = validate_functor(g, g, (1, 1))
    assert v is not None and v.axiom == 'functor_units'
    assert validate_functor(triv_d2(), c2(), (0, 0)) is None


def test_isotropy_and_unit_orbit():
    g = pair2()
    assert isotropy(g, AA) == {AA}
    assert unit_orbit(g, AA) == {AA, BB}
    assert isotropy(c2(), 0) == {0, 1}
    with pytest.raises(NotAUnitError):
        isotropy(g, AB)
