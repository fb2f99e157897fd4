import os

import pytest

from action import compose_morphisms
from data_manager import DataManager
from errors import InvalidInstanceError, KindMismatchError, SerializationError
from fintop import Bornology, discrete
from fixtures import CATALOG, build, c2, sier, swap
from serialization import Codec, canonical, dumps, loads

ROOT = os.path.join(os.path.dirname(__file__), '..')


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_catalog_round_trips(name):
    kind, obj = build(name)
    doc = Codec().dump(obj)
    assert doc['kind'] == kind
    again = Codec().dump(Codec().load(doc))
    assert canonical(again) == canonical(doc)


def test_shipped_fixtures_match_their_builders():
    dm = DataManager(ROOT)
    assert {'C2', 'D2', 'SWAP'} <= set(dm.list_fixtures())
    for name in ('C2', 'D2', 'SWAP'):
        assert dumps(dm.load_fixture(name)) == dumps(build(name)[1])


def test_broken_fixture_fails_validation_only_when_asked():
    dm = DataManager(ROOT)
    with pytest.raises(InvalidInstanceError) as e:
        dm.load_fixture('BROKEN_SWAP')
    assert e.value.violation.axiom == 'associativity'
    assert dm.load_fixture('BROKEN_SWAP', validate=False).n == 2


def test_loading_interns_shared_endpoints():
    doc = Codec().dump(build('SWAP_MORPHISM_PAIR')[1])
    first, second = Codec().load(doc)
    assert first.target is second.source
    assert first.source.gpd is second.target.gpd
    assert compose_morphisms(second, first).f == (0, 0)


def test_kind_errors():
    with pytest.raises(KindMismatchError):
        Codec().load({'kind': 'monoid'})
    with pytest.raises(KindMismatchError):
        Codec().expect(Codec().dump(c2()), 'action')


def test_malformed_documents():
    with pytest.raises(SerializationError):
        loads('not json')
    with pytest.raises(SerializationError):
        Codec().load(['kind'])
    with pytest.raises(SerializationError):
        Codec().load({'kind': 'groupoid'})


def test_large_spaces_are_written_as_neighbourhoods():
    doc = Codec().dump(discrete(9))
    assert 'base' in doc and 'opens' not in doc
    assert Codec().load(doc).n == 9


def test_bornology_round_trip():
    b = Codec().load(Codec().dump(Bornology.restricted(sier(), {1})))
    assert b.core == {0, 1}
    assert loads(dumps(swap())).n == 2
