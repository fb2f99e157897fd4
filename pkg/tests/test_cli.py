import json
import os

from fixtures import CATALOG, swap_morphism_pair
from gd import EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, main
from serialization import Codec

FIXTURES = os.path.join(os.path.dirname(__file__), '..', 'data', 'fixtures')


def _fixture(name):
    return os.path.join(FIXTURES, f"{name}.json")


def _write(path, doc):
    path.write_text(json.dumps(doc), encoding='utf-8')
    return str(path)


def _out(capsys):
    return json.loads(capsys.readouterr().out)


def test_validate(capsys):
    assert main(['validate', _fixture('SWAP')]) == EXIT_OK
    assert _out(capsys)['valid'] is True
    assert main(['validate', _fixture('BROKEN_SWAP')]) == EXIT_VIOLATED
    doc = _out(capsys)
    assert doc['valid'] is False
    assert doc['violation']['axiom'] == 'associativity'


def test_recurrence_and_classify(capsys):
    assert main(['recurrence', _fixture('SWAP'), '--M', '0', '--N', '1']) == EXIT_OK
    assert _out(capsys)['recurrence_set'] == [1]
    assert main(['classify', _fixture('SWAP')]) == EXIT_OK
    assert _out(capsys)['profile']['T'] is True


def test_points_under_restricted_bornology(capsys):
    assert main(['points', _fixture('SWAP'), '--bornology', 'core=0']) == EXIT_OK
    doc = _out(capsys)
    assert doc['mode'] == 'model_level'
    assert doc['points']['limit_sets'] == {'0': [1], '1': [0]}


def test_verify(capsys):
    assert main(['verify', '--theorem', 'prostie', _fixture('SWAP')]) == EXIT_OK
    assert _out(capsys)['status'] == 'holds'
    assert main(['verify', '--theorem', 'inzbor', _fixture('SWAP')]) == EXIT_USAGE


def test_missing_file_is_a_usage_error(tmp_path, capsys):
    assert main(['validate', str(tmp_path / 'nothing.json')]) == EXIT_USAGE
    assert 'SerializationError' in capsys.readouterr().err


def test_generate(capsys):
    assert main(['generate', '--kind', 'pair', '--units', '2']) == EXIT_OK
    doc = _out(capsys)
    assert doc['kind'] == 'groupoid'
    assert len(doc['src']) == 4


def test_generate_with_a_bornology(capsys):
    assert main(['generate', '--kind', 'pair', '--units', '2', '--bornology', 'core=0']) == EXIT_OK
    doc = _out(capsys)
    assert doc['instance']['kind'] == 'groupoid'
    assert doc['bornology']['core'] == [0]


def test_compose_morphisms(tmp_path, capsys):
    codec = Codec()
    first, second = swap_morphism_pair()
    a = _write(tmp_path / 'first.json', codec.dump(first))
    b = _write(tmp_path / 'second.json', codec.dump(second))
    assert main(['compose', '--morphisms', a, b]) == EXIT_OK
    doc = _out(capsys)
    assert doc['kind'] == 'action_morphism'
    assert doc['f'] == [0, 0]


def test_pullback(tmp_path, capsys):
    d2 = {'kind': 'space', 'points': ['a', 'b'], 'opens': [[0], [1]]}
    point = {'kind': 'space', 'points': ['e'], 'opens': []}
    pi = _write(tmp_path / 'pi.json', {'kind': 'map', 'domain': d2, 'codomain': point, 'table': [0, 0]})
    assert main(['pullback', _fixture('C2'), '--pi', pi]) == EXIT_OK
    doc = _out(capsys)
    assert len(doc['groupoid']['src']) == 8
    assert doc['report']['status'] == 'holds'


def test_suite(capsys):
    assert main(['suite', '--seed', '5', '--count', '1', '--filter', 'inzbor,caofi']) == EXIT_OK
    doc = _out(capsys)
    assert doc['ok'] is True
    assert set(doc['theorems']) == {'inzbor', 'caofi'}


def test_corpus_writes_every_fixture(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(['corpus', '--write']) == EXIT_OK
    assert len(_out(capsys)['fixtures']) == len(CATALOG)
    written = os.listdir(tmp_path / 'data' / 'fixtures')
    assert len(written) == len(CATALOG)
    assert (tmp_path / 'data' / 'coverage.json').exists()
