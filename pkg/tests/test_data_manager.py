import json
import logging

import pytest

from data_manager import DataManager
from errors import SerializationError
from fixtures import swap
from serialization import dumps


def test_save_and_load_instance(tmp_path):
    dm = DataManager(str(tmp_path))
    path = dm.save_instance('SWAP', swap())
    assert path.endswith('SWAP.json')
    assert dm.list_fixtures() == ['SWAP']
    assert dumps(dm.load_fixture('SWAP')) == dumps(swap())
    text = dm.read_fixture_text('SWAP')
    assert text.endswith('\n')
    dm.save_instance('SWAP', dm.load_fixture('SWAP'))
    assert dm.read_fixture_text('SWAP') == text


def test_missing_and_corrupt_fixtures(tmp_path):
    dm = DataManager(str(tmp_path))
    with pytest.raises(SerializationError):
        dm.load_fixture('NOPE')
    (tmp_path / 'data' / 'fixtures' / 'BAD.json').write_text('{', encoding='utf-8')
    with pytest.raises(SerializationError):
        dm.load_fixture('BAD')


def test_reports_are_stamped(tmp_path):
    dm = DataManager(str(tmp_path))
    path = dm.save_report({'ok': True, 'seed': 1})
    with open(path, encoding='utf-8') as h:
        doc = json.load(h)
    assert doc['ok'] is True
    assert doc['generated_at'].endswith('Z')


def test_coverage_warns_about_uncovered_theorems(tmp_path, caplog):
    dm = DataManager(str(tmp_path))
    with caplog.at_level(logging.WARNING, logger='data_manager'):
        dm.write_coverage({'label': ['SWAP_TO_CAN'], 'inzbor': []})
    assert 'inzbor' in caplog.text
    assert dm.read_coverage()['coverage']['label'] == ['SWAP_TO_CAN']
