"""
Data Manager
"""
import json
import logging
import os

from config import COVERAGE_FILE, FIXTURES_DIR, REPORTS_DIR
from errors import SerializationError
from serialization import Codec, canonical
from utils import utc_now

LOG = logging.getLogger(__name__)


class DataManager:
    """Flat JSON files under data/: the fixture corpus, suite reports and the coverage map."""

    def __init__(self, root='.'):
        self.f_dir = os.path.join(root, FIXTURES_DIR)
        self.r_dir = os.path.join(root, REPORTS_DIR)
        self.c_file = os.path.join(root, COVERAGE_FILE)
        self._init()

    def _init(self):
        os.makedirs(self.f_dir, exist_ok=True)
        os.makedirs(self.r_dir, exist_ok=True)

    def _read(self, f):
        try:
            with open(f, 'r', encoding='utf-8') as h:
                return json.load(h)
        except FileNotFoundError:
            raise SerializationError(f"no such file {f}") from None
        except json.JSONDecodeError as e:
            raise SerializationError(f"{f} is not JSON: {e}") from e

    def _write(self, f, d):
        with open(f, 'w', encoding='utf-8') as h:
            json.dump(d, h, indent=2, sort_keys=True, ensure_ascii=False, default=str)
            h.write('\n')

    def fixture_path(self, name):
        return os.path.join(self.f_dir, f"{name}.json")

    def list_fixtures(self):
        return sorted(f[:-5] for f in os.listdir(self.f_dir) if f.endswith('.json'))

    def load_fixture(self, name, validate=True):
        return Codec(validate).load(self._read(self.fixture_path(name)))

    def read_fixture_text(self, name):
        with open(self.fixture_path(name), 'r', encoding='utf-8') as h:
            return h.read()

    def save_instance(self, name, obj):
        """Canonical JSON of `obj`, so a save after a load reproduces the file."""
        path = self.fixture_path(name)
        with open(path, 'w', encoding='utf-8') as h:
            h.write(canonical(Codec().dump(obj)))
            h.write('\n')
        LOG.info("saved %s", path)
        return path

    def save_report(self, report, prefix='suite'):
        stamp = utc_now()
        d = dict(report, generated_at=stamp)
        path = os.path.join(self.r_dir, f"{prefix}_{stamp.replace(':', '').replace('-', '')}.json")
        self._write(path, d)
        LOG.info("saved report %s", path)
        return path

    def write_coverage(self, cov):
        self._write(self.c_file, {'generated_at': utc_now(), 'coverage': cov})
        missing = [t for t, names in cov.items() if not names]
        if missing:
            LOG.warning("theorems without a corpus fixture: %s", ', '.join(missing))
        return self.c_file

    def read_coverage(self):
        return self._read(self.c_file)
