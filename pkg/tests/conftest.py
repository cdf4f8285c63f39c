import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from translitkit.backtranslit import build_reverse_index
from translitkit.graphemes import bundled_mapping_path, load_mapping
from translitkit.romanize import RomanizerConfig

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def bn():
    return load_mapping(bundled_mapping_path("bengali"))


@pytest.fixture(scope="session")
def hi():
    return load_mapping(bundled_mapping_path("devanagari"))


@pytest.fixture(scope="session")
def bn_cfg(bn):
    spec, table = bn
    return RomanizerConfig(spec, table)


@pytest.fixture(scope="session")
def hi_cfg(hi):
    spec, table = hi
    return RomanizerConfig(spec, table)


@pytest.fixture(scope="session")
def bn_index(bn):
    spec, table = bn
    return build_reverse_index(spec, table)


@pytest.fixture(scope="session")
def hi_index(hi):
    spec, table = hi
    return build_reverse_index(spec, table)


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
