"""
Test configuration and fixtures
"""
import io
import json
import random

import pytest

from pinfloer.cli.main import run
from pinfloer.core import config
from pinfloer.core.config import get_settings
from pinfloer.models.grid import GridDiagram
from pinfloer.services.grading import GradingService
from pinfloer.services.grid import GridService


@pytest.fixture
def rng():
    """Seeded random source; every test gets the same stream"""
    return random.Random(20240917)


@pytest.fixture
def unknot_grid() -> GridDiagram:
    """2x2 unknot, O = (2, 1), X = (1, 2) in 1-indexed rows"""
    return GridService.grid_from_permutations([1, 0], [0, 1])


@pytest.fixture
def trefoil_grid() -> GridDiagram:
    """5x5 trefoil: X on the diagonal, O shifted by two"""
    return GridService.grid_from_permutations([(i + 2) % 5 for i in range(5)], list(range(5)))


@pytest.fixture
def sphere_data():
    """Genus-one diagram of S^3: alpha = a, beta = b"""
    return GradingService.surface_data(1, [[1, 0]], [[0, 1]])


@pytest.fixture
def s1s2_data():
    """Genus-one diagram of S^1 x S^2: alpha and beta homologous"""
    return GradingService.surface_data(1, [[1, 0]], [[1, 0]])


@pytest.fixture
def write_grid_file(tmp_path):
    """Factory writing a 1-indexed grid file from 0-indexed marking rows"""
    def _write(O, X, name="grid.txt"):
        path = tmp_path / name
        path.write_text(
            f"# grid\nn = {len(O)}\nO: {' '.join(str(r + 1) for r in O)}\nX: {' '.join(str(r + 1) for r in X)}\n"
        )
        return str(path)
    return _write


@pytest.fixture
def write_diagram_file(tmp_path):
    """Factory writing a diagram JSON file"""
    def _write(payload, name="diagram.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)
    return _write


@pytest.fixture
def cli():
    """Run the command line tool in-process; returns (exit code, stdout text)"""
    def _run(*argv):
        stdout = io.StringIO()
        code = run(list(argv), stdout=stdout)
        return code, stdout.getvalue()
    return _run


@pytest.fixture
def thread_env(monkeypatch):
    """Set PINFLOER_THREADS for one test; cached settings are dropped around it"""
    def _set(value):
        monkeypatch.setenv("PINFLOER_THREADS", str(value))
        get_settings.cache_clear()
    yield _set
    get_settings.cache_clear()


@pytest.fixture
def small_caps(monkeypatch):
    """Grid caps lowered to 3 without --allow-large and 4 at most"""
    monkeypatch.setattr(config, "GRID_SIZE_DEFAULT_CAP", 3)
    monkeypatch.setattr(config, "GRID_SIZE_HARD_CAP", 4)
    return config
