import sys
from pathlib import Path

# Add project root to PYTHONPATH for pytest
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

# tests/conftest.py
import pytest
import importlib.util

# Absolute path to app.py
APP_PATH = PROJECT_ROOT / "app.py"

# Load app.py as a real module; the name "app" is taken by the package
spec = importlib.util.spec_from_file_location("flask_entrypoint", APP_PATH)
flask_entrypoint = importlib.util.module_from_spec(spec)
sys.modules["flask_entrypoint"] = flask_entrypoint
spec.loader.exec_module(flask_entrypoint)


@pytest.fixture
def client():
    flask_app = flask_entrypoint.app
    flask_app.config["TESTING"] = True

    with flask_app.test_client() as client:
        yield client


@pytest.fixture
def color0():
    """V(0, a2_1), the smallest typical module."""
    from app.superalg import TypicalColor

    return TypicalColor(0, 1)


@pytest.fixture
def color1():
    """V(1, a2_1)."""
    from app.superalg import TypicalColor

    return TypicalColor(1, 1)


@pytest.fixture
def qsquare_table():
    """q^{n^2} on 0..12, long enough to guess with M-degree 2 and hold out two rows."""
    from app.qweyl import builtin

    return builtin("qsquare").tabulate((0,), (12,))
