import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from app.models.ring import make_ring
from app.schemas.ring import DescriptorSchema
from app.utils.config import Config

# isolated_config is function-scoped and autouse, so every @given test sees it
settings.register_profile("kostant", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("kostant")


def finite_field(p, d=None):
    return make_ring(DescriptorSchema(backend="ff", p=p, d=d))


def series(p, precision):
    return make_ring(DescriptorSchema(backend="series", p=p, N=precision))


def rational():
    return make_ring(DescriptorSchema(backend="rational"))


# Backends used by the identity and round-trip suites.
ACCEPTANCE_RINGS = {
    "F3": lambda: finite_field(3),
    "F5": lambda: finite_field(5),
    "F7": lambda: finite_field(7),
    "F13": lambda: finite_field(13),
    "rational": rational,
    "series-5-4": lambda: series(5, 4),
}


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    monkeypatch.setattr(Config, "DESCRIPTOR", None)
    monkeypatch.setattr(Config, "SEED", 0)
    monkeypatch.setattr(Config, "WORKERS", 1)
    monkeypatch.setattr(Config, "LOG_DIR", "")


@pytest.fixture
def f3():
    return finite_field(3, 2)


@pytest.fixture
def f5():
    return finite_field(5)


@pytest.fixture
def f7():
    return finite_field(7)


@pytest.fixture
def qi():
    return rational()


@pytest.fixture
def series54():
    return series(5, 4)


@pytest.fixture(params=sorted(ACCEPTANCE_RINGS))
def any_ring(request):
    return ACCEPTANCE_RINGS[request.param]()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def f13():
    return finite_field(13)
