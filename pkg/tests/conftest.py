"""Shared fixtures."""

import random

import pytest

from src.config.settings import settings
from src.container import create_test_container
from src.service import catalog
from src.service.closure_service import ClosureService
from src.service.congruence_service import CongruenceExplorer
from src.service.equation_service import EquationSolver
from src.service.recognisable_service import RecognisableService
from src.service.stallings_service import StallingsService
from src.service.vpa_engine import VpaEngine
from tests.mocks.mock_display import MockDisplay


@pytest.fixture
def engine():
    return VpaEngine()


@pytest.fixture
def closure(engine):
    return ClosureService(engine)


@pytest.fixture
def explorer():
    return CongruenceExplorer(jobs=1)


@pytest.fixture
def stallings():
    return StallingsService()


@pytest.fixture
def recognisable():
    return RecognisableService()


@pytest.fixture
def solver():
    return EquationSolver(jobs=1)


@pytest.fixture
def rng():
    return random.Random(settings.seed)


@pytest.fixture
def padded():
    return catalog.padded_vpa()


@pytest.fixture
def anbn():
    return catalog.anbn_vpa()


@pytest.fixture
def display():
    return MockDisplay()


@pytest.fixture
def container(display, tmp_path):
    built = create_test_container(display=display)
    built.workspace.use_directory(tmp_path)
    return built
