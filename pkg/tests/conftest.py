"""Shared fixtures: small graphs and an isolated results database"""
import pytest

from src.graphs.generator import (
    complete_graph, cycle_graph, path_graph, regularize, sample_connected_erdos_renyi, star_graph,
)
from src.graphs.models import Graph
from src.services.config_service import config_service


@pytest.fixture(autouse=True)
def fresh_config():
    config_service.reset()
    yield
    config_service.reset()


@pytest.fixture
def k5() -> Graph:
    return complete_graph(5)


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture
def p4() -> Graph:
    return path_graph(4)


@pytest.fixture
def star() -> Graph:
    return star_graph(4)


@pytest.fixture
def er_graph() -> Graph:
    g, _ = sample_connected_erdos_renyi(40, 0.3, seed=7)
    return g


@pytest.fixture
def er_regular(er_graph) -> Graph:
    return regularize(er_graph)


@pytest.fixture
def temp_db(tmp_path):
    from src.database.connection import DatabaseManager

    return DatabaseManager(db_path=str(tmp_path / 'results.db'), database_url='')
