import pytest

from birkhoff.core.config.utils import find_global_config_path


@pytest.fixture
def local_config_path():
    yield ".birkhoff.yaml"


@pytest.fixture()
def global_config_path():
    yield find_global_config_path(to_write=True)
