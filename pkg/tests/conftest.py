import pytest

from divpart import partition


@pytest.fixture(scope="session")
def table_r2_400():
    """Shared exact table for r = 2 up to weight 400 (the expensive build)."""
    return partition.build_table(2, 400)


@pytest.fixture(scope="session")
def table_r3_400():
    return partition.build_table(3, 400)


@pytest.fixture(scope="session")
def table_r2_60():
    return partition.build_table(2, 60)
