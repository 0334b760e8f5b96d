import os

import pytest
from hypothesis import settings

from abelsplit import scan

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def desk_scan():
    """The full desk-scale scan, shared by the acceptance criteria."""
    return scan(1, 30, jobs=os.cpu_count() or 1)
