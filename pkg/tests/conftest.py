import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from maghom.instances import standard_suite, standard_suite_digraphs


@pytest.fixture(scope="session")
def suite():
    return standard_suite()


@pytest.fixture(scope="session")
def suite_digraphs():
    return standard_suite_digraphs()
