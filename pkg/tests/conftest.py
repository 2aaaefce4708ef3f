import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pacsim.construction import default_jscc_spec


@pytest.fixture(scope="session")
def jspec_v():
    """The pinned experiment configuration (N=128, 92+8 payload, no channel
    CRC); built once per session since construction runs 2e5 genie trials."""
    return default_jscc_spec()
