import pytest

from latticelab.rng import SeededRng

# One fixed master seed for the whole suite; individual tests derive
# labeled sub-streams so reordering tests never changes their draws.
MASTER_SEED = bytes.fromhex(
    "7a1d0c9e55aa33019b4e6f2d8c77e1053fb08a6241d5ce97018e2b4c6fa93d50"
)


@pytest.fixture
def rng(request):
    return SeededRng(MASTER_SEED).derive(request.node.nodeid)
