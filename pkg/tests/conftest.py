import os
import random

import pytest

from dirac_chords.chords import ChordDiagram
from dirac_chords.integrand import QEDGraph
from dirac_chords.polynomials import UGraph

SEED = int(os.environ.get("DIRAC_CHORDS_SEED", "0x5EED"), 0)


@pytest.fixture
def rng():
    return random.Random(SEED)


# Diagrams from the worked examples.  D1 and D2 are fixed by their required
# cycle counts and component shapes; D3 by its chords {3,7}, {4,8}.
D1 = ChordDiagram.build([8], [(1, 3), (2, 5), (4, 8), (6, 7)])
D2 = ChordDiagram.build([8], [(1, 3), (2, 8), (5, 7)])
D3 = ChordDiagram.build([8], [(3, 7), (4, 8)])

# Small connected graphs with at most six edges.
GRAPHS = {
    "edge": UGraph(2, [(0, 1)]),
    "bubble": UGraph(2, [(0, 1), (1, 0)]),
    "triangle": UGraph(3, [(0, 1), (1, 2), (2, 0)]),
    "bubble_tail": UGraph(3, [(0, 1), (1, 0), (1, 2)]),
    "bubble_chain": UGraph(3, [(0, 1), (1, 0), (1, 2), (2, 1)]),
    "square_diag": UGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]),
    "wheel3": UGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]),
    "triple_bubble": UGraph(2, [(0, 1), (0, 1), (1, 0)]),
}

# one-loop vacuum polarisation: two vertices, two fermion propagators
VACPOL = QEDGraph(("v1", "e1", "v2", "e2"), (("v1", "v2"),), ("v1", "v2"), {1: 1, 2: 1, 3: 2, 4: 2})
VACPOL_GRAPH = UGraph(2, [(0, 1), (1, 0)])

# two-loop photon self-energy with an internal photon
SELF2 = QEDGraph(
    ("v1", "e1", "v2", "e2", "v3", "e3", "v4", "e4"),
    (("v1", "v3"), ("v2", "v4")),
    ("v1", "v3"),
    {2: 1, 4: 2, 6: 3, 8: 4},
)
SELF2_GRAPH = UGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
