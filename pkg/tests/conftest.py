import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from walkgeom import analyze, complete_graph, cycle_graph, lattice2d, path_graph, random_connected  # noqa: E402

BETAS = (1.0, 0.6, 0.3)


def corpus_graphs():
    graphs = {
        "path50": path_graph(50),
        "cycle51": cycle_graph(51),
        "cycle50": cycle_graph(50),
        "complete20": complete_graph(20),
        "lattice8x8": lattice2d(8, 8),
    }
    for seed in range(5):
        graphs[f"random60_{seed}"] = random_connected(60, 0.08, seed=seed, weighted=seed % 2 == 1)
    return graphs


CORPUS = corpus_graphs()
_analyses = {}


def corpus_analysis(name, beta):
    key = (name, beta)
    if key not in _analyses:
        _analyses[key] = analyze(CORPUS[name], beta)
    return _analyses[key]


@pytest.fixture(params=sorted(CORPUS))
def corpus_name(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
