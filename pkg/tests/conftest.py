import json
import os
import random

import pytest

from copsurvey.graphs import Graph

# Heavy survey artifacts are cached here across test sessions so the
# acceptance module does not recompute multi-hour surveys on every run.
CACHE_DIR = os.environ.get(
    "COPSURVEY_CACHE", os.path.join(os.path.dirname(__file__), "..", ".cache")
)


def read_jsonl(path):
    with open(path) as f:
        return [json.loads(line) for line in f]


def random_connected_graph(rng: random.Random, n: int) -> Graph:
    """Random spanning tree plus random extra edges."""
    edges = set()
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        edges.add(tuple(sorted((verts[i], rng.choice(verts[:i])))))
    extra = rng.randrange(0, n * (n - 1) // 2 + 1)
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.add(tuple(sorted((u, v))))
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(0xC0B5)
