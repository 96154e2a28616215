"""Immutable small simple graphs over bitmask adjacency.

Vertices are 0..n-1 and every neighborhood is a single machine int, which
keeps set algebra (union, difference, membership, popcount) at O(1) for the
orders this project cares about (n <= 16 in the survey hot path, n <= 62 for
graph6 I/O).
"""
from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

MAX_SURVEY_N = 16
MAX_GRAPH6_N = 62


class Graph6Error(ValueError):
    """Malformed graph6 input; message says which rule was violated."""


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph; immutable after construction.

    adj[v] is the neighbor bitmask of v.  Adjacency is validated to be
    symmetric and irreflexive.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 1:
            raise ValueError("graph must have at least one vertex")
        if len(adj) != n:
            raise ValueError("adjacency length does not match n")
        full = (1 << n) - 1
        for v, m in enumerate(adj):
            if m & ~full:
                raise ValueError(f"neighbor of {v} out of range")
            if m >> v & 1:
                raise ValueError(f"self-loop at {v}")
        for v in range(n):
            for u in bits(adj[v]):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = hash((n, self.adj))

    @classmethod
    def trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        """Skip validation; for internal callers that built adj themselves."""
        obj = object.__new__(cls)
        obj.n = n
        obj.adj = tuple(adj)
        obj._hash = hash((n, obj.adj))
        return obj

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees())

    def neighbors(self, v: int) -> set[int]:
        return set(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel: vertex v becomes perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for u in bits(self.adj[v]):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        return Graph(self.n, adj)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# graph6 (header-less, n < 63)

def parse_graph6(text: str) -> Graph:
    """Decode one header-less graph6 string."""
    s = text.strip()
    if not s:
        raise Graph6Error("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    for i, b in enumerate(data):
        if b < 63 or b > 126:
            raise Graph6Error(f"byte {i} out of graph6 range 63..126")
    n = data[0] - 63
    if n > MAX_GRAPH6_N:
        raise Graph6Error(f"order {n} exceeds supported maximum {MAX_GRAPH6_N}")
    if n < 1:
        raise Graph6Error("graph6 order must be at least 1")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - 1 != nbytes:
        raise Graph6Error(
            f"length mismatch: order {n} needs {nbytes} data bytes, got {len(data) - 1}"
        )
    stream = 0
    for b in data[1:]:
        stream = stream << 6 | (b - 63)
    total = nbytes * 6
    pad = total - nbits
    if pad and stream & ((1 << pad) - 1):
        raise Graph6Error("nonzero trailing padding bits")
    adj = [0] * n
    k = total - 1
    for j in range(1, n):
        for i in range(j):
            if stream >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, adj)


def to_graph6(g: Graph) -> str:
    """Encode as header-less graph6; bit-exact round trip with parse_graph6."""
    if g.n > MAX_GRAPH6_N:
        raise Graph6Error(f"order {g.n} exceeds supported maximum {MAX_GRAPH6_N}")
    out = [g.n + 63]
    acc = 0
    nb = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = 0
                nb = 0
    if nb:
        out.append((acc << (6 - nb)) + 63)
    return bytes(out).decode("ascii")


# ---------------------------------------------------------------------------
# edge-list text format: first line "n m", then m lines "u v"

def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        u, v = (int(x) for x in ln.split())
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge endpoint out of range: {ln}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# neighborhood algebra

def closed_neighborhood(g: Graph, S: Iterable[int]) -> set[int]:
    """Union over v in S of {v} plus N(v)."""
    m = 0
    for v in S:
        m |= g.adj[v] | (1 << v)
    return set(bits(m))


def closed_neighborhood_mask(g: Graph, smask: int) -> int:
    m = smask
    for v in bits(smask):
        m |= g.adj[v]
    return m


def open_neighborhood(g: Graph, S: Iterable[int]) -> set[int]:
    """N(S): neighbors of S outside S."""
    smask = mask_of(S)
    m = 0
    for v in bits(smask):
        m |= g.adj[v]
    return set(bits(m & ~smask))


def private_neighbors(g: Graph, U: Sequence[int], j: int) -> set[int]:
    """Neighbors of U[j] not in the closed neighborhood of the rest of U."""
    if not 0 <= j < len(U):
        raise IndexError(f"index {j} out of range for tuple of size {len(U)}")
    rest = 0
    for i, u in enumerate(U):
        if i != j:
            rest |= g.adj[u] | (1 << u)
    return set(bits(g.adj[U[j]] & ~rest))


# ---------------------------------------------------------------------------
# girth, domination, dismantling, induced cycles

def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; math.inf for forests."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in bits(g.adj[u]):
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif w != parent[u] and dist[w] >= dist[u]:
                        best = min(best, dist[u] + dist[w] + 1)
            frontier = nxt
    return best


def dominated_vertices(g: Graph) -> list[tuple[int, int]]:
    """All pairs (v, w), v != w, with closed N(v) contained in closed N(w)."""
    closed = [g.adj[v] | (1 << v) for v in range(g.n)]
    out = []
    for v in range(g.n):
        for w in range(g.n):
            if v != w and closed[v] & ~closed[w] == 0:
                out.append((v, w))
    return out


def dismantling_order(g: Graph) -> list[int] | None:
    """Greedy corner elimination; None when the fixed point has >= 2 vertices.

    Removal order is smallest-index-first, which is harmless: dismantlability
    is confluent under greedy corner removal.
    """
    if not g.is_connected():
        raise ValueError("dismantling_order requires a connected graph")
    alive = (1 << g.n) - 1
    adj = list(g.adj)
    order: list[int] = []
    while alive.bit_count() > 1:
        found = -1
        for v in bits(alive):
            cv = (adj[v] | (1 << v)) & alive
            for w in bits(alive):
                if w != v:
                    cw = (adj[w] | (1 << w)) & alive
                    if cv & ~cw == 0:
                        found = v
                        break
            if found >= 0:
                break
        if found < 0:
            return None
        order.append(found)
        alive &= ~(1 << found)
    return order


def is_dismantleable(g: Graph) -> bool:
    return dismantling_order(g) is not None


def induced_is_cycle(g: Graph, S: Iterable[int], k: int) -> bool:
    """True iff |S| == k and the induced subgraph on S is a single k-cycle."""
    sm = mask_of(S)
    if sm.bit_count() != k or k < 3:
        return False
    verts = list(bits(sm))
    for v in verts:
        if (g.adj[v] & sm).bit_count() != 2:
            return False
    seen = 1 << verts[0]
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v] & sm
        frontier = nxt & ~seen
        seen |= frontier
    return seen == sm


# ---------------------------------------------------------------------------
# named constructions

def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i ~ i+5."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i + 5, ((i + 2) % 5) + 5))
        edges.append((i, i + 5))
    return Graph.from_edges(10, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
