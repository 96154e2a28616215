"""Isomorph-free generation of graphs by canonical vertex augmentation.

Each graph on m vertices is produced exactly once, by extending a graph on
m-1 vertices with one new vertex.  An extension is accepted only when the
new vertex lies in the deletion orbit the construction rule would pick for
the finished graph, so every graph has exactly one accepted construction
path.  The deletion rule selects the vertex of maximal (degree, sorted
neighbor degrees) invariant, canonical-position tie-break; most candidates
are therefore settled by the cheap invariant without a canonical labeling.

Degree bounds prune during augmentation (both are monotone along induced-
subgraph chains); connectivity is enforced at the final level only.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import IO, Iterable, Iterator, Sequence

from .canon import _refine, _rooted_cert, _UnionFind, canonical_g6, canonical_search
from .graphs import Graph, Graph6Error, bits, parse_graph6

BRUTE_FORCE_MAX_N = 7
GENERATE_MAX_N = 16


@dataclass(frozen=True)
class GenSpec:
    n: int
    min_degree: int = 0
    max_degree: int | None = None
    connected_only: bool = True

    def __post_init__(self):
        if not 1 <= self.n <= GENERATE_MAX_N:
            raise ValueError(f"n must be 1..{GENERATE_MAX_N}")
        dmax = self.n - 1 if self.max_degree is None else self.max_degree
        if not 0 <= self.min_degree <= dmax <= self.n - 1:
            raise ValueError("need 0 <= min_degree <= max_degree <= n-1")

    @property
    def dmax(self) -> int:
        return self.n - 1 if self.max_degree is None else self.max_degree


def _neighbor_deg_key(adj: Sequence[int], degs: Sequence[int], v: int):
    return tuple(sorted(degs[u] for u in bits(adj[v])))


def extension_is_canonical(n: int, adj: Sequence[int], degs: Sequence[int]) -> bool:
    """Is the last vertex the rule's deletion choice for this graph?

    The caller guarantees the last vertex has maximal degree (the subset
    enumeration below only proposes such extensions).
    """
    vnew = n - 1
    dmax = degs[vnew]
    cand = [v for v in range(n) if degs[v] == dmax]
    if len(cand) > 1:
        keys = {v: _neighbor_deg_key(adj, degs, v) for v in cand}
        kmax = max(keys.values())
        if keys[vnew] != kmax:
            return False
        cand = [v for v in cand if keys[v] == kmax]
    if len(cand) == 1:
        return True

    order, _, gens = canonical_search(n, adj)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    chosen = max(cand, key=lambda v: pos[v])
    if chosen == vnew:
        return True
    if gens:
        uf = _UnionFind(n)
        for gp in gens:
            for x in range(n):
                uf.union(x, gp[x])
        if uf.find(chosen) == uf.find(vnew):
            return True
    return _rooted_cert(n, adj, vnew) == _rooted_cert(n, adj, chosen)


def _is_rigid(n: int, adj: Sequence[int]) -> bool:
    """Discrete equitable refinement implies a trivial automorphism group."""
    degs = [adj[v].bit_count() for v in range(n)]
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(degs[v], []).append(v)
    cells = _refine(n, adj, [groups[d] for d in sorted(groups)])
    return all(len(c) == 1 for c in cells)


def children(
    n: int, adj: Sequence[int], spec: GenSpec
) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Accepted one-vertex extensions of (n, adj), as (n+1, adj) pairs.

    Emission order: new-vertex degree ascending, then attachment set in
    lexicographic order.  Parents with nontrivial symmetry can propose the
    same child through two equivalent attachment sets; those duplicates are
    removed here by comparing child certificates, so the stream is
    duplicate-free without needing the full automorphism group.
    """
    m = n + 1
    pdeg = [adj[v].bit_count() for v in range(n)]
    slack = spec.n - m  # vertices still to come after this child
    need = spec.min_degree - slack  # degree every child vertex must reach now
    dmax = spec.dmax

    # vertices that must gain the new neighbor to stay completable
    forced = [v for v in range(n) if pdeg[v] + 1 == need and need >= 1]
    if any(pdeg[v] + 1 < need for v in range(n)):
        return
    maxpdeg = max(pdeg)
    rigid = _is_rigid(n, adj) if n >= 2 else True
    seen_certs: set[str] | None = None if rigid else set()

    s_lo = max(maxpdeg, len(forced), need, 0)
    s_hi = min(n, dmax)
    for s in range(s_lo, s_hi + 1):
        # the new vertex must end with maximal degree, so every attachment
        # endpoint needs degree < s afterwards staying <= s
        pool = [v for v in range(n) if pdeg[v] < s and pdeg[v] < dmax]
        if any(v not in pool for v in forced):
            continue
        free = [v for v in pool if v not in forced]
        base = 0
        for v in forced:
            base |= 1 << v
        kneed = s - len(forced)
        if kneed < 0 or kneed > len(free):
            continue
        for combo in combinations(free, kneed):
            smask = base
            for v in combo:
                smask |= 1 << v
            cadj = list(adj)
            for v in bits(smask):
                cadj[v] |= 1 << n
            cadj.append(smask)
            cdegs = pdeg.copy()
            for v in bits(smask):
                cdegs[v] += 1
            cdegs.append(s)
            if max(cdegs) > s:
                continue  # some untouched vertex now outranks the new one
            if not extension_is_canonical(m, cadj, cdegs):
                continue
            if seen_certs is not None:
                c6 = canonical_g6(m, cadj)
                if c6 in seen_certs:
                    continue
                seen_certs.add(c6)
            yield m, tuple(cadj)


def _final_ok(n: int, adj: Sequence[int], spec: GenSpec) -> bool:
    degs = [adj[v].bit_count() for v in range(n)]
    if any(d < spec.min_degree or d > spec.dmax for d in degs):
        return False
    if spec.connected_only and n > 1:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        if seen != (1 << n) - 1:
            return False
    return True


def expand_to_level(
    n: int, adj: Sequence[int], spec: GenSpec
) -> Iterator[tuple[int, ...]]:
    """Depth-first stream of all accepted descendants of (n, adj) at spec.n."""
    if n == spec.n:
        if _final_ok(n, adj, spec):
            yield tuple(adj)
        return
    for cn, cadj in children(n, adj, spec):
        yield from expand_to_level(cn, cadj, spec)


def generate(spec: GenSpec) -> Iterator[Graph]:
    """One representative per isomorphism class satisfying spec.

    Deterministic order: depth-first over the augmentation tree, children
    ordered by new-vertex degree then attachment set.
    """
    if spec.n == 1:
        if spec.min_degree == 0 and _final_ok(1, (0,), spec):
            yield Graph(1, (0,))
        return
    for adj in expand_to_level(1, (0,), spec):
        yield Graph(spec.n, adj)


def brute_force_enumerate(n: int) -> Iterator[Graph]:
    """Independent small-n oracle: every labeled graph, filtered connected,
    deduplicated by canonical form.  Emits the first-seen labeled member of
    each class, in labeled-mask order."""
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force supports 1 <= n <= {BRUTE_FORCE_MAX_N}")
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    seen: set[str] = set()
    for maskval in range(1 << len(pairs)):
        adj = [0] * n
        mv = maskval
        for (i, j) in pairs:
            if mv & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            mv >>= 1
        g = Graph(n, adj)
        if not g.is_connected():
            continue
        c6 = canonical_g6(n, adj)
        if c6 not in seen:
            seen.add(c6)
            yield g


def read_graph6_stream(
    source: IO[str] | Iterable[str], skip_errors: bool = False
) -> Iterator[Graph]:
    """Parse newline-delimited graph6; parse errors carry the line number."""
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except Graph6Error as e:
            if skip_errors:
                continue
            raise Graph6Error(f"line {lineno}: {e}") from e
