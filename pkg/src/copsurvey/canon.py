"""Canonical labeling by color refinement + individualization backtracking.

The canonical certificate of a graph is the minimum, over all leaves of the
individualization-refinement tree, of the relabeled adjacency rows (prefixed
by the initial color sequence so that vertex-colored variants stay
comparable).  Correctness comes from comparing all leaves; automorphisms
discovered along the way (leaves with equal certificates) are only used to
prune provably equivalent branches.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import Graph, bits, parse_graph6, to_graph6


@dataclass(frozen=True)
class CanonicalForm:
    """graph6 encoding of the canonically relabeled graph."""

    bytes: bytes

    def graph(self) -> Graph:
        return parse_graph6(self.bytes.decode("ascii"))


def _refine(n: int, adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Refine an ordered partition to equitability.

    Cells are repeatedly split by neighbor counts into every current cell;
    split pieces keep their position (sorted by count), so the refinement of
    isomorphic colored graphs is structurally identical.
    """
    while True:
        masks = [0] * len(cells)
        for i, c in enumerate(cells):
            m = 0
            for v in c:
                m |= 1 << v
            masks[i] = m
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            keyed: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                av = adj[v]
                key = tuple((av & m).bit_count() for m in masks)
                keyed.setdefault(key, []).append(v)
            if len(keyed) == 1:
                out.append(c)
            else:
                changed = True
                for key in sorted(keyed):
                    out.append(keyed[key])
        if not changed:
            return out
        cells = out


class _UnionFind:
    __slots__ = ("p",)

    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _leaf_cert(n: int, adj: Sequence[int], order: list[int]) -> tuple[int, ...]:
    """Adjacency rows after relabeling vertex order[i] -> i."""
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for i in range(n):
        m = adj[order[i]]
        row = 0
        while m:
            b = m & -m
            row |= 1 << pos[b.bit_length() - 1]
            m ^= b
    # row built; append
        rows.append(row)
    return tuple(rows)


class _Search:
    def __init__(self, n: int, adj: Sequence[int], colors: Sequence[int]):
        self.n = n
        self.adj = adj
        self.colors = tuple(colors)
        self.best_cert: tuple | None = None
        self.best_order: list[int] | None = None
        self.first_cert: tuple | None = None
        self.first_order: list[int] | None = None
        self.gens: list[list[int]] = []
        self.path: list[int] = []

    def run(self) -> None:
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(self.colors[v], []).append(v)
        cells = [groups[c] for c in sorted(groups)]
        self._rec(cells)

    def _color_seq(self, order: list[int]) -> tuple[int, ...]:
        return tuple(self.colors[v] for v in order)

    def _leaf(self, cells: list[list[int]]) -> None:
        order = [c[0] for c in cells]
        cert = (self._color_seq(order), _leaf_cert(self.n, self.adj, order))
        if self.first_cert is None:
            self.first_cert = cert
            self.first_order = order
        elif cert == self.first_cert and order != self.first_order:
            self._record_gen(self.first_order, order)
        if self.best_cert is None or cert < self.best_cert:
            self.best_cert = cert
            self.best_order = order
        elif (
            cert == self.best_cert
            and cert != self.first_cert
            and order != self.best_order
        ):
            self._record_gen(self.best_order, order)

    def _record_gen(self, ref: list[int], order: list[int]) -> None:
        perm = [0] * self.n
        for a, b in zip(ref, order):
            perm[a] = b
        self.gens.append(perm)

    def _rec(self, cells: list[list[int]]) -> None:
        cells = _refine(self.n, self.adj, cells)
        target = -1
        for i, c in enumerate(cells):
            if len(c) > 1:
                target = i
                break
        if target < 0:
            self._leaf(cells)
            return
        cell = cells[target]
        tried: list[int] = []
        path = self.path
        for v in cell:
            if tried and self._equivalent_to_tried(v, tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            sub = cells[:target] + [[v], rest] + cells[target + 1 :]
            path.append(v)
            self._rec(sub)
            path.pop()

    def _equivalent_to_tried(self, v: int, tried: list[int]) -> bool:
        """Is v in the orbit of a tried vertex under found automorphisms that
        fix the current individualization path pointwise?"""
        fixing = [
            g for g in self.gens if all(g[p] == p for p in self.path)
        ]
        if not fixing:
            return False
        uf = _UnionFind(self.n)
        for g in fixing:
            for a in range(self.n):
                uf.union(a, g[a])
        rv = uf.find(v)
        return any(uf.find(t) == rv for t in tried)


def canonical_search(
    n: int, adj: Sequence[int], colors: Sequence[int] | None = None
) -> tuple[list[int], tuple, list[list[int]]]:
    """Return (best_order, certificate, automorphism generators found).

    best_order[i] is the input vertex placed at canonical position i.  The
    generators are genuine automorphisms but not guaranteed to generate the
    full group; callers must not rely on completeness for reject decisions.
    """
    if colors is None:
        colors = [adj[v].bit_count() for v in range(n)]
    s = _Search(n, adj, colors)
    s.run()
    assert s.best_order is not None
    return s.best_order, s.best_cert, s.gens


def canonical_form(g: Graph) -> CanonicalForm:
    order, _, _ = canonical_search(g.n, g.adj)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return CanonicalForm(to_graph6(g.permute(pos)).encode("ascii"))


def canonical_graph(g: Graph) -> Graph:
    order, _, _ = canonical_search(g.n, g.adj)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return g.permute(pos)


def canonical_g6(n: int, adj: Sequence[int]) -> str:
    """Hot-path variant of canonical_form working on raw (n, adj)."""
    order, _, _ = canonical_search(n, adj)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * n
    for v in range(n):
        m = adj[v]
        row = 0
        while m:
            b = m & -m
            row |= 1 << pos[b.bit_length() - 1]
            m ^= b
        rows[v] = row
    # inline graph6 encode of permuted rows
    out = [n + 63]
    acc = 0
    nb = 0
    perm_rows = [0] * n
    for v in range(n):
        perm_rows[pos[v]] = rows[v]
    for j in range(1, n):
        col = perm_rows[j]
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


def brute_force_min_g6(g: Graph) -> str:
    """Minimum graph6 over all n! relabelings; oracle for small n."""
    from itertools import permutations

    best = None
    for perm in permutations(range(g.n)):
        s = to_graph6(g.permute(perm))
        if best is None or s < best:
            best = s
    assert best is not None
    return best


def same_orbit(n: int, adj: Sequence[int], a: int, b: int) -> bool:
    """Exact test whether some automorphism maps a to b.

    Fast path uses automorphisms discovered during canonical search; the
    exact fallback compares rooted certificates (root in its own color).
    """
    if a == b:
        return True
    _, _, gens = canonical_search(n, adj)
    if gens:
        uf = _UnionFind(n)
        for gperm in gens:
            for x in range(n):
                uf.union(x, gperm[x])
        if uf.find(a) == uf.find(b):
            return True
    return _rooted_cert(n, adj, a) == _rooted_cert(n, adj, b)


def _rooted_cert(n: int, adj: Sequence[int], root: int) -> tuple:
    colors = [adj[v].bit_count() for v in range(n)]
    colors[root] = n + 1  # own cell, ordered last
    _, cert, _ = canonical_search(n, adj, colors)
    return cert
