"""Sound pruning filters and structural bounds for the survey.

Each filter that proves "at most 2 cops" names the structural fact that
fired and carries the witness vertices, so a failed audit is replayable.
The filters certify facts about graphs with very high maximum degree; their
soundness is additionally checked empirically against the solver by the
audit survey mode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .canon import canonical_form
from .graphs import (
    Graph,
    bits,
    closed_neighborhood_mask,
    girth,
    induced_is_cycle,
    is_dismantleable,
    mask_of,
    petersen,
)
from .solver import safe_neighborhood

# certificate tags, in evaluation order (cheapest degree checks first)
TAG_DELTA_N5 = "max-degree-ge-n-5"
TAG_NON_5_CYCLE = "high-degree-complement-not-5-cycle"
TAG_LOW_DEGREE_OUTSIDE = "high-degree-with-low-degree-outside"
TAG_N10_DELTA4 = "order-10-max-degree-ge-4"
TAG_NON_6_CYCLE = "degree-n-7-complement-not-6-cycle"


@dataclass(frozen=True)
class PruneVerdict:
    proved: bool  # True: cop number <= 2 certified
    lemma: str | None = None
    witness: tuple[int, ...] = ()

    @staticmethod
    def unknown() -> "PruneVerdict":
        return PruneVerdict(False)


@dataclass(frozen=True)
class LowerBound:
    value: int
    reason: str  # trivial | not-dismantleable | girth5-min-degree


def lower_bound(g: Graph) -> LowerBound:
    """Best of: 1; 2 when not dismantleable; min degree when girth >= 5."""
    if not g.is_connected():
        raise ValueError("lower_bound requires a connected graph")
    best = LowerBound(1, "trivial")
    gg = girth(g)
    if gg is not math.inf and gg >= 5:
        d = g.min_degree()
        if d >= best.value:
            best = LowerBound(d, "girth5-min-degree")
    if best.value < 2 and not is_dismantleable(g):
        best = LowerBound(2, "not-dismantleable")
    return best


def _complement_set(g: Graph, u: int) -> int:
    return ((1 << g.n) - 1) & ~(g.adj[u] | (1 << u))


def prune_c_at_most_2(g: Graph) -> PruneVerdict:
    """First applicable certificate that the cop number is at most 2.

    Clause order is fixed for determinism, cheapest first:
      1. some vertex of degree >= n-5;
      2. some u of degree >= n-6 whose neighborhood complement is not a
         5-cycle;
      3. some u of degree >= n-6 with a vertex of degree <= 3 outside its
         closed neighborhood;
      4. n = 10 with maximum degree >= 4;
      5. some u with deg(u) = max degree = n-7, all outside degrees <= 3,
         outside part not a 6-cycle.
    """
    if not g.is_connected():
        raise ValueError("prune filters require a connected graph")
    n = g.n
    degs = g.degrees()
    dmax = max(degs)

    if dmax >= n - 5:
        u = degs.index(dmax)
        return PruneVerdict(True, TAG_DELTA_N5, (u,))

    high = [u for u in range(n) if degs[u] >= n - 6]
    for u in high:
        outside = _complement_set(g, u)
        if not induced_is_cycle(g, bits(outside), 5):
            return PruneVerdict(True, TAG_NON_5_CYCLE, (u,))

    for u in high:
        outside = _complement_set(g, u)
        for v in bits(outside):
            if degs[v] <= 3:
                return PruneVerdict(True, TAG_LOW_DEGREE_OUTSIDE, (u, v))

    if n == 10 and dmax >= 4:
        u = degs.index(dmax)
        return PruneVerdict(True, TAG_N10_DELTA4, (u,))

    if dmax == n - 7:
        for u in range(n):
            if degs[u] != n - 7:
                continue
            outside = _complement_set(g, u)
            if all(degs[v] <= 3 for v in bits(outside)) and not induced_is_cycle(
                g, bits(outside), 6
            ):
                return PruneVerdict(True, TAG_NON_6_CYCLE, (u,))

    return PruneVerdict.unknown()


def is_petersen_by_property(g: Graph) -> bool:
    """3-regular order 10 with every closed-neighborhood complement a 6-cycle."""
    if not g.is_connected():
        raise ValueError("requires a connected graph")
    if g.n != 10 or any(d != 3 for d in g.degrees()):
        return False
    return all(
        induced_is_cycle(g, bits(_complement_set(g, u)), 6) for u in range(g.n)
    )


def is_canonical_petersen(g: Graph) -> bool:
    return canonical_form(g) == canonical_form(petersen())


@dataclass(frozen=True)
class EndgameFlags:
    cor2_applies: bool  # |S(R)| <= 2 and |N(S(R))| <= 2k-1
    cor3_applies: bool  # max degree over S(R) <= 3, at most one of degree 3
    safe_size: int


def endgame_predicates(g: Graph, cops: Sequence[int], r: int) -> EndgameFlags:
    """Hypothesis flags of the two end-game winning conditions (k >= 2)."""
    k = len(cops)
    S = safe_neighborhood(g, cops, r)
    smask = mask_of(S)
    nbhd = 0
    for v in S:
        nbhd |= g.adj[v]
    boundary = (nbhd & ~smask).bit_count()
    cor2 = len(S) <= 2 and boundary <= 2 * k - 1
    degs = [g.degree(v) for v in S]
    cor3 = all(d <= 3 for d in degs) and sum(1 for d in degs if d == 3) <= 1
    return EndgameFlags(cor2_applies=cor2, cor3_applies=cor3, safe_size=len(S))
