"""Exact k-cop game solving by retrograde analysis.

States are (sorted cop tuple, robber vertex, side to move).  Cops are
interchangeable, so cop positions are multisets.  The win table is computed
backward from capture states with per-robber-state escape counters, giving a
cost linear in the game-graph transitions.

Convention: cops are placed first, then the robber places knowing their
positions, and the cops move first thereafter.  Staying put is a legal move
for either side.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement, product
from typing import Callable, Sequence

from .graphs import Graph, bits, closed_neighborhood_mask, mask_of

DEFAULT_K_MAX = 4
DEFAULT_STATE_BUDGET = 5_000_000


class Turn(Enum):
    COP = "cop"
    ROBBER = "robber"


@dataclass(frozen=True)
class GameState:
    cops: tuple[int, ...]
    robber: int
    turn: Turn

    def __post_init__(self):
        if tuple(sorted(self.cops)) != self.cops:
            raise ValueError("cop tuple must be sorted ascending")


class ExceedsKMax(ValueError):
    """No k <= k_max wins on this graph."""


class StateBudgetExceeded(ValueError):
    pass


@dataclass
class SolveStats:
    states: int
    pops: int


class WinTable:
    """Cop-win flags and capture distances for every state at a fixed k.

    dist at a cop-turn state counts cop moves to capture under optimal play;
    it is defined only where win is True.
    """

    def __init__(self, g: Graph, k: int, budget: int = DEFAULT_STATE_BUDGET):
        if k < 1:
            raise ValueError("k must be >= 1")
        if not g.is_connected():
            raise ValueError("solver requires a connected graph")
        n = g.n
        placements = list(combinations_with_replacement(range(n), k))
        nstates = len(placements) * n * 2
        if nstates > budget:
            raise StateBudgetExceeded(f"{nstates} states exceeds budget {budget}")
        self.g = g
        self.k = k
        self.n = n
        self.placements = placements
        self._pid = {p: i for i, p in enumerate(placements)}

        nb = [g.adj[v] | (1 << v) for v in range(n)]
        nlist = [list(bits(m)) for m in nb]
        # cop moves are reversible (stay or traverse an edge), so the
        # placement successor relation is its own predecessor relation
        psucc: list[list[int]] = []
        pid = self._pid
        for p in placements:
            s = {pid[tuple(sorted(c))] for c in product(*(nlist[c] for c in p))}
            psucc.append(sorted(s))
        self._psucc = psucc

        P = len(placements)
        winC = bytearray(P * n)
        winR = bytearray(P * n)
        distC = [0] * (P * n)
        distR = [0] * (P * n)
        cnt = [0] * (P * n)
        for pi in range(P):
            base = pi * n
            for r in range(n):
                cnt[base + r] = len(nlist[r])

        queue: deque[tuple[int, int, int]] = deque()
        for pi, p in enumerate(placements):
            base = pi * n
            for r in set(p):
                winC[base + r] = 1
                winR[base + r] = 1
                queue.append((pi, r, 0))
                queue.append((pi, r, 1))

        pops = 0
        while queue:
            pi, r, turn = queue.popleft()
            pops += 1
            base = pi * n
            if turn == 1:  # robber-turn win: cop-turn predecessors win
                d1 = distR[base + r] + 1
                for qi in psucc[pi]:
                    i2 = qi * n + r
                    if not winC[i2]:
                        winC[i2] = 1
                        distC[i2] = d1
                        queue.append((qi, r, 0))
            else:  # cop-turn win: decrement robber escape counters
                d = distC[base + r]
                for r2 in nlist[r]:
                    i2 = base + r2
                    if winR[i2]:
                        continue
                    cnt[i2] -= 1
                    if cnt[i2] == 0:
                        winR[i2] = 1
                        distR[i2] = d
                        queue.append((pi, r2, 1))

        self._winC = winC
        self._winR = winR
        self._distC = distC
        self._distR = distR
        self._nlist = nlist
        self.stats = SolveStats(states=nstates, pops=pops)

    # -- queries ------------------------------------------------------------

    def _index(self, cops: Sequence[int], robber: int) -> int:
        return self._pid[tuple(cops)] * self.n + robber

    def is_win(self, state: GameState) -> bool:
        i = self._index(state.cops, state.robber)
        return bool(self._winC[i] if state.turn is Turn.COP else self._winR[i])

    def dist(self, state: GameState) -> int:
        i = self._index(state.cops, state.robber)
        if state.turn is Turn.COP:
            if not self._winC[i]:
                raise ValueError("dist undefined: state is not cop-win")
            return self._distC[i]
        if not self._winR[i]:
            raise ValueError("dist undefined: state is not cop-win")
        return self._distR[i]

    def cop_win_placements(self) -> list[tuple[int, ...]]:
        """Placements winning against every robber placement."""
        out = []
        winC = self._winC
        n = self.n
        for pi, p in enumerate(self.placements):
            base = pi * n
            if all(winC[base + r] for r in range(n)):
                out.append(p)
        return out


def solve_k(g: Graph, k: int, budget: int = DEFAULT_STATE_BUDGET) -> WinTable:
    return WinTable(g, k, budget)


def k_cops_win(g: Graph, k: int, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    return bool(solve_k(g, k, budget).cop_win_placements())


def cop_number(g: Graph, k_max: int = DEFAULT_K_MAX) -> int:
    """Smallest k <= k_max with a winning cop placement (monotone ascending)."""
    for k in range(1, k_max + 1):
        if k_cops_win(g, k):
            return k
    raise ExceedsKMax(f"cop number exceeds k_max={k_max}")


def cop_number_with_stats(g: Graph, k_max: int = DEFAULT_K_MAX) -> tuple[int, int]:
    """(cop number, total states enumerated across the solves)."""
    states = 0
    for k in range(1, k_max + 1):
        t = solve_k(g, k)
        states += t.stats.states
        if t.cop_win_placements():
            return k, states
    raise ExceedsKMax(f"cop number exceeds k_max={k_max}")


# ---------------------------------------------------------------------------
# safe neighborhood and traps

def safe_neighborhood(g: Graph, cops: Sequence[int], r: int) -> set[int]:
    """S(R): component of G - closed-N(cops) containing the robber.

    When the robber already stands inside the cops' closed neighborhood, the
    result is the union of components reachable through his free neighbors
    (empty exactly when he is trapped).
    """
    nbar = closed_neighborhood_mask(g, mask_of(cops))
    free = ((1 << g.n) - 1) & ~nbar
    if free == 0:
        return set()
    seed = (1 << r) if (free >> r & 1) else (g.adj[r] & free)
    seen = seed
    frontier = seed
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v] & free
        frontier = nxt & ~seen
        seen |= frontier
    return set(bits(seen))


def is_trapped(g: Graph, cops: Sequence[int], r: int) -> bool:
    """True iff S(R) is empty: r in N(C) and N(r) inside closed N(C)."""
    if r in cops:
        raise ValueError("robber already captured")
    return not safe_neighborhood(g, cops, r)


# ---------------------------------------------------------------------------
# strategy extraction and transcripts

def strategy_move(table: WinTable, s: GameState) -> tuple[int, ...]:
    """Lexicographically smallest cop destination minimizing capture distance."""
    if s.turn is not Turn.COP:
        raise ValueError("strategy_move needs a cop-turn state")
    if not table.is_win(s):
        raise ValueError("state is not cop-win")
    g = table.g
    nlist = table._nlist
    best: tuple[int, tuple[int, ...]] | None = None
    r = s.robber
    for combo in product(*(nlist[c] for c in s.cops)):
        dest = tuple(sorted(combo))
        i = table._pid[dest] * table.n + r
        if r in dest:
            d = 0
        elif table._winR[i]:
            d = table._distR[i]
        else:
            continue
        key = (d, dest)
        if best is None or key < best:
            best = key
    assert best is not None
    return best[1]


@dataclass
class Transcript:
    """Move list rendered in arrow notation plus machine-readable records."""

    k: int
    moves: list[dict] = field(default_factory=list)

    def append(self, kind: str, cops: tuple[int, ...], robber: int | None):
        self.moves.append({"kind": kind, "cops": list(cops), "robber": robber})

    def render(self) -> str:
        def st(cops, robber, mover):
            cs = ",".join(str(c) for c in cops)
            rs = "-" if robber is None else str(robber)
            if mover == "cop":
                return f"<*{cs} | {rs}>"
            if mover == "robber":
                return f"<{cs} | *{rs}>"
            return f"<{cs} | {rs}>"

        lines = []
        prev = None
        for m in self.moves:
            cops = tuple(m["cops"])
            r = m["robber"]
            if m["kind"] == "place-cops":
                lines.append(st(cops, None, None))
            elif m["kind"] == "place-robber":
                lines.append(st(cops, r, "cop"))
            elif m["kind"] == "cop-move":
                lines.append(f"{st(*prev, 'cop')} -> {st(cops, r, 'robber')}")
            elif m["kind"] == "robber-move":
                lines.append(f"{st(*prev, 'robber')} -> {st(cops, r, 'cop')}")
            elif m["kind"] == "capture":
                lines.append("capture")
            prev = (cops, r)
        return "\n".join(lines) + "\n"

    def records(self) -> list[dict]:
        return list(self.moves)


def greedy_robber_policy(table: WinTable, cops: tuple[int, ...], r: int) -> int:
    """Move to the option maximizing capture distance, tie-break smallest."""
    nlist = table._nlist
    base = table._pid[cops] * table.n
    best: tuple[int, int] | None = None
    for r2 in nlist[r]:
        if r2 in cops:
            continue
        d = table._distC[base + r2] if table._winC[base + r2] else 1 << 30
        key = (-d, r2)
        if best is None or key < best:
            best = key
    if best is None:
        return r  # fully surrounded; stay and be caught
    return best[1]


RobberPolicy = Callable[[WinTable, tuple[int, ...], int], int]


def trace_game(g: Graph, k: int, robber_policy: RobberPolicy | None = None) -> Transcript:
    """Play the optimal cop strategy against a deterministic robber policy."""
    table = solve_k(g, k)
    openings = table.cop_win_placements()
    if not openings:
        raise ValueError(f"{k} cops do not win on this graph")
    if robber_policy is None:
        robber_policy = greedy_robber_policy

    def worst_dist(p: tuple[int, ...]) -> int:
        base = table._pid[p] * table.n
        return max(table._distC[base + r] for r in range(g.n))

    cops = min(openings, key=lambda p: (worst_dist(p), p))
    base = table._pid[cops] * table.n
    robber = max(
        (r for r in range(g.n) if r not in cops),
        key=lambda r: (table._distC[base + r], -r),
        default=None,
    )
    t = Transcript(k=k)
    t.append("place-cops", cops, None)
    if robber is None:
        t.append("capture", cops, None)
        return t
    t.append("place-robber", cops, robber)
    while True:
        cops = strategy_move(table, GameState(cops, robber, Turn.COP))
        t.append("cop-move", cops, robber)
        if robber in cops:
            t.append("capture", cops, robber)
            return t
        robber = robber_policy(table, cops, robber)
        t.append("robber-move", cops, robber)
        if robber in cops:
            t.append("capture", cops, robber)
            return t


# ---------------------------------------------------------------------------
# no-backtrack single-cop decision

def is_no_backtrack_winning(g: Graph, v: int) -> bool:
    """Can one cop starting at v win without ever revisiting a vertex?

    The cop may stand still (staying is not a revisit); moving is only
    allowed onto unvisited vertices, including the capturing move.  Decided
    by backward induction over (cop, visited-set, robber, turn), iterating
    the stay-cycles within each fixed visited-set layer to a fixed point.
    """
    n = g.n
    if n > 12:
        raise StateBudgetExceeded("no-backtrack search supports n <= 12")
    if not g.is_connected():
        raise ValueError("requires a connected graph")
    adj = g.adj
    full = (1 << n) - 1
    # win[(c, vis)][r][turn]; computed for vis in decreasing popcount
    win: dict[tuple[int, int], list[list[bool]]] = {}

    masks_by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for vis in range(1 << n):
        masks_by_size[vis.bit_count()].append(vis)

    for size in range(n, 0, -1):
        for vis in masks_by_size[size]:
            for c in bits(vis):
                moves = adj[c] & ~vis
                copwin = [False] * n
                robwin = [False] * n
                # seed: external wins via a move onto an unvisited vertex
                for r in range(n):
                    if r == c:
                        copwin[r] = True
                        robwin[r] = True
                        continue
                    if moves >> r & 1:
                        copwin[r] = True  # capture move
                        continue
                    for c2 in bits(moves):
                        if win[(c2, vis | (1 << c2))][1][r]:
                            copwin[r] = True
                            break
                # close under stay-cycles within this (c, vis) layer
                changed = True
                while changed:
                    changed = False
                    for r in range(n):
                        if r == c:
                            continue
                        if not robwin[r]:
                            opts = list(bits(adj[r] | (1 << r)))
                            if all(r2 == c or copwin[r2] for r2 in opts):
                                robwin[r] = True
                                changed = True
                        if not copwin[r] and robwin[r]:
                            copwin[r] = True
                            changed = True
                win[(c, vis)] = [copwin, robwin]

    start = win[(v, 1 << v)][0]
    # robber places after the cop, avoiding v itself
    return all(start[r] for r in range(n) if r != v)
