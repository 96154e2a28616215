"""Game solver: known cop numbers, table consistency, strategy execution."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from copsurvey.enumeration import brute_force_enumerate
from copsurvey.graphs import Graph, complete, cycle, is_dismantleable, path, petersen
from copsurvey.solver import (
    ExceedsKMax,
    GameState,
    Turn,
    cop_number,
    greedy_robber_policy,
    is_no_backtrack_winning,
    is_trapped,
    k_cops_win,
    safe_neighborhood,
    solve_k,
    strategy_move,
    trace_game,
)
from tests.conftest import random_connected_graph


def grid(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((r * cols + c, r * cols + c + 1))
            if r + 1 < rows:
                edges.append((r * cols + c, (r + 1) * cols + c))
    return Graph.from_edges(rows * cols, edges)


CUBE = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7),
                            (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)])
K33 = Graph.from_edges(6, [(a, b + 3) for a in range(3) for b in range(3)])

COP_NUMBER_CASES = [
    (Graph(1, [0]), 1),
    (path(2), 1),
    (path(9), 1),
    (complete(6), 1),
    (cycle(3), 1),
    (cycle(4), 2),
    (cycle(5), 2),
    (cycle(9), 2),
    (K33, 2),
    (CUBE, 2),
    (grid(3, 3), 2),
    (petersen(), 3),
]


@pytest.mark.parametrize("g,c", COP_NUMBER_CASES)
def test_cop_numbers(g, c):
    assert cop_number(g) == c


def test_k_cops_win_monotone():
    for g in (cycle(5), petersen(), grid(3, 3)):
        wins = [k_cops_win(g, k) for k in range(1, 5)]
        # once winning, always winning with more cops
        assert wins == sorted(wins)
        assert wins[-1]


def test_exceeds_k_max():
    with pytest.raises(ExceedsKMax):
        cop_number(petersen(), k_max=2)


def test_game_state_requires_sorted_cops():
    with pytest.raises(ValueError):
        GameState((2, 1), 0, Turn.COP)


def test_dist_path_single_cop():
    t = solve_k(path(5), 1)
    # cop at one end, robber at the other: robber retreats into the corner
    assert t.dist(GameState((0,), 4, Turn.COP)) == 4
    assert t.dist(GameState((2,), 4, Turn.COP)) == 2
    assert t.dist(GameState((3,), 4, Turn.COP)) == 1


def test_dist_recurrence_spot_check():
    g = cycle(6)
    t = solve_k(g, 2)
    for cops in itertools.combinations_with_replacement(range(6), 2):
        for r in range(6):
            if r in cops:
                continue
            s = GameState(cops, r, Turn.COP)
            if not t.is_win(s):
                continue
            d = t.dist(s)
            succ = []
            for moves in itertools.product(*[
                sorted(g.neighbors(c) | {c}) for c in cops
            ]):
                nc = tuple(sorted(moves))
                if r in nc:
                    succ.append(0)
                else:
                    s2 = GameState(nc, r, Turn.ROBBER)
                    if t.is_win(s2):
                        succ.append(t.dist(s2))
            assert d == 1 + min(succ)


def test_capture_states_are_wins():
    t = solve_k(cycle(5), 1)
    for v in range(5):
        assert t.is_win(GameState((v,), v, Turn.COP))
        assert t.dist(GameState((v,), v, Turn.COP)) == 0


def test_cop_win_placements():
    t1 = solve_k(path(4), 1)
    assert t1.cop_win_placements()  # a path is 1-cop-win from anywhere
    t2 = solve_k(cycle(4), 1)
    assert t2.cop_win_placements() == []


def test_safe_neighborhood():
    g = path(5)
    assert safe_neighborhood(g, (2,), 4) == {4}
    assert safe_neighborhood(g, (2,), 0) == {0}
    assert safe_neighborhood(g, (0,), 4) == {2, 3, 4}
    g = petersen()
    s = safe_neighborhood(g, (0,), 7)
    assert 7 in s and 0 not in s and len(s) == 6


def test_is_trapped():
    g = path(3)
    assert is_trapped(g, (1,), 0)
    assert not is_trapped(g, (0,), 2)
    with pytest.raises(ValueError):
        is_trapped(g, (0,), 0)


def test_trapped_means_next_move_captures():
    g = complete(4)
    for r in range(1, 4):
        assert is_trapped(g, (0,), r)


def play_out(g, k):
    """Drive strategy_move against an optimal robber; return capture or not."""
    table = solve_k(g, k)
    placements = table.cop_win_placements()
    if not placements:
        return False
    cops = placements[0]
    robber = max(
        (r for r in range(g.n) if r not in cops),
        key=lambda r: table.dist(GameState(cops, r, Turn.COP)),
        default=None,
    )
    if robber is None:
        return True  # cops cover everything at placement
    bound = table.dist(GameState(cops, robber, Turn.COP))
    for _ in range(bound + 1):
        cops = strategy_move(table, GameState(cops, robber, Turn.COP))
        if robber in cops:
            return True
        robber = greedy_robber_policy(table, cops, robber)
        if robber in cops:
            return True
    return False


@pytest.mark.parametrize("g,k", [(path(6), 1), (cycle(7), 2), (petersen(), 3),
                                 (grid(3, 3), 2), (CUBE, 2)])
def test_strategy_execution_captures(g, k):
    assert play_out(g, k)


def test_trace_game_ends_in_capture():
    tr = trace_game(petersen(), 3)
    recs = tr.records()
    assert recs[0]["kind"] == "place-cops"
    assert recs[1]["kind"] == "place-robber"
    assert recs[-1]["kind"] == "capture"
    text = tr.render()
    assert "->" in text and "capture" in text


def test_trace_respects_dist_bound():
    g = cycle(8)
    table = solve_k(g, 2)
    tr = trace_game(g, 2)
    recs = tr.records()
    placement = tuple(recs[0]["cops"])
    robber = recs[1]["robber"]
    bound = table.dist(GameState(placement, robber, Turn.COP))
    cop_moves = [r for r in recs if r["kind"] == "cop-move"]
    assert len(cop_moves) <= bound


def test_no_backtrack_paths_and_cliques():
    for g in (path(5), complete(4)):
        assert all(is_no_backtrack_winning(g, v) for v in range(g.n))


def test_no_backtrack_cycle_fails():
    assert not any(is_no_backtrack_winning(cycle(4), v) for v in range(4))


def test_no_backtrack_implies_cop_win_exhaustive_n5():
    for g in brute_force_enumerate(5):
        if any(is_no_backtrack_winning(g, v) for v in range(g.n)):
            assert cop_number(g) == 1


def test_dismantleable_iff_one_cop_exhaustive_n6():
    for g in brute_force_enumerate(6):
        assert (cop_number(g) == 1) == is_dismantleable(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.randoms(use_true_random=False))
def test_cop_number_label_invariant(n, r):
    g = random_connected_graph(r, n)
    perm = list(range(n))
    r.shuffle(perm)
    assert cop_number(g) == cop_number(g.permute(perm))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.randoms(use_true_random=False))
def test_adding_edges_to_complete_reaches_one(n, r):
    # sanity anchor: the complete graph is always 1-cop-win
    g = random_connected_graph(r, n)
    assert 1 <= cop_number(g) <= 3
