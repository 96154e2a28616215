"""Exact cops-and-robbers solving and exhaustive surveys of small graphs."""

from .canon import CanonicalForm, canonical_form, canonical_graph
from .enumeration import GenSpec, brute_force_enumerate, generate, read_graph6_stream
from .graphs import (
    Graph,
    Graph6Error,
    closed_neighborhood,
    complete,
    cycle,
    dismantling_order,
    dominated_vertices,
    girth,
    induced_is_cycle,
    is_dismantleable,
    parse_edge_list,
    parse_graph6,
    path,
    petersen,
    private_neighbors,
    to_graph6,
)
from .solver import (
    ExceedsKMax,
    GameState,
    Transcript,
    Turn,
    WinTable,
    cop_number,
    is_no_backtrack_winning,
    is_trapped,
    k_cops_win,
    safe_neighborhood,
    solve_k,
    strategy_move,
    trace_game,
)
from .structure import (
    EndgameFlags,
    LowerBound,
    PruneVerdict,
    endgame_predicates,
    is_petersen_by_property,
    lower_bound,
    prune_c_at_most_2,
)
from .survey import SurveyConfig, SurveySummary, run_survey, verify_m3

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
