"""Iterated elimination of weakly dominated strategies on finite
perfect-information extensive games, with exact rational arithmetic,
validated elimination traces and equilibrium oracles."""

from .classify import (
    ClassReport,
    classify_game,
    is_generic,
    is_strictly_competitive,
    is_tdi,
    is_without_relevant_ties,
    is_zero_sum,
    lose_set,
    maxmin,
    p_max,
    security_strategies,
    win_set,
)
from .dominance import (
    DominanceWitness,
    is_wd_admissible_game,
    strictly_dominates,
    undominated,
    weakly_dominated_set,
    weakly_dominates,
    witness_holds,
)
from .elimination import (
    EliminationStep,
    EliminationTrace,
    IntermediateEmptyError,
    NotDominatedError,
    eliminate_step,
    fixpoint,
    iterate,
    max_round,
    replay_trace,
    trace_to_json,
    validate_sequence,
)
from .equilibrium import (
    SpeSummary,
    SubtreeEquilibria,
    backward_induction,
    is_spe,
    nash_equilibria,
    spe_enumerate,
    spe_invariance,
)
from .generators import (
    FamilySpec,
    build,
    centipede,
    chooser_centipede,
    example6,
    example6_table,
    fig1,
    fig3,
    parse_gen_spec,
    random_game,
    single_node,
    ultimatum,
    zs_depth2,
)
from .solver import (
    NotInvariantError,
    PreconditionError,
    SolveReport,
    does_not_depend,
    extend_view,
    lift_set,
    root_elimination,
    solve_constructive,
)
from .strategic import (
    DEFAULT_JOINT_CAP,
    CapExceededError,
    EmptyViewError,
    StrategicGame,
    Strategy,
    SubgameView,
    export_csv,
    full_view,
    intersect_views,
    is_trivial,
    leaf_of,
    outcomes,
    payoff,
    play,
    strategies,
    to_strategic,
)
from .tree import (
    GameFormatError,
    GameTree,
    Internal,
    Leaf,
    PayoffVector,
    SubtreeHandle,
    UnknownNodeError,
    ValidationReport,
    game_hash,
    parse_game,
    payoff_vector,
    rank,
    serialize_game,
    subgame,
    validate,
)

__version__ = "0.1.0"
