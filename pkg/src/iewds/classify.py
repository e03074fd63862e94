"""Game class predicates and competitive-game quantities.

Strategic-level predicates (TDI, strictly competitive) accept either a
game tree (checked on its full strategic form) or a subgame view, which
is what mid-elimination checks need.  Leaf-level predicates (zero-sum,
generic, without relevant ties) read the tree directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .strategic import (
    DEFAULT_JOINT_CAP,
    EmptyViewError,
    SubgameView,
    full_view,
    to_strategic,
)
from .tree import GameTree


def _as_view(game_or_view, cap: int | None) -> SubgameView:
    if isinstance(game_or_view, SubgameView):
        return game_or_view
    return full_view(to_strategic(game_or_view, cap))


def is_tdi(game_or_view, cap: int | None = DEFAULT_JOINT_CAP):
    """Transference of decisionmaker indifference.

    Whenever two strategies of a player tie in that player's payoff
    against a fixed opponent profile, the full outcome vectors must be
    equal.  Returns ``(flag, witness)``; the witness is the first failure
    in deterministic scan order: ``(player, a_idx, b_idx, opponents,
    outcome_a, outcome_b)``.
    """
    view = _as_view(game_or_view, cap)
    for player in range(1, view.players + 1):
        kept = view.kept_for(player)
        for pos, a in enumerate(kept):
            for b in kept[pos + 1 :]:
                for opp in view.opponent_profiles(player):
                    pa = view.payoff(view.joint_with(player, a, opp))
                    pb = view.payoff(view.joint_with(player, b, opp))
                    if pa[player - 1] == pb[player - 1] and pa != pb:
                        return False, (player, a, b, opp, pa, pb)
    return True, None


def is_strictly_competitive(game_or_view, cap: int | None = DEFAULT_JOINT_CAP):
    """Two-player check: one player's payoff order reverses the other's.

    Returns ``(flag, witness)`` with the witness a pair of joint profiles
    whose outcomes violate the order reversal.
    """
    view = _as_view(game_or_view, cap)
    if view.players != 2:
        raise ValueError("strict competitiveness is defined for two players")
    seen: dict[tuple, tuple[int, ...]] = {}
    for profile in view.joint_profiles():
        out = view.payoff(profile)
        seen.setdefault(out, profile)
    outs = list(seen)
    for a in outs:
        for b in outs:
            if (a[0] >= b[0]) != (a[1] <= b[1]):
                return False, (seen[a], seen[b], a, b)
    return True, None


def is_zero_sum(game: GameTree):
    """Every leaf's payoffs sum to zero.  Witness: the first offending leaf."""
    for leaf in game.leaves():
        if sum(game.payoffs(leaf)) != 0:
            return False, leaf
    return True, None


def is_generic(game: GameTree):
    """Each payoff function is injective on all leaves.

    Witness: ``(player, leaf_a, leaf_b)`` with equal payoffs for that player.
    """
    for player in range(1, game.players + 1):
        seen: dict[Fraction, str] = {}
        for leaf in game.leaves():
            q = game.payoffs(leaf)[player - 1]
            if q in seen:
                return False, (player, seen[q], leaf)
            seen[q] = leaf
    return True, None


def is_without_relevant_ties(game: GameTree):
    """The mover's payoff is injective on the leaves of each subtree.

    Witness: ``(node, leaf_a, leaf_b)`` tying the mover's payoff below ``node``.
    """
    for v in game.internal_nodes():
        mover = game.turn(v)
        seen: dict[Fraction, str] = {}
        for leaf in game.leaves(v):
            q = game.payoffs(leaf)[mover - 1]
            if q in seen:
                return False, (v, seen[q], leaf)
            seen[q] = leaf
    return True, None


@dataclass(frozen=True)
class ClassReport:
    """Outcome of all class predicates, with a witness per failed flag."""

    tdi: bool
    strictly_competitive: bool
    zero_sum: bool
    generic: bool
    without_relevant_ties: bool
    counterexamples: dict[str, tuple]


def classify_game(game: GameTree, cap: int | None = DEFAULT_JOINT_CAP) -> ClassReport:
    witnesses: dict[str, tuple] = {}
    tdi, w = is_tdi(game, cap)
    if w:
        witnesses["tdi"] = w
    if game.players == 2:
        sc, w = is_strictly_competitive(game, cap)
        if w:
            witnesses["strictly_competitive"] = w
    else:
        sc = False
    zs, w = is_zero_sum(game)
    if w:
        witnesses["zero_sum"] = (w,)
    gen, w = is_generic(game)
    if w:
        witnesses["generic"] = w
    wrt, w = is_without_relevant_ties(game)
    if w:
        witnesses["without_relevant_ties"] = w
    return ClassReport(tdi, sc, zs, gen, wrt, witnesses)


def _require_nonempty(view: SubgameView):
    if view.is_empty():
        raise EmptyViewError("quantity needs a non-empty view")


def _require_two_players(view: SubgameView):
    if view.players != 2:
        raise ValueError("win/lose sets are defined for two players")


def p_max(view: SubgameView, player: int) -> Fraction:
    """Maximum payoff of ``player`` over all kept joint strategies."""
    _require_nonempty(view)
    _require_two_players(view)
    return max(view.payoff(pr)[player - 1] for pr in view.joint_profiles())


def win_set(view: SubgameView, player: int) -> tuple[int, ...]:
    """Strategies of ``player`` guaranteeing the maximum payoff against everything."""
    _require_nonempty(view)
    _require_two_players(view)
    top = p_max(view, player)
    out = []
    for own in view.kept_for(player):
        if all(
            view.payoff(view.joint_with(player, own, opp))[player - 1] == top
            for opp in view.opponent_profiles(player)
        ):
            out.append(own)
    return tuple(out)


def lose_set(view: SubgameView, player: int) -> tuple[int, ...]:
    """Opponent strategies against which ``player`` can still reach the maximum.

    Returns indices of the other player's strategies.
    """
    _require_nonempty(view)
    _require_two_players(view)
    top = p_max(view, player)
    out = []
    for opp in view.opponent_profiles(player):
        if any(
            view.payoff(view.joint_with(player, own, opp))[player - 1] == top
            for own in view.kept_for(player)
        ):
            out.append(opp[0])
    return tuple(out)


def maxmin(view: SubgameView, player: int) -> Fraction:
    """Max over own strategies of the min payoff over kept opponent profiles."""
    _require_nonempty(view)
    return max(
        min(
            view.payoff(view.joint_with(player, own, opp))[player - 1]
            for opp in view.opponent_profiles(player)
        )
        for own in view.kept_for(player)
    )


def security_strategies(view: SubgameView, player: int) -> tuple[int, ...]:
    """Strategies of ``player`` attaining the maxmin value."""
    _require_nonempty(view)
    target = maxmin(view, player)
    return tuple(
        own
        for own in view.kept_for(player)
        if min(
            view.payoff(view.joint_with(player, own, opp))[player - 1]
            for opp in view.opponent_profiles(player)
        )
        == target
    )
