"""Nash equilibria, subgame perfection, backward induction, SPE-invariance.

``spe_enumerate`` is the brute-force oracle (Nash in every subtree,
checked over all joint strategies); ``spe_invariance`` is the recursive
decision procedure whose agreement with the oracle is asserted in the
test suite on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .strategic import (
    DEFAULT_JOINT_CAP,
    CapExceededError,
    Strategy,
    StrategicGame,
    SubgameView,
    full_view,
    to_strategic,
)
from .tree import GameTree, PayoffVector, subgame


def nash_equilibria(view: SubgameView, cap: int | None = DEFAULT_JOINT_CAP) -> set[tuple[int, ...]]:
    """All pure Nash equilibria of the view, by exhaustive deviation check."""
    if cap is not None and view.joint_count() > cap:
        raise CapExceededError(f"{view.joint_count()} joint strategies, cap is {cap}")
    best: list[dict[tuple[int, ...], object]] = []
    for player in range(1, view.players + 1):
        table: dict[tuple[int, ...], object] = {}
        for opp in view.opponent_profiles(player):
            table[opp] = max(
                view.payoff(view.joint_with(player, own, opp))[player - 1]
                for own in view.kept_for(player)
            )
        best.append(table)
    result: set[tuple[int, ...]] = set()
    for profile in view.joint_profiles():
        payoffs = view.payoff(profile)
        ok = True
        for player in range(1, view.players + 1):
            opp = profile[: player - 1] + profile[player:]
            if payoffs[player - 1] < best[player - 1][opp]:
                ok = False
                break
        if ok:
            result.add(profile)
    return result


def _restricted_profile(
    sub: GameTree, sub_game: StrategicGame, joint: tuple[Strategy, ...]
) -> tuple[int, ...]:
    inside = frozenset(sub.internal_nodes())
    return tuple(
        sub_game.strategy_index(p, joint[p - 1].restrict(inside))
        for p in range(1, sub.players + 1)
    )


def is_spe(game: GameTree, joint: tuple[Strategy, ...], cap: int | None = DEFAULT_JOINT_CAP) -> bool:
    """Nash check of the restricted profile in every subtree of the game."""
    for w in game.preorder():
        sub = subgame(game, w).as_game()
        sub_game = to_strategic(sub, cap)
        profile = _restricted_profile(sub, sub_game, joint)
        view = full_view(sub_game)
        payoffs = view.payoff(profile)
        for player in range(1, sub.players + 1):
            own = profile[player - 1]
            opp = profile[: player - 1] + profile[player:]
            for alt in view.kept_for(player):
                if alt == own:
                    continue
                if view.payoff(view.joint_with(player, alt, opp))[player - 1] > payoffs[player - 1]:
                    return False
    return True


def spe_enumerate(game: GameTree, cap: int | None = DEFAULT_JOINT_CAP) -> set[tuple[int, ...]]:
    """Brute-force oracle: every joint strategy that is Nash in every subtree.

    Returns index tuples into the strategy lists of ``to_strategic(game)``
    (the enumeration order is deterministic, so indices are stable).
    Intended for small games; guarded by ``cap``.
    """
    base = to_strategic(game, cap)
    survivors = set(full_view(base).joint_profiles())
    for w in game.preorder():
        sub = subgame(game, w).as_game()
        sub_game = to_strategic(sub, cap)
        ne = nash_equilibria(full_view(sub_game), cap)
        inside = frozenset(sub.internal_nodes())
        restriction = tuple(
            {
                k: sub_game.strategy_index(p, base.strategies[p - 1][k].restrict(inside))
                for k in range(len(base.strategies[p - 1]))
            }
            for p in range(1, game.players + 1)
        )
        survivors = {
            s
            for s in survivors
            if tuple(restriction[p][s[p]] for p in range(game.players)) in ne
        }
        if not survivors:
            break
    return survivors


def backward_induction(game: GameTree) -> tuple[Strategy, ...]:
    """One subgame perfect equilibrium, assembled bottom-up.

    Ties break to the first payoff-maximizing child in stored child
    order, which makes the output reproducible.
    """
    value: dict[str, PayoffVector] = {}
    choice: dict[str, str] = {}
    for v in reversed(game.preorder()):
        if game.is_leaf(v):
            value[v] = game.payoffs(v)
        else:
            mover = game.turn(v)
            kids = game.children(v)
            best = max(kids, key=lambda c: value[c][mover - 1])
            # max() returns the first maximizer, matching the stored order.
            choice[v] = best
            value[v] = value[best]
    return tuple(
        Strategy(p, tuple((v, choice[v]) for v in game.decision_nodes(p)))
        for p in range(1, game.players + 1)
    )


@dataclass(frozen=True)
class SubtreeEquilibria:
    """Per-subtree summary: SPE existence, invariance, the unique payoff if any."""

    exists: bool
    invariant: bool
    unique_payoff: PayoffVector | None


@dataclass(frozen=True, eq=False)
class SpeSummary:
    """SPE-invariance decision for a game and all of its subtrees."""

    game: GameTree
    entries: dict[str, SubtreeEquilibria]

    @property
    def root_entry(self) -> SubtreeEquilibria:
        return self.entries[self.game.root]

    @property
    def exists(self) -> bool:
        return self.root_entry.exists

    @property
    def invariant(self) -> bool:
        return self.root_entry.invariant

    @property
    def unique_payoff(self) -> PayoffVector | None:
        return self.root_entry.unique_payoff

    def non_invariant_nodes(self) -> list[str]:
        return [v for v in self.game.preorder() if not self.entries[v].invariant]

    def to_json(self) -> dict:
        return {
            "root": self.game.root,
            "nodes": {
                v: {
                    "exists": e.exists,
                    "invariant": e.invariant,
                    "unique_payoff": None
                    if e.unique_payoff is None
                    else [str(q) for q in e.unique_payoff],
                }
                for v, e in ((v, self.entries[v]) for v in self.game.preorder())
            },
        }


def spe_invariance(game: GameTree) -> SpeSummary:
    """Decide SPE-invariance recursively, without enumerating equilibria.

    A leaf is invariant with its own payoff.  An internal node is
    invariant iff every child subtree is invariant and the unique child
    payoffs that maximize the mover's coordinate agree as full vectors;
    that common vector is then the node's unique SPE payoff.
    """
    entries: dict[str, SubtreeEquilibria] = {}
    for v in reversed(game.preorder()):
        if game.is_leaf(v):
            entries[v] = SubtreeEquilibria(True, True, game.payoffs(v))
            continue
        kids = game.children(v)
        exists = all(entries[c].exists for c in kids)
        if not all(entries[c].invariant for c in kids):
            entries[v] = SubtreeEquilibria(exists, False, None)
            continue
        mover = game.turn(v)
        vals = [entries[c].unique_payoff for c in kids]
        top = max(val[mover - 1] for val in vals)
        argmax = {val for val in vals if val[mover - 1] == top}
        if len(argmax) == 1:
            entries[v] = SubtreeEquilibria(exists, True, next(iter(argmax)))
        else:
            entries[v] = SubtreeEquilibria(exists, False, None)
    return SpeSummary(game, entries)
