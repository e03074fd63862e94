"""Constructive trivialization of SPE-invariant games.

The solver recursively reduces each direct subgame to a trivial view,
lifts the recorded elimination steps into the parent game, intersects the
extensions of the children's final views and finishes with a single root
elimination that removes every root move pointing at a sub-optimal child.
The emitted trace is validated step by step while it is built; the final
view is trivial and contains every subgame perfect equilibrium.

Also houses the lifting and extension operators and the independence
predicate they rely on, which the property suite exercises directly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .elimination import EliminationStep, EliminationTrace, eliminate_step, trace_to_json
from .equilibrium import SpeSummary, spe_enumerate, spe_invariance
from .strategic import (
    DEFAULT_JOINT_CAP,
    Strategy,
    StrategicGame,
    SubgameView,
    full_view,
    intersect_views,
    is_trivial,
    to_strategic,
)
from .tree import GameTree, PayoffVector, subgame


class NotInvariantError(Exception):
    """The game is not SPE-invariant; the constructive solver refuses."""


class PreconditionError(Exception):
    """A root-elimination hypothesis failed; the message names it."""


def _require_root_child(game: GameTree, w: str):
    if w not in game.children(game.root):
        raise ValueError(f"{w!r} is not a child of the root {game.root!r}")


def lift_set(
    game: GameTree,
    w: str,
    player: int,
    subgame_strategies: Iterable[Strategy],
    strategic: StrategicGame | None = None,
) -> tuple[Strategy, ...]:
    """Lift subgame strategies of ``player`` into the full game.

    A lifted strategy restricts to one of the given subgame strategies
    on the subtree at ``w`` and, when ``player`` moves at the root, is
    forced to pick ``w`` there.  Returns full-game strategies in
    enumeration order.
    """
    _require_root_child(game, w)
    base = strategic if strategic is not None else to_strategic(game, cap=None)
    inside = frozenset(game.internal_nodes(w))
    wanted = set(subgame_strategies)
    forced = player == game.turn(game.root)
    return tuple(
        s
        for s in base.strategies[player - 1]
        if s.restrict(inside) in wanted and (not forced or s.choice(game.root) == w)
    )


def extend_view(
    game: GameTree,
    w: str,
    sub_view: SubgameView,
    strategic: StrategicGame | None = None,
) -> SubgameView:
    """Extension of a subgame view: keep every full-game strategy whose
    restriction to the subtree at ``w`` is kept, with no root constraint."""
    _require_root_child(game, w)
    base = strategic if strategic is not None else to_strategic(game, cap=None)
    inside = frozenset(game.internal_nodes(w))
    kept = []
    for player in range(1, game.players + 1):
        sub_kept = {
            sub_view.base.strategies[player - 1][i] for i in sub_view.kept_for(player)
        }
        kept.append(
            tuple(
                k
                for k, s in enumerate(base.strategies[player - 1])
                if s.restrict(inside) in sub_kept
            )
        )
    return SubgameView(base, tuple(kept))


def does_not_depend(view: SubgameView, w: str) -> bool:
    """Closure check: the view admits arbitrary modification of its
    strategies on the non-leaf nodes of the subtree at ``w`` (and at the
    root, for the root mover)."""
    base = view.base
    game = base.tree
    if game is None:
        raise ValueError("independence is defined for tree-backed games")
    _require_root_child(game, w)
    root_mover = game.turn(game.root)
    sub_internal = set(game.internal_nodes(w))
    for player in range(1, game.players + 1):
        free = [v for v in game.decision_nodes(player) if v in sub_internal]
        if player == root_mover:
            free.append(game.root)
        if not free:
            continue
        kept_idx = set(view.kept_for(player))
        kept_strategies = [base.strategies[player - 1][i] for i in view.kept_for(player)]
        index_of = {s: k for k, s in enumerate(base.strategies[player - 1])}
        for s in kept_strategies:
            fixed = [c for c in s.choices if c[0] not in free]
            order = [v for v, _ in s.choices]
            for combo in itertools.product(*(game.children(v) for v in free)):
                variant = dict(fixed)
                variant.update(zip(free, combo))
                modified = Strategy(player, tuple((v, variant[v]) for v in order))
                if index_of[modified] not in kept_idx:
                    return False
    return True


def root_elimination(
    game: GameTree,
    child_views: Mapping[str, SubgameView],
    strategic: StrategicGame | None = None,
    entries: Mapping | None = None,
) -> tuple[tuple[tuple[int, ...], ...], SubgameView, EliminationStep]:
    """One elimination step that trivializes the intersected extensions.

    Hypotheses are checked first: the game is SPE-invariant and each
    child view is trivial with the child's unique equilibrium payoff as
    its outcome.  The removed set consists of the root mover's strategies
    in the intersection that pick a child outside the argmax of the child
    values.  Returns the per-player removal sets, the resulting trivial
    view and the validated step.
    """
    root = game.root
    kids = game.children(root)
    if set(child_views) != set(kids):
        raise ValueError("child_views must cover exactly the direct subgames")
    base = strategic if strategic is not None else to_strategic(game, cap=None)
    if entries is None:
        entries = spe_invariance(game).entries
    if not entries[root].invariant:
        raise PreconditionError("game is not SPE-invariant")
    vals: dict[str, PayoffVector] = {}
    for w in kids:
        view_w = child_views[w]
        if view_w.is_empty() or not is_trivial(view_w):
            raise PreconditionError(f"child view at {w!r} is not trivial")
        outcome = view_w.payoff(next(view_w.joint_profiles()))
        if outcome != entries[w].unique_payoff:
            raise PreconditionError(
                f"child view at {w!r} excludes the subgame perfect outcome"
            )
        vals[w] = outcome
    mover = game.turn(root)
    top = max(vals[w][mover - 1] for w in kids)
    winners = {w for w in kids if vals[w][mover - 1] == top}
    assert winners, "argmax over child values is empty"
    crossed = intersect_views([extend_view(game, w, child_views[w], base) for w in kids])
    removal = [set() for _ in range(game.players)]
    for idx in crossed.kept_for(mover):
        if base.strategies[mover - 1][idx].choice(root) not in winners:
            removal[mover - 1].add(idx)
    sets = tuple(tuple(sorted(r)) for r in removal)
    result, step = eliminate_step(crossed, sets)
    assert is_trivial(result), "root elimination left a non-trivial view"
    return sets, result, step


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Constructive-solver output: trace, trivial final view, its outcome."""

    trace: EliminationTrace
    final: SubgameView
    outcome: PayoffVector
    spe_containment: bool | None

    @property
    def step_count(self) -> int:
        return len(self.trace.steps)

    def to_json(self) -> dict:
        return {
            "trace": trace_to_json(self.trace),
            "outcome": [str(q) for q in self.outcome],
            "spe_containment": self.spe_containment,
            "step_count": self.step_count,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def solve_constructive(
    game: GameTree,
    cap: int | None = DEFAULT_JOINT_CAP,
    oracle_cap: int = 4096,
    compact: bool = False,
) -> SolveReport:
    """Reduce an SPE-invariant game to a trivial view containing its SPEs.

    Children are processed in stored order; each child's trace is lifted
    and re-validated in the parent before the root elimination step is
    appended.  Steps whose effective removal is empty are kept as no-ops
    unless ``compact`` is set.  ``spe_containment`` is verified against
    the brute-force oracle when the joint strategy space is at most
    ``oracle_cap``, else left as None.

    Raises :class:`NotInvariantError` when the game is not SPE-invariant.
    """
    summary = spe_invariance(game)
    if not summary.invariant:
        raise NotInvariantError(
            f"not SPE-invariant at nodes {summary.non_invariant_nodes()!r}"
        )

    def _solve(sub: GameTree) -> tuple[StrategicGame, list[EliminationStep], SubgameView]:
        base = to_strategic(sub, cap)
        view = full_view(base)
        if sub.is_leaf(sub.root):
            return base, [], view
        steps: list[EliminationStep] = []
        child_finals: dict[str, SubgameView] = {}
        for w in sub.children(sub.root):
            child = subgame(sub, w).as_game()
            child_base, child_steps, child_final = _solve(child)
            for cstep in child_steps:
                lifted = []
                for player in range(1, sub.players + 1):
                    named = [
                        child_base.strategies[player - 1][i]
                        for i in cstep.removed[player - 1]
                    ]
                    lifted.append(
                        tuple(
                            base.strategy_index(player, s)
                            for s in lift_set(sub, w, player, named, strategic=base)
                        )
                    )
                view, estep = eliminate_step(view, tuple(lifted))
                steps.append(estep)
            child_finals[w] = child_final
        sets, after, estep = root_elimination(
            sub, child_finals, strategic=base, entries=summary.entries
        )
        # The lifted child traces must land exactly on the intersected
        # extensions, or a lifting bug slipped through.
        assert view.kept == _pre_root_kept(
            sub, base, child_finals
        ), "lifted steps missed the intersection of extensions"
        steps.append(estep)
        return base, steps, after

    base, steps, final = _solve(game)
    if compact:
        steps = [s for s in steps if not s.is_noop()]
    trace = EliminationTrace(base, full_view(base), tuple(steps), final)
    assert is_trivial(final)
    outcome = final.payoff(next(final.joint_profiles()))
    containment: bool | None = None
    if base.joint_count() <= oracle_cap:
        kept = tuple(set(final.kept_for(p)) for p in range(1, game.players + 1))
        containment = all(
            all(s[p] in kept[p] for p in range(game.players))
            for s in spe_enumerate(game, cap)
        )
    return SolveReport(trace, final, outcome, containment)


def _pre_root_kept(game: GameTree, base: StrategicGame, child_finals: Mapping[str, SubgameView]):
    crossed = intersect_views(
        [extend_view(game, w, child_finals[w], base) for w in game.children(game.root)]
    )
    return crossed.kept
