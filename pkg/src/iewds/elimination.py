"""Elimination steps, maximal rounds, fixpoints and validated traces.

A step removes, per player, a named set of strategies; every named
strategy that is present in the current view must be weakly dominated
there (witnessed), and names absent from the view are disregarded.
Multi-player simultaneous removal is allowed; witnesses are always
evaluated in the pre-step view.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dominance import DominanceWitness, _row_dominates, payoff_rows, weakly_dominated_set
from .strategic import EmptyViewError, StrategicGame, SubgameView


class NotDominatedError(Exception):
    """A named strategy is present in the view but not weakly dominated."""

    def __init__(self, player: int, index: int):
        self.player = player
        self.index = index
        super().__init__(f"strategy {index} of player {player} is not weakly dominated")


class IntermediateEmptyError(Exception):
    """A non-final step of a sequence emptied the view."""


@dataclass(frozen=True)
class EliminationStep:
    """One elimination event.

    ``removed`` holds, per player, the indices actually removed from the
    pre-step view; ``witnesses`` carries one dominance witness per removed
    strategy; ``disregarded`` lists named indices that were not present.
    """

    removed: tuple[tuple[int, ...], ...]
    witnesses: tuple[DominanceWitness, ...]
    disregarded: tuple[tuple[int, ...], ...]

    def is_noop(self) -> bool:
        return all(not r for r in self.removed)


@dataclass(frozen=True, eq=False)
class EliminationTrace:
    """A validated finite elimination sequence with its endpoint views."""

    base: StrategicGame
    initial: SubgameView
    steps: tuple[EliminationStep, ...]
    final: SubgameView

    @property
    def rounds(self) -> int:
        return len(self.steps)


def eliminate_step(
    view: SubgameView, sets: Sequence[Iterable[int]]
) -> tuple[SubgameView, EliminationStep]:
    """Remove the named strategies from the view, validating dominance.

    Names not kept in the view are disregarded.  Every remaining name
    must be weakly dominated in the pre-step view or
    :class:`NotDominatedError` is raised.  An empty effective set is a
    valid no-op; the result may be empty.
    """
    if view.is_empty():
        raise EmptyViewError("cannot eliminate from an empty view")
    if len(sets) != view.players:
        raise ValueError(f"need {view.players} index sets, got {len(sets)}")
    removed: list[tuple[int, ...]] = []
    disregarded: list[tuple[int, ...]] = []
    witnesses: list[DominanceWitness] = []
    for player in range(1, view.players + 1):
        named = set(sets[player - 1])
        kept = set(view.kept_for(player))
        effective = tuple(sorted(named & kept))
        disregarded.append(tuple(sorted(named - kept)))
        removed.append(effective)
        if not effective:
            continue
        opp_list, rows = payoff_rows(view, player)
        for t in effective:
            for s in view.kept_for(player):
                if s == t:
                    continue
                strict = _row_dominates(rows[s], rows[t])
                if strict is not None:
                    witnesses.append(DominanceWitness(player, t, s, opp_list[strict]))
                    break
            else:
                raise NotDominatedError(player, t)
    step = EliminationStep(tuple(removed), tuple(witnesses), tuple(disregarded))
    return view.remove(step.removed), step


def max_round(view: SubgameView) -> tuple[SubgameView, EliminationStep]:
    """One maximal round: remove every weakly dominated strategy of every player."""
    if view.is_empty():
        raise EmptyViewError("cannot eliminate from an empty view")
    removed: list[tuple[int, ...]] = []
    witnesses: list[DominanceWitness] = []
    for player in range(1, view.players + 1):
        dominated = weakly_dominated_set(view, player)
        removed.append(tuple(sorted(dominated)))
        witnesses.extend(dominated[t] for t in sorted(dominated))
    step = EliminationStep(
        tuple(removed), tuple(witnesses), tuple(() for _ in range(view.players))
    )
    result = view.remove(step.removed)
    # A maximal round never empties a finite game: undominated strategies exist.
    assert not result.is_empty(), "maximal round emptied a finite view"
    return result, step


def iterate(view: SubgameView, k: int | None) -> EliminationTrace:
    """Up to ``k`` maximal rounds (all of them when ``k`` is None).

    Stops early once a round removes nothing; the trace records only the
    effective rounds.
    """
    if k is not None and k < 0:
        raise ValueError("round count must be non-negative")
    steps: list[EliminationStep] = []
    current = view
    while k is None or len(steps) < k:
        nxt, step = max_round(current)
        if step.is_noop():
            break
        steps.append(step)
        current = nxt
    return EliminationTrace(view.base, view, tuple(steps), current)


def fixpoint(view: SubgameView) -> tuple[SubgameView, int]:
    """Iterate maximal rounds to the fixpoint; returns it with the round count."""
    trace = iterate(view, None)
    return trace.final, trace.rounds


def validate_sequence(
    view: SubgameView, rho: Sequence[Sequence[Iterable[int]]]
) -> EliminationTrace:
    """Apply a finite sequence of named elimination steps, validating each.

    Raises :class:`NotDominatedError` on an invalid step and
    :class:`IntermediateEmptyError` if any non-final step empties the
    view.  Sequences compose: validating ``rho + rho'`` equals validating
    ``rho'`` from the final view of ``rho``.
    """
    steps: list[EliminationStep] = []
    current = view
    for pos, named in enumerate(rho):
        current, step = eliminate_step(current, named)
        steps.append(step)
        if current.is_empty() and pos != len(rho) - 1:
            raise IntermediateEmptyError(f"step {pos} emptied the view")
    return EliminationTrace(view.base, view, tuple(steps), current)


def replay_trace(trace: EliminationTrace) -> bool:
    """Re-run the recorded removals from the initial view and compare endpoints."""
    try:
        again = validate_sequence(trace.initial, [s.removed for s in trace.steps])
    except (NotDominatedError, IntermediateEmptyError, EmptyViewError):
        return False
    return again.final == trace.final


def _render_opponents(base: StrategicGame, player: int, opp: tuple[int, ...]) -> list[str]:
    labels = []
    pos = 0
    for p in range(1, base.players + 1):
        if p == player:
            continue
        labels.append(base.render(p, opp[pos]))
        pos += 1
    return labels


def trace_to_json(trace: EliminationTrace) -> dict:
    """Deterministic JSON form of a trace.

    One record per removed strategy, ordered by step, player and index;
    rationals render as exact strings.
    """
    base = trace.base
    ghash = hashlib.sha256(base.canonical_text().encode()).hexdigest()
    steps = []
    for pos, step in enumerate(trace.steps):
        by_key = {(w.player, w.dominated): w for w in step.witnesses}
        for player in range(1, base.players + 1):
            for idx in step.removed[player - 1]:
                w = by_key[(player, idx)]
                steps.append(
                    {
                        "step": pos,
                        "player": player,
                        "removed": [base.render(player, idx)],
                        "dominator": base.render(player, w.dominator),
                        "strict_profile": _render_opponents(base, player, w.strict_at),
                    }
                )
    kept = {
        str(p): [base.render(p, i) for i in trace.final.kept_for(p)]
        for p in range(1, base.players + 1)
    }
    outs = sorted({trace.final.payoff(pr) for pr in trace.final.joint_profiles()})
    return {
        "game_hash": ghash,
        "steps": steps,
        "final": {
            "kept": kept,
            "outcomes": [[str(q) for q in o] for o in outs],
        },
    }


def trace_json_text(trace: EliminationTrace) -> str:
    return json.dumps(trace_to_json(trace), indent=2)
