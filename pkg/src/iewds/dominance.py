"""Weak and strict dominance tests on subgame views.

All comparisons are exact.  Witnesses name the dominator and one opponent
profile with a strict inequality, so any recorded elimination can be
replayed and re-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .strategic import EmptyViewError, SubgameView


@dataclass(frozen=True)
class DominanceWitness:
    """Evidence that ``dominator`` weakly dominates ``dominated`` for ``player``.

    ``strict_at`` is one opponent profile (indices of the other players in
    ascending player order) where the inequality is strict.
    """

    player: int
    dominated: int
    dominator: int
    strict_at: tuple[int, ...]


def witness_holds(view: SubgameView, w: DominanceWitness) -> bool:
    """Replay a witness: weak dominance everywhere, strict at ``strict_at``."""
    i = w.player
    kept = view.kept_for(i)
    if w.dominated not in kept or w.dominator not in kept:
        return False
    strict_seen = False
    for opp in view.opponent_profiles(i):
        ps = view.payoff(view.joint_with(i, w.dominator, opp))[i - 1]
        pt = view.payoff(view.joint_with(i, w.dominated, opp))[i - 1]
        if ps < pt:
            return False
        if opp == w.strict_at:
            strict_seen = ps > pt
    return strict_seen


def _require_kept(view: SubgameView, player: int, *indices: int):
    kept = view.kept_for(player)
    for idx in indices:
        if idx not in kept:
            raise KeyError(f"strategy {idx} of player {player} is not kept in the view")


def weakly_dominates(
    view: SubgameView, player: int, s_idx: int, t_idx: int
) -> DominanceWitness | None:
    """Witness that ``s_idx`` weakly dominates ``t_idx``, or None.

    Dominance is over the kept opponent profiles of the view: at least
    as good everywhere and strictly better somewhere.
    """
    if view.is_empty():
        raise EmptyViewError("dominance needs a non-empty view")
    _require_kept(view, player, s_idx, t_idx)
    if s_idx == t_idx:
        return None
    strict: tuple[int, ...] | None = None
    for opp in view.opponent_profiles(player):
        ps = view.payoff(view.joint_with(player, s_idx, opp))[player - 1]
        pt = view.payoff(view.joint_with(player, t_idx, opp))[player - 1]
        if ps < pt:
            return None
        if strict is None and ps > pt:
            strict = opp
    if strict is None:
        return None
    return DominanceWitness(player, t_idx, s_idx, strict)


def strictly_dominates(view: SubgameView, player: int, s_idx: int, t_idx: int) -> bool:
    """True iff ``s_idx`` is strictly better than ``t_idx`` against every kept profile."""
    if view.is_empty():
        raise EmptyViewError("dominance needs a non-empty view")
    _require_kept(view, player, s_idx, t_idx)
    if s_idx == t_idx:
        return False
    for opp in view.opponent_profiles(player):
        ps = view.payoff(view.joint_with(player, s_idx, opp))[player - 1]
        pt = view.payoff(view.joint_with(player, t_idx, opp))[player - 1]
        if ps <= pt:
            return False
    return True


def payoff_rows(view: SubgameView, player: int):
    """Opponent profile list and per-strategy payoff rows over it.

    Shared precomputation for whole-set dominance scans; one payoff oracle
    call per cell.
    """
    opp_list = list(view.opponent_profiles(player))
    rows = {
        s: tuple(
            view.payoff(view.joint_with(player, s, opp))[player - 1] for opp in opp_list
        )
        for s in view.kept_for(player)
    }
    return opp_list, rows


def _row_dominates(row_s, row_t) -> int | None:
    """Index of the first strict coordinate if row_s weakly dominates row_t."""
    strict = None
    for k, (a, b) in enumerate(zip(row_s, row_t)):
        if a < b:
            return None
        if strict is None and a > b:
            strict = k
    return strict


def weakly_dominated_set(view: SubgameView, player: int) -> dict[int, DominanceWitness]:
    """Every kept strategy of ``player`` that admits a dominator, with witnesses.

    Witness choice is deterministic: the lowest-index dominator with the
    first strict opponent profile.
    """
    if view.is_empty():
        raise EmptyViewError("dominance needs a non-empty view")
    opp_list, rows = payoff_rows(view, player)
    dominated: dict[int, DominanceWitness] = {}
    kept = view.kept_for(player)
    for t in kept:
        for s in kept:
            if s == t:
                continue
            strict = _row_dominates(rows[s], rows[t])
            if strict is not None:
                dominated[t] = DominanceWitness(player, t, s, opp_list[strict])
                break
    return dominated


def undominated(view: SubgameView, player: int) -> tuple[int, ...]:
    """Kept strategies of ``player`` that no kept strategy weakly dominates."""
    dominated = weakly_dominated_set(view, player)
    return tuple(i for i in view.kept_for(player) if i not in dominated)


def is_wd_admissible_game(view: SubgameView):
    """Check that every dominated strategy has an undominated dominator.

    On a finite view this always holds because weak dominance is a strict
    partial order; the certificate (an undominated dominator per dominated
    strategy, found by walking a dominance chain upward) is produced
    regardless.  Returns ``(flag, certificate)`` with certificate keyed by
    ``(player, dominated index)``.
    """
    if view.is_empty():
        raise EmptyViewError("WD-admissibility needs a non-empty view")
    certificate: dict[tuple[int, int], int] = {}
    for player in range(1, view.players + 1):
        dominated = weakly_dominated_set(view, player)
        for t, witness in dominated.items():
            d = witness.dominator
            while d in dominated:
                d = dominated[d].dominator
            certificate[(player, t)] = d
    return True, certificate
