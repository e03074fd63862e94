"""Strategic form of an extensive game: strategies, plays, payoffs, views.

Strategies are total choice maps over a player's decision nodes, including
unreachable ones.  Enumeration order is lexicographic over decision nodes
in preorder with choices in child order; traces and reports inherit their
determinism from it.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Iterator, Sequence

from .tree import GameTree, PayoffVector, payoff_vector, serialize_game

DEFAULT_JOINT_CAP = 200_000


class CapExceededError(Exception):
    """Strategy space larger than the configured cap."""


class EmptyViewError(ValueError):
    """Operation requires a non-empty view."""


@dataclass(frozen=True)
class Strategy:
    """Total choice map for one player: (decision node, chosen child) pairs.

    ``choices`` is ordered by node preorder position; a player who never
    moves has the empty tuple (the empty function).
    """

    player: int
    choices: tuple[tuple[str, str], ...]

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.choices)

    def choice(self, node_id: str) -> str:
        return self.mapping[node_id]

    def restrict(self, node_ids: frozenset[str] | set[str]) -> "Strategy":
        """Restriction to the decision nodes inside a subtree.

        Relative choice order is preserved, which matches the enumeration
        order of the subtree's own strategic form.
        """
        return Strategy(self.player, tuple(c for c in self.choices if c[0] in node_ids))

    def render(self) -> str:
        return ",".join(f"{v}->{c}" for v, c in self.choices)

    def __str__(self) -> str:
        return self.render()


def strategies(game: GameTree, player: int, cap: int | None = DEFAULT_JOINT_CAP) -> tuple[Strategy, ...]:
    """All strategies of ``player``, exhaustively and duplicate free.

    If the player has no decision node the result is the singleton empty
    function.  Raises :class:`CapExceededError` when the count exceeds
    ``cap``.
    """
    nodes = game.decision_nodes(player)
    count = game.strategy_count(player)
    if cap is not None and count > cap:
        raise CapExceededError(
            f"player {player} has {count} strategies, cap is {cap}"
        )
    if not nodes:
        return (Strategy(player, ()),)
    return tuple(
        Strategy(player, tuple(zip(nodes, combo)))
        for combo in itertools.product(*(game.children(v) for v in nodes))
    )


def play(game: GameTree, joint: Sequence[Strategy]) -> list[str]:
    """The rooted path induced by a joint strategy; its last node is the leaf."""
    if len(joint) != game.players:
        raise ValueError(f"need {game.players} strategies, got {len(joint)}")
    v = game.root
    path = [v]
    while not game.is_leaf(v):
        v = joint[game.turn(v) - 1].choice(v)
        path.append(v)
    return path


def leaf_of(game: GameTree, joint: Sequence[Strategy]) -> str:
    return play(game, joint)[-1]


def payoff(game: GameTree, joint: Sequence[Strategy]) -> PayoffVector:
    """Payoff vector at the leaf reached by the joint strategy."""
    return game.payoffs(leaf_of(game, joint))


@dataclass(eq=False)
class StrategicGame:
    """Per-player ordered strategy lists plus a memoized payoff oracle.

    Strategy entries are :class:`Strategy` objects for tree-backed games
    and plain labels for table games.  Identity matters: views refer to
    their base game by object identity.
    """

    players: int
    strategies: tuple[tuple[Any, ...], ...]
    payoff_fn: Callable[[tuple[int, ...]], PayoffVector] = field(repr=False)
    tree: GameTree | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def payoff(self, profile: tuple[int, ...]) -> PayoffVector:
        try:
            return self._cache[profile]
        except KeyError:
            value = self.payoff_fn(profile)
            self._cache[profile] = value
            return value

    def joint_count(self) -> int:
        out = 1
        for lst in self.strategies:
            out *= len(lst)
        return out

    @cached_property
    def _index(self) -> tuple[dict, ...]:
        return tuple({s: k for k, s in enumerate(lst)} for lst in self.strategies)

    def strategy_index(self, player: int, strategy) -> int:
        try:
            return self._index[player - 1][strategy]
        except KeyError:
            raise KeyError(f"player {player} has no strategy {strategy!r}") from None

    def render(self, player: int, idx: int) -> str:
        s = self.strategies[player - 1][idx]
        return s.render() if isinstance(s, Strategy) else str(s)

    def canonical_text(self) -> str:
        """Deterministic text form of the game, used for hashing."""
        if self.tree is not None:
            return serialize_game(self.tree)
        lines = [f"strategic {self.players}"]
        for p, lst in enumerate(self.strategies, start=1):
            lines.append(f"player {p}: {' '.join(str(s) for s in lst)}")
        for profile in itertools.product(*(range(len(lst)) for lst in self.strategies)):
            cells = " ".join(str(q) for q in self.payoff(profile))
            lines.append(f"{profile} -> {cells}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[Sequence]],
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
    ) -> "StrategicGame":
        """Two-player game from a payoff table ``table[row][col] = (p1, p2)``."""
        rows = len(table)
        cols = len(table[0])
        cells = tuple(tuple(payoff_vector(cell) for cell in row) for row in table)
        rlab = tuple(row_labels) if row_labels else tuple(f"r{k + 1}" for k in range(rows))
        clab = tuple(col_labels) if col_labels else tuple(f"c{k + 1}" for k in range(cols))

        def lookup(profile: tuple[int, ...]) -> PayoffVector:
            return cells[profile[0]][profile[1]]

        return cls(2, (rlab, clab), lookup)


def to_strategic(game: GameTree, cap: int | None = DEFAULT_JOINT_CAP) -> StrategicGame:
    """Strategic form of an extensive game.

    Raises :class:`CapExceededError` when the joint strategy count exceeds
    ``cap``.  Payoffs are computed lazily by replaying choices along the
    tree and memoized per profile.
    """
    joint = game.joint_strategy_count()
    if cap is not None and joint > cap:
        raise CapExceededError(f"{joint} joint strategies, cap is {cap}")
    lists = tuple(strategies(game, p, cap=None) for p in range(1, game.players + 1))
    choice_maps = tuple(tuple(s.mapping for s in lst) for lst in lists)

    def walk(profile: tuple[int, ...]) -> PayoffVector:
        v = game.root
        while not game.is_leaf(v):
            p = game.turn(v)
            v = choice_maps[p - 1][profile[p - 1]][v]
        return game.payoffs(v)

    return StrategicGame(game.players, lists, walk, tree=game)


@dataclass(frozen=True, eq=False)
class SubgameView:
    """Subgame of a strategic game: per player, the kept strategy indices.

    The empty game (some player keeps nothing) is representable.  Views
    over the same base compare by kept sets.
    """

    base: StrategicGame
    kept: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "kept", tuple(tuple(sorted(set(k))) for k in self.kept)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgameView)
            and self.base is other.base
            and self.kept == other.kept
        )

    def __hash__(self) -> int:
        return hash((id(self.base), self.kept))

    @property
    def players(self) -> int:
        return self.base.players

    def is_empty(self) -> bool:
        return any(not k for k in self.kept)

    def kept_for(self, player: int) -> tuple[int, ...]:
        return self.kept[player - 1]

    def joint_count(self) -> int:
        out = 1
        for k in self.kept:
            out *= len(k)
        return out

    def joint_profiles(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*self.kept)

    def opponent_profiles(self, player: int) -> Iterator[tuple[int, ...]]:
        """Profiles of all players except ``player``, ascending player order."""
        others = [self.kept[j] for j in range(self.players) if j != player - 1]
        return itertools.product(*others)

    def joint_with(self, player: int, own: int, opp: tuple[int, ...]) -> tuple[int, ...]:
        return opp[: player - 1] + (own,) + opp[player - 1 :]

    def payoff(self, profile: tuple[int, ...]) -> PayoffVector:
        return self.base.payoff(profile)

    def remove(self, sets: Sequence[Iterable[int]]) -> "SubgameView":
        new = tuple(
            tuple(i for i in self.kept[p] if i not in set(sets[p]))
            for p in range(self.players)
        )
        return SubgameView(self.base, new)

    def render_profile(self, profile: tuple[int, ...]) -> tuple[str, ...]:
        return tuple(self.base.render(p + 1, idx) for p, idx in enumerate(profile))


def full_view(base: StrategicGame) -> SubgameView:
    return SubgameView(base, tuple(tuple(range(len(lst))) for lst in base.strategies))


def outcomes(view: SubgameView) -> set[PayoffVector]:
    """Exact set of distinct payoff vectors over the kept joint strategies."""
    return {view.payoff(profile) for profile in view.joint_profiles()}


def is_trivial(view: SubgameView) -> bool:
    """True iff the view has exactly one outcome.  Requires a non-empty view."""
    if view.is_empty():
        raise EmptyViewError("is_trivial needs a non-empty view")
    first: PayoffVector | None = None
    for profile in view.joint_profiles():
        value = view.payoff(profile)
        if first is None:
            first = value
        elif value != first:
            return False
    return True


def intersect_views(views: Iterable[SubgameView]) -> SubgameView:
    """Per-player intersection of kept sets; all views must share one base."""
    views = list(views)
    if not views:
        raise ValueError("need at least one view")
    base = views[0].base
    if any(v.base is not base for v in views):
        raise ValueError("views have mixed bases")
    kept = tuple(
        tuple(sorted(set.intersection(*(set(v.kept[p]) for v in views))))
        for p in range(base.players)
    )
    return SubgameView(base, kept)


def export_csv(view: SubgameView) -> str:
    """CSV table of the view.

    Two-player views export as a matrix with strategy strings on the
    margins; other player counts export one row per joint strategy.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    base = view.base
    if view.players == 2:
        cols = view.kept_for(2)
        writer.writerow([""] + [base.render(2, c) for c in cols])
        for r in view.kept_for(1):
            row = [base.render(1, r)]
            for c in cols:
                row.append("(" + ",".join(str(q) for q in view.payoff((r, c))) + ")")
            writer.writerow(row)
    else:
        writer.writerow(
            [f"player{p}" for p in range(1, view.players + 1)]
            + [f"payoff{p}" for p in range(1, view.players + 1)]
        )
        for profile in view.joint_profiles():
            writer.writerow(
                list(view.render_profile(profile))
                + [str(q) for q in view.payoff(profile)]
            )
    return buf.getvalue()
