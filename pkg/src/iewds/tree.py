"""Game trees for finite extensive games with perfect information.

Payoffs are exact rationals so that dominance comparisons never suffer
rounding.  Trees are immutable after construction and every traversal
order derives from the stored child order, which keeps all downstream
computations deterministic.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

PayoffVector = tuple[Fraction, ...]

_ID_RE = re.compile(r"[A-Za-z0-9]+\Z")
_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


class GameFormatError(ValueError):
    """Malformed EGT text or a structurally broken tree at parse time."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class UnknownNodeError(LookupError):
    """A node id that is not present in the tree."""


@dataclass(frozen=True)
class Internal:
    """Decision node: the mover and an ordered, non-empty child list."""

    turn: int
    children: tuple[str, ...]


@dataclass(frozen=True)
class Leaf:
    """Terminal node carrying one exact payoff per player."""

    payoffs: PayoffVector


Node = Union[Internal, Leaf]


def payoff_vector(values: Iterable) -> PayoffVector:
    """Coerce a sequence of ints/strings/Fractions into an exact payoff vector."""
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class GameTree:
    """Rooted finite tree with movers on internal nodes and payoffs on leaves.

    ``nodes`` maps node id to either :class:`Internal` or :class:`Leaf`.
    Structural equality compares players, node set and root.  Construction
    does not validate; use :func:`validate` (or :func:`parse_game`, which
    rejects broken trees).
    """

    players: int
    nodes: dict[str, Node]
    root: str

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNodeError(node_id) from None

    def is_leaf(self, node_id: str) -> bool:
        return isinstance(self.node(node_id), Leaf)

    def children(self, node_id: str) -> tuple[str, ...]:
        node = self.node(node_id)
        return node.children if isinstance(node, Internal) else ()

    def turn(self, node_id: str) -> int:
        node = self.node(node_id)
        if isinstance(node, Leaf):
            raise ValueError(f"leaf {node_id!r} has no mover")
        return node.turn

    def payoffs(self, node_id: str) -> PayoffVector:
        node = self.node(node_id)
        if isinstance(node, Internal):
            raise ValueError(f"{node_id!r} is not a leaf")
        return node.payoffs

    def preorder(self, start: str | None = None) -> list[str]:
        """Node ids in preorder, children visited in stored order."""
        stack = [self.root if start is None else start]
        seen: set[str] = set()
        order: list[str] = []
        while stack:
            v = stack.pop()
            if v in seen:
                raise ValueError(f"node {v!r} reached twice; not a tree")
            seen.add(v)
            order.append(v)
            stack.extend(reversed(self.children(v)))
        return order

    def leaves(self, start: str | None = None) -> list[str]:
        return [v for v in self.preorder(start) if self.is_leaf(v)]

    def internal_nodes(self, start: str | None = None) -> list[str]:
        return [v for v in self.preorder(start) if not self.is_leaf(v)]

    def decision_nodes(self, player: int, start: str | None = None) -> list[str]:
        """Preorder list of the nodes at which ``player`` moves (reachable or not)."""
        return [v for v in self.internal_nodes(start) if self.turn(v) == player]

    def strategy_count(self, player: int) -> int:
        return math.prod(len(self.children(v)) for v in self.decision_nodes(player))

    def joint_strategy_count(self) -> int:
        return math.prod(len(self.children(v)) for v in self.internal_nodes())


@dataclass(frozen=True, eq=False)
class SubtreeHandle:
    """View of the subgame rooted at ``root``; players are all retained."""

    base: GameTree
    root: str

    def node_ids(self) -> list[str]:
        return self.base.preorder(self.root)

    def as_game(self) -> GameTree:
        """Materialize the subtree as its own tree (node ids are preserved)."""
        nodes = {v: self.base.nodes[v] for v in self.base.preorder(self.root)}
        return GameTree(self.base.players, nodes, self.root)

    def is_leaf(self) -> bool:
        return self.base.is_leaf(self.root)


def subgame(game: GameTree, w: str) -> SubtreeHandle:
    """Handle to the subgame rooted at node ``w``.

    Raises :class:`UnknownNodeError` if ``w`` is not a node of ``game``.
    """
    game.node(w)
    return SubtreeHandle(game, w)


def rank(t: SubtreeHandle | GameTree) -> int:
    """Height of the (sub)tree: 0 for a leaf, else 1 + max over children."""
    if isinstance(t, SubtreeHandle):
        game, start = t.base, t.root
    else:
        game, start = t, t.root
    ranks: dict[str, int] = {}
    stack: list[tuple[str, bool]] = [(start, False)]
    while stack:
        v, expanded = stack.pop()
        kids = game.children(v)
        if not kids:
            ranks[v] = 0
        elif expanded:
            ranks[v] = 1 + max(ranks[c] for c in kids)
        else:
            stack.append((v, True))
            stack.extend((c, False) for c in kids)
    return ranks[start]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(game: GameTree) -> ValidationReport:
    """Check every GameTree invariant and list all violations found."""
    bad: list[str] = []
    if game.players < 1:
        bad.append(f"player count {game.players} < 1")
    if game.root not in game.nodes:
        bad.append(f"root {game.root!r} is not a node")
        return ValidationReport(tuple(bad))
    for v, node in game.nodes.items():
        if isinstance(node, Internal):
            if not node.children:
                bad.append(f"internal node {v!r} has no children")
            if not 1 <= node.turn <= game.players:
                bad.append(f"turn {node.turn} at {v!r} outside 1..{game.players}")
            for c in node.children:
                if c not in game.nodes:
                    bad.append(f"child {c!r} of {v!r} is not a node")
        else:
            if len(node.payoffs) != game.players:
                bad.append(
                    f"leaf {v!r} has {len(node.payoffs)} payoffs, expected {game.players}"
                )
    # Reachability: every node reached from the root exactly once.
    seen: set[str] = set()
    stack = [game.root]
    while stack:
        v = stack.pop()
        if v in seen:
            bad.append(f"node {v!r} reachable more than once (not a tree)")
            continue
        seen.add(v)
        node = game.nodes.get(v)
        if isinstance(node, Internal):
            stack.extend(c for c in node.children if c in game.nodes)
    for v in game.nodes:
        if v not in seen:
            bad.append(f"node {v!r} unreachable from the root")
    return ValidationReport(tuple(bad))


def parse_game(text: str) -> GameTree:
    """Parse EGT text into a validated :class:`GameTree`.

    Format (line based, ``#`` starts a comment)::

        game <n>
        node <id> player <i> children <id> <id> ...
        leaf <id> payoffs <q1> ... <qn>
        root <id>

    Payoffs are integers or fractions ``a/b``.  Ids are alphanumeric
    tokens.  Raises :class:`GameFormatError` with a line number on any
    syntax or structural problem (duplicate id, dangling child, payoff
    arity mismatch, cycles, unreachable nodes).
    """
    players: int | None = None
    nodes: dict[str, Node] = {}
    decl_line: dict[str, int] = {}
    root: str | None = None

    def fail(msg: str, lineno: int):
        raise GameFormatError(msg, lineno)

    def check_id(token: str, lineno: int) -> str:
        if not _ID_RE.match(token):
            fail(f"invalid id {token!r}", lineno)
        return token

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if players is None:
            if kind != "game" or len(parts) != 2 or not parts[1].isdigit():
                fail("expected 'game <n>' header", lineno)
            players = int(parts[1])
            if players < 1:
                fail("player count must be at least 1", lineno)
            continue
        if kind == "game":
            fail("duplicate 'game' header", lineno)
        elif kind == "node":
            if len(parts) < 6 or parts[2] != "player" or parts[4] != "children":
                fail("expected 'node <id> player <i> children <id>...'", lineno)
            nid = check_id(parts[1], lineno)
            if nid in nodes:
                fail(f"duplicate node id {nid!r}", lineno)
            if not parts[3].isdigit() or not 1 <= int(parts[3]) <= players:
                fail(f"player {parts[3]!r} outside 1..{players}", lineno)
            kids = tuple(check_id(t, lineno) for t in parts[5:])
            nodes[nid] = Internal(int(parts[3]), kids)
            decl_line[nid] = lineno
        elif kind == "leaf":
            if len(parts) < 3 or parts[2] != "payoffs":
                fail("expected 'leaf <id> payoffs <q>...'", lineno)
            nid = check_id(parts[1], lineno)
            if nid in nodes:
                fail(f"duplicate node id {nid!r}", lineno)
            values = parts[3:]
            if len(values) != players:
                fail(
                    f"leaf {nid!r} has {len(values)} payoffs, expected {players}", lineno
                )
            for tok in values:
                if not _RATIONAL_RE.match(tok):
                    fail(f"bad rational {tok!r}", lineno)
            nodes[nid] = Leaf(payoff_vector(values))
            decl_line[nid] = lineno
        elif kind == "root":
            if len(parts) != 2:
                fail("expected 'root <id>'", lineno)
            if root is not None:
                fail("duplicate 'root' line", lineno)
            root = check_id(parts[1], lineno)
        else:
            fail(f"unknown directive {kind!r}", lineno)

    if players is None:
        raise GameFormatError("missing 'game <n>' header")
    if root is None:
        raise GameFormatError("missing 'root <id>' line")
    if root not in nodes:
        raise GameFormatError(f"root {root!r} is not a declared node")
    for nid, node in nodes.items():
        if isinstance(node, Internal):
            for c in node.children:
                if c not in nodes:
                    fail(f"child {c!r} of node {nid!r} is never declared", decl_line[nid])

    game = GameTree(players, nodes, root)
    report = validate(game)
    if not report.ok:
        raise GameFormatError("; ".join(report.violations))
    return game


def _render_rational(q: Fraction) -> str:
    return str(q)


def serialize_game(game: GameTree) -> str:
    """Emit EGT text; nodes appear in preorder, so output is canonical."""
    lines = [f"game {game.players}"]
    for v in game.preorder():
        node = game.nodes[v]
        if isinstance(node, Internal):
            lines.append(f"node {v} player {node.turn} children {' '.join(node.children)}")
        else:
            lines.append(f"leaf {v} payoffs {' '.join(_render_rational(q) for q in node.payoffs)}")
    lines.append(f"root {game.root}")
    return "\n".join(lines) + "\n"


def game_hash(game: GameTree) -> str:
    """Stable content hash of the canonical serialization."""
    return hashlib.sha256(serialize_game(game).encode()).hexdigest()
