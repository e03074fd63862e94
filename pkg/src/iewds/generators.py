"""Deterministic game fixtures and seeded random families.

The named builders reproduce the benchmark games used throughout the
test suite; the infinite originals behind several of them survive only
as parameter families, and each builder's docstring says which property
the truncation keeps and which it provably flips.  ``random_game`` is
fully determined by its :class:`FamilySpec`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .strategic import StrategicGame
from .tree import GameTree, Internal, Leaf, Node, payoff_vector


@dataclass(frozen=True)
class FamilySpec:
    """Reproducible description of one generated game.

    ``param`` is the single integer argument of the named families
    (periods, cutoff, amount, size).  The random family uses ``players``,
    ``depth``, ``branching``, ``seed``, ``payoff_mode`` and ``max_joint``.
    ``tags`` carry declared family annotations (for instance that the
    infinite relative of a truncation family keeps one outcome on all but
    finitely many leaves); they are never computed from the tree.
    """

    name: str
    param: int | None = None
    players: int = 2
    depth: int = 3
    branching: int = 2
    seed: int = 0
    payoff_mode: str = "arbitrary"
    max_joint: int = 512
    tags: tuple[str, ...] = ()


PAYOFF_MODES = ("zero_sum", "generic", "tdi_pool", "arbitrary")


def single_node(players: int = 2) -> GameTree:
    """The degenerate one-node game; every player receives payoff 0."""
    return GameTree(players, {"z": Leaf(payoff_vector([0] * players))}, "z")


def fig1() -> GameTree:
    """Two-player game whose 4x2 strategic form has three payoff-equivalent
    subgame perfect equilibria that no elimination sequence can jointly keep."""
    nodes: dict[str, Node] = {
        "r": Internal(1, ("A", "B")),
        "A": Internal(2, ("L", "R")),
        "L": Leaf(payoff_vector([0, 0])),
        "R": Leaf(payoff_vector([2, 0])),
        "B": Internal(1, ("C", "D")),
        "C": Leaf(payoff_vector([2, 0])),
        "D": Leaf(payoff_vector([0, 0])),
    }
    return GameTree(2, nodes, "r")


def centipede(t: int, prefix: str = "") -> GameTree:
    """Centipede game with ``2t`` periods.

    Players alternate along a spine; stopping at period ``k`` pays the
    stop payoffs, and the final continuation leaf follows the recurrence
    (x+1, y), (x, y+3), (x+2, y+2) from the previous continuation payoff
    (2, 1).  Generic for every ``t``; the unique SPE stops immediately
    with outcome (1, 0).
    """
    if t < 1:
        raise ValueError("need at least one two-period block")
    stop_payoffs = [(1, 0), (0, 2)]
    cont = (2, 1)
    for _ in range(t - 1):
        x, y = cont
        stop_payoffs.extend([(x + 1, y), (x, y + 3)])
        cont = (x + 2, y + 2)
    nodes: dict[str, Node] = {}
    spine = 2 * t
    for k in range(1, spine + 1):
        mover = 1 if k % 2 == 1 else 2
        stop = f"{prefix}s{k}"
        nxt = f"{prefix}m{k + 1}" if k < spine else f"{prefix}e"
        nodes[f"{prefix}m{k}"] = Internal(mover, (stop, nxt))
        nodes[stop] = Leaf(payoff_vector(stop_payoffs[k - 1]))
    nodes[f"{prefix}e"] = Leaf(payoff_vector(cont))
    return GameTree(2, nodes, f"{prefix}m1")


def chooser_centipede(k: int) -> GameTree:
    """Player 2 first picks a period count, then that centipede is played.

    Finite shadow of the infinite chooser game: SPE-invariant with
    outcome (1, 0) for every cutoff, and the constructive solve gets
    strictly longer as the cutoff grows.
    """
    if k < 1:
        raise ValueError("need at least one centipede option")
    nodes: dict[str, Node] = {}
    children = []
    for t in range(1, k + 1):
        sub = centipede(t, prefix=f"g{t}")
        nodes.update(sub.nodes)
        children.append(sub.root)
    nodes["pick"] = Internal(2, tuple(children))
    return GameTree(2, nodes, "pick")


def ultimatum(n: int) -> GameTree:
    """Discretized split-the-pot game with a veto on the greedy demand.

    Demands 0..n-1 are accepted outright; demand n goes to the responder
    who accepts (n, 0) or refuses (0, 0).  The continuum original reduces
    to demand n alone, but every finite discretization provably keeps
    {n-1, n}, which is the behavior pinned here.
    """
    if n < 1:
        raise ValueError("amount must be positive")
    kids = [f"x{k}" for k in range(n)] + ["d"]
    nodes: dict[str, Node] = {"r": Internal(1, tuple(kids))}
    for k in range(n):
        nodes[f"x{k}"] = Leaf(payoff_vector([k, n - k]))
    nodes["d"] = Internal(2, ("acc", "rej"))
    nodes["acc"] = Leaf(payoff_vector([n, 0]))
    nodes["rej"] = Leaf(payoff_vector([0, 0]))
    return GameTree(2, nodes, "r")


def fig3(k: int) -> GameTree:
    """Truncation of the no-SPE game: mover 1 picks (0,0), (0,1) or hands
    player 2 a menu of (0, j) for j < k.

    The infinite original has no SPE at all; any finite cutoff restores
    one (the menu regains a maximum) while staying non-TDI with witness
    outcomes (0,0) versus (0,1).
    """
    if k < 2:
        raise ValueError("menu needs at least two entries")
    nodes: dict[str, Node] = {
        "r": Internal(1, ("A", "B", "C")),
        "A": Leaf(payoff_vector([0, 0])),
        "B": Leaf(payoff_vector([0, 1])),
        "C": Internal(2, tuple(f"k{j}" for j in range(k))),
    }
    for j in range(k):
        nodes[f"k{j}"] = Leaf(payoff_vector([0, j]))
    return GameTree(2, nodes, "r")


def _example6_cell(row: int, col: int) -> tuple[int, int]:
    hit = 1 if 2 <= col <= row else 0
    return hit, -hit


def example6(n: int) -> GameTree:
    """Two-stage tree wrapping the n-by-n truncation of the staircase
    zero-sum table (row r wins exactly against columns 2..r).

    In the infinite table every row is weakly dominated and one round
    empties the row player; every finite truncation keeps the last row
    undominated instead.  Use :func:`example6_table` for analyses that
    need the table's own strategy sets.
    """
    if n < 2:
        raise ValueError("truncation needs size at least 2")
    nodes: dict[str, Node] = {
        "r": Internal(1, tuple(f"r{i}" for i in range(1, n + 1)))
    }
    for i in range(1, n + 1):
        nodes[f"r{i}"] = Internal(2, tuple(f"r{i}c{j}" for j in range(1, n + 1)))
        for j in range(1, n + 1):
            nodes[f"r{i}c{j}"] = Leaf(payoff_vector(_example6_cell(i, j)))
    return GameTree(2, nodes, "r")


def example6_table(n: int) -> StrategicGame:
    """The same truncation as a flat two-player table (rows and columns
    are the strategies, as in the source game)."""
    if n < 2:
        raise ValueError("truncation needs size at least 2")
    table = [
        [_example6_cell(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)
    ]
    labels_r = [f"r{i}" for i in range(1, n + 1)]
    labels_c = [f"c{j}" for j in range(1, n + 1)]
    return StrategicGame.from_table(table, labels_r, labels_c)


def zs_depth2() -> GameTree:
    """Small zero-sum benchmark: three outcomes, solved in exactly two rounds."""
    nodes: dict[str, Node] = {
        "r": Internal(1, ("L", "m")),
        "L": Leaf(payoff_vector([3, -3])),
        "m": Internal(2, ("a", "b")),
        "a": Leaf(payoff_vector([1, -1])),
        "b": Leaf(payoff_vector([4, -4])),
    }
    return GameTree(2, nodes, "r")


def _grow_shape(rng: random.Random, spec: FamilySpec) -> GameTree:
    counter = 0

    def fresh() -> str:
        nonlocal counter
        counter += 1
        return f"n{counter}"

    nodes: dict[str, Node] = {}

    def build(depth: int) -> str:
        nid = fresh()
        leafy = depth <= 0 or (depth < spec.depth and rng.random() < 0.35)
        if leafy:
            nodes[nid] = Leaf(())
            return nid
        width = rng.randint(2, max(2, spec.branching))
        mover = rng.randint(1, spec.players)
        kids = tuple(build(depth - 1) for _ in range(width))
        nodes[nid] = Internal(mover, kids)
        return nid

    root = build(spec.depth)
    return GameTree(spec.players, nodes, root)


def _assign_payoffs(rng: random.Random, game: GameTree, spec: FamilySpec) -> GameTree:
    leaves = game.leaves()
    n = spec.players
    if spec.payoff_mode == "zero_sum":
        if n != 2:
            raise ValueError("zero-sum draws are two-player")
        vectors = []
        for _ in leaves:
            v = rng.randint(-2, 2)
            vectors.append((v, -v))
    elif spec.payoff_mode == "generic":
        pools = [rng.sample(range(-5 * len(leaves), 5 * len(leaves) + 1), len(leaves)) for _ in range(n)]
        vectors = [tuple(pool[k] for pool in pools) for k in range(len(leaves))]
    elif spec.payoff_mode == "tdi_pool":
        size = rng.randint(2, 4)
        coords = [rng.sample(range(-9, 10), size) for _ in range(n)]
        pool = [tuple(c[m] for c in coords) for m in range(size)]
        vectors = [pool[rng.randrange(size)] for _ in leaves]
    elif spec.payoff_mode == "arbitrary":
        vectors = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in leaves]
    else:
        raise ValueError(f"unknown payoff mode {spec.payoff_mode!r}")
    nodes = dict(game.nodes)
    for leaf, vec in zip(leaves, vectors):
        nodes[leaf] = Leaf(payoff_vector(vec))
    return GameTree(game.players, nodes, game.root)


def random_game(spec: FamilySpec) -> GameTree:
    """Seeded random game; the same spec always yields the same tree.

    The shape is resampled (from the same stream) until the joint
    strategy count fits ``spec.max_joint``, then payoffs are drawn
    according to ``spec.payoff_mode``: ``zero_sum`` negates player 1's
    payoff, ``generic`` draws per-player injective values, ``tdi_pool``
    draws leaf vectors from a pool that is pairwise distinct in every
    coordinate (so any single-coordinate tie forces identical vectors),
    ``arbitrary`` draws small independent integers.
    """
    if spec.payoff_mode not in PAYOFF_MODES:
        raise ValueError(f"unknown payoff mode {spec.payoff_mode!r}")
    if spec.depth < 1 or spec.branching < 2 or spec.players < 1:
        raise ValueError("need depth >= 1, branching >= 2, players >= 1")
    rng = random.Random(spec.seed)
    for _ in range(64):
        shape = _grow_shape(rng, spec)
        if shape.joint_strategy_count() <= spec.max_joint:
            return _assign_payoffs(rng, shape, spec)
    raise ValueError("could not fit the joint-strategy budget; lower depth or branching")


_PARAM_BUILDERS = {
    "centipede": centipede,
    "chooser_centipede": chooser_centipede,
    "ultimatum": ultimatum,
    "fig3": fig3,
    "example6": example6,
    "single": single_node,
}

_PLAIN_BUILDERS = {
    "fig1": fig1,
    "zs_depth2": zs_depth2,
}


def build(spec: FamilySpec) -> GameTree:
    """Construct the game a spec describes."""
    if spec.name in _PLAIN_BUILDERS:
        return _PLAIN_BUILDERS[spec.name]()
    if spec.name in _PARAM_BUILDERS:
        if spec.param is None:
            raise ValueError(f"family {spec.name!r} needs a parameter")
        return _PARAM_BUILDERS[spec.name](spec.param)
    if spec.name == "random":
        return random_game(spec)
    raise ValueError(f"unknown family {spec.name!r}")


def parse_gen_spec(text: str) -> FamilySpec:
    """Parse a CLI generator spec.

    Named families take one integer: ``centipede:2``, ``fig3:4``;
    ``fig1`` and ``zs_depth2`` take none.  The random family takes
    key=value pairs: ``random:mode=zero_sum,depth=3,branching=2,seed=7``.
    """
    name, _, rest = text.partition(":")
    if name in _PLAIN_BUILDERS:
        if rest:
            raise ValueError(f"family {name!r} takes no parameter")
        return FamilySpec(name)
    if name in _PARAM_BUILDERS:
        if not rest or not rest.lstrip("-").isdigit():
            raise ValueError(f"family {name!r} needs one integer parameter")
        return FamilySpec(name, param=int(rest))
    if name == "random":
        keys = {
            "mode": "payoff_mode",
            "depth": "depth",
            "branching": "branching",
            "seed": "seed",
            "players": "players",
            "max_joint": "max_joint",
        }
        kwargs: dict = {}
        if rest:
            for pair in rest.split(","):
                key, _, value = pair.partition("=")
                if key not in keys:
                    raise ValueError(f"unknown random-game key {key!r}")
                kwargs[keys[key]] = value if key == "mode" else int(value)
        return FamilySpec("random", **kwargs)
    raise ValueError(f"unknown family {name!r}")
