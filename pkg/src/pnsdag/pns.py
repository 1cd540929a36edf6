"""Best-first proof-number search over an implicit AND/OR problem.

A problem is any object with ``root()`` and ``expand(key) -> Expansion``.
Keys must be hashable; equal keys are the same state. In ``dag`` mode equal
keys share one record (a transposition table); in ``tree`` mode every path
gets its own records.

Backup in dag mode only walks the current selection path, so parents reached
through other paths can hold stale pairs until they are visited again. When
selection walks into a node that is already solved it stops there and the
path is backed up without expanding anything.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Optional, Protocol

from .errors import (
    AssumedNotLeaf,
    ExpanderContractViolation,
    RootAlreadySolved,
    UnknownNode,
)
from .graph import AndOrDag, Kind, Status
from .recursive import INF, PnPair, combine


class Verdict(enum.Enum):
    NON_TERMINAL = "nonterminal"
    PROVEN = "proven"
    DISPROVEN = "disproven"


class SearchMode(enum.Enum):
    TREE = "tree"
    DAG = "dag"


class Result(enum.Enum):
    PROVEN = "proven"
    DISPROVEN = "disproven"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Expansion:
    kind: Kind
    verdict: Verdict
    children: tuple = ()  # of (key, Kind)


class ProblemExpander(Protocol):
    def root(self) -> Hashable: ...

    def expand(self, key: Hashable) -> Expansion: ...


@dataclass
class SearchOutcome:
    verdict: Result
    expansions: int
    stored_nodes: int


class SearchNode:
    __slots__ = ("key", "kind", "pair", "children", "expanded")

    def __init__(self, key, kind: Kind, pair: PnPair):
        self.key = key
        self.kind = kind
        self.pair = pair
        self.children: list[SearchNode] = []
        self.expanded = False

    @property
    def solved(self) -> bool:
        return self.pair.p == 0 or self.pair.d == 0

    def __repr__(self):
        return f"SearchNode({self.key!r}, {self.kind.value}, {tuple(self.pair)})"


_TERMINAL_PAIRS = {
    Verdict.PROVEN: PnPair(0, INF),
    Verdict.DISPROVEN: PnPair(INF, 0),
    Verdict.NON_TERMINAL: PnPair(1, 1),
}


class SearchTree:
    """Mutable search state: records, transposition table, counters."""

    def __init__(self, problem: ProblemExpander, mode: SearchMode = SearchMode.DAG):
        self.problem = problem
        self.mode = SearchMode(mode)
        self.expansions = 0
        self.stored_nodes = 0
        self._cache: dict = {}
        self._table: dict = {}
        root_key = problem.root()
        self.root = self._new_node(root_key, None)

    def _expansion(self, key) -> Expansion:
        exp = self.problem.expand(key)
        exp = Expansion(exp.kind, Verdict(exp.verdict), tuple(exp.children))
        cached = self._cache.get(key)
        if cached is None:
            self._cache[key] = exp
        elif cached != exp:
            raise ExpanderContractViolation(f"expander returned different results for {key!r}")
        return exp

    def _new_node(self, key, listed_kind: Optional[Kind]) -> SearchNode:
        exp = self._expansion(key)
        if listed_kind is not None and Kind(listed_kind) is not exp.kind:
            raise ExpanderContractViolation(
                f"{key!r} listed as {Kind(listed_kind).value} but expands as {exp.kind.value}"
            )
        node = SearchNode(key, exp.kind, _TERMINAL_PAIRS[exp.verdict])
        self.stored_nodes += 1
        if self.mode is SearchMode.DAG:
            self._table[key] = node
        return node

    def lookup(self, key) -> Optional[SearchNode]:
        """Stored record for ``key`` (dag mode only)."""
        return self._table.get(key)

    def expand(self, node: SearchNode, path_keys: set) -> None:
        exp = self._cache[node.key]
        if exp.verdict is not Verdict.NON_TERMINAL:
            raise ExpanderContractViolation(f"{node.key!r} is terminal and cannot be expanded")
        if not exp.children:
            raise ExpanderContractViolation(f"non-terminal {node.key!r} has no children")
        seen = set()
        for key, kind in exp.children:
            if key in seen:
                continue
            seen.add(key)
            if key in path_keys:
                raise ExpanderContractViolation(f"cycle: {key!r} repeats on the current path")
            child = self._table.get(key) if self.mode is SearchMode.DAG else None
            if child is None:
                child = self._new_node(key, kind)
            node.children.append(child)
        node.expanded = True
        self.expansions += 1


def _best_child(node: SearchNode) -> SearchNode:
    if node.kind is Kind.OR:
        return min(node.children, key=lambda c: c.pair.p)
    return min(node.children, key=lambda c: c.pair.d)


def select_most_proving(tree: SearchTree) -> list[SearchNode]:
    """Walk from the root taking min-p children at OR nodes and min-d at AND nodes.

    ``min`` keeps the first of equal children, so ties go to child order.
    """
    node = tree.root
    if node.solved:
        raise RootAlreadySolved(f"root is already {tree_result(tree).value}")
    path = [node]
    keys = {node.key}
    while node.expanded and not node.solved:
        node = _best_child(node)
        if node.key in keys:
            raise ExpanderContractViolation(f"cycle: {node.key!r} repeats on the selection path")
        keys.add(node.key)
        path.append(node)
    return path


def expand_and_backup(tree: SearchTree, path: list[SearchNode], problem=None) -> SearchTree:
    """Expand the path's end (if still open) and recompute pairs up to the root."""
    if problem is not None and problem is not tree.problem:
        raise ValueError("problem does not belong to this search tree")
    leaf = path[-1]
    if not leaf.expanded and not leaf.solved:
        tree.expand(leaf, {n.key for n in path})
    for node in reversed(path):
        if node.expanded:
            node.pair = combine(node.kind, (c.pair for c in node.children))
    return tree


def path_consistent(path: list[SearchNode]) -> bool:
    """Every expanded node on ``path`` agrees with the rule applied to its children."""
    return all(
        node.pair == combine(node.kind, (c.pair for c in node.children))
        for node in path
        if node.expanded
    )


def tree_result(tree: SearchTree) -> Result:
    p, d = tree.root.pair
    if p == 0:
        return Result.PROVEN
    if d == 0:
        return Result.DISPROVEN
    return Result.UNKNOWN


def run(
    problem: ProblemExpander,
    mode: SearchMode = SearchMode.DAG,
    max_expansions: int = 1_000_000,
    check: bool = False,
) -> SearchOutcome:
    """Search until the root is solved or ``max_expansions`` expansions are spent.

    With ``check=True`` each iteration asserts path consistency (slow).
    """
    if max_expansions < 1:
        raise ValueError("max_expansions must be at least 1")
    tree = SearchTree(problem, mode)
    while not tree.root.solved and tree.expansions < max_expansions:
        path = select_most_proving(tree)
        expand_and_backup(tree, path)
        if check and not path_consistent(path):
            raise AssertionError("backup left an inconsistent path")
    return SearchOutcome(tree_result(tree), tree.expansions, tree.stored_nodes)


# -- problems backed by stored graphs ---------------------------------------

class GraphProblem:
    """Expander over a stored pure graph; open leaves report ``resolution``."""

    def __init__(self, g: AndOrDag, resolution: Optional[Mapping[str, object]] = None):
        g.require_pure()
        self.graph = g
        self.resolution: dict[str, Verdict] = {}
        for n, v in (resolution or {}).items():
            if n not in g:
                raise UnknownNode(n)
            if g.status(n) is not Status.OPEN_LEAF:
                raise AssumedNotLeaf(f"{n} is not an open leaf")
            self.resolution[n] = Verdict(v.value if isinstance(v, (Status, Verdict)) else v)

    def root(self):
        return self.graph.root

    def expand(self, key) -> Expansion:
        g = self.graph
        s = g.status(key)
        if s is Status.PROVEN:
            return Expansion(g.kind(key), Verdict.PROVEN)
        if s is Status.DISPROVEN:
            return Expansion(g.kind(key), Verdict.DISPROVEN)
        if s is Status.OPEN_LEAF:
            return Expansion(g.kind(key), self.resolution.get(key, Verdict.NON_TERMINAL))
        return Expansion(g.kind(key), Verdict.NON_TERMINAL, tuple((c, g.kind(c)) for c in g.children(key)))


def graph_as_problem(g: AndOrDag, resolution: Optional[Mapping[str, object]] = None) -> GraphProblem:
    return GraphProblem(g, resolution)


def materialize(problem: ProblemExpander, node_id: Callable[[Hashable], str] = str) -> AndOrDag:
    """Explore the full state DAG of ``problem`` into a stored graph."""
    ids: dict = {}
    nodes = []
    edges = []
    stack = [problem.root()]
    order = []
    while stack:
        key = stack.pop()
        if key in ids:
            continue
        ids[key] = node_id(key)
        order.append(key)
        exp = problem.expand(key)
        verdict = Verdict(exp.verdict)
        if verdict is Verdict.PROVEN:
            status = Status.PROVEN
        elif verdict is Verdict.DISPROVEN:
            status = Status.DISPROVEN
        elif exp.children:
            status = Status.INTERNAL
        else:
            status = Status.OPEN_LEAF
        nodes.append((ids[key], exp.kind, status))
        if status is Status.INTERNAL:
            kids = list(dict.fromkeys(k for k, _ in exp.children))
            edges.extend((key, k) for k in kids)
            stack.extend(reversed(kids))
    return AndOrDag(nodes, [(ids[p], ids[c]) for p, c in edges], ids[problem.root()])
