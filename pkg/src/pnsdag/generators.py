"""Figure fixtures, the lattice families, random corpora and the Nim domain.

Random generators draw from ``random.Random(seed)`` (CPython's MT19937), so a
seed pins the output exactly.
"""

from __future__ import annotations

import random
from functools import reduce
from operator import xor

from .errors import EvenLayerCount, TooFewLayers, TooLarge, UnknownFixture
from .graph import AndOrDag, Kind, Status
from .pns import Expansion, Verdict
from .sat import CnfFormula

AND, OR, MIX = Kind.AND, Kind.OR, Kind.MIX
INTERNAL, LEAF = Status.INTERNAL, Status.OPEN_LEAF

_FIXTURES = {
    "fig1_left": (
        [("A", MIX, INTERNAL), ("B", OR, LEAF), ("C", OR, LEAF), ("D", OR, LEAF)],
        [("A", "B", AND), ("A", "C", AND), ("A", "D", OR)],
    ),
    "fig1_right": (
        [("A", OR, INTERNAL), ("A__and", AND, INTERNAL),
         ("B", OR, LEAF), ("C", OR, LEAF), ("D", OR, LEAF)],
        [("A", "A__and"), ("A", "D"), ("A__and", "B"), ("A__and", "C")],
    ),
    "fig2": (
        [("A", OR, INTERNAL), ("B", AND, INTERNAL), ("C", OR, INTERNAL),
         ("D", OR, LEAF), ("E", OR, LEAF), ("F", OR, LEAF)],
        [("A", "B"), ("A", "C"), ("B", "D"), ("B", "E"), ("C", "E"), ("C", "F")],
    ),
    "fig3": (
        [("A", OR, INTERNAL), ("B", AND, INTERNAL), ("C", AND, INTERNAL),
         ("D", OR, LEAF), ("E", OR, LEAF), ("F", OR, LEAF)],
        [("A", "B"), ("A", "C"), ("B", "D"), ("B", "E"), ("C", "E"), ("C", "F")],
    ),
}

FIXTURE_NAMES = tuple(_FIXTURES)


def fixture(name: str) -> AndOrDag:
    try:
        nodes, edges = _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(_FIXTURES)}") from None
    return AndOrDag(nodes, edges, "A")


def lattice(layers: int, bottom: Status = Status.OPEN_LEAF) -> AndOrDag:
    """All-AND diamond lattice; node ``L<i>_<j>`` is position j of layer i."""
    n = layers
    if n < 1 or n % 2 == 0:
        raise EvenLayerCount(f"lattice needs an odd positive layer count, got {n}")
    half = (n - 1) // 2
    width = [min(i, n - 1 - i) + 1 for i in range(n)]
    nodes = []
    edges = []
    for i in range(n):
        for j in range(width[i]):
            last = i == n - 1
            nodes.append((f"L{i}_{j}", AND, Status(bottom) if last else INTERNAL))
            if last:
                continue
            targets = (j, j + 1) if i < half else (j - 1, j)
            for t in targets:
                if 0 <= t < width[i + 1]:
                    edges.append((f"L{i}_{j}", f"L{i + 1}_{t}"))
    return AndOrDag(nodes, edges, "L0_0")


def comb_lattice(layers: int, bottom: Status = Status.OPEN_LEAF) -> AndOrDag:
    """All-AND layers of sizes 1, 2, ..., n-1, 1, fully connected layer to layer."""
    n = layers
    if n < 2:
        raise TooFewLayers(f"combinatorial lattice needs at least 2 layers, got {n}")
    sizes = list(range(1, n)) + [1]
    nodes = []
    edges = []
    for i, size in enumerate(sizes):
        last = i == len(sizes) - 1
        for j in range(size):
            nodes.append((f"K{i}_{j}", AND, Status(bottom) if last else INTERNAL))
            if not last:
                edges.extend((f"K{i}_{j}", f"K{i + 1}_{t}") for t in range(sizes[i + 1]))
    return AndOrDag(nodes, edges, "K0_0")


# -- random corpora ---------------------------------------------------------

def _leaf_status(rng: random.Random, terminal_fraction: float) -> Status:
    if rng.random() < terminal_fraction:
        return Status.PROVEN if rng.random() < 0.5 else Status.DISPROVEN
    return Status.OPEN_LEAF


def random_dag(seed, max_nodes: int, leaf_fraction: float = 0.4, kind_mix: float = 0.5,
               terminal_fraction: float = 0.15, max_children: int = 3) -> AndOrDag:
    """Random connected pure DAG with between 1 and ``max_nodes`` nodes.

    Node ``N0`` is the root; internal nodes come first and point only forward,
    so the index order is topological. ``kind_mix`` is the chance a node is AND.
    """
    rng = random.Random(seed)
    n = rng.randint(1, max_nodes)
    n_leaves = min(n, max(1, round(leaf_fraction * n)))
    if n > 1:
        n_leaves = min(n_leaves, n - 1)
    n_internal = n - n_leaves
    kinds = [AND if rng.random() < kind_mix else OR for _ in range(n)]
    children: list[list[int]] = [[] for _ in range(n)]
    has_parent = [False] * n
    for i in range(n_internal):
        later = list(range(i + 1, n))
        for c in rng.sample(later, min(len(later), rng.randint(1, max_children))):
            children[i].append(c)
            has_parent[c] = True
    for c in range(1, n):
        if not has_parent[c]:
            p = rng.randrange(min(c, n_internal))
            children[p].append(c)
    nodes = []
    for i in range(n):
        status = INTERNAL if i < n_internal else _leaf_status(rng, terminal_fraction)
        nodes.append((f"N{i}", kinds[i], status))
    edges = [(f"N{p}", f"N{c}") for p in range(n) for c in children[p]]
    return AndOrDag(nodes, edges, "N0")


def random_tree(seed, max_nodes: int, kind_mix: float = 0.5,
                terminal_fraction: float = 0.15) -> AndOrDag:
    """Random tree with between 1 and ``max_nodes`` nodes; every non-root node has one parent."""
    rng = random.Random(seed)
    n = rng.randint(1, max_nodes)
    parent = [None] + [rng.randrange(i) for i in range(1, n)]
    has_child = [False] * n
    for p in parent[1:]:
        has_child[p] = True
    nodes = []
    for i in range(n):
        kind = AND if rng.random() < kind_mix else OR
        status = INTERNAL if has_child[i] else _leaf_status(rng, terminal_fraction)
        nodes.append((f"N{i}", kind, status))
    edges = [(f"N{parent[i]}", f"N{i}") for i in range(1, n)]
    return AndOrDag(nodes, edges, "N0")


def random_cnf(seed, n: int, k: int, clause_len: int = 3) -> CnfFormula:
    """k clauses over n variables, each with ``clause_len`` distinct variables."""
    rng = random.Random(seed)
    width = min(clause_len, n)
    clauses = []
    for _ in range(k):
        vars_ = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula(n, tuple(clauses))


# -- Nim --------------------------------------------------------------------

NIM_MAX_STONES = 20


class NimProblem:
    """Normal-play Nim; the first player is the OR side.

    A state key is ``(piles, mover)``: the sorted non-empty piles and 0/1 for
    whose turn it is. A player with no move loses.
    """

    def __init__(self, piles):
        piles = [int(p) for p in piles]
        if not piles or any(p < 0 for p in piles):
            raise ValueError("piles must be a nonempty list of non-negative counts")
        if sum(piles) > NIM_MAX_STONES:
            raise TooLarge(f"{sum(piles)} stones exceeds {NIM_MAX_STONES}")
        self.piles = piles

    def root(self):
        return (tuple(sorted(p for p in self.piles if p)), 0)

    def expand(self, key) -> Expansion:
        piles, mover = key
        kind = OR if mover == 0 else AND
        if not piles:
            return Expansion(kind, Verdict.DISPROVEN if mover == 0 else Verdict.PROVEN)
        child_kind = AND if mover == 0 else OR
        seen = {}
        for i, pile in enumerate(piles):
            for take in range(1, pile + 1):
                rest = list(piles[:i]) + [pile - take] + list(piles[i + 1:])
                child = (tuple(sorted(p for p in rest if p)), 1 - mover)
                seen.setdefault(child, child_kind)
        return Expansion(kind, Verdict.NON_TERMINAL, tuple(seen.items()))

    @staticmethod
    def node_id(key) -> str:
        piles, mover = key
        return "s" + "_".join(map(str, piles)) + f"m{mover}"

    def first_player_wins(self) -> bool:
        return reduce(xor, self.piles, 0) != 0


def nim_problem(piles) -> NimProblem:
    return NimProblem(piles)
