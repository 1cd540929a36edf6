"""AND/OR DAG model, the line-based text format, and structural transforms."""

from __future__ import annotations

import enum
import re
from typing import Iterable, Mapping, Optional

from .errors import (
    CycleDetected,
    DuplicateEdge,
    DuplicateNode,
    GraphFormatError,
    InternalWithoutChildren,
    LeafWithChildren,
    MissingRoot,
    MixWithoutEdgeLabels,
    NotPure,
    UnknownNode,
)

FRESH_AND_SUFFIX = "__and"
HEADER = "andor v1"

_ID_RE = re.compile(r"^[A-Za-z0-9_]+$")


class Kind(enum.Enum):
    AND = "AND"
    OR = "OR"
    MIX = "MIX"

    def flipped(self) -> "Kind":
        if self is Kind.AND:
            return Kind.OR
        if self is Kind.OR:
            return Kind.AND
        raise NotPure("MIX has no dual kind")


class Status(enum.Enum):
    INTERNAL = "open"
    OPEN_LEAF = "leaf"
    PROVEN = "proven"
    DISPROVEN = "disproven"

    @property
    def is_leaf(self) -> bool:
        return self is not Status.INTERNAL

    @property
    def is_terminal(self) -> bool:
        return self is Status.PROVEN or self is Status.DISPROVEN


_SWAP_TERMINAL = {
    Status.INTERNAL: Status.INTERNAL,
    Status.OPEN_LEAF: Status.OPEN_LEAF,
    Status.PROVEN: Status.DISPROVEN,
    Status.DISPROVEN: Status.PROVEN,
}


def check_id(node_id: str, allow_reserved: bool = False) -> None:
    if not isinstance(node_id, str) or not _ID_RE.match(node_id):
        raise GraphFormatError(f"invalid node id {node_id!r}")
    if "__" in node_id:
        # the only permitted use of "__" is the suffix normalize_mixed emits
        base = node_id[: -len(FRESH_AND_SUFFIX)]
        ok = (
            allow_reserved
            and node_id.endswith(FRESH_AND_SUFFIX)
            and base
            and "__" not in base
            and not base.endswith("_")
        )
        if not ok:
            raise GraphFormatError(f"node id {node_id!r} uses reserved '__'")


class AndOrDag:
    """Immutable AND/OR DAG.

    ``nodes`` is an iterable of ``(id, kind, status)`` and ``edges`` of
    ``(parent, child)`` or ``(parent, child, label)``. Child order follows edge
    order. All structural invariants are checked here, so any instance is valid.
    """

    __slots__ = ("_kind", "_status", "_children", "_labels", "_root", "_topo", "_hash")

    def __init__(
        self,
        nodes: Iterable[tuple],
        edges: Iterable[tuple],
        root: Optional[str],
        *,
        allow_reserved: bool = True,
    ):
        kind: dict[str, Kind] = {}
        status: dict[str, Status] = {}
        for node_id, k, s in nodes:
            check_id(node_id, allow_reserved)
            if node_id in kind:
                raise DuplicateNode(f"node {node_id} declared twice")
            kind[node_id] = Kind(k)
            status[node_id] = Status(s)

        children: dict[str, list[str]] = {n: [] for n in kind}
        labels: dict[str, list[Optional[Kind]]] = {n: [] for n in kind}
        seen = set()
        for edge in edges:
            if len(edge) == 2:
                parent, child = edge
                label = None
            else:
                parent, child, label = edge
                label = None if label is None else Kind(label)
            for end in (parent, child):
                if end not in kind:
                    raise UnknownNode(f"edge {parent}->{child} references undeclared node {end}")
            if (parent, child) in seen:
                raise DuplicateEdge(f"edge {parent}->{child} declared twice")
            seen.add((parent, child))
            if label is Kind.MIX:
                raise GraphFormatError(f"edge {parent}->{child}: label must be AND or OR")
            if label is not None and kind[parent] is not Kind.MIX:
                raise GraphFormatError(
                    f"edge {parent}->{child}: label only allowed when parent is MIX"
                )
            if label is None and kind[parent] is Kind.MIX:
                raise MixWithoutEdgeLabels(f"edge {parent}->{child} from MIX node needs a label")
            children[parent].append(child)
            labels[parent].append(label)

        if root is None:
            raise MissingRoot("graph has no root")
        if root not in kind:
            raise UnknownNode(f"root {root} is not a declared node")

        for n in kind:
            if status[n].is_leaf and children[n]:
                raise LeafWithChildren(f"leaf node {n} has children")
            if status[n] is Status.INTERNAL and not children[n]:
                raise InternalWithoutChildren(f"internal node {n} has no children")

        self._kind = kind
        self._status = status
        self._children = {n: tuple(c) for n, c in children.items()}
        self._labels = {n: tuple(l) for n, l in labels.items()}
        self._root = root
        self._hash = None
        self._topo = _kahn(list(kind), self._children)

    # -- accessors --------------------------------------------------------

    @property
    def root(self) -> str:
        return self._root

    @property
    def nodes(self) -> tuple[str, ...]:
        """Node ids in declaration order."""
        return tuple(self._kind)

    def __len__(self) -> int:
        return len(self._kind)

    def __contains__(self, node_id) -> bool:
        return node_id in self._kind

    def kind(self, node_id: str) -> Kind:
        return self._kind[node_id]

    def status(self, node_id: str) -> Status:
        return self._status[node_id]

    def children(self, node_id: str) -> tuple[str, ...]:
        return self._children[node_id]

    def edge_labels(self, node_id: str) -> tuple[Optional[Kind], ...]:
        return self._labels[node_id]

    def edges(self):
        for n in self._kind:
            for c, lab in zip(self._children[n], self._labels[n]):
                yield n, c, lab

    @property
    def num_edges(self) -> int:
        return sum(len(c) for c in self._children.values())

    @property
    def is_pure(self) -> bool:
        return all(k is not Kind.MIX for k in self._kind.values())

    def parents(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {n: [] for n in self._kind}
        for p, c, _ in self.edges():
            out[c].append(p)
        return out

    def open_leaves(self) -> list[str]:
        return [n for n in self._kind if self._status[n] is Status.OPEN_LEAF]

    def descendants(self, node_id: str) -> set[str]:
        """Nodes reachable from ``node_id``, itself included."""
        if node_id not in self._kind:
            raise UnknownNode(node_id)
        seen = {node_id}
        stack = [node_id]
        while stack:
            for c in self._children[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return seen

    def topo_order(self) -> list[str]:
        return list(self._topo)

    def require_pure(self) -> None:
        if not self.is_pure:
            mixed = [n for n, k in self._kind.items() if k is Kind.MIX]
            raise NotPure(f"graph contains MIX nodes: {', '.join(mixed)}")

    def with_statuses(self, changes: Mapping[str, Status]) -> "AndOrDag":
        """Copy with some leaf statuses replaced (leaf -> leaf only)."""
        for n, s in changes.items():
            if n not in self._kind:
                raise UnknownNode(n)
            if not self._status[n].is_leaf or not Status(s).is_leaf:
                raise LeafWithChildren(f"cannot change status of {n} to {s}")
        nodes = [(n, self._kind[n], Status(changes.get(n, self._status[n]))) for n in self._kind]
        return AndOrDag(nodes, list(self.edges()), self._root)

    # -- equality ---------------------------------------------------------

    def _key(self):
        return (self._root, self._kind, self._status, self._children, self._labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AndOrDag):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(serialize_graph(self))
        return self._hash

    def __repr__(self) -> str:
        return f"AndOrDag(root={self._root!r}, nodes={len(self)}, edges={self.num_edges})"


def _kahn(order: list[str], children: Mapping[str, tuple[str, ...]]) -> list[str]:
    # children-first Kahn in rounds; declaration order within a round
    index = {n: i for i, n in enumerate(order)}
    remaining = {n: len(set(children[n])) for n in order}
    parents: dict[str, list[str]] = {n: [] for n in order}
    for n in order:
        for c in children[n]:
            parents[c].append(n)
    ready = [n for n in order if remaining[n] == 0]
    out = []
    while ready:
        out.extend(ready)
        nxt = []
        for n in ready:
            for p in parents[n]:
                remaining[p] -= 1
                if remaining[p] == 0:
                    nxt.append(p)
        ready = sorted(nxt, key=index.__getitem__)
    if len(out) != len(order):
        stuck = sorted(set(order) - set(out), key=index.__getitem__)
        raise CycleDetected(f"cycle through nodes: {', '.join(stuck)}")
    return out


def topo_order(g: AndOrDag) -> list[str]:
    """Children before parents; ties broken by declaration order."""
    return g.topo_order()


# -- text format ------------------------------------------------------------

def parse_graph(text: str) -> AndOrDag:
    lines = text.splitlines()
    nodes = []
    edges = []
    root = None
    header_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if not header_seen:
            if parts != ["andor", "v1"]:
                raise GraphFormatError(f"line {lineno}: expected header '{HEADER}'")
            header_seen = True
            continue
        word = parts[0]
        try:
            if word == "node" and len(parts) == 4:
                check_id(parts[1], allow_reserved=True)
                nodes.append((parts[1], Kind(parts[2]), Status(parts[3])))
            elif word == "edge" and len(parts) in (3, 4):
                label = Kind(parts[3]) if len(parts) == 4 else None
                edges.append((parts[1], parts[2], label))
            elif word == "root" and len(parts) == 2:
                if root is not None:
                    raise GraphFormatError(f"line {lineno}: root declared twice")
                root = parts[1]
            else:
                raise GraphFormatError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if not header_seen:
        raise GraphFormatError(f"missing header '{HEADER}'")
    return AndOrDag(nodes, edges, root)


def serialize_graph(g: AndOrDag) -> str:
    out = [HEADER]
    for n in g.nodes:
        out.append(f"node {n} {g.kind(n).value} {g.status(n).value}")
    for p, c, lab in g.edges():
        out.append(f"edge {p} {c}" if lab is None else f"edge {p} {c} {lab.value}")
    out.append(f"root {g.root}")
    return "\n".join(out) + "\n"


# -- transforms -------------------------------------------------------------

def normalize_mixed(g: AndOrDag) -> AndOrDag:
    """Split every MIX node into an OR node plus one fresh AND node.

    The fresh node takes the AND-labeled children and sits in the OR node's
    child list where the first AND-labeled edge was. A MIX node whose edges
    are all AND-labeled simply becomes an AND node.
    """
    if g.is_pure:
        return g
    nodes = []
    edges = []
    for n in g.nodes:
        k, s = g.kind(n), g.status(n)
        if k is not Kind.MIX:
            nodes.append((n, k, s))
            continue
        kids, labels = g.children(n), g.edge_labels(n)
        if any(lab is None for lab in labels):
            raise MixWithoutEdgeLabels(f"MIX node {n} has unlabeled edges")
        if all(lab is Kind.AND for lab in labels):
            nodes.append((n, Kind.AND, s))
            continue
        and_kids = [c for c, lab in zip(kids, labels) if lab is Kind.AND]
        nodes.append((n, Kind.OR, s))
        if and_kids:
            fresh = n + FRESH_AND_SUFFIX
            if fresh in g:
                raise DuplicateNode(f"fresh node id {fresh} already in use")
            nodes.append((fresh, Kind.AND, Status.INTERNAL))
            edges.extend((fresh, c) for c in and_kids)
    new_children = {}
    for n in g.nodes:
        if g.kind(n) is not Kind.MIX or all(lab is Kind.AND for lab in g.edge_labels(n)):
            new_children[n] = list(g.children(n))
            continue
        row = []
        placed = False
        for c, lab in zip(g.children(n), g.edge_labels(n)):
            if lab is Kind.OR:
                row.append(c)
            elif not placed:
                row.append(n + FRESH_AND_SUFFIX)
                placed = True
        new_children[n] = row
    for n in g.nodes:
        edges.extend((n, c) for c in new_children[n])
    return AndOrDag(nodes, edges, g.root)


def revert(g: AndOrDag) -> AndOrDag:
    """Swap AND/OR kinds and proven/disproven terminals; structure unchanged."""
    g.require_pure()
    nodes = [(n, g.kind(n).flipped(), _SWAP_TERMINAL[g.status(n)]) for n in g.nodes]
    return AndOrDag(nodes, [(p, c) for p, c, _ in g.edges()], g.root)
