"""Recursive (tree-style) proof/disproof numbers evaluated over a DAG.

Values are plain ints with ``INF`` (``math.inf``) standing in for infinity.
Finite values are capped at ``MAX_PN``; exceeding it raises rather than wraps.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple

from .errors import ArithmeticOverflow, NotAlternating, NotPure
from .graph import AndOrDag, Kind, Status

INF = math.inf
MAX_PN = 2**63 - 1


class PnPair(NamedTuple):
    p: float
    d: float


class PhiDeltaPair(NamedTuple):
    phi: float
    delta: float


def pn_sum(values: Iterable) -> float:
    total = 0
    for v in values:
        if v == INF:
            return INF
        total += v
        if total > MAX_PN:
            raise ArithmeticOverflow(f"proof-number sum exceeds {MAX_PN}")
    return total


def pn_min(values: Iterable) -> float:
    return min(values, default=INF)


def format_pn(v) -> str:
    return "inf" if v == INF else str(int(v))


def _leaf_pair(status: Status) -> PnPair:
    if status is Status.OPEN_LEAF:
        return PnPair(1, 1)
    if status is Status.PROVEN:
        return PnPair(0, INF)
    return PnPair(INF, 0)


def combine(kind: Kind, pairs: Iterable[PnPair]) -> PnPair:
    """One step of the bottom-up rule for an internal node."""
    pairs = list(pairs)
    if kind is Kind.OR:
        return PnPair(pn_min(c.p for c in pairs), pn_sum(c.d for c in pairs))
    if kind is Kind.AND:
        return PnPair(pn_sum(c.p for c in pairs), pn_min(c.d for c in pairs))
    raise NotPure("cannot evaluate a MIX node; normalize first")


def eval_pd(g: AndOrDag) -> dict[str, PnPair]:
    """Memoized bottom-up (p, d) for every node. Shared leaves are counted once per path."""
    g.require_pure()
    out: dict[str, PnPair] = {}
    for n in g.topo_order():
        s = g.status(n)
        if s.is_leaf:
            out[n] = _leaf_pair(s)
        else:
            out[n] = combine(g.kind(n), (out[c] for c in g.children(n)))
    return out


def mover_sides(g: AndOrDag) -> dict[str, Kind]:
    """Which side moves at each node of an alternating DAG.

    Internal nodes move for their own kind. A leaf takes the side opposite to
    its parents; a parentless leaf (the root) is an OR-side node. Raises
    NotAlternating if the layering is violated, or if a terminal leaf is
    reached from both sides (its win/loss would be ambiguous).
    """
    g.require_pure()
    parents = g.parents()
    side: dict[str, Kind] = {}
    for n in g.nodes:
        if not g.status(n).is_leaf:
            side[n] = g.kind(n)
            for c in g.children(n):
                if not g.status(c).is_leaf and g.kind(c) is g.kind(n):
                    raise NotAlternating(f"{n} and its child {c} are both {g.kind(n).value}")
    for n in g.nodes:
        if not g.status(n).is_leaf:
            continue
        parent_kinds = {g.kind(p) for p in parents[n]}
        if not parent_kinds:
            side[n] = Kind.OR
        elif len(parent_kinds) == 1:
            side[n] = parent_kinds.pop().flipped()
        elif g.status(n).is_terminal:
            raise NotAlternating(f"terminal {n} is reached from both AND and OR parents")
        else:
            side[n] = Kind.OR
    return side


def eval_phi_delta(g: AndOrDag) -> dict[str, PhiDeltaPair]:
    """Kind-free (phi, delta) from the mover's perspective.

    phi = min of children's delta, delta = sum of children's phi. A proven
    terminal is a win for an OR-side mover and a loss for an AND-side mover.
    """
    side = mover_sides(g)
    out: dict[str, PhiDeltaPair] = {}
    for n in g.topo_order():
        s = g.status(n)
        if s is Status.OPEN_LEAF:
            out[n] = PhiDeltaPair(1, 1)
        elif s.is_terminal:
            win = (s is Status.PROVEN) == (side[n] is Kind.OR)
            out[n] = PhiDeltaPair(0, INF) if win else PhiDeltaPair(INF, 0)
        else:
            kids = [out[c] for c in g.children(n)]
            out[n] = PhiDeltaPair(pn_min(c.delta for c in kids), pn_sum(c.phi for c in kids))
    return out


def map_phi_delta_to_pd(g: AndOrDag, pd: dict[str, PhiDeltaPair]) -> dict[str, PnPair]:
    side = mover_sides(g)
    return {
        n: PnPair(v.phi, v.delta) if side[n] is Kind.OR else PnPair(v.delta, v.phi)
        for n, v in pd.items()
    }
