"""True proof/disproof numbers by minimal-assumption-set search.

The exact number of a target is the size of the smallest set of open leaves
below it whose assumed outcome (solved in proof mode, failed in disproof
mode, every other open leaf optimistic) forces the target's verdict. Subsets
are tried by increasing size and, within a size, lexicographically by node
id, so the returned witness is deterministic.

The subset search runs in a compiled kernel when the extension is built and
falls back to a bit-parallel pure-Python kernel otherwise. Set
``PNSDAG_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Optional

from . import _kernel_py
from .errors import AssumedNotLeaf, BudgetExceeded, UnknownNode
from .graph import AndOrDag, Kind, Status
from .recursive import INF

DEFAULT_LEAF_BUDGET = 22

try:
    if os.environ.get("PNSDAG_PURE"):
        raise ImportError("pure-Python kernel forced by PNSDAG_PURE")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_KERNELS = {
    "python": _kernel_py.min_witness,
    "python-enum": _kernel_py.min_witness_enum,
}
if _compiled is not None:
    _KERNELS["cython"] = _compiled.min_witness
    _KERNELS["cython-enum"] = _compiled.min_witness_enum


class Mode(enum.Enum):
    PROOF = "proof"
    DISPROOF = "disproof"


@dataclass(frozen=True)
class WitnessSet:
    leaves: frozenset
    mode: Mode

    def sorted(self) -> list[str]:
        return sorted(self.leaves)

    def __len__(self) -> int:
        return len(self.leaves)


def available_backends() -> list[str]:
    return list(_KERNELS)


def assume_eval(g: AndOrDag, assumed: Iterable[str], mode: Mode = Mode.PROOF) -> dict[str, bool]:
    """Boolean solvability of every node under an assumption on open leaves.

    Proof mode: assumed leaves are solved, other open leaves are not.
    Disproof mode: assumed leaves are failed, other open leaves are solved.
    """
    g.require_pure()
    mode = Mode(mode)
    assumed = set(assumed)
    for n in assumed:
        if n not in g or g.status(n) is not Status.OPEN_LEAF:
            raise AssumedNotLeaf(f"{n} is not an open leaf")
    val: dict[str, bool] = {}
    for n in g.topo_order():
        s = g.status(n)
        if s is Status.OPEN_LEAF:
            val[n] = (n in assumed) if mode is Mode.PROOF else (n not in assumed)
        elif s is Status.PROVEN:
            val[n] = True
        elif s is Status.DISPROVEN:
            val[n] = False
        elif g.kind(n) is Kind.OR:
            val[n] = any(val[c] for c in g.children(n))
        else:
            val[n] = all(val[c] for c in g.children(n))
    return val


def compile_subgraph(g: AndOrDag, target: str):
    """Flatten the descendants of ``target`` into kernel arrays.

    Returns ``(ops, args, offsets, kids, candidates)`` with candidates sorted
    by node id.
    """
    g.require_pure()
    if target not in g:
        raise UnknownNode(target)
    below = g.descendants(target)
    order = [n for n in g.topo_order() if n in below]
    pos = {n: i for i, n in enumerate(order)}
    candidates = sorted(n for n in order if g.status(n) is Status.OPEN_LEAF)
    cand_index = {n: i for i, n in enumerate(candidates)}
    ops, args, offsets, kids = [], [], [0], []
    for n in order:
        s = g.status(n)
        if s is Status.OPEN_LEAF:
            ops.append(_kernel_py.OP_LEAF)
            args.append(cand_index[n])
        elif s is Status.PROVEN:
            ops.append(_kernel_py.OP_TRUE)
            args.append(0)
        elif s is Status.DISPROVEN:
            ops.append(_kernel_py.OP_FALSE)
            args.append(0)
        else:
            ops.append(_kernel_py.OP_OR if g.kind(n) is Kind.OR else _kernel_py.OP_AND)
            args.append(0)
            kids.extend(pos[c] for c in g.children(n))
        offsets.append(len(kids))
    return ops, args, offsets, kids, candidates


def exact_number(
    g: AndOrDag,
    target: Optional[str] = None,
    mode: Mode = Mode.PROOF,
    leaf_budget: int = DEFAULT_LEAF_BUDGET,
    backend: Optional[str] = None,
):
    """Return ``(value, witness)``; ``(INF, None)`` if the target cannot be forced."""
    mode = Mode(mode)
    target = g.root if target is None else target
    ops, args, offsets, kids, candidates = compile_subgraph(g, target)
    if len(candidates) > leaf_budget:
        raise BudgetExceeded(
            f"{len(candidates)} open leaves below {target} exceed the budget of {leaf_budget}"
        )
    kernel = _KERNELS[backend or BACKEND]
    size, picked = kernel(ops, args, offsets, kids, len(candidates), mode is Mode.DISPROOF)
    if size < 0:
        return INF, None
    return size, WitnessSet(frozenset(candidates[i] for i in picked), mode)


def exact_proof_number(g, target=None, leaf_budget=DEFAULT_LEAF_BUDGET, backend=None):
    return exact_number(g, target, Mode.PROOF, leaf_budget, backend)


def exact_disproof_number(g, target=None, leaf_budget=DEFAULT_LEAF_BUDGET, backend=None):
    return exact_number(g, target, Mode.DISPROOF, leaf_budget, backend)


def witness_holds(g: AndOrDag, witness: WitnessSet, target: Optional[str] = None) -> bool:
    """True if assuming ``witness`` forces the target's verdict."""
    target = g.root if target is None else target
    val = assume_eval(g, witness.leaves, witness.mode)[target]
    return val if witness.mode is Mode.PROOF else not val


def witness_is_minimal(g: AndOrDag, witness: WitnessSet, target: Optional[str] = None) -> bool:
    """Holds, and dropping any single member breaks it."""
    if not witness_holds(g, witness, target):
        return False
    for leaf in witness.leaves:
        smaller = WitnessSet(witness.leaves - {leaf}, witness.mode)
        if witness_holds(g, smaller, target):
            return False
    return True
