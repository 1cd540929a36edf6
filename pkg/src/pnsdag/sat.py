"""CNF formulas, the CNF -> AND/OR DAG reduction, and its brute-force check.

The reduction builds an AND root ``P`` over one OR node per clause (``C1``..)
and one OR node per variable (``X1``..). Each ``Xj`` has the two literal
leaves ``Txj`` / ``Fxj``; each clause node points at the same literal leaves
its literals name, so literal leaves are shared. Picking one literal per
variable costs exactly n leaves, and such a pick also covers every clause
iff it is a satisfying assignment. Hence the true proof number of ``P`` is n
exactly when the formula is satisfiable.

The reverted graph (kinds and terminals swapped) is the disproof-side
construction. Its true disproof number equals the primal true proof number
by duality. Note the standard semantics: disproving the reverted OR root
needs every child disproved, not just one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    ClauseCountMismatch,
    MissingHeader,
    TooManyVariables,
    TrailingGarbage,
    VariableOutOfRange,
)
from .graph import AndOrDag, Kind, Status, revert
from .oracle import DEFAULT_LEAF_BUDGET, WitnessSet, exact_proof_number
from .recursive import INF

BRUTE_FORCE_MAX_VARS = 25


@dataclass(frozen=True)
class CnfFormula:
    """``clauses`` hold DIMACS-style signed ints: ``3`` is x3, ``-3`` is not x3."""

    num_vars: int
    clauses: tuple = ()

    def __post_init__(self):
        cleaned = []
        for clause in self.clauses:
            lits = tuple(dict.fromkeys(int(l) for l in clause))
            for lit in lits:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise VariableOutOfRange(
                        f"literal {lit} outside variables 1..{self.num_vars}"
                    )
            cleaned.append(lits)
        object.__setattr__(self, "clauses", tuple(cleaned))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment) -> bool:
        """``assignment[j-1]`` is the truth value of x_j."""
        return all(
            any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in clause)
            for clause in self.clauses
        )

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(str(l) for l in clause + (0,)) for clause in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise TrailingGarbage(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise MissingHeader(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise MissingHeader(f"line {lineno}: non-integer counts in problem line") from None
            if header[0] < 0 or header[1] < 0:
                raise MissingHeader(f"line {lineno}: negative counts in problem line")
            continue
        if header is None:
            raise MissingHeader(f"line {lineno}: clause data before 'p cnf' line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise TrailingGarbage(f"line {lineno}: unexpected token {tok!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
                continue
            if abs(lit) > header[0]:
                raise VariableOutOfRange(f"line {lineno}: literal {lit} but only {header[0]} variables")
            current.append(lit)
    if header is None:
        raise MissingHeader("no 'p cnf' line")
    if current:
        raise TrailingGarbage(f"clause {' '.join(map(str, current))} is not terminated by 0")
    if len(clauses) != header[1]:
        raise ClauseCountMismatch(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(tuple(c) for c in clauses))


def literal_node(lit: int) -> str:
    return f"Tx{lit}" if lit > 0 else f"Fx{-lit}"


def reduce_cnf(f: CnfFormula) -> AndOrDag:
    n, k = f.num_vars, f.num_clauses
    nodes = [("P", Kind.AND, Status.INTERNAL)]
    edges = []
    for i, clause in enumerate(f.clauses, 1):
        # an empty disjunction is false
        nodes.append((f"C{i}", Kind.OR, Status.INTERNAL if clause else Status.DISPROVEN))
        edges.append(("P", f"C{i}"))
    for j in range(1, n + 1):
        nodes.append((f"X{j}", Kind.OR, Status.INTERNAL))
        edges.append(("P", f"X{j}"))
    for j in range(1, n + 1):
        nodes.append((f"Tx{j}", Kind.OR, Status.OPEN_LEAF))
        nodes.append((f"Fx{j}", Kind.OR, Status.OPEN_LEAF))
    for i, clause in enumerate(f.clauses, 1):
        edges.extend((f"C{i}", literal_node(lit)) for lit in clause)
    for j in range(1, n + 1):
        edges.append((f"X{j}", f"Tx{j}"))
        edges.append((f"X{j}", f"Fx{j}"))
    if n == 0 and k == 0:
        # nothing to attach: an AND over nothing is true
        return AndOrDag([("P", Kind.AND, Status.PROVEN)], [], "P")
    return AndOrDag(nodes, edges, "P")


def reduce_cnf_dual(f: CnfFormula) -> AndOrDag:
    return revert(reduce_cnf(f))


def sat_brute_force(f: CnfFormula):
    """Try assignments in order FF..F, FF..T, ... (x1 most significant).

    Returns ``(True, assignment)`` with a tuple of bools, or ``(False, None)``.
    """
    if f.num_vars > BRUTE_FORCE_MAX_VARS:
        raise TooManyVariables(f"{f.num_vars} variables exceeds {BRUTE_FORCE_MAX_VARS}")
    for assignment in itertools.product((False, True), repeat=f.num_vars):
        if f.satisfied_by(assignment):
            return True, assignment
    return False, None


def witness_assignment(witness: WitnessSet, num_vars: int) -> Optional[tuple]:
    """Decode a proof witness into an assignment if it picks one literal per variable."""
    chosen = {}
    for leaf in witness.leaves:
        value, var = leaf[0] == "T", int(leaf[2:])
        if var in chosen:
            return None
        chosen[var] = value
    if set(chosen) != set(range(1, num_vars + 1)):
        return None
    return tuple(chosen[j] for j in range(1, num_vars + 1))


@dataclass
class ReductionReport:
    num_vars: int
    num_clauses: int
    satisfiable: bool
    assignment: Optional[tuple]
    exact_p: float
    witness: Optional[WitnessSet]
    consistent: bool = field(init=False)

    def __post_init__(self):
        n = self.num_vars
        if self.satisfiable:
            self.consistent = self.exact_p == n
        else:
            self.consistent = self.exact_p == INF or self.exact_p >= n + 1


def verify_reduction(f: CnfFormula, leaf_budget: int = DEFAULT_LEAF_BUDGET, backend=None) -> ReductionReport:
    g = reduce_cnf(f)
    s, witness = exact_proof_number(g, "P", leaf_budget=leaf_budget, backend=backend)
    sat, assignment = sat_brute_force(f)
    return ReductionReport(f.num_vars, f.num_clauses, sat, assignment, s, witness)
