"""Exit criteria. Every check is exact; there are no tolerances to tune."""

import io
import math
import random
import sys
from itertools import chain

import pytest

from pnsdag import oracle
from pnsdag.cli import main
from pnsdag.generators import (
    comb_lattice,
    fixture,
    lattice,
    nim_problem,
    random_cnf,
    random_dag,
    random_tree,
)
from pnsdag.graph import Status, revert, serialize_graph
from pnsdag.oracle import (
    Mode,
    assume_eval,
    exact_disproof_number,
    exact_proof_number,
    witness_holds,
    witness_is_minimal,
)
from pnsdag.pns import Result, SearchMode, graph_as_problem, run
from pnsdag.recursive import eval_pd
from pnsdag.sat import CnfFormula, parse_dimacs, reduce_cnf, sat_brute_force, verify_reduction

from conftest import GOLDEN

FIG6 = CnfFormula(3, ((1, 2, 3), (-1, -2, -3), (-1, 2)))


def test_1_fig3_over_counting(record):
    g = fixture("fig3")
    d_rec = eval_pd(g)["A"].d
    d_exact, w = exact_disproof_number(g, "A")
    ok = d_rec == 2 and d_exact == 1 and w.leaves == {"E"}
    record(1, "fig3 recursive d(A)=2, exact d(A)=1 witness {E}", ok,
           f"recursive={d_rec} exact={d_exact} witness={w.sorted()}")
    assert ok


def test_2_fig2_numbers(record):
    g = fixture("fig2")
    p_exact = exact_proof_number(g, "A")[0]
    d_exact = exact_disproof_number(g, "A")[0]
    rec = eval_pd(g)["A"]
    ok = (p_exact, d_exact) == (1, 2) and tuple(rec) == (1, 3)
    record(2, "fig2 exact (p,d)=(1,2), recursive (1,3)", ok,
           f"exact=({p_exact},{d_exact}) recursive=({rec.p},{rec.d})")
    assert ok


def test_3_lattice_blow_up(record):
    rows = []
    for n in (1, 3, 5, 7, 9, 11, 13):
        g = lattice(n)
        rows.append((n, eval_pd(g)[g.root].p, math.comb(n - 1, (n - 1) // 2), exact_proof_number(g)[0]))
    ok = all(rec == want and exact == 1 for _, rec, want, exact in rows)
    record(3, "lattice recursive p = C(n-1,(n-1)/2), exact p = 1, odd n in 1..13", ok,
           " ".join(f"n={n}:{rec}/{exact}" for n, rec, _, exact in rows))
    assert ok


def test_4_comb_lattice_blow_up(record):
    rows = []
    for n in range(2, 10):
        g = comb_lattice(n)
        rows.append((n, eval_pd(g)[g.root].p, math.factorial(n - 1), exact_proof_number(g)[0]))
    ok = all(rec == want and exact == 1 for _, rec, want, exact in rows)
    record(4, "comb lattice recursive p = (n-1)!, exact p = 1, n in 2..9", ok,
           " ".join(f"n={n}:{rec}/{exact}" for n, rec, _, exact in rows))
    assert ok


def _cnf_corpus():
    """200 mixed instances plus 200 small dense ones, where unsatisfiable cases occur."""
    for seed in range(200):
        rng = random.Random(seed)
        yield random_cnf(seed, rng.randint(3, 9), rng.randint(1, 12), 3)
    for seed in range(200):
        yield random_cnf(10_000 + seed, 3, 10 + seed % 3, 3)


def test_5_sat_reduction(record):
    fig6 = verify_reduction(FIG6)
    contra = verify_reduction(CnfFormula(1, ((1,), (-1,))))
    fixed_ok = (
        fig6.satisfiable and fig6.exact_p == 3
        and not contra.satisfiable and contra.exact_p == 2
    )
    counterexamples = 0
    total = unsat = 0
    for f in _cnf_corpus():
        assert f.num_vars <= 9 and f.num_clauses <= 12
        s = exact_proof_number(reduce_cnf(f), "P")[0]
        sat = sat_brute_force(f)[0]
        total += 1
        unsat += not sat
        counterexamples += (s == f.num_vars) != sat
    ok = fixed_ok and total >= 200 and counterexamples == 0 and unsat >= 10
    record(5, "exact p(P) = n iff satisfiable", ok,
           f"fig6 p={fig6.exact_p} contradiction p={contra.exact_p} "
           f"random={total} unsat={unsat} counterexamples={counterexamples}")
    assert ok


def test_6_oracle_properties(record):
    tree_bad = 0
    for seed in range(300):
        g = random_tree(seed, 20)
        pd = eval_pd(g)
        for n in g.nodes:
            if (exact_proof_number(g, n)[0], exact_disproof_number(g, n)[0]) != tuple(pd[n]):
                tree_bad += 1
    dag_bad = dual_bad = witness_bad = strict = 0
    for seed in range(300):
        g = random_dag(seed, 14)
        rec = eval_pd(g)[g.root]
        p, wp = exact_proof_number(g)
        d, wd = exact_disproof_number(g)
        dag_bad += not (p <= rec.p and d <= rec.d)
        strict += p < rec.p or d < rec.d
        r = revert(g)
        dual_bad += (p, d) != (exact_disproof_number(r)[0], exact_proof_number(r)[0])
        for w in (wp, wd):
            if w is not None:
                witness_bad += not (witness_holds(g, w) and witness_is_minimal(g, w))
    ok = tree_bad == dag_bad == dual_bad == witness_bad == 0
    record(6, "tree equality, exact <= recursive, duality, minimal witnesses", ok,
           f"trees=300 dags=300 (strict over-count on {strict}) "
           f"tree_bad={tree_bad} dag_bad={dag_bad} dual_bad={dual_bad} witness_bad={witness_bad}")
    assert ok


def _partitions(total, largest=None):
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def test_7_pns_completeness(record):
    wrong = 0
    for seed in range(200):
        g = random_dag(seed, 14)
        rng = random.Random(seed)
        res = {n: rng.choice(["proven", "disproven"]) for n in g.open_leaves()}
        truth = assume_eval(g.with_statuses({n: Status(v) for n, v in res.items()}), ())[g.root]
        expected = Result.PROVEN if truth else Result.DISPROVEN
        for mode in SearchMode:
            wrong += run(graph_as_problem(g, res), mode).verdict is not expected
    nim_wrong = 0
    multisets = [[0]] + [list(p) for t in range(1, 11) for p in _partitions(t)]
    for piles in multisets:
        won = nim_problem(piles).first_player_wins()
        nim_wrong += (run(nim_problem(piles), SearchMode.DAG).verdict is Result.PROVEN) != won
    ok = wrong == 0 and nim_wrong == 0
    record(7, "PNS verdicts match boolean oracle (tree+dag) and Nim xor rule", ok,
           f"dag_problems=200 wrong={wrong} nim_positions={len(multisets)} nim_wrong={nim_wrong}")
    assert ok


def _main_output(argv, stdin, monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    assert main(argv) == 0
    return capsys.readouterr().out


def test_8_golden_files(record, monkeypatch, capsys):
    checks = {}
    checks["reduce fig6"] = serialize_graph(reduce_cnf(FIG6)) == (GOLDEN / "fig6_reduce.graph").read_text()
    checks["lattice7"] = serialize_graph(lattice(7)) == (GOLDEN / "lattice7.graph").read_text()
    graph = _main_output(["gen", "lattice", "--layers", "7"], "", monkeypatch, capsys)
    checks["gen lattice | eval recursive"] = (
        _main_output(["eval", "recursive", "-"], graph, monkeypatch, capsys)
        == (GOLDEN / "cli_lattice7_recursive.txt").read_text()
    )
    checks["verify-reduction"] = (
        _main_output(["verify-reduction", str(GOLDEN / "fig6.cnf")], "", monkeypatch, capsys)
        == (GOLDEN / "cli_verify_fig6.txt").read_text()
    )
    checks["eval exact --witness"] = (
        _main_output(["eval", "exact", str(GOLDEN / "fig2.graph"), "--mode", "disproof", "--witness"],
                     "", monkeypatch, capsys)
        == (GOLDEN / "cli_fig2_exact_disproof.txt").read_text()
    )
    ok = all(checks.values())
    record(8, "byte-exact golden outputs", ok, " ".join(f"{k}={'ok' if v else 'DIFF'}" for k, v in checks.items()))
    assert ok
