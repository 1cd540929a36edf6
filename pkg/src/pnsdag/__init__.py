"""Proof-number search on AND/OR DAGs: recursive vs. true proof numbers and the SAT reduction."""

from .errors import PnsError
from .graph import (
    AndOrDag,
    Kind,
    Status,
    normalize_mixed,
    parse_graph,
    revert,
    serialize_graph,
    topo_order,
)
from .oracle import (
    BACKEND,
    Mode,
    WitnessSet,
    assume_eval,
    exact_disproof_number,
    exact_proof_number,
)
from .pns import SearchMode, graph_as_problem, run
from .recursive import INF, PhiDeltaPair, PnPair, eval_pd, eval_phi_delta, map_phi_delta_to_pd
from .sat import (
    CnfFormula,
    parse_dimacs,
    reduce_cnf,
    reduce_cnf_dual,
    sat_brute_force,
    verify_reduction,
)

__version__ = "0.1.0"
