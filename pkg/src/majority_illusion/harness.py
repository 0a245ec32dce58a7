"""Round-trip checks tying the SAT oracle to the gadget encodings.

Every check produces a plain verdict record; corpus runs return records in
instance-id order no matter how many worker processes were used.
"""

from __future__ import annotations

import json
import os
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

from .cnf import (
    CnfFormula,
    brute_force_sat,
    canonical,
    enumerate_2p2n,
    enumerate_3cnf,
    generate_2p2n,
    generate_3cnf,
    is_2p2n,
    is_3cnf,
    serialize_dimacs,
)
from .elimination import (
    VARIANTS,
    attach_pump,
    encode_2p2n,
    margin_audit,
    plan_from_model,
    plan_outcome,
)
from .errors import CapacityError, PreconditionError
from .network import LabelledNetwork, SocialNetwork, illusion_report, is_q_illusion
from .solvers import solve_one_illusion, verify_plan
from .thresholds import as_fraction, format_fraction
from .verification import GadgetEncoding, encode_q, labelling_from_model

__all__ = [
    "MUTATIONS",
    "verify_theorem1_roundtrip",
    "verify_theorem2_witness",
    "corpus_3cnf",
    "corpus_2p2n",
    "XOR_2P2N",
    "run_corpus",
    "write_verdict_log",
    "summarise",
]

ROUNDTRIP_VAR_CAP = 3
ROUNDTRIP_CLAUSE_CAP = 3
WITNESS_VAR_CAP = 3

XOR_2P2N = CnfFormula.of([(1, 2), (-1, -2), (1, -2), (-1, 2)])


def _formula_text(f: CnfFormula) -> str:
    return " ".join(" ".join(map(str, c)) + " 0" for c in f.clauses)


# -- mutations of the verification encoding -------------------------------


def _drop(enc: GadgetEncoding, u: int, v: int) -> GadgetEncoding:
    pair = (min(u, v), max(u, v))
    if pair not in enc.network.edges:
        raise PreconditionError(f"mutation target {pair} is not an edge")
    network = SocialNetwork(enc.network.node_count, enc.network.edges - {pair})
    return replace(enc, network=network)


def _mut_dependant(enc):
    local = enc.variable_nodes[0]
    return _drop(enc, local["A"], local["G"])


def _mut_port(enc):
    clause = enc.formula.clauses[0]
    return _drop(enc, enc.clause_nodes[0]["X"], enc.literal_index[clause[0]])


def _mut_co_dependant(enc):
    local = enc.clause_nodes[0]
    return _drop(enc, local["Mx"], local["Ms"])


def _mut_balance(enc):
    u, v = min(e for e in enc.network.edges if e[0] in enc.balance_nodes)
    return _drop(enc, u, v)


MUTATIONS: dict[str, Callable[[GadgetEncoding], GadgetEncoding]] = {
    "drop_dependant_edge": _mut_dependant,
    "drop_port_edge": _mut_port,
    "drop_co_dependant_edge": _mut_co_dependant,
    "drop_balance_edge": _mut_balance,
}


# -- single-instance checks -----------------------------------------------


def verify_theorem1_roundtrip(f: CnfFormula, q=1, mutation: Optional[str] = None, instance_id: str = "") -> dict:
    """Satisfiability of ``f`` against full illusion in its encoding, plus the witness check."""
    q = as_fraction(q)
    if not is_3cnf(f):
        raise PreconditionError("round trip needs a 3-CNF formula")
    if f.variable_count > ROUNDTRIP_VAR_CAP or f.clause_count > ROUNDTRIP_CLAUSE_CAP:
        raise CapacityError(
            f"round trip is capped at {ROUNDTRIP_VAR_CAP} variables and {ROUNDTRIP_CLAUSE_CAP} clauses"
        )
    start = time.perf_counter()
    enc = encode_q(f, q)
    if mutation is not None:
        enc = MUTATIONS[mutation](enc)
    core_size = enc.core_size
    core = SocialNetwork(core_size, frozenset(e for e in enc.network.edges if e[1] < core_size))
    model = brute_force_sat(f)
    sat = model is not None
    admits = solve_one_illusion(core) is not None
    witness_ok = None
    if sat:
        lab = labelling_from_model(enc, model)
        full = LabelledNetwork(enc.network, lab)
        report = illusion_report(full)
        core_illuded = len([i for i in report.under_illusion if i < core_size])
        witness_ok = (
            enc.network.node_count == enc.expected_node_count
            and core_illuded == core_size == 12 * f.variable_count + 18 * f.clause_count - 1
            and is_q_illusion(full, q)
        )
    ok = sat == admits and (not sat or witness_ok)
    return {
        "id": instance_id,
        "formula": _formula_text(f),
        "variant": "verify" if mutation is None else f"verify:{mutation}",
        "q": format_fraction(q),
        "sat": sat,
        "admits": admits,
        "witness_ok": witness_ok,
        "node_count": enc.network.node_count,
        "verdict": "pass" if ok else "fail",
        "millis": round((time.perf_counter() - start) * 1000, 3),
    }


def verify_theorem2_witness(
    f: CnfFormula, variant: str, q="1/2", budget_delta: int = 0, instance_id: str = ""
) -> dict:
    """Witness plan check for a 2P2N formula in one elimination variant.

    Satisfiable formulas pass when the plan read off a model meets budget and
    requirement, pushes nobody into illusion and breaks the ``q``-illusion of
    the pumped instance.  Unsatisfiable formulas can only be audited
    structurally and come back ``not-refuted``.
    """
    q = as_fraction(q)
    if not is_2p2n(f):
        raise PreconditionError("witness check needs a 2P2N formula")
    if f.variable_count > WITNESS_VAR_CAP:
        raise CapacityError(f"witness check is capped at {WITNESS_VAR_CAP} variables")
    start = time.perf_counter()
    base = encode_2p2n(f, variant)
    audit = margin_audit(base)
    enc = attach_pump(base, q)
    if budget_delta:
        enc = replace(enc, budget=enc.budget + budget_delta)
    model = brute_force_sat(f)
    record = {
        "id": instance_id,
        "formula": _formula_text(f),
        "variant": variant,
        "q": format_fraction(q),
        "sat": model is not None,
        "audit": audit[:5],
        "budget": enc.budget,
        "requirement": enc.requirement,
        "allowed_remaining": enc.allowed_remaining,
    }
    if model is None:
        record["plan_ok"] = None
        record["verdict"] = "not-refuted" if not audit else "fail"
    else:
        plan = plan_from_model(enc, model, enforce_budget=False)
        verdict = verify_plan(enc.labelled, plan, q, enc.budget, enc.mode)
        outcome = plan_outcome(enc, plan)
        plan_ok = (
            bool(verdict)
            and outcome["remaining"] <= enc.allowed_remaining
            and not outcome["pushed"]
            and not audit
        )
        record.update(
            plan_ok=plan_ok,
            reason=verdict.reason,
            plan_size=plan.size,
            remaining=outcome["remaining"],
            pushed=outcome["pushed"],
            verdict="pass" if plan_ok else "fail",
        )
    record["millis"] = round((time.perf_counter() - start) * 1000, 3)
    return record


# -- corpora --------------------------------------------------------------


def corpus_3cnf(random_count: int = 50, seed: int = 0, max_clauses: int = 3) -> list[tuple[str, CnfFormula]]:
    """Every 3-CNF over one or two variables with up to ``max_clauses`` clauses,
    then ``random_count`` random formulas over three variables."""
    items = []
    for m in (1, 2):
        for j, f in enumerate(enumerate_3cnf(m, max_clauses)):
            items.append((f"enum-m{m}-{j:05d}", f))
    rng = random.Random(seed)
    for j in range(random_count):
        n = rng.randint(1, 3)
        items.append((f"rand-m3-{j:05d}", canonical(generate_3cnf(3, n, rng.randrange(2**31)))))
    return items


def corpus_2p2n(random_count: int = 20, seed: int = 0) -> list[tuple[str, CnfFormula]]:
    """All 2P2N formulas over one and two variables plus random ones over three."""
    items = []
    for m in (1, 2):
        for j, f in enumerate(enumerate_2p2n(m)):
            items.append((f"enum-m{m}-{j:05d}", f))
    rng = random.Random(seed)
    seen = set()
    j = 0
    while j < random_count:
        f = canonical(generate_2p2n(3, rng.randrange(2**31)))
        if f.clauses in seen:
            continue
        seen.add(f.clauses)
        items.append((f"rand-m3-{j:05d}", f))
        j += 1
    return items


# -- corpus runner --------------------------------------------------------


@dataclass(frozen=True)
class _Task:
    kind: str
    instance_id: str
    formula: CnfFormula
    q: str
    variant: Optional[str] = None
    mutation: Optional[str] = None
    budget_delta: int = 0


def _run_task(task: _Task) -> dict:
    if task.kind == "theorem1":
        return verify_theorem1_roundtrip(task.formula, task.q, task.mutation, task.instance_id)
    return verify_theorem2_witness(task.formula, task.variant, task.q, task.budget_delta, task.instance_id)


def run_corpus(
    items: Iterable[tuple[str, CnfFormula]],
    theorem: int,
    q="1",
    variants: Iterable[str] = VARIANTS,
    mutation: Optional[str] = None,
    budget_delta: int = 0,
    jobs: int = 1,
) -> list[dict]:
    """Verdicts for every item, sorted by (id, variant)."""
    q = format_fraction(as_fraction(q))
    tasks = []
    for instance_id, f in items:
        if theorem == 1:
            tasks.append(_Task("theorem1", instance_id, f, q, mutation=mutation))
        else:
            for v in variants:
                tasks.append(_Task("theorem2", instance_id, f, q, variant=v, budget_delta=budget_delta))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=8))
    else:
        records = [_run_task(t) for t in tasks]
    return sorted(records, key=lambda r: (r["id"], r["variant"]))


def write_verdict_log(path, records: Iterable[dict]):
    """JSON-lines verdict log, written atomically."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".verdicts-")
    try:
        with os.fdopen(fd, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def summarise(records: Iterable[dict]) -> dict:
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
    return counts


def formula_dimacs(f: CnfFormula) -> str:
    return serialize_dimacs(f)
