import json

import pytest

from majority_illusion.cnf import CnfFormula, is_2p2n
from majority_illusion.errors import CapacityError, PreconditionError
from majority_illusion.harness import (
    MUTATIONS,
    XOR_2P2N,
    corpus_2p2n,
    corpus_3cnf,
    run_corpus,
    summarise,
    verify_theorem1_roundtrip,
    verify_theorem2_witness,
    write_verdict_log,
)
from majority_illusion.io import validate

PAIRED = CnfFormula.of([(1, 2), (1, 2), (-1, -2), (-1, -2)])


def test_roundtrip_examples():
    rec = verify_theorem1_roundtrip(CnfFormula.of([(1, 1, 2)]))
    assert rec["verdict"] == "pass" and rec["admits"] and rec["witness_ok"]
    rec = verify_theorem1_roundtrip(CnfFormula.of([(1, 1, 1), (-1, -1, -1)]))
    assert rec["verdict"] == "pass" and not rec["admits"] and not rec["sat"]
    rec = verify_theorem1_roundtrip(CnfFormula.of([(1, -2, 3)]), "3/4")
    assert rec["verdict"] == "pass" and rec["node_count"] > 29
    validate(rec, "verdict")


def test_roundtrip_preconditions():
    with pytest.raises(PreconditionError):
        verify_theorem1_roundtrip(CnfFormula.of([(1, 2)]))
    with pytest.raises(CapacityError):
        verify_theorem1_roundtrip(CnfFormula.of([(1, 2, 4)]))


@pytest.mark.parametrize("variant", ["mixed", "addition"])
def test_witness_passes(variant):
    rec = verify_theorem2_witness(PAIRED, variant)
    assert rec["verdict"] == "pass", rec
    validate(rec, "verdict")


@pytest.mark.xfail(strict=True, reason="witness plan needs 4|P| + |C| removals, budget is 3|P|")
def test_removal_witness_within_budget():
    assert verify_theorem2_witness(PAIRED, "removal")["verdict"] == "pass"


@pytest.mark.parametrize("variant", ["mixed", "addition", "removal"])
def test_unsat_is_not_refuted(variant):
    assert is_2p2n(XOR_2P2N)
    rec = verify_theorem2_witness(XOR_2P2N, variant)
    assert rec["verdict"] == "not-refuted" and rec["audit"] == []
    validate(rec, "verdict")


@pytest.mark.parametrize("variant", ["mixed", "addition", "removal"])
def test_tightened_budget_fails(variant):
    rec = verify_theorem2_witness(PAIRED, variant, budget_delta=-1)
    assert rec["verdict"] == "fail" and rec["reason"] == "budget_exceeded"


def test_corpus_shapes():
    three = corpus_3cnf()
    assert len(three) == 14 + 1322 + 50
    assert len({iid for iid, _ in three}) == len(three)
    two = corpus_2p2n()
    assert len(two) == 9 + 712 + 20
    assert all(is_2p2n(f) for _, f in two)


@pytest.mark.parametrize("mutation", sorted(MUTATIONS))
def test_mutations_are_caught(mutation):
    items = [(iid, f) for iid, f in corpus_3cnf(random_count=10) if f.variable_count == 2][:300]
    records = run_corpus(items, 1, mutation=mutation)
    assert summarise(records).get("fail", 0) > 0


def test_run_corpus_order_and_log(tmp_path):
    items = corpus_2p2n(random_count=2)[:6]
    records = run_corpus(reversed(items), 2, q="1/2", variants=("mixed", "removal"))
    keys = [(r["id"], r["variant"]) for r in records]
    assert keys == sorted(keys)
    parallel = run_corpus(items, 2, q="1/2", variants=("mixed", "removal"), jobs=2)
    strip = lambda rs: [{k: v for k, v in r.items() if k != "millis"} for r in rs]  # noqa: E731
    assert strip(parallel) == strip(records)
    path = tmp_path / "verdicts.jsonl"
    write_verdict_log(path, records)
    lines = path.read_text().splitlines()
    assert len(lines) == len(records)
    for line in lines:
        validate(json.loads(line), "verdict")
