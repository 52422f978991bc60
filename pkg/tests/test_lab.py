import json

import pytest

from absorbkit.classify import violates
from absorbkit.finmod import Submodule, zero_submodule
from absorbkit.lab import (CorpusConfig, THEOREMS, Verdict, build_module, cormain_universal_for,
                           find_instance, generate_corpus, minimize_counterexample, run_suite,
                           verify_theorem)
from absorbkit.lab.theorems import maximal_chains
from absorbkit.lab.verdict import failed, passed

SMALL = CorpusConfig(rings=("Z4", "Z6", "Z4|><|<2>"))


def test_corpus_contents():
    insts = list(generate_corpus(CorpusConfig()))
    labels = {i.label for i in insts}
    assert "Z4" in labels and "ring Z4" in labels
    fixture = [i for i in insts if "fixture" in i.tags]
    assert len(fixture) == 1 and fixture[0].size == 72
    assert {i.kind for i in insts} == {"ring", "module", "tensor", "amalgam"}
    assert len(labels) == len(insts)


def test_empty_catalog():
    cfg = CorpusConfig(rings=())
    assert list(generate_corpus(cfg)) == []
    report = run_suite(cfg)
    assert report.verdicts == [] and report.ok


def test_tiny_module_cap_skips_everything():
    cfg = CorpusConfig(rings=("Z4", "Z6"), max_module=1, max_amalgam=1, max_tensor=1)
    report = run_suite(cfg)
    assert report.verdicts and all(v.status == "skip" for v in report.verdicts)
    json.loads(report.to_json())


def test_verify_single_theorem():
    inst = find_instance(SMALL, "Z4")
    assert verify_theorem("p1", inst, SMALL).holds
    with pytest.raises(KeyError):
        verify_theorem("bogus", inst, SMALL)
    with pytest.raises(ValueError):
        verify_theorem("lemfin", inst, SMALL)


def test_local_square_zero_dichotomy():
    assert verify_theorem("cormain_ii", find_instance(SMALL, "ring Z4"), SMALL).holds
    value, witness = cormain_universal_for("Z8", CorpusConfig(rings=("Z8",)))
    assert value is False
    assert witness == {"module": "Z8", "submodule": [0], "witness": (2, 2, 2, 1)}


def test_amalgam_residual_check_reports_counts():
    report = run_suite(CorpusConfig(rings=("Z4|><|<2>",), theorems=("lemfin",)))
    (v,) = [v for v in report.verdicts if v.instance_label == "(Z4) |><| <2>"]
    assert v.holds and v.detail["ring_queries"] == v.detail["ring_equal"] > 0


def test_jobs_do_not_change_payload():
    a = run_suite(SMALL, jobs=1).to_json()
    b = run_suite(SMALL, jobs=2).to_json()
    assert a == b


def test_minimize_shrinks_to_fixpoint():
    M = build_module(("ring", "Z8"))
    P = zero_submodule(M)
    v = failed("t", "Z8", 1, {"witness": (6, 6, 6, 7)},
               recheck=lambda w: violates(P, "classical_one_abs_prime", w))
    small = minimize_counterexample(v)
    assert small.counterexample["witness"] == (2, 2, 2, 1)
    assert minimize_counterexample(small).counterexample == small.counterexample
    ok = passed("t", "Z8", 3)
    assert minimize_counterexample(ok) is ok


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict("t", "x", False)
    with pytest.raises(ValueError):
        Verdict("t", "x", True, {"w": 1})


def test_maximal_chains():
    # diamond 1 < 3, 5 < 7 has two maximal chains
    chains = maximal_chains([0b1, 0b11, 0b101, 0b111], 10)
    assert sorted(map(tuple, chains)) == [(0b111, 0b11, 0b1), (0b111, 0b101, 0b1)]


def test_registry_kinds():
    assert set(t.kind for t in THEOREMS.values()) == {"module", "ring", "amalgam", "tensor"}
    assert "ttensor" in THEOREMS and "tmainnn" in THEOREMS


def test_multiplication_triple_gap_on_non_faithful_module():
    cfg = CorpusConfig(rings=("Z12",), theorems=("mult_triple",))
    v = verify_theorem("mult_triple", find_instance(cfg, "Z12/<4>"), cfg)
    assert v.status == "fail" and v.detail["faithful"] is False
    assert v.counterexample["submodule"] == [0]
