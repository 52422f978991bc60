from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Optional

from ..bits import TooLargeError
from .corpus import CorpusConfig, Instance, generate_corpus
from .theorems import THEOREMS, Context, cormain_universal
from .verdict import SuiteReport, Verdict, minimize_counterexample, skipped


def _select(config: CorpusConfig) -> list[str]:
    ids = list(config.theorems) or list(THEOREMS)
    unknown = [t for t in ids if t not in THEOREMS]
    if unknown:
        raise KeyError(f"unknown theorem id(s): {', '.join(unknown)}")
    return ids


def _run_one(tid: str, inst: Instance, ctx: Context) -> Optional[Verdict]:
    th = THEOREMS[tid]
    if inst.kind != th.kind:
        return None
    if inst.skip:
        return skipped(tid, inst.label, inst.skip)
    try:
        v = th.check(ctx, inst)
    except TooLargeError as e:
        return skipped(tid, inst.label, str(e))
    if v is not None and v.status == "fail":
        v = minimize_counterexample(v)
    return v


def verify_theorem(theorem_id: str, instance: Instance, config: Optional[CorpusConfig] = None) -> Verdict:
    """Run one registered theorem on one instance."""
    if theorem_id not in THEOREMS:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    config = config or CorpusConfig()
    th = THEOREMS[theorem_id]
    if instance.kind != th.kind:
        raise ValueError(f"{theorem_id} applies to {th.kind} instances, not {instance.kind}")
    ctx = Context(config, [i for i in generate_corpus(config) if i.unit == instance.unit])
    v = _run_one(theorem_id, instance, ctx)
    if v is None:
        raise ValueError(f"{theorem_id} does not apply to {instance.label}")
    return v


def _run_unit(args) -> tuple[list[Verdict], dict]:
    config, unit, ids, keep_recheck = args
    instances = [i for i in generate_corpus(config) if i.unit == unit]
    return _run_instances(config, instances, ids, keep_recheck)


def _run_instances(config, instances, ids, keep_recheck):
    ctx = Context(config, instances)
    out, timings = [], {}
    for tid in ids:
        t0 = time.perf_counter()
        for inst in instances:
            v = _run_one(tid, inst, ctx)
            if v is not None:
                out.append(v if keep_recheck else replace(v, recheck=None))
        timings[tid] = timings.get(tid, 0.0) + time.perf_counter() - t0
    return out, timings


def run_suite(config: Optional[CorpusConfig] = None, jobs: int = 1) -> SuiteReport:
    """Every selected theorem on every corpus instance. Work is split per catalog ring;
    the merged verdict list is sorted by (theorem, instance) so the payload does not
    depend on ``jobs``."""
    config = config or CorpusConfig()
    ids = _select(config)
    units = list(dict.fromkeys(config.rings))
    args = [(config, u, ids, jobs <= 1) for u in units]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_unit, args))
    else:
        results = [_run_unit(a) for a in args]
    return _merge(config, results)


def run_instances(instances: list[Instance], config: Optional[CorpusConfig] = None) -> SuiteReport:
    """Run the selected theorems on an explicit instance list (grouped by ``unit``)."""
    config = config or CorpusConfig()
    ids = _select(config)
    units = list(dict.fromkeys(i.unit for i in instances))
    return _merge(config, [_run_instances(config, [i for i in instances if i.unit == u], ids, True)
                           for u in units])


def _merge(config, results) -> SuiteReport:
    verdicts, timings = [], {}
    for vs, ts in results:
        verdicts.extend(vs)
        for k, t in ts.items():
            timings[k] = timings.get(k, 0.0) + t
    verdicts.sort(key=lambda v: (v.theorem_id, v.instance_label))
    return SuiteReport(config.as_dict(), verdicts, timings)


def cormain_universal_for(ring_name: str, config: Optional[CorpusConfig] = None) -> tuple[bool, Optional[dict]]:
    """Universal classical 1-absorbing primality over the recipe modules of one ring."""
    config = config or CorpusConfig()
    ctx = Context(config, [i for i in generate_corpus(config) if i.unit == ring_name])
    value, witness, _ = cormain_universal(ctx, ring_name)
    return value, witness


def revalidate(verdict: Verdict, config: Optional[CorpusConfig] = None) -> Verdict:
    """Re-run the theorem that produced a verdict on the same instance."""
    config = config or CorpusConfig()
    for inst in generate_corpus(config):
        if inst.label == verdict.instance_label and inst.kind == THEOREMS[verdict.theorem_id].kind:
            return verify_theorem(verdict.theorem_id, inst, config)
    raise KeyError(verdict.instance_label)
