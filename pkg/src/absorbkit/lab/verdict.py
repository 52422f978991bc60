from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable, Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of one theorem on one instance.

    ``holds`` is None for a skipped check. A failing verdict carries a
    ``counterexample`` dict; when it has a ``witness`` tuple, ``recheck(witness)``
    re-evaluates the violated quantifier instance."""

    theorem_id: str
    instance_label: str
    holds: Optional[bool]
    counterexample: Optional[dict] = None
    checks: int = 0
    skipped: Optional[str] = None
    detail: dict = field(default_factory=dict)
    recheck: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.holds is False and self.counterexample is None:
            raise ValueError("a failing verdict needs a counterexample")
        if self.holds and self.counterexample is not None:
            raise ValueError("a passing verdict cannot carry a counterexample")

    @property
    def status(self) -> str:
        if self.skipped is not None:
            return "skip"
        return "pass" if self.holds else "fail"

    def as_dict(self) -> dict:
        out = {"theorem": self.theorem_id, "instance": self.instance_label,
               "status": self.status, "checks": self.checks}
        if self.counterexample is not None:
            out["counterexample"] = _plain(self.counterexample)
        if self.skipped is not None:
            out["skipped"] = self.skipped
        if self.detail:
            out["detail"] = _plain(self.detail)
        return out


def _plain(x):
    """JSON-friendly copy: tuples become lists, numpy scalars become ints."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


def passed(theorem_id: str, label: str, checks: int, **detail) -> Verdict:
    return Verdict(theorem_id, label, True, None, checks, None, detail)


def failed(theorem_id: str, label: str, checks: int, counterexample: dict,
           recheck: Optional[Callable] = None, **detail) -> Verdict:
    return Verdict(theorem_id, label, False, counterexample, checks, None, detail, recheck)


def skipped(theorem_id: str, label: str, reason: str) -> Verdict:
    return Verdict(theorem_id, label, None, None, 0, reason)


def minimize_counterexample(verdict: Verdict) -> Verdict:
    """Shrink each witness coordinate toward 0 while the violation persists.

    Coordinates are tried smallest-first, left to right, repeated until nothing
    changes, so the result is a fixpoint and minimizing it again is a no-op."""
    cx = verdict.counterexample
    if verdict.holds is not False or verdict.recheck is None or not cx or "witness" not in cx:
        return verdict
    w = list(cx["witness"])
    if not verdict.recheck(tuple(w)):
        return verdict
    changed = True
    while changed:
        changed = False
        for pos in range(len(w)):
            for v in range(w[pos]):
                trial = w[:pos] + [v] + w[pos + 1:]
                if verdict.recheck(tuple(trial)):
                    w = trial
                    changed = True
                    break
    new_cx = dict(cx)
    new_cx["witness"] = tuple(w)
    return replace(verdict, counterexample=new_cx)


@dataclass
class SuiteReport:
    config: dict
    verdicts: list
    timings: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out: dict = {}
        for v in self.verdicts:
            row = out.setdefault(v.theorem_id, {"instances": 0, "passes": 0, "failures": 0, "skips": 0})
            row["instances"] += 1
            row[{"pass": "passes", "fail": "failures", "skip": "skips"}[v.status]] += 1
        return dict(sorted(out.items()))

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if v.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def payload(self) -> dict:
        """Deterministic content: no timings."""
        return {"config": self.config, "summary": self.summary(),
                "verdicts": [v.as_dict() for v in self.verdicts]}

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=1)

    def timings_json(self) -> str:
        return json.dumps({k: round(t, 4) for k, t in sorted(self.timings.items())}, sort_keys=True, indent=1)

    def table(self) -> str:
        head = f"{'theorem':<14}{'instances':>10}{'pass':>8}{'fail':>8}{'skip':>8}{'seconds':>10}"
        lines = [head, "-" * len(head)]
        for tid, row in self.summary().items():
            lines.append(f"{tid:<14}{row['instances']:>10}{row['passes']:>8}{row['failures']:>8}"
                         f"{row['skips']:>8}{self.timings.get(tid, 0.0):>10.2f}")
        for v in self.failures:
            lines.append(f"FAIL {v.theorem_id} on {v.instance_label}: {json.dumps(_plain(v.counterexample), sort_keys=True)}")
        return "\n".join(lines)
