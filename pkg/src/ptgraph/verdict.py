"""Apply the three falsification conditions and aggregate a verdict.

Per directed completion of the input graph, three checks run against the
split-treatment graph:

* C1 — the pre-period outcome must not cause treatment while unmeasured
  confounding of treatment and the post-period outcome remains;
* C2 — no subset of a common sufficient set may be sufficient for exactly
  one period (asymmetric confounding structure);
* C3 — the pre-period outcome must not directly cause the post-period
  outcome (flagged as a strong concern, not a hard rejection: holding
  trends parallel through such an edge requires its coefficient to cancel
  the remaining confounding imbalance exactly).

A partially directed input is a disjunction of worlds, so rejection
requires C1 or C2 to fire in every completion; violations in only some
completions are reported as a caveat on a non-rejection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from . import adjustment
from .completion import enumerate_completions
from .dsep import d_separated, open_path_witness
from .errors import ValidationError
from .graph import CausalGraph, Edge
from .swig import Swig, build_swig

VIOLATED = "Violated"
SATISFIED = "Satisfied"
NOT_APPLICABLE = "NotApplicable"

REJECTED = "Rejected"
STRONGLY_QUESTIONED = "StronglyQuestioned"
NOT_REJECTED = "NotRejected"

AHC_NOTE = (
    "Not rejected on graphical grounds. Identification still requires "
    "additive homogeneous confounding: E(Y1^0 - Y0^0 | M) constant over the "
    "adjustment obligation M, a scale-dependent assumption no graph can "
    "certify."
)


@dataclass(frozen=True)
class ConditionReport:
    condition: str  # C1 | C2 | C3
    status: str
    witness: Optional[dict] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "note": self.note,
        }


@dataclass(frozen=True)
class CompletionAnalysis:
    choices: tuple
    c1: ConditionReport
    c2: ConditionReport
    c3: ConditionReport
    c2_without_carryover: Optional[ConditionReport] = None

    def report(self, condition: str) -> ConditionReport:
        return {"C1": self.c1, "C2": self.c2, "C3": self.c3}[condition]


@dataclass(frozen=True)
class Verdict:
    overall: str
    completions: tuple[CompletionAnalysis, ...]
    obligation: Optional[tuple[str, ...]]
    caveat: Optional[str] = None

    def to_dict(self) -> dict:
        conditions = []
        for name in ("C1", "C2", "C3"):
            per = []
            for comp in self.completions:
                rep = comp.report(name)
                entry = {
                    "completion": _choices_json(comp.choices),
                    **rep.to_dict(),
                }
                if name == "C2" and comp.c2_without_carryover is not None:
                    entry["without_carryover_edge"] = comp.c2_without_carryover.to_dict()
                per.append(entry)
            statuses = {p["status"] for p in per}
            aggregate = statuses.pop() if len(statuses) == 1 else "Mixed"
            conditions.append(
                {"condition": name, "aggregate": aggregate, "per_completion": per}
            )
        return {
            "schema": "ptgraph/v1",
            "overall": self.overall,
            "completions_analyzed": len(self.completions),
            "conditions": conditions,
            "obligation": list(self.obligation) if self.obligation is not None else None,
            "obligation_note": AHC_NOTE if self.overall == NOT_REJECTED else None,
            "caveat": self.caveat,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _choices_json(choices) -> list:
    return [choice.value for choice in choices]


def _path_witness(path, given) -> dict:
    return {
        "kind": "path",
        "nodes": list(path.nodes),
        "arrows": list(path.arrows),
        "given": sorted(given),
    }


# -- individual conditions ----------------------------------------------


def check_condition1(s: Swig, conditioning: str = "y0") -> ConditionReport:
    """Reject when the pre-period outcome causes treatment and unmeasured
    confounding of treatment and the post-period outcome remains."""
    y0 = s.outcome_node(0)
    y1 = s.outcome_node(1)
    if not s.base.has_directed_edge(y0, s.treatment):
        return ConditionReport("C1", SATISFIED, note=f"no {y0} -> {s.treatment} edge")
    given = {y0} if conditioning == "y0" else set()
    if d_separated(s, s.treatment, y1, given):
        return ConditionReport(
            "C1",
            SATISFIED,
            note=(
                f"{y0} -> {s.treatment} present but no residual confounding: the "
                f"treatment effect is identifiable by adjusting for {y0} alone; "
                "a difference-in-differences design is unnecessary"
            ),
        )
    path = open_path_witness(s, s.treatment, y1, given)
    witness = {
        "kind": "c1",
        "edge": [y0, s.treatment],
        "open_path": _path_witness(path, given),
    }
    return ConditionReport("C1", VIOLATED, witness=witness)


def check_condition2(s: Swig) -> ConditionReport:
    """Reject when some subset of a common sufficient set is sufficient for
    exactly one of the two periods."""
    y0 = s.outcome_node(0)
    if s.base.has_directed_edge(y0, s.treatment):
        return ConditionReport(
            "C2",
            NOT_APPLICABLE,
            note=f"{y0} -> {s.treatment} leaves no sufficient set for {y0}",
        )
    for common in adjustment.common_sufficient_sets_for_lemma(s):
        found = adjustment.asymmetric_subset_witness(s, common)
        if found is not None:
            subset, t_ok, t_fail = found
            witness = {
                "kind": "c2",
                "subset": list(subset),
                "sufficient_for": t_ok,
                "insufficient_for": t_fail,
                "common_set": list(common),
            }
            return ConditionReport("C2", VIOLATED, witness=witness)
    return ConditionReport("C2", SATISFIED)


def check_condition3(g: CausalGraph) -> ConditionReport:
    """Flag a direct pre-period -> post-period outcome edge."""
    y0 = g.outcome(0)
    y1 = g.outcome(1)
    if y0 is None or y1 is None:
        return ConditionReport("C3", NOT_APPLICABLE, note="missing outcome roles")
    if g.has_directed_edge(y0, y1):
        return ConditionReport(
            "C3",
            VIOLATED,
            witness={"kind": "c3", "edge": [y0, y1]},
            note=(
                "Parallel trends can survive this edge only if its effect "
                "combines with the pre-period confounding to cancel the "
                "remaining imbalance exactly; treated as a strong concern "
                "rather than a rejection"
            ),
        )
    return ConditionReport("C3", SATISFIED)


# -- full analysis -------------------------------------------------------


def _analyze_completion(
    graph: CausalGraph, choices, c1_conditioning: str
) -> CompletionAnalysis:
    s = build_swig(graph)
    c1 = check_condition1(s, conditioning=c1_conditioning)
    c3 = check_condition3(graph)
    c2 = check_condition2(s)
    c2_alt = None
    if c3.status == VIOLATED and c2.status != NOT_APPLICABLE:
        # A carryover edge can manufacture spuriously shared minimal sets;
        # report what C2 says once the edge is removed.
        y0, y1 = graph.outcome(0), graph.outcome(1)
        stripped = graph.with_edges(remove=[Edge(y0, y1, True)])
        c2_alt = check_condition2(build_swig(stripped))
    return CompletionAnalysis(tuple(choices), c1, c2, c3, c2_alt)


def _common_obligation(analyses, swigs) -> Optional[tuple[str, ...]]:
    """Smallest set sufficient for both periods in every completion."""
    import itertools

    pools = [set(adjustment._common_pool(s)) for s in swigs]
    if not pools:
        return None
    shared = sorted(set.intersection(*pools))
    for size in range(len(shared) + 1):
        for combo in itertools.combinations(shared, size):
            members = frozenset(combo)
            if all(adjustment._sufficient_for_both(s, members) for s in swigs):
                return combo
    return None


def analyze(
    g: CausalGraph,
    completion_cap: Optional[int] = None,
    c1_conditioning: str = "y0",
) -> Verdict:
    """Run C1-C3 over every completion and aggregate."""
    report = g.validate()
    if report:
        raise ValidationError(report)
    analyses = []
    swigs = []
    for choices, completed in enumerate_completions(g, completion_cap):
        analysis = _analyze_completion(completed, choices, c1_conditioning)
        analyses.append(analysis)
        swigs.append(build_swig(completed))

    def violated_everywhere(cond):
        return all(a.report(cond).status == VIOLATED for a in analyses)

    hard_per_completion = [
        a.c1.status == VIOLATED or a.c2.status == VIOLATED for a in analyses
    ]
    any_violation = any(
        a.report(c).status == VIOLATED for a in analyses for c in ("C1", "C2", "C3")
    )
    caveat = None
    obligation = None
    if all(hard_per_completion):
        overall = REJECTED
    elif violated_everywhere("C3"):
        overall = STRONGLY_QUESTIONED
    else:
        overall = NOT_REJECTED
        obligation = _common_obligation(analyses, swigs)
        if any_violation:
            bad = sum(
                1
                for a in analyses
                if any(a.report(c).status == VIOLATED for c in ("C1", "C2", "C3"))
            )
            caveat = (
                f"violations occur in {bad} of {len(analyses)} completions "
                "(see per-completion reports); not rejected because at least "
                "one compatible world satisfies the conditions"
            )
    return Verdict(
        overall=overall,
        completions=tuple(analyses),
        obligation=obligation,
        caveat=caveat,
    )
