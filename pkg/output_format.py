"""Rendering of CLI results as ``key=value`` lines or one JSON object.

Both forms share the same ordered key set. JSON values are integers, strings
or arrays of those; scores stay ``numerator/denominator`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from axioms import AXIOMS, AuditReport
from bench import BenchReport
from core import AxiomVerdict, Committee, SolveResult, rational_str

Value = Union[int, str, List[int], List[List[Union[int, str]]]]
Record = List[Tuple[str, Value]]


def _members(committee: Committee) -> List[int]:
    return list(committee.members)


def solve_record(result: SolveResult, trace: bool = False) -> Record:
    record: Record = [
        ("committee", _members(result.committee)),
        ("pav_score", rational_str(result.final_score)),
        ("swaps", result.swap_count),
    ]
    if trace:
        if result.initial is not None:
            record.append(("initial", _members(result.initial)))
        record.append(
            (
                "swap",
                [[s.out_candidate, s.in_candidate, rational_str(s.diff)] for s in result.swaps],
            )
        )
    return record


def score_record(score: Fraction) -> Record:
    return [("pav_score", rational_str(score))]


def verdict_record(verdict: AxiomVerdict, prefix: str = "") -> Record:
    record: Record = [
        (f"{prefix}verdict", "satisfied" if verdict.satisfied else "violated"),
    ]
    if verdict.witness is not None:
        record.extend(
            [
                (f"{prefix}witness_l", verdict.witness.ell),
                (f"{prefix}witness_T", list(verdict.witness.candidates)),
                (f"{prefix}witness_X", list(verdict.witness.voters)),
            ]
        )
    return record


def audit_record(report: AuditReport) -> Record:
    record: Record = []
    for verdict in report.verdicts:
        record.extend(verdict_record(verdict, prefix=f"{verdict.axiom}_"))
    return record


def _text_value(value: Value) -> str:
    if isinstance(value, list):
        # Trace entries render one per line; see render_text.
        return " ".join(str(item) for item in value)
    return str(value)


def render_text(record: Sequence[Tuple[str, Value]]) -> str:
    lines: List[str] = []
    for key, value in record:
        if key == "swap":
            lines.extend(f"swap={_text_value(entry)}" for entry in value)
            continue
        lines.append(f"{key}={_text_value(value)}")
    return "\n".join(lines) + "\n"


def render_json(record: Sequence[Tuple[str, Value]]) -> str:
    return json.dumps(dict(record)) + "\n"


def render(record: Sequence[Tuple[str, Value]], as_json: bool = False) -> str:
    return render_json(record) if as_json else render_text(record)


def bench_record(report: BenchReport) -> Record:
    record: Record = [("trials", report.trials)]
    for rule in report.rules:
        for axiom in AXIOMS:
            record.append((f"{rule}_{axiom}", f"{report.passed[rule][axiom]}/{report.trials}"))
        record.append((f"{rule}_violation_seeds", list(report.violation_seeds[rule])))
    return record
