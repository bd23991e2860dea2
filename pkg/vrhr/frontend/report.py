import json
from typing import Dict, List, Optional, Sequence, TypedDict

from vrhr._enum import CheckStatus
from vrhr.config import Bounds
from vrhr.oracle.suite import InstanceReport
from vrhr.reach.prp import PrpResult
from vrhr.report import ValidationReport


class VerdictDict(TypedDict, total=False):
    command: str
    status: str
    exit_code: int
    spec: str
    bounds: Dict[str, Optional[int]]
    witness: Optional[dict]
    stats: Dict[str, object]
    violations: List[dict]
    instances: List[dict]
    note: Optional[str]


def prp_verdict(result: PrpResult, spec: str) -> VerdictDict:
    return VerdictDict(
        command="prp",
        status=result.status.value,
        exit_code=result.status.exit_code,
        spec=spec,
        bounds=result.bounds.to_dict(),
        witness=result.witness.to_dict() if result.witness else None,
        stats=result.stats(),
    )


def check_verdict(report: ValidationReport, spec: str) -> VerdictDict:
    return VerdictDict(
        command="check",
        status=report.status.value,
        exit_code=report.status.exit_code,
        spec=spec,
        violations=[v.to_dict() for v in report],
        note=report.note,
    )


def equiv_verdict(
    instances: Sequence[InstanceReport], bounds: Bounds, spec: str, note: Optional[str] = None
) -> VerdictDict:
    status = CheckStatus.worst(*(i.status for i in instances))
    return VerdictDict(
        command="equiv",
        status=status.value,
        exit_code=status.exit_code,
        spec=spec,
        bounds=bounds.to_dict(),
        instances=[i.to_dict() for i in instances],
        stats={
            "instances": len(instances),
            "failed": sum(1 for i in instances if i.status is CheckStatus.FAILED),
        },
        note=note,
    )


def to_json(verdict: VerdictDict) -> str:
    return json.dumps(verdict, indent=2, sort_keys=True)


def _valuation(valuation: Dict[str, int]) -> str:
    return ", ".join(f"{x}={n}" for x, n in sorted(valuation.items()))


def render_text(verdict: VerdictDict) -> str:
    lines = [f"{verdict['command']}: {verdict['status'].upper()}"]
    if verdict.get("bounds"):
        bounds = verdict["bounds"]
        lines.append(
            "bounds: " + ", ".join(f"{k}={'unbounded' if v is None else v}" for k, v in bounds.items())
        )
    witness = verdict.get("witness")
    if witness:
        steps = " ".join(str(s["rule"]) for s in witness["derivation"]["steps"])
        lines.append(f"witness derivation: {witness['derivation']['start']} [{steps}]")
        lines.append(f"witness system: {len(witness['system']['vertices'])} vertices")
        lines.append(f"firing: {len(witness['firing'])} steps")
        lines.append(f"valuation: {_valuation(witness['valuation'])}")
    for violation in verdict.get("violations", []):
        lines.append(f"  [{violation['severity']}] {violation['subject']}: {violation['message']}")
    for instance in verdict.get("instances", []):
        lines.append(
            f"  {instance['label']:<16} {instance['status']:<10} "
            f"{instance['source_vertices']:>3} -> {instance['translated_vertices']:>3} vertices"
        )
        for violation in instance["violations"][:3]:
            lines.append(f"      {violation['code']}: {violation['message']}")
    if verdict.get("stats"):
        lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in verdict["stats"].items()))
    if verdict.get("note"):
        lines.append(f"note: {verdict['note']}")
    return "\n".join(lines)
