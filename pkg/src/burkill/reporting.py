"""Serialization of reports: stable field order, versioned JSON schema."""

from __future__ import annotations

import json
from .density import DensityReport
from .errors import UnsupportedFormat
from .integrator import DefectReport, LimitReport
from .walsh import SignTable

SCHEMA = "burkill.report/1"


def _num(v: float):
    return v if v == v and abs(v) != float("inf") else repr(v)


def limit_report_obj(report: LimitReport, with_witness: bool = True) -> dict:
    levels = []
    for lv in report.levels:
        row = {"e": lv.e.serialize(),
               "upper": _num(lv.upper),
               "lower": _num(lv.lower)}
        if with_witness and lv.witness_upper is not None:
            row["witness_upper"] = json.loads(lv.witness_upper.to_json())
        levels.append(row)
    verdict = {"kind": report.verdict.kind}
    if report.verdict.value is not None:
        verdict["value"] = _num(report.verdict.value)
    if report.verdict.upper is not None:
        verdict["upper"] = _num(report.verdict.upper)
        verdict["lower"] = _num(report.verdict.lower)
    if report.verdict.tol is not None:
        verdict["tol"] = report.verdict.tol
    return {"schema": SCHEMA, "levels": levels, "verdict": verdict}


def limit_report_json(report: LimitReport, with_witness: bool = True) -> str:
    return json.dumps(limit_report_obj(report, with_witness), indent=2,
                      sort_keys=False)


def limit_report_csv(report: LimitReport) -> str:
    lines = ["e,upper,lower"]
    for lv in report.levels:
        lines.append(f"{lv.e.serialize()},{lv.upper!r},{lv.lower!r}")
    return "\n".join(lines) + "\n"


def limit_report_table(report: LimitReport) -> str:
    lines = [f"{'e':>12}  {'upper':>24}  {'lower':>24}"]
    for lv in report.levels:
        lines.append(f"{lv.e.serialize():>12}  {lv.upper!r:>24}  "
                     f"{lv.lower!r:>24}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def density_report_json(report: DensityReport) -> str:
    obj = limit_report_obj(report.report, with_witness=False)
    obj["lebesgue_ref"] = (None if report.lebesgue_ref is None
                           else _num(report.lebesgue_ref))
    return json.dumps(obj, indent=2)


def defect_report_json(report: DefectReport) -> str:
    return json.dumps({
        "schema": SCHEMA,
        "point": report.point.serialize(),
        "trace": [{"e": e.serialize(), "C": _num(v)}
                  for e, v in report.trace],
        "c": _num(report.c),
        "sigma": _num(report.sigma),
    }, indent=2)


def sign_table_csv(table: SignTable) -> str:
    return table.to_csv()


def export(report, fmt: str) -> str:
    """Dispatch a report to a byte-stable textual format."""
    if isinstance(report, SignTable):
        if fmt == "csv":
            return sign_table_csv(report)
        raise UnsupportedFormat(f"sign tables export as csv, not {fmt}")
    if isinstance(report, DensityReport):
        if fmt == "json":
            return density_report_json(report)
        report = report.report
    if isinstance(report, LimitReport):
        if fmt == "json":
            return limit_report_json(report)
        if fmt == "csv":
            return limit_report_csv(report)
        if fmt == "table":
            return limit_report_table(report)
    if isinstance(report, DefectReport) and fmt == "json":
        return defect_report_json(report)
    raise UnsupportedFormat(f"cannot export {type(report).__name__} as {fmt}")
