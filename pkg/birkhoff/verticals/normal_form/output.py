import csv
import io
import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Dict, Iterable, List

from marshmallow import Schema, fields

from birkhoff.core.algebra.family import Family
from birkhoff.core.family_file import write_family_file
from birkhoff.core.norms import NormReport, norm_report
from birkhoff.verticals.normal_form.newton import LedgerRow, RunResult


logger = logging.getLogger(__name__)

NORM_CSV_COLUMNS = ("field", "radius", "box_norm", "sample_norm", "mode")


class LedgerRowSchema(Schema):
    class Meta:
        ordered = True

    k = fields.Integer(required=True)
    m = fields.Integer(required=True)
    norm_R = fields.Float(required=True)
    norm_N = fields.Float(required=True)
    norm_DN = fields.Float(required=True)
    eps_k = fields.Float(required=True)
    r_k = fields.Float(required=True)
    i1_ok = fields.Boolean(allow_none=True)
    i2_ok = fields.Boolean(allow_none=True)
    i3_ok = fields.Boolean(allow_none=True)
    r11_norm = fields.Float(allow_none=True)
    r12_norm = fields.Float(allow_none=True)
    r2_norm = fields.Float(allow_none=True)
    r3_norm = fields.Float(allow_none=True)


LEDGER_ROW_SCHEMA = LedgerRowSchema()


def ledger_dicts(ledger: Iterable[LedgerRow]) -> List[Dict[str, object]]:
    return [LEDGER_ROW_SCHEMA.dump(asdict(row)) for row in ledger]


def format_ledger(ledger: Iterable[LedgerRow]) -> str:
    """JSON lines, one object per state"""
    return "".join(json.dumps(dct) + "\n" for dct in ledger_dicts(ledger))


def norm_reports(
    result: RunResult, samples: int = 64, seed: int = 0
) -> List[NormReport]:
    """One report per normal-form member and remainder member of every state"""
    reports: List[NormReport] = []
    for state, row in zip(result.history, result.ledger):
        for i, (correction, remainder) in enumerate(
            zip(state.nf.corrections(), state.remainder), start=1
        ):
            reports.append(
                norm_report(
                    f"k={state.k} N^{i}",
                    correction,
                    row.r_k,
                    result.weights,
                    samples,
                    seed,
                )
            )
            reports.append(
                norm_report(
                    f"k={state.k} R^{i}",
                    remainder,
                    row.r_k,
                    result.weights,
                    samples,
                    seed,
                )
            )
    return reports


def format_norms_csv(reports: Iterable[NormReport]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(NORM_CSV_COLUMNS)
    for report in reports:
        writer.writerow(
            [
                report.field,
                repr(report.radius),
                repr(report.box_norm),
                repr(report.sample_norm),
                report.mode,
            ]
        )
    return out.getvalue()


def generators_family(result: RunResult) -> Family:
    """The generators U_1..U_K as a family with N = K"""
    nf = result.nf
    return Family(result.generators, nf.n, result.state.trunc_degree, nf.arithmetic)


def write_run_outputs(
    prefix: str,
    result: RunResult,
    samples: int = 64,
    seed: int = 0,
) -> List[Path]:
    """
    Write PREFIX.nf.vfam, PREFIX.generators.vfam, PREFIX.ledger.jsonl and
    PREFIX.norms.csv, and return their paths
    """
    paths = [
        Path(f"{prefix}.nf.vfam"),
        Path(f"{prefix}.generators.vfam"),
        Path(f"{prefix}.ledger.jsonl"),
        Path(f"{prefix}.norms.csv"),
    ]
    nf_path, generators_path, ledger_path, norms_path = paths
    write_family_file(nf_path, result.nf.fields(), result.weights)
    write_family_file(generators_path, generators_family(result), result.weights)
    ledger_path.write_text(format_ledger(result.ledger), encoding="utf-8")
    norms_path.write_text(
        format_norms_csv(norm_reports(result, samples, seed)), encoding="utf-8"
    )
    for path in paths:
        logger.debug("wrote %s", path)
    return paths
