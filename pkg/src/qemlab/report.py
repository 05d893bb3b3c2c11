"""Tabular reports over evaluated run records."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .config import ExperimentConfig
from .extrapolation import ORDERS
from .pipeline import Evaluation, RunRecord, evaluate_pipeline
from .transforms import RC_TABLE, RC_TABLE_VERSION

__all__ = ["REPORT_COLUMNS", "evaluate_all", "report_csv", "tables_text", "tables_dict"]

REPORT_COLUMNS = ("pipeline", "fit", "T", "S", "R", "REM_median_upper", "PSR", "M")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def evaluate_all(records: Iterable[RunRecord], fits: Sequence[str] = tuple(ORDERS)) -> list[Evaluation]:
    return [evaluate_pipeline(rec, fit=fit) for rec in records for fit in fits]


def report_csv(evaluations: Iterable[Evaluation]) -> str:
    """One row per (pipeline, fit). PSR and M are left blank when the
    one-sample test does not reject (success not significantly above 0.5)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for ev in evaluations:
        q = ev.quality
        name = ev.pipeline if ev.folding == "local" else f"{ev.pipeline}-{ev.folding}"
        w.writerow([
            name, ev.fit, _fmt(q.T), _fmt(q.S), _fmt(q.R), _fmt(q.epsilon),
            _fmt(q.psr) if q.significant else "",
            _fmt(q.M) if q.significant else "",
        ])
    return buf.getvalue()


def tables_dict(config: ExperimentConfig | None = None) -> dict:
    out = {
        "rc_table_version": RC_TABLE_VERSION,
        "rc_table": [[r.p, r.q, r.r, r.s] for r in RC_TABLE],
    }
    if config is not None:
        out["param_pairs"] = [[p.gamma, p.beta] for p in config.param_pairs]
    return out


def tables_text(config: ExperimentConfig | None = None) -> str:
    return json.dumps(tables_dict(config), indent=2)
