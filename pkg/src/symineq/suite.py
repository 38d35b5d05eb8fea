"""Suite orchestration: run registered checks over a corpus, emit reports.

Given the same corpus spec and suite config, every emitted byte is identical
between runs except the timestamp, which is isolated in the single
``generated_at`` header field of the JSON document (the CSV tables carry no
timestamp at all).
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusSpec, generate_corpus
from .inequalities import CHECKERS, check_binomial_bounds, check_oneil
from .report import CheckReport

__all__ = ["SuiteConfig", "run_suite", "emit_report", "load_report", "DEFAULT_INEQUALITIES"]

DEFAULT_INEQUALITIES = (
    {"id": "s_phi_p", "p": 1.0},
    {"id": "s_phi_p", "p": 2.0},
    {"id": "oscillation_p", "p": 1.0},
    {"id": "oscillation_p", "p": 1.5},
    {"id": "oscillation_p", "p": 2.0},
    {"id": "oscillation_p", "p": 3.0},
    {"id": "derivative_p", "p": 1.0},
    {"id": "derivative_p", "p": 2.0},
    {"id": "chain_rule", "r": 2.0},
    {"id": "nash_classical"},
    {"id": "sobolev_weak", "p": 1.0},
    {"id": "sobolev_strong", "p": 1.0},
    {"id": "sobolev_exp"},
    {"id": "polya_szego", "p": 1.0},
    {"id": "binomial_bounds", "p": 2.5},
    {"id": "oneil"},
)


@dataclass(frozen=True)
class SuiteConfig:
    """Which checks to run and how; unknown inequality ids are rejected."""

    inequalities: tuple = DEFAULT_INEQUALITIES
    gradient_mode: str = "metric_max"
    constant_mode: str = "analytic"
    tolerance: float | None = None
    detail: bool = False
    corpus: CorpusSpec = field(default_factory=CorpusSpec)

    def __post_init__(self):
        for entry in self.inequalities:
            name = entry.get("id")
            if name not in CHECKERS and name not in ("binomial_bounds", "oneil"):
                raise ValueError(f"unknown inequality id {name!r}")

    def to_json(self, path=None):
        doc = {
            "inequalities": [dict(e) for e in self.inequalities],
            "gradient_mode": self.gradient_mode,
            "constant_mode": self.constant_mode,
            "tolerance": self.tolerance,
            "detail": self.detail,
            "corpus": self.corpus.to_json(),
        }
        if path is None:
            return doc
        Path(path).write_text(json.dumps(doc, indent=2), encoding="utf-8")
        return None

    @classmethod
    def from_json(cls, source) -> "SuiteConfig":
        doc = source if isinstance(source, dict) else json.loads(
            Path(source).read_text(encoding="utf-8")
        )
        corpus = CorpusSpec.from_json(doc["corpus"]) if "corpus" in doc else CorpusSpec()
        ineqs = tuple(dict(e) for e in doc.get("inequalities", DEFAULT_INEQUALITIES))
        return cls(
            inequalities=ineqs,
            gradient_mode=doc.get("gradient_mode", "metric_max"),
            constant_mode=doc.get("constant_mode", "analytic"),
            tolerance=doc.get("tolerance"),
            detail=bool(doc.get("detail", False)),
            corpus=corpus,
        )


def _entry_kwargs(entry: dict, config: SuiteConfig) -> dict:
    kwargs = {k: v for k, v in entry.items() if k != "id"}
    kwargs.setdefault("gradient_mode", config.gradient_mode)
    if config.tolerance is not None:
        kwargs.setdefault("tolerance", config.tolerance)
    if entry["id"] in ("s_phi_p", "oscillation_p", "derivative_p"):
        kwargs.setdefault("constant_mode", config.constant_mode)
        kwargs.setdefault("capture_trace", config.detail)
    return kwargs


def run_suite(config: SuiteConfig, corpus=None) -> list[CheckReport]:
    """One report per (function, inequality) plus the corpus-free sweeps.

    Checker errors become failed-with-reason rows; the suite never aborts on a
    single bad cell.  The corpus defaults to the one described by the config.
    """
    if corpus is None:
        corpus = generate_corpus(config.corpus)
    reports: list[CheckReport] = []
    n = config.corpus.dim
    for entry in config.inequalities:
        name = entry["id"]
        kwargs = _entry_kwargs(entry, config)
        if name == "binomial_bounds":
            kwargs.pop("gradient_mode", None)
            kwargs.pop("capture_trace", None)
            report = check_binomial_bounds(**kwargs)
            report.function_id = "-"
            reports.append(report)
            continue
        if name == "oneil":
            kwargs.pop("gradient_mode", None)
            for (id_a, fa), (id_b, fb) in zip(corpus[:-1], corpus[1:]):
                try:
                    report = check_oneil(fa, fb, **kwargs)
                except (ValueError, KeyError) as exc:
                    report = CheckReport.error("oneil", f"input_error: {exc}")
                report.function_id = f"{id_a}*{id_b}"
                reports.append(report)
            continue
        runner = CHECKERS[name]
        kwargs.setdefault("n", n)
        for function_id, f in corpus:
            try:
                report = runner(f, **kwargs)
            except (ValueError, KeyError) as exc:
                report = CheckReport.error(name, f"input_error: {exc}", function_id)
            report.function_id = function_id
            reports.append(report)
    return reports


def summarize(reports: list[CheckReport]) -> dict:
    """Empirical best constant and pass counts per inequality id."""
    out: dict[str, dict] = {}
    for report in reports:
        row = out.setdefault(
            report.inequality_id,
            {"best_constant": 0.0, "checks": 0, "passes": 0, "errors": 0},
        )
        row["checks"] += 1
        if report.status != "ok":
            row["errors"] += 1
        else:
            row["best_constant"] = max(row["best_constant"], report.worst_ratio)
        if report.passed:
            row["passes"] += 1
    return out


def suite_exit_code(reports: list[CheckReport]) -> int:
    """0 iff every check passed, 2 on input errors, 1 on inequality failures."""
    if any(r.status.startswith("input_error") for r in reports):
        return 2
    if all(r.passed for r in reports):
        return 0
    return 1


def _report_row(report: CheckReport, seed, detail: bool) -> dict:
    row = report.to_dict(include_trace=detail)
    row["grid"] = report.params.get("grid")
    row["gradient_mode"] = report.params.get("gradient_mode")
    row["seed"] = seed
    return row


def emit_report(
    reports: list[CheckReport], fmt: str, path, detail: bool = False, seed=None
) -> None:
    """Write the report list; JSON carries a summary block, CSV is row-per-check.

    In detail mode an additional CSV with one (function, inequality, t, lhs,
    rhs) row per trace point is written next to the main table.
    """
    path = Path(path)
    if path.parent and not path.parent.exists():
        raise FileNotFoundError(f"output directory {path.parent} does not exist")
    if fmt == "json":
        doc = {
            "generated_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "summary": summarize(reports),
            "reports": [_report_row(r, seed, detail) for r in reports],
        }
        try:
            path.write_text(json.dumps(doc, indent=1, sort_keys=True), encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
        return
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    columns = [
        "inequality_id",
        "function_id",
        "worst_ratio",
        "worst_location",
        "constant_used",
        "tolerance",
        "pass",
        "status",
        "grid",
        "gradient_mode",
        "seed",
        "params",
    ]
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for r in reports:
                doc = _report_row(r, seed, False)
                doc["params"] = json.dumps(doc["params"], sort_keys=True)
                writer.writerow([doc[c] for c in columns])
        if detail:
            trace_path = path.with_name(path.stem + "_trace" + path.suffix)
            with open(trace_path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["function_id", "inequality_id", "t", "lhs", "rhs"])
                for r in reports:
                    for t, lhs, rhs in r.trace or []:
                        writer.writerow([r.function_id, r.inequality_id, t, lhs, rhs])
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def load_report(path) -> list[CheckReport]:
    """Parse a JSON report document back into CheckReports."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [CheckReport.from_dict(row) for row in doc["reports"]]
