"""Command-line harness: corpus generation, single checks, suites, re-rendering.

Exit codes: 0 all checks passed, 1 at least one inequality failed, 2 input
error.  The default output directory comes from ``SYMINEQ_OUT`` (falling back
to the working directory); flags override config-file values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import CorpusSpec, generate_corpus
from .inequalities import CHECKERS
from .isoperimetry import ProfileHandle
from .measure import GridFunction
from .suite import SuiteConfig, emit_report, load_report, run_suite, suite_exit_code

__all__ = ["main"]


def _out_dir(value) -> Path:
    path = Path(value or os.environ.get("SYMINEQ_OUT") or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _cmd_corpus(args) -> int:
    spec = CorpusSpec.from_json(args.spec) if args.spec else CorpusSpec()
    out = _out_dir(args.out)
    corpus = generate_corpus(spec)
    manifest = []
    for function_id, gf in corpus:
        name = f"{function_id}.json"
        gf.to_json(out / name)
        manifest.append({"id": function_id, "file": name})
    spec.to_json(out / "corpus_spec.json")
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1), encoding="utf-8")
    print(f"wrote {len(corpus)} functions to {out}")
    return 0


def _cmd_check(args) -> int:
    if args.ineq not in CHECKERS:
        print(f"unknown inequality id {args.ineq!r}", file=sys.stderr)
        return 2
    try:
        f = GridFunction.from_json(args.fn)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load function {args.fn}: {exc}", file=sys.stderr)
        return 2
    kwargs = {}
    if args.phi:
        kwargs["phi"] = ProfileHandle.from_json(args.phi)
    if args.p is not None:
        kwargs["p"] = args.p
    kwargs["n"] = args.n if args.n is not None else f.dim
    if args.mode:
        kwargs["gradient_mode"] = args.mode
    if args.tol is not None:
        kwargs["tolerance"] = args.tol
    try:
        report = CHECKERS[args.ineq](f, **kwargs)
    except (ValueError, KeyError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report.to_dict(), indent=1, sort_keys=True))
    return 0 if report.passed else 1


def _cmd_suite(args) -> int:
    try:
        config = SuiteConfig.from_json(args.config) if args.config else SuiteConfig()
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load config: {exc}", file=sys.stderr)
        return 2
    overrides = {}
    if args.gradient_mode:
        overrides["gradient_mode"] = args.gradient_mode
    if args.tol is not None:
        overrides["tolerance"] = args.tol
    if args.constant_mode:
        overrides["constant_mode"] = args.constant_mode
    if args.detail:
        overrides["detail"] = True
    if overrides:
        doc = config.to_json()
        doc.update(overrides)
        config = SuiteConfig.from_json(doc)
    out = _out_dir(args.out)
    reports = run_suite(config)
    seed = config.corpus.seed
    emit_report(reports, "json", out / "reports.json", detail=config.detail, seed=seed)
    emit_report(reports, "csv", out / "reports.csv", detail=config.detail, seed=seed)
    code = suite_exit_code(reports)
    passed = sum(1 for r in reports if r.passed)
    print(f"{passed}/{len(reports)} checks passed; reports in {out}")
    return code


def _cmd_report(args) -> int:
    src = Path(args.input)
    if src.is_dir():
        src = src / "reports.json"
    try:
        reports = load_report(src)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load report {src}: {exc}", file=sys.stderr)
        return 2
    out = _out_dir(args.out)
    target = out / f"reports_rendered.{args.format}"
    emit_report(reports, args.format, target, detail=args.detail)
    print(f"re-rendered {len(reports)} reports to {target}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symineq",
        description="Rearrangement calculus and symmetrization-inequality checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_corpus = sub.add_parser("corpus", help="generate a deterministic corpus")
    p_corpus.add_argument("--spec", help="corpus spec JSON file")
    p_corpus.add_argument("--out", help="output directory (default: $SYMINEQ_OUT or .)")
    p_corpus.set_defaults(func=_cmd_corpus)

    p_check = sub.add_parser("check", help="run one inequality on one function")
    p_check.add_argument("--ineq", required=True, help=f"one of {sorted(CHECKERS)}")
    p_check.add_argument("--fn", required=True, help="grid function JSON file")
    p_check.add_argument("--phi", help="profile handle JSON file")
    p_check.add_argument("--p", type=float)
    p_check.add_argument("--n", type=int)
    p_check.add_argument("--mode", choices=("metric_max", "euclidean_central"))
    p_check.add_argument("--tol", type=float)
    p_check.set_defaults(func=_cmd_check)

    p_suite = sub.add_parser("suite", help="run a full suite over a corpus")
    p_suite.add_argument("--config", help="suite config JSON file")
    p_suite.add_argument("--out", help="output directory (default: $SYMINEQ_OUT or .)")
    p_suite.add_argument("--gradient-mode", choices=("metric_max", "euclidean_central"))
    p_suite.add_argument("--tol", type=float)
    p_suite.add_argument("--constant-mode", choices=("analytic", "fitted"))
    p_suite.add_argument("--detail", action="store_true", help="emit per-t traces")
    p_suite.set_defaults(func=_cmd_suite)

    p_report = sub.add_parser("report", help="re-render an emitted report")
    p_report.add_argument("--in", dest="input", required=True, help="report file or directory")
    p_report.add_argument("--format", choices=("json", "csv"), default="csv")
    p_report.add_argument("--out", help="output directory (default: $SYMINEQ_OUT or .)")
    p_report.add_argument("--detail", action="store_true")
    p_report.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
