"""Command-line entry point for the toolkit.

Subcommands: ``scan`` (reports in, verdicts out), ``train`` (labeled
candidates to a model file), ``evaluate`` (model + benchmark to a
metrics report, optionally with rendered figures), ``sample`` (candidate
sampling for labeling), ``kappa`` (inter-rater agreement), ``crawl``
(fetch issue reports from a repository), and ``serve`` (run the
detection service).  Machine-readable output is pure JSON on stdout;
human logs go to stderr.  Exit codes: 0 success, 1 runtime error, 2
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, classify, metrics, preprocess, window
from . import patterns as patterns_mod
from .githubclient import RepoRef, crawl_issues
from .ingest import load_reports, write_reports
from .pipeline import DetectionPipeline, default_model


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _build_pipeline(args) -> DetectionPipeline:
    rules = preprocess.compile_rules(getattr(args, "rules", None))
    registry = patterns_mod.load_patterns(getattr(args, "patterns", None))
    model_path = getattr(args, "model", None)
    model = classify.load_model(model_path) if model_path else default_model()
    if getattr(args, "threshold", None) is not None:
        model.threshold = args.threshold
    return DetectionPipeline(
        rules=rules, registry=registry, model=model, radius=args.radius
    )


def _labeled_windows(args):
    """Reconstruct (window, label) pairs from a report file and a label CSV."""
    reports = load_reports(args.reports, format=args.format)
    rules = preprocess.compile_rules(getattr(args, "rules", None))
    cleaned = {r.id: preprocess.clean(r.body, rules).cleaned for r in reports}
    labels = bench.load_label_file(args.labels)
    pairs = []
    for (report_id, span, _pattern), label in labels.entries.items():
        if report_id not in cleaned:
            raise ValueError(f"label references unknown report {report_id!r}")
        w = window.extract_window(cleaned[report_id], span, args.radius)
        pairs.append((w, label))
    return pairs


def _cmd_scan(args) -> int:
    pipeline = _build_pipeline(args)
    reports = load_reports(args.reports, format=args.format)
    out = []
    for report in reports:
        _, verdicts = pipeline.detect(report.body, report_id=report.id)
        for v in verdicts:
            out.append(
                {
                    "report_id": report.id,
                    "start": v.candidate.span[0],
                    "end": v.candidate.span[1],
                    "matched": v.candidate.text,
                    "pattern": v.candidate.pattern_name,
                    "score": v.score,
                    "is_breach": v.is_breach,
                }
            )
    text = json.dumps(out, indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        _log(f"wrote {len(out)} verdicts to {args.output}")
    else:
        print(text)
    return 0


def _cmd_train(args) -> int:
    pairs = _labeled_windows(args)
    data = [(classify.featurize(w), label) for w, label in pairs]
    model = classify.train(
        data,
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        seed=args.seed,
        threshold=args.threshold if args.threshold is not None else 0.5,
    )
    classify.save_model(model, args.output)
    _log(f"trained on {len(data)} instances; model written to {args.output}")
    return 0


def _cmd_evaluate(args) -> int:
    pairs = _labeled_windows(args)
    model = classify.load_model(args.model)
    verdicts = [classify.predict(model, w).is_breach for w, _ in pairs]
    labels = [label for _, label in pairs]
    cm = metrics.confusion_from(verdicts, labels)
    report = metrics.compute_metrics(cm, beta=args.beta)
    if args.report_dir:
        from . import figures

        outdir = Path(args.report_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        figures.render_confusion_matrix(cm, outdir / "confusion_matrix.png")
        figures.render_metric_bars(report, outdir / "metrics_bars.png")
        with open(outdir / "metrics.csv", "w", encoding="utf-8") as fh:
            fields = list(report.to_dict())
            fh.write(",".join(fields) + "\n")
            fh.write(",".join(str(report.to_dict()[k]) for k in fields) + "\n")
        _log(f"figures and metrics.csv written to {outdir}")
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def _cmd_sample(args) -> int:
    pipeline = _build_pipeline(args)
    reports = load_reports(args.reports, format=args.format)
    candidates = []
    for report in reports:
        _, cands = pipeline.candidates(report.body, report_id=report.id)
        candidates.extend(cands)
    sampled = bench.sample_candidates(candidates, args.fraction, args.seed)
    bench.write_label_template(sampled, args.output)
    _log(f"sampled {len(sampled)} of {len(candidates)} candidates to {args.output}")
    return 0


def _cmd_kappa(args) -> int:
    primary = bench.load_label_file(args.primary)
    secondary = bench.load_label_file(args.secondary)
    overlap = [k for k in primary.entries if k in secondary.entries]
    if not overlap:
        raise ValueError("no overlapping candidate keys between the label files")
    cells = {(True, True): 0, (True, False): 0, (False, True): 0, (False, False): 0}
    for k in overlap:
        cells[(primary.entries[k], secondary.entries[k])] += 1
    m = metrics.AgreementMatrix(
        both_pos=cells[(True, True)],
        r1pos_r2neg=cells[(True, False)],
        r1neg_r2pos=cells[(False, True)],
        both_neg=cells[(False, False)],
    )
    print(f"{metrics.cohen_kappa(m):.3f}")
    return 0


def _cmd_crawl(args) -> int:
    repo = RepoRef.parse(args.repo)
    reports = crawl_issues(
        repo,
        auth_token=args.token,
        max_issues=args.max_issues,
        api_base=args.api_base,
    )
    write_reports(reports, args.output, format=args.format)
    _log(f"crawled {len(reports)} issues from {args.repo} to {args.output}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    pipeline = _build_pipeline(args)
    app = create_app(ServiceConfig(pipeline=pipeline, allowed_origin=args.origin))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rules", help="cleaning rule file (JSONL), default built-in")
    p.add_argument("--patterns", help="secret pattern file (JSONL), default built-in")
    p.add_argument("--radius", type=int, default=window.DEFAULT_RADIUS,
                   help="context window radius in characters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="issuescan",
                                     description="Secret-breach detection for issue reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="scan a report corpus and emit verdicts")
    p.add_argument("--reports", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--model", help="model file, default heuristic model")
    p.add_argument("--threshold", type=float)
    p.add_argument("--output")
    _add_pipeline_flags(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("train", help="train a classifier from labeled candidates")
    p.add_argument("--reports", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--labels", required=True, help="label CSV")
    p.add_argument("--output", required=True, help="model file to write")
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float)
    p.add_argument("--rules")
    p.add_argument("--radius", type=int, default=window.DEFAULT_RADIUS)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="evaluate a model against a benchmark")
    p.add_argument("--reports", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--labels", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--beta", type=float, required=True,
                   help="beta for the F-beta score (no default on purpose)")
    p.add_argument("--report-dir", help="also render figures and metrics.csv here")
    p.add_argument("--rules")
    p.add_argument("--radius", type=int, default=window.DEFAULT_RADIUS)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("sample", help="sample candidates into a label template")
    p.add_argument("--reports", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--fraction", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    _add_pipeline_flags(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("kappa", help="inter-rater agreement of two label files")
    p.add_argument("primary")
    p.add_argument("secondary")
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("crawl", help="crawl issue reports from a repository")
    p.add_argument("--repo", required=True, help="owner/name")
    p.add_argument("--max-issues", type=int, default=1000)
    p.add_argument("--token", help="API token; falls back to SCANNER_API_TOKEN")
    p.add_argument("--api-base", default="https://api.github.com")
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.set_defaults(func=_cmd_crawl)

    p = sub.add_parser("serve", help="run the HTTP detection service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--model")
    p.add_argument("--threshold", type=float)
    p.add_argument("--origin", default="*", help="allowed CORS origin")
    _add_pipeline_flags(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except Exception as exc:
        _log(f"error: {exc}")
        return 1


def main() -> None:
    sys.exit(run_cli())
