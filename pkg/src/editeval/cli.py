"""Command-line entry points.

Subcommands: eval-commands, eval-bbox, eval-html, reformulate, edit,
replicate, report, stats. Global flags: --config (backend settings as
key=value lines), --out (output directory), --format (json/csv/markdown).
Exits 0 only when no fatal error occurred; per-record pipeline failures are
collected in the run report rather than aborting the batch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .backend import BackendConfig, complete
from .css import css_iou, extract_css_pairs
from .dataset import (
    EvalRecord,
    SchemaError,
    load_dataset_with_errors,
)
from .dom import EmptyDocument, parse_html
from .grounding import top1_accuracy
from .html_extract import extract_html
from .humaneval import NoHumanScores, aggregate_human_eval
from .images import RasterImage
from .prompts import build_reformulation_prompt, build_replication_prompt
from .report import CorrelationBlock, Report, StructuralSummary, emit_report
from .runner import PipelineFlags, run_pipeline
from .stats import correlation_matrix, pooled_kappa
from .text_metrics import corpus_command_report, rouge_l, tokenize, word_overlap_f1
from .treedist import tree_edit_distance


class CliError(RuntimeError):
    pass


def _read_config(path: str | None) -> BackendConfig:
    config = BackendConfig()
    if not path:
        return config
    floats = {"timeout"}
    ints = {"max_retries", "concurrency"}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}") from exc
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip().strip('"')
        if not sep or not hasattr(config, key):
            raise CliError(f"config line {line_no}: unknown setting {line!r}")
        if key in floats:
            setattr(config, key, float(value))
        elif key in ints:
            setattr(config, key, int(value))
        else:
            setattr(config, key, value)
    return config


def _load_records(path: str) -> tuple[list[EvalRecord], dict]:
    try:
        records, line_errors = load_dataset_with_errors(path)
    except (OSError, SchemaError) as exc:
        raise CliError(str(exc)) from exc
    errors = {f"line {e.line}": e.message for e in line_errors}
    return records, errors


def _write_output(args, data: bytes, default_name: str) -> None:
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        target = out_dir / default_name
        target.write_bytes(data)
        print(f"wrote {target}")
    else:
        sys.stdout.write(data.decode())


def _cmd_eval_commands(args) -> int:
    records, errors = _load_records(args.dataset)
    pairs = [
        (r.pred_command, r.gold_command)
        for r in records
        if r.pred_command and r.gold_command
    ]
    if not pairs:
        raise CliError("no record carries both pred_command and gold_command")
    report = Report(command_metrics=corpus_command_report(pairs), errors=errors)
    _write_output(args, emit_report(report, args.format), f"commands.{args.format}")
    return 0


def _cmd_eval_bbox(args) -> int:
    records, errors = _load_records(args.dataset)
    pairs = [
        (r.pred_bbox, r.gold_bbox) for r in records if r.pred_bbox and r.gold_bbox
    ]
    if not pairs:
        raise CliError("no record carries both pred_bbox and gold_bbox")
    report = Report(
        bbox_top1=top1_accuracy(pairs, threshold=args.threshold),
        bbox_n=len(pairs),
        errors=errors,
    )
    _write_output(args, emit_report(report, args.format), f"bbox.{args.format}")
    return 0


def _structural_pair(pred_path: str, gold_path: str) -> dict:
    pred_text = Path(pred_path).read_text(encoding="utf-8")
    gold_text = Path(gold_path).read_text(encoding="utf-8")
    pred_tokens = tokenize(pred_text)
    gold_tokens = tokenize(gold_text)
    return {
        "tree_edit_distance": tree_edit_distance(
            parse_html(pred_text), parse_html(gold_text)
        ),
        "css_iou": css_iou(extract_css_pairs(pred_text), extract_css_pairs(gold_text)),
        "rouge_l": rouge_l(pred_tokens, gold_tokens),
        "word_f1": word_overlap_f1(pred_tokens, gold_tokens),
    }


def _cmd_eval_html(args) -> int:
    records, errors = _load_records(args.dataset)
    per_record: dict[str, dict] = {}
    for record in records:
        if not (record.pred_html and record.gold_html):
            continue
        try:
            per_record[record.id] = _structural_pair(record.pred_html, record.gold_html)
        except (OSError, EmptyDocument) as exc:
            errors[record.id] = f"{type(exc).__name__}: {exc}"
    if not per_record:
        raise CliError("no record produced structural metrics")
    n = len(per_record)
    summary = StructuralSummary(
        rouge_l=sum(v["rouge_l"] for v in per_record.values()) / n,
        word_f1=sum(v["word_f1"] for v in per_record.values()) / n,
        tree_edit_distance_mean=sum(
            v["tree_edit_distance"] for v in per_record.values()
        )
        / n,
        css_iou_mean=sum(v["css_iou"] for v in per_record.values()) / n,
        n=n,
    )
    report = Report(structural=summary, errors=errors)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "html_pairs.jsonl", "w", encoding="utf-8") as fh:
            for rid in sorted(per_record):
                fh.write(json.dumps({"id": rid, **per_record[rid]}, sort_keys=True))
                fh.write("\n")
    _write_output(args, emit_report(report, args.format), f"structural.{args.format}")
    return 0


def _cmd_reformulate(args) -> int:
    records, _ = _load_records(args.dataset)
    config = _read_config(args.config)
    if not args.out:
        raise CliError("reformulate needs --out")
    out_dir = Path(args.out)
    failures = 0
    for record in records:
        command = record.pred_command or record.gold_command
        if command is None:
            continue
        record_dir = out_dir / record.id
        record_dir.mkdir(parents=True, exist_ok=True)
        prompt = build_reformulation_prompt(record.user_request, command)
        (record_dir / "reformulate_prompt.txt").write_text(
            prompt.text, encoding="utf-8"
        )
        try:
            instruction = complete(config, prompt).strip()
        except Exception as exc:  # per-record, batch continues
            (record_dir / "error.txt").write_text(str(exc), encoding="utf-8")
            failures += 1
            continue
        (record_dir / "instruction.txt").write_text(instruction, encoding="utf-8")
    print(f"reformulated {len(records) - failures}/{len(records)} records")
    return 0


def _cmd_edit(args) -> int:
    records, _ = _load_records(args.dataset)
    config = _read_config(args.config)
    if not args.out:
        raise CliError("edit needs --out")
    flags = PipelineFlags(
        use_grounding=not args.no_grounding,
        use_reformulation=not args.no_reformulation,
    )
    results = run_pipeline(records, config, flags, args.out)
    ok = sum(1 for r in results if r.status == "ok")
    print(f"edited {ok}/{len(results)} records -> {args.out}")
    return 0


def _cmd_replicate(args) -> int:
    records, _ = _load_records(args.dataset)
    config = _read_config(args.config)
    if not args.out:
        raise CliError("replicate needs --out")
    out_dir = Path(args.out)
    ok = 0
    for record in records:
        if not record.image:
            continue
        record_dir = out_dir / record.id
        record_dir.mkdir(parents=True, exist_ok=True)
        try:
            image = RasterImage.load_png(record.image)
            prompt = build_replication_prompt(image, record.gold_bbox)
            (record_dir / "prompt.txt").write_text(prompt.text, encoding="utf-8")
            response = complete(config, prompt)
            (record_dir / "response.txt").write_text(response, encoding="utf-8")
            html = extract_html(response)
            (record_dir / "replicated.html").write_text(html, encoding="utf-8")
            ok += 1
        except Exception as exc:
            (record_dir / "error.txt").write_text(str(exc), encoding="utf-8")
    print(f"replicated {ok}/{len(records)} records -> {args.out}")
    return 0


def _cmd_report(args) -> int:
    merged = Report()
    for path in args.reports:
        try:
            merged = merged.merge(
                Report.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
            )
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise CliError(f"{path}: {exc}") from exc
    _write_output(args, emit_report(merged, args.format), f"report.{args.format}")
    return 0


def _cmd_stats(args) -> int:
    records, errors = _load_records(args.dataset)
    try:
        human = aggregate_human_eval(records)
    except NoHumanScores as exc:
        raise CliError(str(exc)) from exc
    report = Report(human=human, errors=errors)

    kappas: dict[str, float | None] = {}
    for metric in ("sr", "cc", "ec"):
        try:
            kappas[metric] = pooled_kappa(records, metric)
        except ValueError:
            kappas[metric] = None

    scored = [r for r in records if r.human_scores]
    if all(r.pred_html and r.gold_html for r in scored):
        series: dict[str, list[float]] = {
            "sr": [],
            "cc": [],
            "ec": [],
            "tree_edit_distance": [],
            "css_iou": [],
            "rouge_l": [],
            "word_f1": [],
        }
        for record in scored:
            n_eval = len(record.human_scores)
            series["sr"].append(sum(s.sr for s in record.human_scores) / n_eval)
            series["cc"].append(sum(s.cc for s in record.human_scores) / n_eval)
            series["ec"].append(sum(s.ec for s in record.human_scores) / n_eval)
            pair = _structural_pair(record.pred_html, record.gold_html)
            series["tree_edit_distance"].append(pair["tree_edit_distance"])
            series["css_iou"].append(pair["css_iou"])
            series["rouge_l"].append(pair["rouge_l"])
            series["word_f1"].append(pair["word_f1"])
        if len(scored) >= 2:
            labels, matrix = correlation_matrix(series)
            report.correlations = CorrelationBlock(
                labels=labels, matrix=matrix, n=len(scored)
            )

    _write_output(args, emit_report(report, args.format), f"stats.{args.format}")
    kappa_payload = (
        json.dumps({"pooled_kappa": kappas}, sort_keys=True, indent=2) + "\n"
    )
    if args.out:
        (Path(args.out) / "kappa.json").write_text(kappa_payload, encoding="utf-8")
    else:
        sys.stdout.write(kappa_payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="editeval",
        description="Edit-command, structure, and grounding evaluation harness",
    )
    parser.add_argument("--config", help="backend config file (key=value lines)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument(
        "--format",
        choices=["json", "csv", "markdown"],
        default="json",
        help="report format (default json)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-commands", help="command-generation metrics")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_eval_commands)

    p = sub.add_parser("eval-bbox", help="RoI box top-1 accuracy")
    p.add_argument("dataset")
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=_cmd_eval_bbox)

    p = sub.add_parser("eval-html", help="DOM/CSS structural metrics")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_eval_html)

    p = sub.add_parser("reformulate", help="rewrite commands into instructions")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_reformulate)

    p = sub.add_parser("edit", help="run the editing pipeline")
    p.add_argument("dataset")
    p.add_argument("--no-grounding", action="store_true")
    p.add_argument("--no-reformulation", action="store_true")
    p.set_defaults(func=_cmd_edit)

    p = sub.add_parser("replicate", help="image-to-HTML replication")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_replicate)

    p = sub.add_parser("report", help="merge and render report JSON files")
    p.add_argument("reports", nargs="+")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("stats", help="human-eval aggregation and correlations")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
