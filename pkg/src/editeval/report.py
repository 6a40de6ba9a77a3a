"""Aggregated metric reports and their JSON / CSV / Markdown renderings.

Column names and ordering follow the result tables this harness feeds:
command metrics as "EM (%) / Word Overlap F1 / ROUGE-L / Action (%) /
Component (%)", structural metrics as "ROUGE-L / Word Overlap F1 / Tree Edit
Distance / CSS IoU", and human metrics as "SR (%) / EC (%) / CC (%) / Total
Score (%)". Every mean carries its n. Output bytes are deterministic.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .humaneval import HumanEvalSummary
from .text_metrics import CommandMetricsReport


@dataclass(frozen=True)
class StructuralSummary:
    rouge_l: float
    word_f1: float
    tree_edit_distance_mean: float
    css_iou_mean: float
    n: int

    def to_dict(self) -> dict:
        return {
            "rouge_l": self.rouge_l,
            "word_f1": self.word_f1,
            "tree_edit_distance_mean": self.tree_edit_distance_mean,
            "css_iou_mean": self.css_iou_mean,
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StructuralSummary":
        return cls(
            rouge_l=d["rouge_l"],
            word_f1=d["word_f1"],
            tree_edit_distance_mean=d["tree_edit_distance_mean"],
            css_iou_mean=d["css_iou_mean"],
            n=d["n"],
        )


@dataclass(frozen=True)
class CorrelationBlock:
    labels: list[str]
    matrix: list[list[float | None]]
    n: int

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.matrix, "n": self.n}

    @classmethod
    def from_dict(cls, d: dict) -> "CorrelationBlock":
        return cls(labels=list(d["labels"]), matrix=d["matrix"], n=d["n"])


@dataclass
class Report:
    command_metrics: CommandMetricsReport | None = None
    bbox_top1: float | None = None
    bbox_n: int | None = None
    structural: StructuralSummary | None = None
    human: HumanEvalSummary | None = None
    correlations: CorrelationBlock | None = None
    errors: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {}
        if self.command_metrics is not None:
            out["command_metrics"] = self.command_metrics.to_dict()
        if self.bbox_top1 is not None:
            out["bbox"] = {"top1_pct": self.bbox_top1, "n": self.bbox_n}
        if self.structural is not None:
            out["structural"] = self.structural.to_dict()
        if self.human is not None:
            out["human"] = self.human.to_dict()
        if self.correlations is not None:
            out["correlations"] = self.correlations.to_dict()
        if self.errors:
            out["errors"] = self.errors
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        report = cls()
        if "command_metrics" in d:
            report.command_metrics = CommandMetricsReport.from_dict(d["command_metrics"])
        if "bbox" in d:
            report.bbox_top1 = d["bbox"]["top1_pct"]
            report.bbox_n = d["bbox"]["n"]
        if "structural" in d:
            report.structural = StructuralSummary.from_dict(d["structural"])
        if "human" in d:
            report.human = HumanEvalSummary.from_dict(d["human"])
        if "correlations" in d:
            report.correlations = CorrelationBlock.from_dict(d["correlations"])
        report.errors = dict(d.get("errors", {}))
        return report

    def merge(self, other: "Report") -> "Report":
        """Fill empty sections of this report from another."""
        return Report(
            command_metrics=self.command_metrics or other.command_metrics,
            bbox_top1=self.bbox_top1 if self.bbox_top1 is not None else other.bbox_top1,
            bbox_n=self.bbox_n if self.bbox_n is not None else other.bbox_n,
            structural=self.structural or other.structural,
            human=self.human or other.human,
            correlations=self.correlations or other.correlations,
            errors={**other.errors, **self.errors},
        )


_COMMAND_COLUMNS = [
    ("EM (%)", "exact_match_pct"),
    ("Word Overlap F1", "word_overlap_f1"),
    ("ROUGE-L", "rouge_l"),
    ("Action (%)", "action_pct"),
    ("Component (%)", "component_pct"),
    ("n", "n"),
]
_STRUCTURAL_COLUMNS = [
    ("ROUGE-L", "rouge_l"),
    ("Word Overlap F1", "word_f1"),
    ("Tree Edit Distance", "tree_edit_distance_mean"),
    ("CSS IoU", "css_iou_mean"),
    ("n", "n"),
]
_HUMAN_COLUMNS = [
    ("SR (%)", "sr_pct"),
    ("EC (%)", "ec_pct"),
    ("CC (%)", "cc_pct"),
    ("Total Score (%)", "total_pct"),
    ("n", "n"),
]
_BBOX_COLUMNS = [("Top-1 Acc (%)", "top1_pct"), ("n", "n")]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.4f}".rstrip("0").rstrip(".")
    return str(value)


def _sections(report: Report) -> list[tuple[str, list[tuple[str, str]], dict]]:
    sections = []
    if report.command_metrics is not None:
        sections.append(("commands", _COMMAND_COLUMNS, report.command_metrics.to_dict()))
    if report.bbox_top1 is not None:
        sections.append(
            ("bbox", _BBOX_COLUMNS, {"top1_pct": report.bbox_top1, "n": report.bbox_n})
        )
    if report.structural is not None:
        sections.append(("structural", _STRUCTURAL_COLUMNS, report.structural.to_dict()))
    if report.human is not None:
        sections.append(("human", _HUMAN_COLUMNS, report.human.to_dict()))
    return sections


def _emit_json(report: Report) -> bytes:
    return (
        json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    ).encode()


def _emit_csv(report: Report) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["section", "metric", "value"])
    for name, columns, values in _sections(report):
        for header, key in columns:
            writer.writerow([name, header, _fmt(values.get(key))])
    return buf.getvalue().encode()


def _emit_markdown(report: Report) -> bytes:
    lines: list[str] = []
    titles = {
        "commands": "Command Generation",
        "bbox": "RoI Detection",
        "structural": "Document Editing (Automated)",
        "human": "Document Editing (Human)",
    }
    for name, columns, values in _sections(report):
        lines.append(f"## {titles[name]}")
        lines.append("")
        lines.append("| " + " | ".join(header for header, _ in columns) + " |")
        lines.append("|" + "|".join(" --- " for _ in columns) + "|")
        lines.append(
            "| " + " | ".join(_fmt(values.get(key)) for _, key in columns) + " |"
        )
        lines.append("")
    if report.correlations is not None:
        block = report.correlations
        lines.append("## Correlations (Pearson)")
        lines.append("")
        lines.append("| | " + " | ".join(block.labels) + " |")
        lines.append("|" + "|".join(" --- " for _ in range(len(block.labels) + 1)) + "|")
        for label, row in zip(block.labels, block.matrix):
            cells = " | ".join("n/a" if v is None else f"{v:.2f}" for v in row)
            lines.append(f"| {label} | {cells} |")
        lines.append("")
    if not lines:
        lines.append("(empty report)")
        lines.append("")
    return "\n".join(lines).encode()


def emit_report(report: Report, format: str = "json") -> bytes:
    """Render a report to deterministic bytes in json, csv, or markdown."""
    if format == "json":
        return _emit_json(report)
    if format == "csv":
        return _emit_csv(report)
    if format == "markdown":
        return _emit_markdown(report)
    raise ValueError(f"unknown report format {format!r}")
