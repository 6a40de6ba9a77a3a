"""Dataset ingestion: JSONL evaluation records.

One record per line. Recognized fields:

    id            required, unique string
    user_request  optional free text
    pred_command / gold_command   canonical command strings
    pred_bbox / gold_bbox         {"x":..,"y":..,"h":..,"w":..}
    pred_html / gold_html         file paths
    image         file path (document image for pipeline runs)
    human_scores  [{"evaluator":..,"sr":0|1,"cc":0|1,"ec":0|1,"star":0|1}, ...]

Malformed lines are collected with their line numbers; loading fails outright
only when no valid record remains or an id repeats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .commands import CommandError, EditCommand, parse_command
from .grounding import BoundingBox


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class HumanScore:
    evaluator: str
    sr: int
    cc: int
    ec: int
    star: int = 0


@dataclass
class EvalRecord:
    id: str
    user_request: str = ""
    pred_command: EditCommand | None = None
    gold_command: EditCommand | None = None
    pred_bbox: BoundingBox | None = None
    gold_bbox: BoundingBox | None = None
    pred_html: str | None = None
    gold_html: str | None = None
    image: str | None = None
    human_scores: list[HumanScore] = field(default_factory=list)


@dataclass(frozen=True)
class LineError:
    line: int
    message: str


def _parse_binary(value, name: str) -> int:
    if value not in (0, 1):
        raise SchemaError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


def _record_from_dict(obj: dict) -> EvalRecord:
    if not isinstance(obj, dict):
        raise SchemaError("record must be a JSON object")
    rid = obj.get("id")
    if not isinstance(rid, str) or not rid:
        raise SchemaError("missing or empty 'id'")

    def command(key: str) -> EditCommand | None:
        raw = obj.get(key)
        if raw is None:
            return None
        try:
            return parse_command(raw)
        except CommandError as exc:
            raise SchemaError(f"{key}: {exc}") from exc

    def bbox(key: str) -> BoundingBox | None:
        raw = obj.get(key)
        if raw is None:
            return None
        try:
            return BoundingBox.from_dict(raw)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"{key}: {exc}") from exc

    scores = []
    for i, entry in enumerate(obj.get("human_scores") or []):
        if not isinstance(entry, dict) or not entry.get("evaluator"):
            raise SchemaError(f"human_scores[{i}]: missing evaluator")
        scores.append(
            HumanScore(
                evaluator=str(entry["evaluator"]),
                sr=_parse_binary(entry.get("sr"), f"human_scores[{i}].sr"),
                cc=_parse_binary(entry.get("cc"), f"human_scores[{i}].cc"),
                ec=_parse_binary(entry.get("ec"), f"human_scores[{i}].ec"),
                star=_parse_binary(entry.get("star", 0), f"human_scores[{i}].star"),
            )
        )

    record = EvalRecord(
        id=rid,
        user_request=obj.get("user_request") or "",
        pred_command=command("pred_command"),
        gold_command=command("gold_command"),
        pred_bbox=bbox("pred_bbox"),
        gold_bbox=bbox("gold_bbox"),
        pred_html=obj.get("pred_html"),
        gold_html=obj.get("gold_html"),
        image=obj.get("image"),
        human_scores=scores,
    )
    has_pair = (
        (record.pred_command and record.gold_command)
        or (record.pred_bbox and record.gold_bbox)
        or (record.pred_html and record.gold_html)
    )
    if not (has_pair or record.human_scores or record.image):
        raise SchemaError(
            "record carries no pred/gold pair, human scores, or image"
        )
    return record


def load_dataset_with_errors(
    path: str | Path,
) -> tuple[list[EvalRecord], list[LineError]]:
    """Load a JSONL dataset, collecting per-line errors instead of failing.

    Raises :class:`SchemaError` when an id repeats or no valid record
    remains, and OSError for unreadable files.
    """
    records: list[EvalRecord] = []
    errors: list[LineError] = []
    seen: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                errors.append(LineError(line_no, f"invalid JSON: {exc.msg}"))
                continue
            try:
                record = _record_from_dict(obj)
            except SchemaError as exc:
                errors.append(LineError(line_no, str(exc)))
                continue
            if record.id in seen:
                raise SchemaError(
                    f"duplicate id {record.id!r} on lines {seen[record.id]} and {line_no}"
                )
            seen[record.id] = line_no
            records.append(record)
    if not records:
        raise SchemaError(f"{path}: no valid records ({len(errors)} bad lines)")
    return records, errors


def load_dataset(path: str | Path) -> list[EvalRecord]:
    records, _ = load_dataset_with_errors(path)
    return records


def write_bbox_jsonl(path: str | Path, boxes: dict[str, BoundingBox]) -> None:
    """Write {id, x, y, h, w} records, one per line, sorted by id."""
    with open(path, "w", encoding="utf-8") as fh:
        for rid in sorted(boxes):
            fh.write(json.dumps({"id": rid, **boxes[rid].to_dict()}, sort_keys=True))
            fh.write("\n")


def read_bbox_jsonl(path: str | Path) -> dict[str, BoundingBox]:
    out: dict[str, BoundingBox] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            rid = obj.get("id")
            if not isinstance(rid, str) or not rid:
                raise SchemaError(f"line {line_no}: missing id")
            if rid in out:
                raise SchemaError(f"line {line_no}: duplicate id {rid!r}")
            out[rid] = BoundingBox.from_dict(obj)
    return out
