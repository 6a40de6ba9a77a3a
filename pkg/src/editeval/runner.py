"""End-to-end pipeline runner over a record batch.

Per record: build the instruction (reformulated through the backend, or the
raw command / request), attach the document image (set-of-marks overlay when
grounding is on), send the edit prompt to the backend, and extract the HTML
from the response. Artifacts land under ``out/<id>/``; records with an
existing ``edited.html`` are skipped, which makes interrupted batches
restartable. Backend failures are recorded per record without aborting the
batch.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .backend import BackendConfig, BackendError, complete
from .commands import serialize_command
from .dataset import EvalRecord
from .html_extract import NoHtmlFound, extract_html
from .images import BoxOutOfBounds, RasterImage, draw_set_of_marks
from .prompts import build_edit_prompt, build_reformulation_prompt


@dataclass(frozen=True)
class PipelineFlags:
    use_grounding: bool = True
    use_reformulation: bool = True


@dataclass
class RecordResult:
    id: str
    status: str  # "ok" or "error"
    error: str = ""
    from_cache: bool = False
    edited_html: str | None = None  # path


def _write_atomic(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_text(path: Path, text: str) -> None:
    _write_atomic(path, text.encode("utf-8"))


def run_record(
    record: EvalRecord,
    config: BackendConfig,
    flags: PipelineFlags,
    out_dir: Path,
) -> RecordResult:
    record_dir = out_dir / record.id
    done_marker = record_dir / "edited.html"
    if done_marker.exists():
        return RecordResult(
            record.id, "ok", from_cache=True, edited_html=str(done_marker)
        )
    record_dir.mkdir(parents=True, exist_ok=True)
    try:
        command = record.pred_command or record.gold_command

        if flags.use_reformulation and command is not None:
            reform_prompt = build_reformulation_prompt(record.user_request, command)
            _write_text(record_dir / "reformulate_prompt.txt", reform_prompt.text)
            instruction = complete(config, reform_prompt).strip()
            _write_text(record_dir / "instruction.txt", instruction)
        elif command is not None:
            instruction = serialize_command(command)
        else:
            instruction = record.user_request

        if not record.image:
            raise ValueError("record has no document image")
        image = RasterImage.load_png(record.image)

        box = record.pred_bbox or record.gold_bbox
        if flags.use_grounding and box is not None:
            prompt_image = draw_set_of_marks(image, box)
            grounded = True
        else:
            prompt_image = image
            grounded = False
        prompt = build_edit_prompt(instruction, prompt_image, grounded=grounded)

        _write_text(record_dir / "prompt.txt", prompt.text)
        _write_atomic(record_dir / "marked.png", prompt_image.to_png_bytes())

        response = complete(config, prompt)
        _write_text(record_dir / "response.txt", response)
        html = extract_html(response)
        _write_text(done_marker, html)
        return RecordResult(record.id, "ok", edited_html=str(done_marker))
    except (BackendError, NoHtmlFound, BoxOutOfBounds, OSError, ValueError) as exc:
        message = f"{type(exc).__name__}: {exc}"
        _write_text(record_dir / "error.txt", message)
        return RecordResult(record.id, "error", error=message)


def run_pipeline(
    records: Iterable[EvalRecord],
    config: BackendConfig,
    flags: PipelineFlags,
    out_dir: str | Path,
    max_workers: int | None = None,
) -> list[RecordResult]:
    """Run the pipeline over all records with a bounded worker pool.

    Results come back in input order regardless of completion order, and a
    deterministic ``run_report.json`` is written into ``out_dir``.
    """
    records = list(records)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    workers = max_workers or config.concurrency or 4
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {
            record.id: pool.submit(run_record, record, config, flags, out)
            for record in records
        }
        results = [futures[record.id].result() for record in records]

    summary = {
        "n": len(results),
        "ok": sum(1 for r in results if r.status == "ok"),
        "errors": {r.id: r.error for r in results if r.status == "error"},
        "flags": {
            "use_grounding": flags.use_grounding,
            "use_reformulation": flags.use_reformulation,
        },
    }
    _write_text(
        out / "run_report.json",
        json.dumps(summary, sort_keys=True, indent=2, ensure_ascii=True) + "\n",
    )
    return results
