from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from editeval import (
    BackendConfig,
    BoundingBox,
    EditAction,
    EditCommand,
    MockFixtures,
    RasterImage,
    build_edit_prompt,
    build_reformulation_prompt,
    draw_set_of_marks,
    serialize_command,
)

# six (request, predicted, ground truth) command examples with per-field
# correctness annotations: actions match in rows 3-6, components in rows
# 1 and 4-6 (4/6 each)
COMMAND_EXAMPLE_ROWS = [
    (
        'Change the date "December 1, 2000" to December 11, 2020',
        EditCommand(EditAction.REPLACE, "text", "December 1, 2000", "December, 11, 2000"),
        EditCommand(EditAction.MODIFY, "text", "1, 2000", "11, 2000"),
    ),
    (
        '2-3 lines of text in the paragraph "(p) Issues, obtain" are changed to four separate bullet points.',
        EditCommand(EditAction.REPLACE, "bullet", "dotted", "4 bullet points"),
        EditCommand(EditAction.SPLIT, "text", "paragraph", "split"),
    ),
    (
        "Moved logo from left to right.",
        EditCommand(EditAction.MOVE, "image", "left", "right"),
        EditCommand(EditAction.MOVE, "text", "left", "right"),
    ),
    (
        "Delete all data from table",
        EditCommand(EditAction.DELETE, "text", "in table", "removed"),
        EditCommand(EditAction.DELETE, "text", "in table", "removed"),
    ),
    (
        "Added page number 4 at the footer of the page.",
        EditCommand(EditAction.ADD, "text footer", "none", "Page 4"),
        EditCommand(EditAction.ADD, "text footer", "none", "Page 4"),
    ),
    (
        "removed the space after the heading fundamental corrective measures.",
        EditCommand(EditAction.MERGE, "text", "not merged", "merged; heading with text"),
        EditCommand(EditAction.MERGE, "text", "not merged", "merged; heading with text"),
    ),
]


@pytest.fixture
def command_example_pairs():
    return [(pred, gold) for _, pred, gold in COMMAND_EXAMPLE_ROWS]


def make_test_image(width: int = 64, height: int = 48, seed: int = 7) -> RasterImage:
    rng = np.random.default_rng(seed)
    return RasterImage(rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8))


def _mock_response_html(rid: str) -> str:
    return (
        "Here is the edited document:\n"
        "```html\n"
        f'<html><head><style>.page{{color:black}}</style></head>'
        f'<body><div class="page">{rid}</div></body></html>\n'
        "```\n"
    )


def build_pipeline_corpus(root: Path, n: int = 10):
    """Write a small pipeline corpus: images, dataset JSONL, and a fixtures
    file covering every prompt each flag combination can produce.

    Returns (dataset_path, BackendConfig).
    """
    root.mkdir(parents=True, exist_ok=True)
    images_dir = root / "images"
    images_dir.mkdir(exist_ok=True)
    fixtures = MockFixtures()
    lines = []
    for i in range(n):
        rid = f"rec{i:03d}"
        image = make_test_image(seed=100 + i)
        image_path = images_dir / f"{rid}.png"
        image.save_png(image_path)
        command = EditCommand(
            EditAction.MOVE, "image", "left", f"right of block {i}"
        )
        request = f"please move the logo in document {i}"
        box = BoundingBox(x=4 + i, y=6, h=20, w=24)
        record = {
            "id": rid,
            "user_request": request,
            "pred_command": serialize_command(command),
            "pred_bbox": box.to_dict(),
            "image": str(image_path),
        }
        lines.append(json.dumps(record, sort_keys=True))

        reform_prompt = build_reformulation_prompt(request, command)
        instruction = f"Move the logo to the right of block {i}."
        fixtures.add(reform_prompt, instruction)

        marked = draw_set_of_marks(image, box)
        for instr in (instruction, serialize_command(command)):
            for img, grounded in ((marked, True), (image, False)):
                fixtures.add(
                    build_edit_prompt(instr, img, grounded=grounded),
                    _mock_response_html(rid),
                )

    dataset_path = root / "dataset.jsonl"
    dataset_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    fixtures_path = root / "fixtures.json"
    fixtures.save(fixtures_path)
    config = BackendConfig(mode="mock", fixtures_path=str(fixtures_path))
    return dataset_path, config


@pytest.fixture
def pipeline_corpus(tmp_path):
    return build_pipeline_corpus(tmp_path / "corpus")
