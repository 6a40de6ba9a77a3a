from __future__ import annotations

import json

import pytest

from editeval.cli import main


def write_jsonl(path, rows):
    path.write_text(
        "\n".join(json.dumps(r, sort_keys=True) for r in rows) + "\n",
        encoding="utf-8",
    )


@pytest.fixture
def command_dataset(tmp_path):
    path = tmp_path / "commands.jsonl"
    write_jsonl(
        path,
        [
            {
                "id": "a",
                "pred_command": "add(text, none, page 4)",
                "gold_command": "add(text, none, page 4)",
            },
            {
                "id": "b",
                "pred_command": "replace(text, old, new)",
                "gold_command": "modify(text, old, new)",
            },
        ],
    )
    return path


def test_eval_commands_json(command_dataset, capsys):
    assert main(["eval-commands", str(command_dataset)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["command_metrics"]["exact_match_pct"] == 50.0
    assert payload["command_metrics"]["n"] == 2


def test_eval_commands_markdown_out(command_dataset, tmp_path, capsys):
    out = tmp_path / "reports"
    code = main(
        ["--out", str(out), "--format", "markdown", "eval-commands", str(command_dataset)]
    )
    assert code == 0
    text = (out / "commands.markdown").read_text()
    assert "EM (%)" in text


def test_eval_bbox(tmp_path, capsys):
    path = tmp_path / "boxes.jsonl"
    write_jsonl(
        path,
        [
            {
                "id": "a",
                "pred_bbox": {"x": 0, "y": 0, "h": 4, "w": 4},
                "gold_bbox": {"x": 0, "y": 0, "h": 4, "w": 4},
            },
            {
                "id": "b",
                "pred_bbox": {"x": 0, "y": 0, "h": 4, "w": 4},
                "gold_bbox": {"x": 50, "y": 50, "h": 4, "w": 4},
            },
        ],
    )
    assert main(["eval-bbox", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["bbox"]["top1_pct"] == 50.0


def test_eval_html(tmp_path, capsys):
    pred = tmp_path / "pred.html"
    gold = tmp_path / "gold.html"
    pred.write_text("<html><body><div><p>one two</p></div></body></html>")
    gold.write_text("<html><body><div><p>one two three</p></div></body></html>")
    data = tmp_path / "docs.jsonl"
    write_jsonl(
        data,
        [{"id": "a", "pred_html": str(pred), "gold_html": str(gold)}],
    )
    assert main(["eval-html", str(data)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["structural"]["tree_edit_distance_mean"] == 0.0
    assert payload["structural"]["css_iou_mean"] == 1.0
    assert 0 < payload["structural"]["rouge_l"] < 1


def test_eval_html_writes_per_record(tmp_path, capsys):
    pred = tmp_path / "p.html"
    gold = tmp_path / "g.html"
    pred.write_text("<div><p>x</p></div>")
    gold.write_text("<div><span>x</span></div>")
    data = tmp_path / "docs.jsonl"
    write_jsonl(data, [{"id": "a", "pred_html": str(pred), "gold_html": str(gold)}])
    out = tmp_path / "out"
    assert main(["--out", str(out), "eval-html", str(data)]) == 0
    rows = [
        json.loads(line)
        for line in (out / "html_pairs.jsonl").read_text().splitlines()
    ]
    assert rows[0]["tree_edit_distance"] == 1


def test_stats(tmp_path, capsys):
    data = tmp_path / "human.jsonl"
    write_jsonl(
        data,
        [
            {
                "id": "a",
                "human_scores": [
                    {"evaluator": "e1", "sr": 1, "cc": 1, "ec": 0},
                    {"evaluator": "e2", "sr": 1, "cc": 0, "ec": 0},
                ],
            },
            {
                "id": "b",
                "human_scores": [
                    {"evaluator": "e1", "sr": 0, "cc": 1, "ec": 1},
                    {"evaluator": "e2", "sr": 1, "cc": 1, "ec": 1},
                ],
            },
        ],
    )
    assert main(["stats", str(data)]) == 0
    out = capsys.readouterr().out
    assert '"sr_pct"' in out
    assert "pooled_kappa" in out


def test_edit_pipeline_cli(pipeline_corpus, tmp_path, capsys):
    dataset_path, config = pipeline_corpus
    config_path = tmp_path / "backend.cfg"
    config_path.write_text(
        f"mode = mock\nfixtures_path = {config.fixtures_path}\n", encoding="utf-8"
    )
    out = tmp_path / "run"
    code = main(
        ["--config", str(config_path), "--out", str(out), "edit", str(dataset_path)]
    )
    assert code == 0
    assert (out / "rec000" / "edited.html").is_file()
    assert "10/10" in capsys.readouterr().out


def test_report_merge(command_dataset, tmp_path, capsys):
    out = tmp_path / "reports"
    main(["--out", str(out), "eval-commands", str(command_dataset)])
    merged = main(["--format", "markdown", "report", str(out / "commands.json")])
    assert merged == 0
    assert "EM (%)" in capsys.readouterr().out


def test_missing_dataset_is_fatal(capsys):
    assert main(["eval-commands", "/nonexistent.jsonl"]) == 1
    assert "error:" in capsys.readouterr().err


def test_bad_config_is_fatal(command_dataset, tmp_path, capsys):
    config_path = tmp_path / "bad.cfg"
    config_path.write_text("unknown_setting = 1\n", encoding="utf-8")
    code = main(
        [
            "--config",
            str(config_path),
            "--out",
            str(tmp_path / "out"),
            "edit",
            str(command_dataset),
        ]
    )
    assert code == 1
    assert "unknown setting" in capsys.readouterr().err
