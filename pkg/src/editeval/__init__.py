"""Edit-command grammar, document-structure metrics, grounding
post-processing, and an LMM editing-pipeline harness."""

from .backend import (
    AuthError,
    BackendConfig,
    FixtureMiss,
    MockFixtures,
    NetworkError,
    Timeout,
    complete,
    fixture_key,
)
from .commands import (
    EditAction,
    EditCommand,
    MalformedBody,
    UnknownAction,
    normalize_command,
    parse_command,
    serialize_command,
)
from .css import CssPairSet, css_iou, extract_css_pairs
from .dataset import (
    EvalRecord,
    HumanScore,
    SchemaError,
    load_dataset,
    load_dataset_with_errors,
    read_bbox_jsonl,
    write_bbox_jsonl,
)
from .dom import DomNode, DomTree, EmptyDocument, parse_html, serialize_html
from .grounding import (
    BoundingBox,
    EmptyRoI,
    NotNormalized,
    SegClassMap,
    argmax_labels,
    bbox_iou,
    largest_component,
    mask_to_bbox,
    top1_accuracy,
)
from .html_extract import NoHtmlFound, extract_html
from .humaneval import (
    HumanEvalSummary,
    NoHumanScores,
    aggregate_human_eval,
    total_score,
)
from .images import BoxOutOfBounds, RasterImage, TextTooLong, draw_set_of_marks, render_request_banner
from .losses import dice_loss, focal_loss, total_loss
from .prompts import (
    Prompt,
    build_edit_prompt,
    build_reformulation_prompt,
    build_replication_prompt,
)
from .report import CorrelationBlock, Report, StructuralSummary, emit_report
from .runner import PipelineFlags, RecordResult, run_pipeline, run_record
from .seg_io import read_label_png, read_segf32, write_label_png, write_segf32
from .stats import (
    ConstantVector,
    DegenerateMarginals,
    cohens_kappa,
    correlation_matrix,
    pearson,
    pooled_kappa,
)
from .text_metrics import (
    CommandMetricsReport,
    EmptyCorpus,
    corpus_command_report,
    exact_match,
    field_accuracy,
    lcs_length,
    rouge_l,
    tokenize,
    word_overlap_f1,
)
from .treedist import tree_edit_distance

__version__ = "0.1.0"

__all__ = [
    "AuthError",
    "BackendConfig",
    "BoundingBox",
    "BoxOutOfBounds",
    "CommandMetricsReport",
    "ConstantVector",
    "CorrelationBlock",
    "CssPairSet",
    "DegenerateMarginals",
    "DomNode",
    "DomTree",
    "EditAction",
    "EditCommand",
    "EmptyCorpus",
    "EmptyDocument",
    "EmptyRoI",
    "EvalRecord",
    "FixtureMiss",
    "HumanEvalSummary",
    "HumanScore",
    "MalformedBody",
    "MockFixtures",
    "NetworkError",
    "NoHtmlFound",
    "NoHumanScores",
    "NotNormalized",
    "PipelineFlags",
    "Prompt",
    "RasterImage",
    "RecordResult",
    "Report",
    "SchemaError",
    "SegClassMap",
    "StructuralSummary",
    "TextTooLong",
    "Timeout",
    "UnknownAction",
    "aggregate_human_eval",
    "argmax_labels",
    "bbox_iou",
    "build_edit_prompt",
    "build_reformulation_prompt",
    "build_replication_prompt",
    "cohens_kappa",
    "complete",
    "corpus_command_report",
    "correlation_matrix",
    "css_iou",
    "dice_loss",
    "draw_set_of_marks",
    "emit_report",
    "exact_match",
    "extract_css_pairs",
    "extract_html",
    "field_accuracy",
    "fixture_key",
    "focal_loss",
    "largest_component",
    "lcs_length",
    "load_dataset",
    "load_dataset_with_errors",
    "mask_to_bbox",
    "normalize_command",
    "parse_command",
    "parse_html",
    "pearson",
    "pooled_kappa",
    "read_bbox_jsonl",
    "read_label_png",
    "read_segf32",
    "render_request_banner",
    "rouge_l",
    "run_pipeline",
    "run_record",
    "serialize_command",
    "serialize_html",
    "tokenize",
    "top1_accuracy",
    "total_loss",
    "total_score",
    "tree_edit_distance",
    "word_overlap_f1",
    "write_bbox_jsonl",
    "write_label_png",
    "write_segf32",
]
