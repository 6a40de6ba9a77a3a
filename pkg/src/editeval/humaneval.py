"""Human-evaluation aggregation.

Each evaluator gives binary style-replication (SR), content-replication (CC),
and edit-correctness (EC) judgments per document. Per document, each metric
is the mean over evaluators; the corpus percentage is the mean over documents
times 100; the total score is the plain mean of the three percentages, which
is the percentage form of the per-document summed score in [0, 3].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dataset import EvalRecord


class NoHumanScores(ValueError):
    """No record carries any evaluator judgments."""


@dataclass(frozen=True)
class HumanEvalSummary:
    sr_pct: float
    ec_pct: float
    cc_pct: float
    total_pct: float
    n: int

    def to_dict(self) -> dict:
        return {
            "sr_pct": self.sr_pct,
            "ec_pct": self.ec_pct,
            "cc_pct": self.cc_pct,
            "total_pct": self.total_pct,
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HumanEvalSummary":
        return cls(
            sr_pct=d["sr_pct"],
            ec_pct=d["ec_pct"],
            cc_pct=d["cc_pct"],
            total_pct=d["total_pct"],
            n=d["n"],
        )


def total_score(sr_pct: float, ec_pct: float, cc_pct: float) -> float:
    """Unified score: the mean of the three corpus percentages."""
    return (sr_pct + ec_pct + cc_pct) / 3.0


def record_means(record: EvalRecord) -> tuple[float, float, float]:
    """Per-document (sr, cc, ec) means over evaluators."""
    scores = record.human_scores
    if not scores:
        raise NoHumanScores(f"record {record.id} has no human scores")
    n = len(scores)
    return (
        sum(s.sr for s in scores) / n,
        sum(s.cc for s in scores) / n,
        sum(s.ec for s in scores) / n,
    )


def aggregate_human_eval(records: Iterable[EvalRecord]) -> HumanEvalSummary:
    """Aggregate SR/EC/CC over all records that carry human scores."""
    scored = [r for r in records if r.human_scores]
    if not scored:
        raise NoHumanScores("no record carries human scores")
    sr = cc = ec = 0.0
    for record in scored:
        r_sr, r_cc, r_ec = record_means(record)
        sr += r_sr
        cc += r_cc
        ec += r_ec
    n = len(scored)
    sr_pct = 100.0 * sr / n
    cc_pct = 100.0 * cc / n
    ec_pct = 100.0 * ec / n
    return HumanEvalSummary(
        sr_pct=sr_pct,
        ec_pct=ec_pct,
        cc_pct=cc_pct,
        total_pct=total_score(sr_pct, ec_pct, cc_pct),
        n=n,
    )
