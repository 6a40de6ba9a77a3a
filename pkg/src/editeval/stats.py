"""Agreement and correlation statistics: Cohen's kappa and Pearson's r."""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Sequence

from .dataset import EvalRecord


class DegenerateMarginals(ValueError):
    """Chance agreement is 1 (both raters constant and equal); kappa undefined."""


class ConstantVector(ValueError):
    """Pearson correlation is undefined for a constant input."""


def cohens_kappa(rater_a: Sequence[int], rater_b: Sequence[int]) -> float:
    """Cohen's kappa for two binary raters over the same items."""
    if len(rater_a) != len(rater_b):
        raise ValueError("rater vectors must have equal length")
    n = len(rater_a)
    if n == 0:
        raise ValueError("rater vectors must be non-empty")
    for v in (*rater_a, *rater_b):
        if v not in (0, 1):
            raise ValueError(f"ratings must be binary, got {v!r}")
    agree = sum(1 for a, b in zip(rater_a, rater_b) if a == b)
    p_o = agree / n
    pa1 = sum(rater_a) / n
    pb1 = sum(rater_b) / n
    p_e = pa1 * pb1 + (1 - pa1) * (1 - pb1)
    if p_e == 1.0:
        raise DegenerateMarginals("both raters constant and equal; kappa undefined")
    return (p_o - p_e) / (1 - p_e)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    if len(xs) != len(ys):
        raise ValueError("vectors must have equal length")
    n = len(xs)
    if n < 2:
        raise ValueError("pearson needs at least 2 points")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    var_x = sum(d * d for d in dx)
    var_y = sum(d * d for d in dy)
    if var_x == 0.0 or var_y == 0.0:
        raise ConstantVector("correlation undefined for a constant vector")
    cov = sum(a * b for a, b in zip(dx, dy))
    return cov / math.sqrt(var_x * var_y)


def pooled_kappa(records: Iterable[EvalRecord], metric: str) -> float:
    """Corpus-level kappa for one human metric ("sr", "cc", or "ec").

    Decisions are pooled over every (record, evaluator-pair): for each record
    with two or more evaluators, each pair of evaluators (ordered by name)
    contributes one decision pair.
    """
    if metric not in ("sr", "cc", "ec"):
        raise ValueError(f"metric must be sr, cc, or ec, not {metric!r}")
    side_a: list[int] = []
    side_b: list[int] = []
    for record in records:
        by_name = sorted(record.human_scores, key=lambda s: s.evaluator)
        for first, second in combinations(by_name, 2):
            side_a.append(getattr(first, metric))
            side_b.append(getattr(second, metric))
    if not side_a:
        raise ValueError("no record has two or more evaluators")
    return cohens_kappa(side_a, side_b)


def correlation_matrix(
    series: dict[str, Sequence[float]],
) -> tuple[list[str], list[list[float | None]]]:
    """Pairwise Pearson matrix over named, equal-length series.

    Undefined cells (constant vectors) are None; the diagonal is 1.0.
    """
    labels = sorted(series)
    lengths = {len(series[name]) for name in labels}
    if len(lengths) > 1:
        raise ValueError(f"series lengths differ: {sorted(lengths)}")
    matrix: list[list[float | None]] = []
    for a in labels:
        row: list[float | None] = []
        for b in labels:
            if a == b:
                row.append(1.0)
                continue
            try:
                row.append(pearson(series[a], series[b]))
            except (ConstantVector, ValueError):
                row.append(None)
        matrix.append(row)
    return labels, matrix
