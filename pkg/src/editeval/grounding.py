"""Segmentation-map post-processing and box-level grounding metrics.

A segmentation map carries, per pixel, either class scores (H, W, K) that sum
to 1, or hard class labels (H, W). Class 0 is the region of interest, class 1
the rendered request text, class 2 the remaining document. The RoI box is
recovered by taking the largest 8-connected class-0 component, keeping pixels
within the 95th-percentile distance of its centroid, and bounding the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROI_CLASS = 0
REQUEST_TEXT_CLASS = 1
BACKGROUND_CLASS = 2

SCORE_SUM_TOLERANCE = 1e-4


class NotNormalized(ValueError):
    """Per-pixel class scores do not sum to 1 within tolerance."""


class EmptyRoI(ValueError):
    """No pixel carries the region-of-interest class."""


class EmptyCorpus(ValueError):
    """A corpus-level metric received no pairs."""


@dataclass(frozen=True)
class BoundingBox:
    """Rectangle as (x, y, h, w): (x, y) top-left, h height, w width, in pixels."""

    x: int
    y: int
    h: int
    w: int

    def __post_init__(self) -> None:
        if self.h <= 0 or self.w <= 0:
            raise ValueError(f"box must have positive extent, got {self}")

    @property
    def area(self) -> int:
        return self.h * self.w

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "h": self.h, "w": self.w}

    @classmethod
    def from_dict(cls, d: dict) -> "BoundingBox":
        return cls(x=int(d["x"]), y=int(d["y"]), h=int(d["h"]), w=int(d["w"]))


class SegClassMap:
    """Per-pixel class scores or labels over ``k`` classes."""

    def __init__(
        self,
        *,
        scores: np.ndarray | None = None,
        labels: np.ndarray | None = None,
        k: int = 3,
    ) -> None:
        if (scores is None) == (labels is None):
            raise ValueError("provide exactly one of scores or labels")
        if scores is not None:
            scores = np.asarray(scores, dtype=np.float32)
            if scores.ndim != 3 or scores.shape[2] != k:
                raise ValueError(f"scores must be (H, W, {k}), got {scores.shape}")
            self.height, self.width = scores.shape[:2]
        else:
            labels = np.asarray(labels)
            if labels.ndim != 2:
                raise ValueError(f"labels must be (H, W), got {labels.shape}")
            if labels.size and (labels.min() < 0 or labels.max() >= k):
                raise ValueError(f"label values must be in [0, {k})")
            labels = labels.astype(np.uint8)
            self.height, self.width = labels.shape
        self.k = k
        self.scores = scores
        self.labels = labels

    @classmethod
    def from_scores(cls, scores: np.ndarray, k: int = 3) -> "SegClassMap":
        return cls(scores=scores, k=k)

    @classmethod
    def from_labels(cls, labels: np.ndarray, k: int = 3) -> "SegClassMap":
        return cls(labels=labels, k=k)

    def has_scores(self) -> bool:
        return self.scores is not None


def argmax_labels(seg: SegClassMap) -> SegClassMap:
    """Collapse class scores to hard labels; ties break toward class 0.

    Raises :class:`NotNormalized` if any pixel's scores sum differs from 1
    by more than ``SCORE_SUM_TOLERANCE``.
    """
    if not seg.has_scores():
        return seg
    sums = seg.scores.sum(axis=2)
    off = np.abs(sums - 1.0)
    if off.size and off.max() > SCORE_SUM_TOLERANCE:
        worst = float(off.max())
        raise NotNormalized(f"pixel score sums deviate from 1 by up to {worst:.6g}")
    labels = np.argmax(seg.scores, axis=2).astype(np.uint8)
    return SegClassMap(labels=labels, k=seg.k)


def _as_labels(seg: SegClassMap) -> np.ndarray:
    return argmax_labels(seg).labels


def largest_component(seg: SegClassMap, cls: int) -> np.ndarray:
    """Boolean mask of the largest 8-connected component labeled ``cls``.

    Returns an all-False mask when the class is absent. Uses run-based
    union-find: one pass over horizontal runs per row.
    """
    if cls < 0 or cls >= seg.k:
        raise ValueError(f"class {cls} out of range [0, {seg.k})")
    mask = _as_labels(seg) == cls
    h, w = mask.shape
    out = np.zeros_like(mask)
    if not mask.any():
        return out

    parent: list[int] = []

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    # runs[r] = list of (col_start, col_end_exclusive, set_index)
    prev_runs: list[tuple[int, int, int]] = []
    all_runs: list[tuple[int, int, int, int]] = []  # (row, start, end, set_index)
    for r in range(h):
        row = mask[r]
        if not row.any():
            prev_runs = []
            continue
        padded = np.diff(np.concatenate(([False], row, [False])).astype(np.int8))
        starts = np.flatnonzero(padded == 1)
        ends = np.flatnonzero(padded == -1)
        cur_runs: list[tuple[int, int, int]] = []
        for s, e in zip(starts, ends):
            idx = len(parent)
            parent.append(idx)
            # 8-connectivity: previous-row runs overlapping [s-1, e+1)
            for ps, pe, pidx in prev_runs:
                if ps < e + 1 and pe > s - 1:
                    union(pidx, idx)
            cur_runs.append((int(s), int(e), idx))
            all_runs.append((r, int(s), int(e), idx))
        prev_runs = cur_runs

    sizes: dict[int, int] = {}
    for _, s, e, idx in all_runs:
        root = find(idx)
        sizes[root] = sizes.get(root, 0) + (e - s)
    best = max(sizes, key=lambda root: (sizes[root], -root))
    for r, s, e, idx in all_runs:
        if find(idx) == best:
            out[r, s:e] = True
    return out


def mask_to_bbox(seg: SegClassMap, cls: int = ROI_CLASS) -> BoundingBox:
    """Recover the RoI box from a segmentation map.

    Largest 8-connected component of ``cls``, centroid-distance filter at the
    95th percentile (inclusive), then the min/max rows and columns of the
    retained pixels.
    """
    component = largest_component(seg, cls)
    if not component.any():
        raise EmptyRoI(f"no pixel labeled class {cls}")
    ys, xs = np.nonzero(component)
    cy = ys.mean()
    cx = xs.mean()
    dist = np.hypot(ys - cy, xs - cx)
    threshold = np.percentile(dist, 95.0)
    keep = dist <= threshold
    ky, kx = ys[keep], xs[keep]
    y0, y1 = int(ky.min()), int(ky.max())
    x0, x1 = int(kx.min()), int(kx.max())
    return BoundingBox(x=x0, y=y0, h=y1 - y0 + 1, w=x1 - x0 + 1)


def bbox_iou(a: BoundingBox, b: BoundingBox) -> float:
    """Jaccard overlap of two boxes."""
    iw = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    ih = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    if iw <= 0 or ih <= 0:
        return 0.0
    inter = iw * ih
    return inter / (a.area + b.area - inter)


def top1_accuracy(
    pairs: list[tuple[BoundingBox, BoundingBox]], threshold: float = 0.5
) -> float:
    """Percentage of (pred, gold) pairs with IoU >= threshold (inclusive)."""
    if not pairs:
        raise EmptyCorpus("top1_accuracy needs at least one pair")
    hits = sum(1 for pred, gold in pairs if bbox_iou(pred, gold) >= threshold)
    return 100.0 * hits / len(pairs)
