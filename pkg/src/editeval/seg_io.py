"""On-disk exchange formats for segmentation maps.

Score maps use ``.segf32``: a 12-byte header of three little-endian uint32
fields (rows, cols, k) followed by rows*cols*k little-endian float32 values in
row-major (H, W, K) order. Label maps are 8-bit grayscale PNGs whose pixel
value is the class index.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .grounding import SCORE_SUM_TOLERANCE, NotNormalized, SegClassMap

_HEADER = struct.Struct("<III")


def write_segf32(path: str | Path, seg: SegClassMap) -> None:
    if not seg.has_scores():
        raise ValueError("write_segf32 requires a score map")
    data = np.ascontiguousarray(seg.scores, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(seg.height, seg.width, seg.k))
        fh.write(data.tobytes())


def read_segf32(path: str | Path) -> SegClassMap:
    """Load a score map, validating the per-pixel normalization invariant."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated header")
    rows, cols, k = _HEADER.unpack_from(raw)
    expected = _HEADER.size + rows * cols * k * 4
    if len(raw) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(raw)}")
    scores = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).reshape(rows, cols, k)
    sums = scores.sum(axis=2)
    if sums.size:
        off = float(np.abs(sums - 1.0).max())
        if off > SCORE_SUM_TOLERANCE:
            raise NotNormalized(f"{path}: score sums deviate from 1 by up to {off:.6g}")
    return SegClassMap(scores=scores.copy(), k=int(k))


def write_label_png(path: str | Path, seg: SegClassMap) -> None:
    if seg.has_scores():
        raise ValueError("write_label_png requires a label map")
    Image.fromarray(seg.labels.astype(np.uint8), mode="L").save(path, format="PNG")


def read_label_png(path: str | Path, k: int = 3) -> SegClassMap:
    with Image.open(path) as img:
        labels = np.asarray(img.convert("L"))
    if labels.size and labels.max() >= k:
        raise ValueError(f"{path}: pixel value {labels.max()} outside [0, {k})")
    return SegClassMap(labels=labels, k=k)
