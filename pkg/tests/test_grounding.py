from __future__ import annotations

import numpy as np
import pytest
from scipy import ndimage

from editeval import (
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
from editeval.grounding import EmptyCorpus


def labels_map(h, w, background=2):
    return np.full((h, w), background, dtype=np.uint8)


class TestArgmax:
    def test_one_hot_identity(self):
        labels = np.array([[0, 1], [2, 1]], dtype=np.uint8)
        scores = np.eye(3, dtype=np.float32)[labels]
        out = argmax_labels(SegClassMap.from_scores(scores))
        assert np.array_equal(out.labels, labels)

    def test_uniform_ties_to_class_zero(self):
        scores = np.full((2, 3, 3), 1 / 3, dtype=np.float32)
        out = argmax_labels(SegClassMap.from_scores(scores))
        assert (out.labels == 0).all()

    def test_unnormalized_rejected(self):
        scores = np.full((2, 2, 3), 0.8 / 3, dtype=np.float32)
        with pytest.raises(NotNormalized):
            argmax_labels(SegClassMap.from_scores(scores))

    def test_one_hot_reencode_idempotent(self):
        rng = np.random.default_rng(0)
        raw = rng.random((6, 5, 3))
        scores = (raw / raw.sum(axis=2, keepdims=True)).astype(np.float64)
        once = argmax_labels(SegClassMap.from_scores(scores))
        re_encoded = np.eye(3, dtype=np.float32)[once.labels]
        twice = argmax_labels(SegClassMap.from_scores(re_encoded))
        assert np.array_equal(once.labels, twice.labels)


class TestLargestComponent:
    def test_single_block(self):
        labels = labels_map(10, 10)
        labels[2:5, 3:6] = 0
        mask = largest_component(SegClassMap.from_labels(labels), 0)
        assert mask.sum() == 9
        assert mask[2:5, 3:6].all()

    def test_larger_of_two_blocks(self):
        labels = labels_map(20, 20)
        labels[1:4, 1:4] = 0     # 9 px
        labels[10:12, 10:12] = 0  # 4 px
        mask = largest_component(SegClassMap.from_labels(labels), 0)
        assert mask.sum() == 9
        assert mask[1:4, 1:4].all()

    def test_absent_class_gives_empty(self):
        mask = largest_component(SegClassMap.from_labels(labels_map(5, 5)), 0)
        assert not mask.any()

    def test_diagonal_pixels_are_8_connected(self):
        labels = labels_map(4, 4)
        labels[0, 0] = 0
        labels[1, 1] = 0
        labels[2, 2] = 0
        mask = largest_component(SegClassMap.from_labels(labels), 0)
        assert mask.sum() == 3

    def test_matches_scipy_on_random_masks(self):
        rng = np.random.default_rng(33)
        structure = np.ones((3, 3), dtype=int)
        for _ in range(25):
            labels = (rng.random((30, 40)) < 0.35).astype(np.uint8)
            labels = np.where(labels, 0, 2).astype(np.uint8)
            mask = largest_component(SegClassMap.from_labels(labels), 0)
            lab, n = ndimage.label(labels == 0, structure=structure)
            if n == 0:
                assert not mask.any()
                continue
            sizes = ndimage.sum(labels == 0, lab, index=range(1, n + 1))
            assert mask.sum() == int(sizes.max())
            # the found component must be one scipy component exactly
            ids = np.unique(lab[mask])
            assert len(ids) == 1
            assert (lab == ids[0]).sum() == mask.sum()


class TestMaskToBbox:
    def test_single_pixel(self):
        labels = labels_map(10, 10)
        labels[5, 7] = 0
        box = mask_to_bbox(SegClassMap.from_labels(labels))
        assert box == BoundingBox(x=7, y=5, h=1, w=1)

    def test_filled_block_within_one_pixel(self):
        labels = labels_map(100, 100)
        labels[0:20, 0:20] = 0
        box = mask_to_bbox(SegClassMap.from_labels(labels))
        assert abs(box.x - 0) <= 1 and abs(box.y - 0) <= 1
        assert abs(box.w - 20) <= 2 and abs(box.h - 20) <= 2

    def test_all_background_raises(self):
        with pytest.raises(EmptyRoI):
            mask_to_bbox(SegClassMap.from_labels(labels_map(8, 8)))

    def test_speckle_ignored_via_largest_component(self):
        labels = labels_map(60, 60)
        labels[10:30, 10:30] = 0
        labels[50, 50] = 0  # stray pixel elsewhere
        box = mask_to_bbox(SegClassMap.from_labels(labels))
        assert box.x >= 9 and box.y >= 9
        assert box.x + box.w <= 31 and box.y + box.h <= 31

    def test_contained_in_unfiltered_bbox(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            labels = labels_map(40, 40)
            h = rng.integers(2, 15)
            w = rng.integers(2, 15)
            y = rng.integers(0, 40 - h)
            x = rng.integers(0, 40 - w)
            labels[y : y + h, x : x + w] = 0
            box = mask_to_bbox(SegClassMap.from_labels(labels))
            assert box.x >= x and box.y >= y
            assert box.x + box.w <= x + w and box.y + box.h <= y + h

    def test_tied_distances_keep_exact_box(self):
        # 4 corner-symmetric pixels: all distances equal, nothing shaved
        labels = labels_map(10, 10)
        labels[2:4, 2:4] = 0
        box = mask_to_bbox(SegClassMap.from_labels(labels))
        assert box == BoundingBox(x=2, y=2, h=2, w=2)


class TestBboxIou:
    def test_identical(self):
        box = BoundingBox(3, 4, 10, 12)
        assert bbox_iou(box, box) == 1.0

    def test_disjoint(self):
        assert bbox_iou(BoundingBox(0, 0, 2, 2), BoundingBox(10, 10, 2, 2)) == 0.0

    def test_forced_third(self):
        assert bbox_iou(BoundingBox(0, 0, 2, 2), BoundingBox(1, 0, 2, 2)) == pytest.approx(1 / 3)

    def test_symmetric_and_bounded(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a = BoundingBox(*(int(v) for v in rng.integers(0, 20, 2)), int(rng.integers(1, 10)), int(rng.integers(1, 10)))
            b = BoundingBox(*(int(v) for v in rng.integers(0, 20, 2)), int(rng.integers(1, 10)), int(rng.integers(1, 10)))
            iou = bbox_iou(a, b)
            assert iou == bbox_iou(b, a)
            assert 0.0 <= iou <= 1.0
            assert (iou == 1.0) == (a == b)

    def test_degenerate_box_rejected(self):
        with pytest.raises(ValueError):
            BoundingBox(0, 0, 0, 5)


class TestTop1:
    def test_all_identical(self):
        box = BoundingBox(1, 2, 3, 4)
        assert top1_accuracy([(box, box)] * 5) == 100.0

    def test_all_disjoint(self):
        a, b = BoundingBox(0, 0, 2, 2), BoundingBox(50, 50, 2, 2)
        assert top1_accuracy([(a, b)] * 3) == 0.0

    def test_exactly_half_iou_counts(self):
        # inter 2, union 4 -> IoU exactly 0.5, inclusive threshold
        a = BoundingBox(0, 0, 2, 2)
        b = BoundingBox(0, 0, 1, 2)
        assert bbox_iou(a, b) == 0.5
        assert top1_accuracy([(a, b)]) == 100.0

    def test_empty(self):
        with pytest.raises(EmptyCorpus):
            top1_accuracy([])
