import numpy as np
import pytest

from conftest import random_image
from oracles import sort_by_count, stencil_edge_count, stencil_edge_map
from selsr import EdgeRanking, edge_count, edge_map, rank_patches
from selsr.image import Image


def step_patch() -> Image:
    """8x8 patch, columns 0-3 at 0 and columns 4-7 at 255."""
    data = np.zeros((8, 8))
    data[:, 4:] = 255.0
    return Image(data)


class TestEdgeMap:
    def test_constant_patch_has_no_edges(self):
        bits = edge_map(Image(np.full((8, 8), 50.0)), 100.0)
        assert not bits.any()
        assert edge_count(bits) == 0

    def test_step_at_threshold_100(self):
        bits = edge_map(step_patch(), 100.0)
        # |gx| = (255 - 0)/2 = 127.5 on the two columns flanking the step
        expected = np.zeros((8, 8), dtype=bool)
        expected[:, 3:5] = True
        assert np.array_equal(bits, expected)
        assert edge_count(bits) == 16

    def test_step_at_threshold_128(self):
        assert edge_count(edge_map(step_patch(), 128.0)) == 0

    def test_strictness_at_exact_magnitude(self):
        assert edge_count(edge_map(step_patch(), 127.5)) == 0
        assert edge_count(edge_map(step_patch(), 127.4)) == 16

    def test_agrees_with_stencil_oracle(self, rng):
        for _ in range(5):
            patch = random_image(rng, 10, 12)
            threshold = float(rng.integers(0, 120))
            bits = edge_map(patch, threshold)
            assert np.array_equal(bits, stencil_edge_map(patch.plane(), threshold))
            assert edge_count(bits) == stencil_edge_count(patch.plane(), threshold)

    def test_horizontal_step_via_gy(self):
        bits = edge_map(Image(step_patch().plane().T.copy()), 100.0)
        assert edge_count(bits) == 16
        assert bits[3:5, :].all()

    def test_translation_covariance_in_interior(self):
        base = np.full((16, 16), 10.0)
        a, b = base.copy(), base.copy()
        a[5:8, 5:8] = 200.0
        b[5:8, 6:9] = 200.0  # same blob shifted one pixel right
        bits_a = edge_map(Image(a), 50.0)
        bits_b = edge_map(Image(b), 50.0)
        assert np.array_equal(bits_a[:, 3:11], bits_b[:, 4:12])

    def test_count_non_increasing_in_threshold(self, rng):
        patch = random_image(rng, 12, 12)
        counts = [edge_count(edge_map(patch, t)) for t in (0.0, 25.0, 50.0, 100.0, 200.0)]
        assert counts == sorted(counts, reverse=True)

    def test_multichannel_rejected(self, rng):
        with pytest.raises(ValueError, match="single-channel"):
            edge_map(random_image(rng, 4, 4, channels=3), 100.0)

    @pytest.mark.parametrize("threshold", [-1.0, float("nan"), float("inf")])
    def test_bad_threshold_rejected(self, threshold):
        with pytest.raises(ValueError):
            edge_map(Image(np.zeros((4, 4))), threshold)


class TestRanking:
    def test_tie_break_by_index(self):
        ranking = rank_patches([5, 9, 9, 0])
        assert ranking.order.tolist() == [1, 2, 0, 3]

    def test_all_ties_keep_index_order(self):
        assert rank_patches([0, 0, 0]).order.tolist() == [0, 1, 2]

    def test_matches_sort_oracle(self, rng):
        counts = rng.integers(0, 50, size=180)  # small range forces many ties
        ranking = rank_patches(counts)
        assert ranking.order.tolist() == sort_by_count(counts)
        assert sorted(ranking.order.tolist()) == list(range(180))

    def test_counts_preserved(self):
        ranking = rank_patches([3, 1, 2])
        assert ranking.counts.tolist() == [3, 1, 2]
        assert len(ranking) == 3

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            rank_patches([])

    def test_negative_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            rank_patches([1, -2])

    def test_ranking_type_validates_shapes(self):
        with pytest.raises(ValueError):
            EdgeRanking(counts=np.array([1, 2]), order=np.array([0]))
