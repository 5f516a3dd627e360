import math

import numpy as np
import pytest

from conftest import random_image
from oracles import brute_ssim, loop_mse, psnr_formula
from selsr import MetricsReport, compare, luminance, mse, psnr, ssim
from selsr.image import Image
from selsr.metrics import format_metric, psnr_from_mse


class TestMse:
    def test_identical_is_exactly_zero(self, rng):
        img = random_image(rng, 24, 31)
        assert mse(img, img) == 0.0

    def test_constant_offset_is_exact_square(self, rng):
        base = random_image(rng, 16, 16)
        shifted = Image(base.plane() + 10.0)
        assert mse(base, shifted) == 100.0
        assert mse(base, Image(base.plane() - 3.0)) == 9.0

    def test_matches_loop_oracle_exactly(self, rng):
        # integer-valued samples: squared differences and their sum are exact
        # in double precision, so the two accumulations must agree to the bit
        for _ in range(5):
            a = random_image(rng, 20, 15)
            b = random_image(rng, 20, 15)
            assert mse(a, b) == loop_mse(a.plane(), b.plane())

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError, match="dimension mismatch"):
            mse(random_image(rng, 8, 8), random_image(rng, 8, 9))

    def test_multichannel_rejected(self, rng):
        img = random_image(rng, 8, 8, channels=3)
        with pytest.raises(ValueError, match="single-channel"):
            mse(img, img)


class TestPsnr:
    def test_known_value_mse_100(self):
        a = Image(np.zeros((8, 8)))
        b = Image(np.full((8, 8), 10.0))
        value = psnr(a, b)
        assert abs(value - 28.1308) <= 1e-4
        assert value == psnr_formula(100.0)

    def test_identical_is_infinite(self, rng):
        img = random_image(rng, 12, 12)
        assert math.isinf(psnr(img, img))

    def test_full_scale_error_is_zero_db(self):
        a = Image(np.zeros((8, 8)))
        b = Image(np.full((8, 8), 255.0))
        assert psnr(a, b) == 0.0

    def test_consistent_with_mse(self, rng):
        for _ in range(5):
            a = random_image(rng, 17, 13)
            b = random_image(rng, 17, 13)
            assert abs(psnr(a, b) - psnr_formula(mse(a, b))) <= 1e-9

    def test_negative_mse_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            psnr_from_mse(-1.0)


class TestSsim:
    def test_identical_is_exactly_one(self, rng):
        img = random_image(rng, 32, 32)
        assert ssim(img, img) == 1.0

    def test_constant_100_vs_150(self):
        a = Image(np.full((16, 16), 100.0))
        b = Image(np.full((16, 16), 150.0))
        c1 = (0.01 * 255.0) ** 2
        expected = (2.0 * 100.0 * 150.0 + c1) / (100.0**2 + 150.0**2 + c1)
        assert abs(ssim(a, b) - expected) <= 1e-12
        assert abs(ssim(a, b) - 0.9230923) <= 1e-7

    def test_symmetric(self, rng):
        a = random_image(rng, 20, 20)
        b = random_image(rng, 20, 20)
        assert ssim(a, b) == ssim(b, a)

    def test_matches_windowed_oracle(self, rng):
        a = random_image(rng, 32, 32)
        b = Image(np.clip(a.plane() + rng.normal(0.0, 12.0, size=(32, 32)), 0.0, 255.0))
        assert abs(ssim(a, b) - brute_ssim(a.plane(), b.plane())) <= 1e-9

    def test_degraded_scores_below_one(self, rng):
        a = random_image(rng, 24, 24)
        b = Image(np.clip(a.plane() + rng.normal(0.0, 20.0, size=(24, 24)), 0.0, 255.0))
        assert ssim(a, b) < 1.0

    def test_image_smaller_than_window(self, rng):
        small = random_image(rng, 10, 30)
        with pytest.raises(ValueError, match="11x11 SSIM window"):
            ssim(small, small)


class TestCompare:
    def test_luma_space_scores_luminance_channel(self, rng):
        ref = random_image(rng, 16, 16, channels=3)
        test = random_image(rng, 16, 16, channels=3)
        report = compare(ref, test, space="luma")
        assert report.mse == mse(luminance(ref), luminance(test))
        assert report.ssim == ssim(luminance(ref), luminance(test))
        assert report.psnr_db == psnr_from_mse(report.mse)

    def test_rgb_mean_averages_channels(self, rng):
        ref = random_image(rng, 16, 16, channels=3)
        test = random_image(rng, 16, 16, channels=3)
        report = compare(ref, test, space="rgb-mean")
        per_channel = [
            mse(Image(ref.plane(c)), Image(test.plane(c))) for c in range(3)
        ]
        assert abs(report.mse - sum(per_channel) / 3.0) <= 1e-12
        assert report.psnr_db == psnr_from_mse(report.mse)

    def test_grayscale_same_in_both_spaces(self, rng):
        ref = random_image(rng, 16, 16)
        test = random_image(rng, 16, 16)
        luma = compare(ref, test, space="luma")
        rgb = compare(ref, test, space="rgb-mean")
        assert (luma.mse, luma.psnr_db, luma.ssim) == (rgb.mse, rgb.psnr_db, rgb.ssim)

    def test_unknown_space(self, rng):
        img = random_image(rng, 16, 16)
        with pytest.raises(ValueError, match="unknown metric space"):
            compare(img, img, space="lab")

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError, match="dimension mismatch"):
            compare(random_image(rng, 16, 16), random_image(rng, 16, 17))


class TestReportJson:
    def test_key_order_and_rounding(self):
        report = MetricsReport(mse=1.234567, psnr_db=47.1234999, ssim=0.98765449)
        d = report.to_json_dict()
        assert list(d) == ["mse", "psnr_db", "ssim"]
        assert d["mse"] == 1.2346
        assert d["psnr_db"] == 47.1235
        assert d["ssim"] == 0.9877

    def test_infinite_psnr_serializes_as_string(self):
        report = MetricsReport(mse=0.0, psnr_db=math.inf, ssim=1.0)
        assert report.to_json_dict() == {"mse": 0.0, "psnr_db": "inf", "ssim": 1.0}

    def test_format_metric(self):
        assert format_metric(math.inf) == "inf"
        assert format_metric(0.123449) == 0.1234
