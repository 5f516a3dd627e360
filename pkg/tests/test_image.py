import numpy as np
import pytest
from PIL import Image as PILImage

from conftest import random_image
from selsr import (
    Image,
    ImageFormatError,
    degrade,
    load_image,
    luminance,
    rgb_to_ycbcr,
    save_image,
    ycbcr_to_rgb,
)


class TestImageType:
    def test_2d_array_becomes_single_channel(self):
        img = Image(np.zeros((3, 4)))
        assert (img.height, img.width, img.channels) == (3, 4, 1)

    def test_properties_and_plane(self):
        data = np.arange(24, dtype=float).reshape(2, 4, 3)
        img = Image(data)
        assert (img.width, img.height, img.channels) == (4, 2, 3)
        assert np.array_equal(img.plane(2), data[:, :, 2])

    def test_data_is_copied_and_read_only(self):
        src = np.zeros((2, 2))
        img = Image(src)
        src[0, 0] = 99.0
        assert img.plane()[0, 0] == 0.0
        with pytest.raises(ValueError):
            img.data[0, 0, 0] = 1.0

    def test_equality_is_by_value(self):
        a = Image(np.full((2, 2), 7.0))
        b = Image(np.full((2, 2), 7.0))
        c = Image(np.full((2, 2), 8.0))
        assert a == b
        assert a != c

    @pytest.mark.parametrize("bad", [np.zeros((2, 2, 2)), np.zeros((4,)), np.zeros((0, 3))])
    def test_rejects_bad_shapes(self, bad):
        with pytest.raises(ValueError):
            Image(bad)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="non-finite"):
            Image(np.array([[np.nan, 0.0]]))


class TestPngIO:
    def test_gray_decode_is_identity(self, tmp_path):
        path = tmp_path / "g.png"
        PILImage.fromarray(np.array([[0, 255], [128, 64]], dtype=np.uint8), mode="L").save(path)
        img = load_image(path)
        assert (img.width, img.height, img.channels) == (2, 2, 1)
        assert np.array_equal(img.plane(), [[0.0, 255.0], [128.0, 64.0]])

    def test_rgb_decode_is_identity(self, tmp_path):
        path = tmp_path / "rgb.png"
        PILImage.fromarray(np.array([[[10, 20, 30]]], dtype=np.uint8), mode="RGB").save(path)
        img = load_image(path)
        assert (img.width, img.height, img.channels) == (1, 1, 3)
        assert np.array_equal(img.data[0, 0], [10.0, 20.0, 30.0])

    def test_truncated_file_is_a_decode_failure(self, tmp_path):
        path = tmp_path / "t.png"
        PILImage.fromarray(np.zeros((64, 64), dtype=np.uint8), mode="L").save(path)
        path.write_bytes(path.read_bytes()[:40])
        with pytest.raises(ImageFormatError, match="decode failure"):
            load_image(path)

    def test_garbage_bytes_are_a_decode_failure(self, tmp_path):
        path = tmp_path / "junk.png"
        path.write_bytes(b"not an image at all")
        with pytest.raises(ImageFormatError, match="decode failure"):
            load_image(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_image(tmp_path / "absent.png")

    def test_non_png_rejected(self, tmp_path):
        path = tmp_path / "img.bmp"
        PILImage.fromarray(np.zeros((4, 4), dtype=np.uint8), mode="L").save(path, format="BMP")
        with pytest.raises(ImageFormatError, match="expected a PNG"):
            load_image(path)

    def test_16bit_rejected(self, tmp_path):
        path = tmp_path / "deep.png"
        PILImage.fromarray(np.zeros((4, 4), dtype=np.uint16)).save(path)
        with pytest.raises(ImageFormatError, match="unsupported"):
            load_image(path)

    def test_palette_rejected(self, tmp_path):
        path = tmp_path / "pal.png"
        PILImage.new("P", (4, 4), 0).save(path)
        with pytest.raises(ImageFormatError, match="unsupported"):
            load_image(path)

    def test_alpha_rejected(self, tmp_path):
        path = tmp_path / "a.png"
        PILImage.new("RGBA", (4, 4), (1, 2, 3, 4)).save(path)
        with pytest.raises(ImageFormatError, match="unsupported"):
            load_image(path)

    @pytest.mark.parametrize(
        "value, expected", [(127.4, 127), (127.5, 128), (0.49, 0), (300.0, 255), (-5.0, 0)]
    )
    def test_save_rounds_half_up_and_clamps(self, tmp_path, value, expected):
        path = tmp_path / "v.png"
        save_image(Image(np.full((1, 1), value)), path)
        assert load_image(path).plane()[0, 0] == expected

    def test_round_trip_within_quantization(self, tmp_path, rng):
        img = random_image(rng, 13, 17, channels=3, integral=False)
        path = tmp_path / "rt.png"
        save_image(img, path)
        again = load_image(path)
        assert np.abs(again.data - img.data).max() <= 0.5


class TestColorSpace:
    def test_gray_axis_maps_to_neutral_chroma(self):
        img = Image(np.full((2, 2, 3), 93.0))
        ycc = rgb_to_ycbcr(img)
        assert np.allclose(ycc.luma.plane(), 93.0)
        assert np.allclose(ycc.cb.plane(), 128.0)
        assert np.allclose(ycc.cr.plane(), 128.0)

    def test_pure_red(self):
        ycc = rgb_to_ycbcr(Image(np.array([[[255.0, 0.0, 0.0]]])))
        assert ycc.luma.plane()[0, 0] == pytest.approx(76.245, abs=1e-9)
        assert ycc.cb.plane()[0, 0] == pytest.approx(84.97232, abs=1e-5)
        # unclamped by design: 128 + 0.5*255; the inverse needs the exact value
        assert ycc.cr.plane()[0, 0] == pytest.approx(255.5, abs=1e-9)

    def test_round_trip_error_bounded(self, rng):
        img = random_image(rng, 16, 16, channels=3)
        back = ycbcr_to_rgb(rgb_to_ycbcr(img))
        assert np.abs(back.data - img.data).max() <= 0.51

    def test_round_trip_on_saturated_corners(self):
        corners = np.array(
            [[[255, 0, 0], [0, 255, 0]], [[0, 0, 255], [255, 255, 0]]], dtype=float
        )
        img = Image(corners)
        back = ycbcr_to_rgb(rgb_to_ycbcr(img))
        assert np.abs(back.data - img.data).max() <= 0.51

    def test_wrong_channel_count(self):
        with pytest.raises(ValueError):
            rgb_to_ycbcr(Image(np.zeros((2, 2))))

    def test_luminance_passthrough_and_y(self):
        gray = Image(np.full((2, 2), 40.0))
        assert luminance(gray) is gray
        rgb = Image(np.array([[[255.0, 0.0, 0.0]]]))
        assert luminance(rgb).plane()[0, 0] == pytest.approx(76.245, abs=1e-9)


class TestDegrade:
    def test_constant_preserved_exactly(self):
        lr = degrade(Image(np.full((100, 100), 77.0)), 2)
        assert (lr.width, lr.height) == (50, 50)
        assert np.array_equal(lr.plane(), np.full((50, 50), 77.0))

    def test_megapixel_dimensions(self):
        lr = degrade(Image(np.full((4800, 6000), 10.0)), 2)
        assert (lr.width, lr.height) == (3000, 2400)

    def test_ramp_halves_to_doubled_slope(self):
        xx = np.tile(np.arange(64, dtype=float), (8, 1))
        lr = degrade(Image(xx), 2)
        # src column for output x is 2x + 0.5; the ramp evaluates to that value
        expected = 2.0 * np.arange(32) + 0.5
        assert np.abs(lr.plane()[:, 1:31] - expected[1:31]).max() < 1e-3

    def test_non_divisible_rejected(self):
        with pytest.raises(ValueError, match="not divisible"):
            degrade(Image(np.zeros((99, 100))), 2)

    @pytest.mark.parametrize("scale", [0, 1, -2])
    def test_bad_scale_rejected(self, scale):
        with pytest.raises(ValueError):
            degrade(Image(np.zeros((4, 4))), scale)

    def test_output_stays_in_range(self, rng):
        img = random_image(rng, 32, 32, integral=False)
        lr = degrade(img, 2)
        assert lr.data.min() >= 0.0 and lr.data.max() <= 255.0

    def test_rgb_degrades_per_channel(self, rng):
        img = random_image(rng, 16, 16, channels=3)
        lr = degrade(img, 2)
        for c in range(3):
            mono = degrade(Image(img.plane(c)), 2)
            assert np.array_equal(lr.plane(c), mono.plane())
