import numpy as np
import pytest
from hypothesis import given, strategies as st

from imfilt import (
    CROP, MIRROR, REPLICATE, Border, GrayImage, InvalidArgument, RgbImage,
    merge_channels, new_filled, pixel_extended, split_channels,
)
from imfilt.image import pad

from conftest import random_image


@pytest.mark.parametrize("w,h,v", [(3, 3, 0), (9, 9, 90), (1, 1, 255)])
def test_new_filled(w, h, v):
    img = new_filled(w, h, v)
    assert (img.width, img.height) == (w, h)
    assert np.all(img.pixels == v)


@pytest.mark.parametrize("w,h", [(0, 3), (3, 0)])
def test_new_filled_rejects_zero_dimension(w, h):
    with pytest.raises(InvalidArgument):
        new_filled(w, h, 0)


def test_new_filled_rejects_bad_value():
    with pytest.raises(InvalidArgument):
        new_filled(2, 2, 256)


def test_gray_image_validates_range():
    with pytest.raises(InvalidArgument):
        GrayImage([[0, 300]])
    with pytest.raises(InvalidArgument):
        GrayImage([[0.5, 1.0]])


def test_images_are_immutable():
    img = new_filled(2, 2, 5)
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 1


def test_from_sequence_is_row_major():
    img = GrayImage.from_sequence(3, 2, [1, 2, 3, 4, 5, 6])
    assert img[0, 2] == 3 and img[1, 0] == 4


def test_pixel_extended_examples():
    img = GrayImage(np.arange(9).reshape(3, 3))
    assert pixel_extended(img, (0, 0), REPLICATE) == 0
    assert pixel_extended(img, (-1, -1), REPLICATE) == img[0, 0]
    assert pixel_extended(img, (-1, 2), Border.constant(0)) == 0
    # mirror does not repeat the edge: index -1 -> 1, index 3 -> 1
    assert pixel_extended(img, (-1, 0), MIRROR) == img[1, 0]
    assert pixel_extended(img, (1, 3), MIRROR) == img[1, 1]


def test_pixel_extended_crop_out_of_bounds_raises():
    with pytest.raises(InvalidArgument):
        pixel_extended(new_filled(2, 2, 0), (-1, 0), CROP)


@given(
    st.integers(1, 6), st.integers(1, 6),
    st.integers(-50, 50), st.integers(-50, 50),
    st.sampled_from([REPLICATE, MIRROR, Border.constant(17)]),
)
def test_border_totality(h, w, row, col, border):
    img = GrayImage(np.arange(h * w).reshape(h, w) % 256)
    v = pixel_extended(img, (row, col), border)
    assert 0 <= v <= 255
    if 0 <= row < h and 0 <= col < w:
        assert v == img[row, col]


@pytest.mark.parametrize("border", [REPLICATE, MIRROR, Border.constant(9)])
def test_pad_agrees_with_pixel_extended(rng, border):
    img = random_image(rng, 4, 5)
    padded = pad(img.pixels, 3, 2, border)
    for r in range(-3, 7):
        for c in range(-2, 7):
            assert padded[r + 3, c + 2] == pixel_extended(img, (r, c), border)


def test_border_parse():
    assert Border.parse("constant:12") == Border.constant(12)
    assert Border.parse("Mirror") == MIRROR
    with pytest.raises(InvalidArgument):
        Border.parse("wrap")
    with pytest.raises(InvalidArgument):
        Border.constant(300)


def test_split_gray_as_rgb_gives_identical_planes(rng):
    plane = rng.integers(0, 256, (5, 4))
    r, g, b = split_channels(RgbImage(np.stack([plane] * 3, axis=-1)))
    assert r == g == b == GrayImage(plane)


def test_merge_split_inverse(rng):
    x = RgbImage(rng.integers(0, 256, (6, 7, 3)))
    assert merge_channels(*split_channels(x)) == x


def test_merge_dimension_mismatch():
    with pytest.raises(InvalidArgument):
        merge_channels(new_filled(2, 2, 0), new_filled(3, 3, 0), new_filled(2, 2, 0))
