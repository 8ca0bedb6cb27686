import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from imfilt import (
    CROP, MIRROR, REPLICATE, Border, BoxParams, GaussianParams, GrayImage, InvalidArgument,
    Kernel, KernelSizeWarning, SeparableKernel, box_blur, convolve_naive, gaussian_blur,
    gaussian_kernel_1d, new_filled,
)
from imfilt import synthetic

from conftest import random_image

pytestmark = pytest.mark.filterwarnings("ignore::imfilt.KernelSizeWarning")

images = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)))


def test_identity_kernel_is_identity(backend, rng):
    img = random_image(rng, 11, 7)
    assert convolve_naive(img, Kernel.identity(3)) == img
    assert convolve_naive(img, Kernel.identity(5), MIRROR) == img


def test_paper_box_example_naive(backend):
    out = convolve_naive(synthetic.paper9(), Kernel.uniform(3))
    assert out[synthetic.PAPER9_SUM360] == 40
    assert out[synthetic.PAPER9_ISOLATED] == 10


def test_paper_box_example_fast(backend):
    img = synthetic.paper9()
    r, c = synthetic.PAPER9_SUM360
    assert int(img.pixels[r - 1 : r + 2, c - 1 : c + 2].sum()) == 360
    out = box_blur(img, BoxParams(1))
    assert out[synthetic.PAPER9_SUM360] == 40
    assert out[synthetic.PAPER9_ISOLATED] == 10
    # the 0 hole inside the 90 block comes out much brighter
    assert out[synthetic.PAPER9_HOLE] == 80


@pytest.mark.parametrize("radius", [1, 2, 3])
def test_box_constant_image(backend, radius):
    img = new_filled(10, 8, 77)
    assert box_blur(img, BoxParams(radius)) == img


def test_box_matches_naive_exhaustive_2x2(backend):
    for bits in itertools.product([0, 255], repeat=4):
        img = GrayImage(np.array(bits).reshape(2, 2))
        for border in (REPLICATE, MIRROR, Border.constant(0)):
            assert box_blur(img, BoxParams(1, border)) == convolve_naive(img, Kernel.uniform(3), border)


@pytest.mark.parametrize("radius", [1, 2, 3])
def test_box_matches_naive_random(backend, rng, radius):
    for _ in range(10):
        img = random_image(rng, 64, 64)
        assert box_blur(img, BoxParams(radius)) == convolve_naive(img, Kernel.uniform(2 * radius + 1))


def test_crop_shrinks_output(backend, rng):
    img = random_image(rng, 10, 12)
    out = box_blur(img, BoxParams(2, CROP))
    assert out.shape == (6, 8)
    assert out == convolve_naive(img, Kernel.uniform(5), CROP)
    with pytest.raises(InvalidArgument):
        convolve_naive(new_filled(2, 2, 0), Kernel.uniform(3), CROP)


@settings(max_examples=50, deadline=None)
@given(arr=arrays(np.uint8, (12, 12)), radius=st.integers(1, 3))
def test_box_crop_mean_preservation(arr, radius):
    img = GrayImage(arr)
    s = 2 * radius + 1
    out = box_blur(img, BoxParams(radius, CROP)).pixels
    exact = np.array([
        [arr[i : i + s, j : j + s].mean() for j in range(12 - s + 1)] for i in range(12 - s + 1)
    ])
    assert abs(out.mean() - exact.mean()) <= 0.5


@settings(max_examples=50, deadline=None)
@given(arr=images, radius=st.integers(1, 3), sigma=st.floats(0.3, 3.0))
def test_range_contraction(arr, radius, sigma):
    img = GrayImage(arr)
    for out in (box_blur(img, BoxParams(radius)), gaussian_blur(img, GaussianParams(sigma, radius))):
        assert arr.min() <= out.pixels.min() and out.pixels.max() <= arr.max()


@settings(max_examples=30, deadline=None)
@given(arr=arrays(np.uint8, (14, 14)), dy=st.integers(0, 3), dx=st.integers(0, 3))
def test_shift_equivariance_interior(arr, dy, dx):
    r = 1
    a = GrayImage(arr[dy : dy + 10, dx : dx + 10])
    b = GrayImage(arr[:10, :10])
    fa = box_blur(a, BoxParams(r, CROP)).pixels
    fb_full = box_blur(GrayImage(arr), BoxParams(r, CROP)).pixels
    assert np.array_equal(fa, fb_full[dy : dy + 8, dx : dx + 8])
    ga = gaussian_blur(a, GaussianParams(1.0, 1, CROP)).pixels
    gb_full = gaussian_blur(GrayImage(arr), GaussianParams(1.0, 1, CROP)).pixels
    assert np.array_equal(ga, gb_full[dy : dy + 8, dx : dx + 8])
    assert b.shape == (10, 10)


def test_gaussian_taps_sigma1_radius1():
    # normalize([e^-1/2, 1, e^-1/2]), evaluated at 30 digits
    taps = gaussian_kernel_1d(GaussianParams(1.0, 1)).taps
    np.testing.assert_allclose(
        taps, [0.274068619061197, 0.451862761877606, 0.274068619061197], rtol=0, atol=1e-14
    )


def test_gaussian_taps_flat_limit():
    taps = gaussian_kernel_1d(GaussianParams(1e6, 1)).taps
    np.testing.assert_allclose(taps, [1 / 3] * 3, atol=1e-6)


@given(sigma=st.floats(0.05, 50.0), radius=st.one_of(st.none(), st.integers(1, 20)))
def test_gaussian_kernel_hygiene(sigma, radius):
    try:
        taps = gaussian_kernel_1d(GaussianParams(sigma, radius)).taps
    except InvalidArgument:
        # only explicit radii far beyond the Gaussian's support underflow
        assert radius is not None and radius > 30 * sigma
        return
    taps = gaussian_kernel_1d(GaussianParams(sigma, radius)).taps
    assert abs(taps.sum() - 1.0) <= 1e-12
    assert np.array_equal(taps, taps[::-1])
    assert np.all(taps > 0)
    r = taps.size // 2
    assert np.all(np.diff(taps[: r + 1]) >= 0)


def test_underflowing_radius_rejected():
    with pytest.raises(InvalidArgument, match="underflow"):
        gaussian_kernel_1d(GaussianParams(0.05, 2))


def test_auto_radius():
    assert GaussianParams(3.0).resolved_radius == 9
    assert GaussianParams(0.1).resolved_radius == 1
    assert GaussianParams(1.2).resolved_radius == 4


@pytest.mark.parametrize("sigma", [0.0, -1.0, math.nan, math.inf])
def test_gaussian_rejects_bad_sigma(sigma):
    with pytest.raises(InvalidArgument):
        GaussianParams(sigma)


def test_kernel_validation():
    with pytest.raises(InvalidArgument):
        Kernel(np.ones((2, 2)))
    with pytest.raises(InvalidArgument):
        Kernel(np.full((3, 3), np.nan))
    with pytest.raises(InvalidArgument):
        SeparableKernel([0.2, 0.8])
    with pytest.raises(InvalidArgument):
        SeparableKernel([0.2, 0.5, 0.2])
    with pytest.raises(InvalidArgument):
        BoxParams(0)


def test_gaussian_constant_image(backend):
    img = new_filled(20, 15, 200)
    assert gaussian_blur(img, GaussianParams(1.5)) == img


def test_gaussian_within_one_of_naive(backend, rng):
    p = GaussianParams(1.0)
    k = gaussian_kernel_1d(p).outer()
    for _ in range(10):
        img = random_image(rng, 32, 32)
        diff = gaussian_blur(img, p).pixels.astype(int) - convolve_naive(img, k).pixels
        assert np.abs(diff).max() <= 1


def test_gaussian_impulse_response(backend):
    px = np.zeros((31, 31), dtype=np.uint8)
    px[15, 15] = 255
    p = GaussianParams(1.0)
    taps = gaussian_kernel_1d(p).taps
    r = taps.size // 2
    out = gaussian_blur(GrayImage(px), p).pixels
    assert out[15, 15] == round(255 * taps[r] ** 2)
    # proportional to the sampled 2-D Gaussian, up to rounding
    expected = 255 * np.outer(taps, taps)
    window = out[15 - r : 15 + r + 1, 15 - r : 15 + r + 1]
    assert np.abs(window - expected).max() <= 0.5 + 1e-9
    assert out.sum() - window.sum() == 0


def test_large_kernel_warns():
    img = new_filled(5, 5, 0)
    with pytest.warns(KernelSizeWarning, match="kernel side 9 exceeds 7"):
        box_blur(img, BoxParams(4))
