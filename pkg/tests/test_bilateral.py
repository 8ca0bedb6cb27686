import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from imfilt import (
    MIRROR, REPLICATE, Border, BilateralParams, GaussianParams, GrayImage, InvalidArgument,
    add_gaussian_noise, bilateral_filter, bilateral_reference, edge_contrast, gaussian_blur,
    new_filled, psnr, surface_blur,
)
from imfilt import synthetic

from conftest import random_image

pytestmark = pytest.mark.filterwarnings("ignore::imfilt.KernelSizeWarning")


def random_params(rng):
    return BilateralParams(
        sigma_s=float(rng.uniform(0.5, 3.0)),
        sigma_r=float(rng.uniform(2.0, 80.0)),
        radius=int(rng.integers(1, 4)),
        spatial=str(rng.choice(["gaussian", "box"])),
        range=str(rng.choice(["gaussian", "tent"])),
        border=[REPLICATE, MIRROR, Border.constant(int(rng.integers(0, 256)))][int(rng.integers(0, 3))],
    )


def test_matches_reference_random_draws(backend, rng):
    for _ in range(20):
        img = random_image(rng, 16, 16)
        p = random_params(rng)
        assert bilateral_filter(img, p) == bilateral_reference(img, p)


def test_single_pixel_unchanged():
    img = GrayImage([[123]])
    for p in (BilateralParams(), surface_blur(1.0, 10.0, 1)):
        assert bilateral_reference(img, p) == img
        assert bilateral_filter(img, p) == img


@settings(max_examples=30, deadline=None)
@given(v=st.integers(0, 255), sigma_s=st.floats(0.3, 4), sigma_r=st.floats(0.5, 200),
       spatial=st.sampled_from(["gaussian", "box"]), range_=st.sampled_from(["gaussian", "tent"]))
def test_constant_fixity(v, sigma_s, sigma_r, spatial, range_):
    img = new_filled(9, 7, v)
    assert bilateral_filter(img, BilateralParams(sigma_s, sigma_r, 2, spatial, range_)) == img


@settings(max_examples=30, deadline=None)
@given(arr=arrays(np.uint8, (10, 10)), sigma_r=st.floats(1, 100))
def test_range_contraction(arr, sigma_r):
    p = BilateralParams(1.5, sigma_r, 2)
    out = bilateral_filter(GrayImage(arr), p).pixels
    padded = np.pad(arr, 2, mode="edge")
    for i in range(10):
        for j in range(10):
            win = padded[i : i + 5, j : j + 5]
            assert win.min() <= out[i, j] <= win.max()


def test_huge_sigma_r_matches_gaussian(backend, rng):
    for _ in range(5):
        img = random_image(rng, 24, 24)
        b = bilateral_filter(img, BilateralParams(1.5, 1e9, 4))
        g = gaussian_blur(img, GaussianParams(1.5, 4))
        assert np.abs(b.pixels.astype(int) - g.pixels).max() <= 1


def test_gaussian_limit_monotone(rng):
    img = add_gaussian_noise(synthetic.step(32, 0, 255), 10, 3)
    g = gaussian_blur(img, GaussianParams(2.0)).pixels.astype(int)
    devs = [
        np.abs(bilateral_filter(img, BilateralParams(2.0, s)).pixels - g).max()
        for s in (10, 100, 1e3, 1e5, 1e9)
    ]
    assert all(a >= b for a, b in zip(devs, devs[1:]))
    assert devs[-1] <= 1


def test_step_preserved(backend):
    img = synthetic.step(16, 0, 255)
    out = bilateral_filter(img, BilateralParams(2.0, 30.0)).pixels
    assert np.array_equal(out, img.pixels)
    assert np.array_equal(bilateral_reference(img, BilateralParams(2.0, 30.0)).pixels, out)


def test_edge_contrast_beats_gaussian_on_full_height_step():
    clean = synthetic.step(128, 0, 255)
    noisy = add_gaussian_noise(clean, 10, 7)
    b = bilateral_filter(noisy, BilateralParams(2.0, 30.0))
    g = gaussian_blur(noisy, GaussianParams(2.0))
    assert edge_contrast(b, 64) > edge_contrast(g, 64)


@settings(max_examples=20, deadline=None)
@given(arr=arrays(np.uint8, (8, 9)), border=st.sampled_from([MIRROR, Border.constant(40)]))
def test_horizontal_mirror_symmetry(arr, border):
    p = BilateralParams(1.2, 25.0, 2, border=border)
    a = bilateral_filter(GrayImage(arr[:, ::-1]), p).pixels
    b = bilateral_filter(GrayImage(arr), p).pixels[:, ::-1]
    assert np.array_equal(a, b)


def test_surface_blur_preset():
    p = surface_blur()
    assert (p.spatial, p.range) == ("box", "tent")


@pytest.mark.parametrize(
    "kwargs",
    [dict(sigma_s=0), dict(sigma_r=-1), dict(radius=0), dict(spatial="disk"), dict(range="cosine"),
     dict(border=Border("crop"))],
)
def test_param_validation(kwargs):
    with pytest.raises(InvalidArgument):
        BilateralParams(**kwargs)


def test_edge_contrast_metric():
    assert edge_contrast(synthetic.step(8, 10, 50), 4) == 40
