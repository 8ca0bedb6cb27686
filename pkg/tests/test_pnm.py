import numpy as np
import pytest

from imfilt import GrayImage, PnmError, RgbImage, read_pnm, write_pnm


def test_minimal_ascii_pgm():
    img = read_pnm(b"P2\n1 1\n255\n7\n")
    assert img == GrayImage([[7]])


def test_minimal_binary_pgm():
    img = read_pnm(b"P5\n2 1\n255\n" + bytes([0, 255]))
    assert img == GrayImage([[0, 255]])


def test_comments_and_loose_whitespace():
    data = b"P2\n# made by hand\n2  # width\n2\n255\n1 2\n# mid\n3 4\n"
    assert read_pnm(data) == GrayImage([[1, 2], [3, 4]])


def test_ppm_variants():
    assert read_pnm(b"P3\n1 1\n255\n1 2 3\n") == RgbImage([[[1, 2, 3]]])
    assert read_pnm(b"P6\n1 1\n255\n" + bytes([4, 5, 6])) == RgbImage([[[4, 5, 6]]])


def test_canonical_writes():
    assert write_pnm(GrayImage([[7]]), ascii=True) == b"P2\n1 1\n255\n7\n"
    assert write_pnm(GrayImage([[0, 255]])) == b"P5\n2 1\n255\n" + bytes([0, 255])
    assert write_pnm(RgbImage([[[1, 2, 3]]])).startswith(b"P6\n1 1\n255\n")


@pytest.mark.parametrize(
    "data,field",
    [
        (b"P7\n1 1\n255\n0", "magic"),
        (b"P2\n1 1\n65535\n7\n", "maxval"),
        (b"P5\n4 4\n255\n" + bytes(3), "payload"),
        (b"P2\n2 1\n255\n7\n", "payload"),
        (b"P2\nx 1\n255\n7\n", "width"),
        (b"P2\n1 0\n255\n", "height"),
        (b"P5\n99999999 1\n255\n", "width"),
        (b"P5\n1000000 1000000\n255\n", "height"),
        (b"P2\n1 1\n255\n300\n", "payload"),
    ],
)
def test_parse_errors_name_the_field(data, field):
    with pytest.raises(PnmError) as err:
        read_pnm(data)
    assert err.value.field == field


def test_unsupported_maxval_message():
    with pytest.raises(PnmError, match="unsupported maxval"):
        read_pnm(b"P2\n1 1\n65535\n7\n")


@pytest.mark.parametrize("ascii_", [False, True])
def test_roundtrip_random_64(rng, ascii_):
    img = GrayImage(rng.integers(0, 256, (64, 64)))
    assert read_pnm(write_pnm(img, ascii=ascii_)) == img
