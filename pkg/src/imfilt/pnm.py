"""Netpbm (PGM/PPM) reading and writing, 8-bit only.

Reads P2/P5 (gray) and P3/P6 (color) with ``#`` comments anywhere in the
header.  Writes a canonical header with no comments::

    P5\\n<width> <height>\\n255\\n<payload>

ASCII payloads are written one image row per line.
"""
from __future__ import annotations

import numpy as np

from .image import GrayImage, Image, RgbImage

MAX_DIM = 1 << 20
MAX_SAMPLES = 1 << 30

_MAGICS = {b"P2": (1, True), b"P5": (1, False), b"P3": (3, True), b"P6": (3, False)}
_WHITESPACE = b" \t\n\r\v\f"


class PnmError(ValueError):
    """Malformed Netpbm stream.  ``field`` names the offending part."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


class _Cursor:
    def __init__(self, data: bytes, pos: int = 0) -> None:
        self.data = data
        self.pos = pos

    def skip_space(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos : self.pos + 1]
            if c == b"#":
                nl = data.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif c in _WHITESPACE:
                self.pos += 1
            else:
                break

    def token(self) -> bytes:
        self.skip_space()
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and data[self.pos : self.pos + 1] not in _WHITESPACE + b"#":
            self.pos += 1
        return data[start : self.pos]

    def header_int(self, field: str) -> int:
        tok = self.token()
        if not tok:
            raise PnmError(field, "missing value (truncated header)")
        if not tok.isdigit():
            raise PnmError(field, f"not a decimal integer: {tok[:16]!r}")
        return int(tok)


def read_pnm(data: bytes) -> Image:
    """Decode a PGM/PPM byte stream into a :class:`GrayImage` or :class:`RgbImage`."""
    data = bytes(data)
    magic = data[:2]
    if magic not in _MAGICS:
        raise PnmError("magic", f"bad magic number {magic!r}; expected P2, P3, P5 or P6")
    channels, ascii_ = _MAGICS[magic]
    cur = _Cursor(data, 2)
    width = cur.header_int("width")
    height = cur.header_int("height")
    for name, value in (("width", width), ("height", height)):
        if value < 1:
            raise PnmError(name, f"must be positive, got {value}")
        if value > MAX_DIM:
            raise PnmError(name, f"{value} exceeds the {MAX_DIM} limit")
    if width * height * channels > MAX_SAMPLES:
        raise PnmError("height", f"{width}x{height} overflows the sample limit")
    maxval = cur.header_int("maxval")
    if maxval != 255:
        raise PnmError("maxval", f"unsupported maxval {maxval}; only 255 is accepted")

    count = width * height * channels
    if ascii_:
        values = []
        for _ in range(count):
            tok = cur.token()
            if not tok:
                raise PnmError("payload", f"truncated: expected {count} samples, got {len(values)}")
            if not tok.isdigit() or int(tok) > 255:
                raise PnmError("payload", f"bad sample {tok[:16]!r}")
            values.append(int(tok))
        flat = np.array(values, dtype=np.uint8)
    else:
        if cur.pos >= len(data) or data[cur.pos : cur.pos + 1] not in _WHITESPACE:
            raise PnmError("maxval", "missing whitespace before binary payload")
        start = cur.pos + 1
        payload = data[start : start + count]
        if len(payload) < count:
            raise PnmError("payload", f"truncated: expected {count} bytes, got {len(payload)}")
        flat = np.frombuffer(payload, dtype=np.uint8)

    if channels == 1:
        return GrayImage(flat.reshape(height, width))
    return RgbImage(flat.reshape(height, width, 3))


def write_pnm(img: Image, ascii: bool = False) -> bytes:
    """Encode an image in canonical Netpbm form (binary unless ``ascii``)."""
    if isinstance(img, GrayImage):
        magic = b"P2" if ascii else b"P5"
    elif isinstance(img, RgbImage):
        magic = b"P3" if ascii else b"P6"
    else:
        raise TypeError(f"cannot encode {type(img).__name__}")
    header = magic + b"\n" + f"{img.width} {img.height}\n255\n".encode("ascii")
    if not ascii:
        return header + img.pixels.tobytes()
    rows = img.pixels.reshape(img.height, -1)
    body = "".join(" ".join(map(str, row.tolist())) + "\n" for row in rows)
    return header + body.encode("ascii")


def load(path) -> Image:
    with open(path, "rb") as fh:
        return read_pnm(fh.read())


def save(path, img: Image, ascii: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pnm(img, ascii=ascii))
