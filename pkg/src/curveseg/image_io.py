"""Grayscale image reading and writing: binary PGM (P5) and PNG.

Brightness maps linearly between the 8-bit range [0, 255] on disk and
[0, 1] in memory.
"""

from __future__ import annotations

import io
import re
from pathlib import Path

import numpy as np
from PIL import Image

from .validation import check_gray_image

__all__ = [
    "read_image",
    "write_image",
    "read_pgm",
    "write_pgm",
    "read_png",
    "write_png",
    "encode_png",
]


def _to_bytes(image) -> np.ndarray:
    img = check_gray_image(image)
    return np.clip(np.round(img * 255.0), 0, 255).astype(np.uint8)


def _from_bytes(raw: np.ndarray) -> np.ndarray:
    return raw.astype(np.float64) / 255.0


def write_pgm(path, image) -> None:
    """Write a binary 8-bit PGM (P5) file."""
    data = _to_bytes(image)
    h, w = data.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + data.tobytes())


def read_pgm(path) -> np.ndarray:
    """Read a binary 8-bit PGM (P5) file."""
    blob = Path(path).read_bytes()
    if not blob.startswith(b"P5"):
        raise ValueError(f"{path}: not a binary PGM (P5) file")
    # header: magic, width, height, maxval; '#' comments allowed
    tokens = []
    pos = 2
    while len(tokens) < 3:
        m = re.match(rb"(?:\s+|#[^\n]*\n)*(\d+)", blob[pos:])
        if not m:
            raise ValueError(f"{path}: malformed PGM header")
        tokens.append(int(m.group(1)))
        pos += m.end()
    w, h, maxval = tokens
    if maxval != 255:
        raise ValueError(f"{path}: only 8-bit PGM supported (maxval={maxval})")
    pos += 1  # single whitespace after maxval
    raster = blob[pos : pos + w * h]
    if len(raster) != w * h:
        raise ValueError(f"{path}: truncated PGM raster")
    return _from_bytes(np.frombuffer(raster, dtype=np.uint8).reshape(h, w))


def encode_png(image) -> bytes:
    """Encode a grayscale image as PNG bytes."""
    buf = io.BytesIO()
    Image.fromarray(_to_bytes(image), mode="L").save(buf, format="PNG")
    return buf.getvalue()


def write_png(path, image) -> None:
    Path(path).write_bytes(encode_png(image))


def read_png(path) -> np.ndarray:
    with Image.open(path) as im:
        return _from_bytes(np.asarray(im.convert("L")))


def read_image(path) -> np.ndarray:
    """Read a grayscale image, dispatching on the file extension."""
    suffix = Path(path).suffix.lower()
    if suffix == ".pgm":
        return read_pgm(path)
    if suffix == ".png":
        return read_png(path)
    raise ValueError(f"unsupported image format {suffix!r} (use .pgm or .png)")


def write_image(path, image) -> None:
    """Write a grayscale image, dispatching on the file extension."""
    suffix = Path(path).suffix.lower()
    if suffix == ".pgm":
        write_pgm(path, image)
    elif suffix == ".png":
        write_png(path, image)
    else:
        raise ValueError(f"unsupported image format {suffix!r} (use .pgm or .png)")
