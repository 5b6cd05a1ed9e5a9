"""Image file I/O.

PGM (P2 ASCII / P5 binary, maxval 255) is the bit-exact native format:
writing uses round-half-up of v*255 after clamping, reading maps v/255,
so write-then-read reproduces a quantized field exactly.  PNG (8-bit
grayscale and RGB, non-interlaced) is decoded/encoded with a minimal
stdlib-zlib codec for ingestion convenience; RGB arrays have shape
(height, width, 3) and are processed channel-wise by the pipelines.
"""

import struct
import zlib

import numpy as np

from .field import as_field


class ImageFormatError(ValueError):
    """Malformed or unsupported image file contents."""


def quantize(u) -> np.ndarray:
    """Clamp to [0,1] and round half up to 8-bit levels."""
    u = np.clip(np.asarray(u, dtype=np.float64), 0.0, 1.0)
    return np.floor(u * 255.0 + 0.5).astype(np.uint8)


# ---------------------------------------------------------------- PGM

def _pgm_tokens(data: bytes):
    """Header tokens with '#' comments stripped, plus the payload offset."""
    tokens = []
    i = 0
    while len(tokens) < 4 and i < len(data):
        c = data[i:i + 1]
        if c == b"#":
            while i < len(data) and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            start = i
            while i < len(data) and not data[i:i + 1].isspace() and data[i:i + 1] != b"#":
                i += 1
            tokens.append(data[start:i])
    if len(tokens) < 4:
        raise ImageFormatError("truncated PGM header")
    # exactly one whitespace byte separates the header from a P5 payload
    return tokens, i + 1


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    tokens, payload_at = _pgm_tokens(data)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError:
        raise ImageFormatError("non-numeric PGM header fields") from None
    if width < 1 or height < 1:
        raise ImageFormatError("non-positive PGM dimensions")
    if maxval != 255:
        raise ImageFormatError(f"unsupported PGM maxval {maxval} (need 255)")
    n = width * height
    if magic == b"P5":
        payload = data[payload_at:payload_at + n]
        if len(payload) < n:
            raise ImageFormatError("P5 payload shorter than width*height")
        values = np.frombuffer(payload, dtype=np.uint8, count=n)
    else:
        fields = data[payload_at - 1:].split()
        if len(fields) < n:
            raise ImageFormatError("P2 payload shorter than width*height")
        try:
            values = np.array([int(f) for f in fields[:n]], dtype=np.int64)
        except ValueError:
            raise ImageFormatError("non-numeric P2 sample") from None
        if values.min() < 0 or values.max() > 255:
            raise ImageFormatError("P2 sample out of range")
    return values.reshape(height, width).astype(np.float64) / 255.0


def write_pgm(u, path, variant: str = "P5") -> None:
    if variant not in ("P2", "P5"):
        raise ImageFormatError(f"unknown PGM variant {variant!r}")
    q = quantize(as_field(u))
    height, width = q.shape
    header = f"{variant}\n{width} {height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        if variant == "P5":
            fh.write(q.tobytes())
        else:
            for row in q:
                fh.write(" ".join(str(v) for v in row).encode("ascii") + b"\n")


# ---------------------------------------------------------------- PNG

_PNG_SIG = b"\x89PNG\r\n\x1a\n"


def _paeth(a, b, c):
    p = a + b - c
    pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def read_png(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:8] != _PNG_SIG:
        raise ImageFormatError("not a PNG file")
    pos = 8
    width = height = None
    channels = 0
    idat = bytearray()
    while pos + 8 <= len(data):
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        ctype = data[pos + 4:pos + 8]
        chunk = data[pos + 8:pos + 8 + length]
        pos += 12 + length
        if ctype == b"IHDR":
            width, height, depth, color, comp, filt, interlace = struct.unpack(
                ">IIBBBBB", chunk)
            if depth != 8 or color not in (0, 2) or interlace != 0:
                raise ImageFormatError(
                    "only 8-bit non-interlaced grayscale/RGB PNG is supported")
            channels = 1 if color == 0 else 3
        elif ctype == b"IDAT":
            idat.extend(chunk)
        elif ctype == b"IEND":
            break
    if width is None:
        raise ImageFormatError("PNG missing IHDR")
    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as err:
        raise ImageFormatError(f"corrupt PNG data: {err}") from None
    stride = width * channels
    if len(raw) < height * (stride + 1):
        raise ImageFormatError("PNG payload shorter than expected")
    out = np.zeros((height, stride), dtype=np.uint8)
    bpp = channels
    for r in range(height):
        off = r * (stride + 1)
        ftype = raw[off]
        line = np.frombuffer(raw, dtype=np.uint8, count=stride, offset=off + 1).astype(np.int32)
        prev = out[r - 1].astype(np.int32) if r > 0 else np.zeros(stride, dtype=np.int32)
        if ftype == 0:
            rec = line
        elif ftype == 2:  # up
            rec = (line + prev) & 0xFF
        else:
            rec = np.zeros(stride, dtype=np.int32)
            for x in range(stride):
                a = rec[x - bpp] if x >= bpp else 0
                b = prev[x]
                if ftype == 1:  # sub
                    rec[x] = (line[x] + a) & 0xFF
                elif ftype == 3:  # average
                    rec[x] = (line[x] + (a + b) // 2) & 0xFF
                elif ftype == 4:  # paeth
                    c = prev[x - bpp] if x >= bpp else 0
                    rec[x] = (line[x] + _paeth(a, b, c)) & 0xFF
                else:
                    raise ImageFormatError(f"unknown PNG filter type {ftype}")
        out[r] = rec.astype(np.uint8)
    arr = out.astype(np.float64) / 255.0
    if channels == 1:
        return arr.reshape(height, width)
    return arr.reshape(height, width, 3)


def _png_chunk(ctype: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(ctype + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + ctype + payload + struct.pack(">I", crc)


def write_png(arr, path) -> None:
    a = np.asarray(arr, dtype=np.float64)
    if a.ndim == 2:
        color, channels = 0, 1
    elif a.ndim == 3 and a.shape[2] == 3:
        color, channels = 2, 3
    else:
        raise ImageFormatError("PNG writer takes (h, w) or (h, w, 3) arrays")
    q = quantize(a)
    height, width = q.shape[:2]
    rows = q.reshape(height, width * channels)
    raw = b"".join(b"\x00" + rows[r].tobytes() for r in range(height))
    ihdr = struct.pack(">IIBBBBB", width, height, 8, color, 0, 0, 0)
    with open(path, "wb") as fh:
        fh.write(_PNG_SIG)
        fh.write(_png_chunk(b"IHDR", ihdr))
        fh.write(_png_chunk(b"IDAT", zlib.compress(raw, 9)))
        fh.write(_png_chunk(b"IEND", b""))


# ---------------------------------------------------------------- dispatch

def read_image(path) -> np.ndarray:
    """Read a PGM or PNG by extension; grayscale (h, w) or RGB (h, w, 3),
    values in [0, 1]."""
    name = str(path).lower()
    if name.endswith(".pgm"):
        return read_pgm(path)
    if name.endswith(".png"):
        return read_png(path)
    raise ImageFormatError(f"unsupported image extension on {path!r}")


def write_image(arr, path, variant: str = "P5") -> None:
    name = str(path).lower()
    a = np.asarray(arr)
    if name.endswith(".pgm"):
        if a.ndim != 2:
            raise ImageFormatError("PGM holds a single channel; write PNG for RGB")
        write_pgm(a, path, variant)
    elif name.endswith(".png"):
        write_png(a, path)
    else:
        raise ImageFormatError(f"unsupported image extension on {path!r}")
