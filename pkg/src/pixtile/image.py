"""Raster images, the pixel-per-tile compiler, and round-trip checks.

Images are grids of 32-bit signed ARGB pixels (row-major, top row first).
The portable pixmap formats P3 (ASCII) and P6 (binary) are read and
written; on load the alpha channel is forced to 0xFE to match the color
convention used by the tile generators.

``compile_image`` turns an image into a tile system with exactly one tile
type per pixel.  Every interior edge of the pixel grid gets its own glue
label, so each tile fits in exactly one place and the system is directed:
the bottom boundary row chains with strength-2 E/W glues, the seed column
chains with strength-2 N/S glues, all other edges bind with strength 1,
and the temperature is 2.  Rapid mode first reduces the image to 32x32 by
nearest-neighbor sampling; normal mode compiles at full resolution.

Renderers mirror columns (the lattice grows away from the seed in the
+col direction, which reads right-to-left on screen), so the source
pixel at the bottom-right corner becomes the seed tile and a compiled,
fully grown assembly renders back to the source image exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import SimConfig, SimResult, run
from .model import Assembly, TileSystem, TileType

__all__ = [
    "BLACK",
    "MODES",
    "RAPID_SIZE",
    "DimensionCapError",
    "ImageFormatError",
    "PpmHeaderError",
    "PpmTruncatedError",
    "RasterImage",
    "RoundTripReport",
    "UnsupportedFormatError",
    "compile_image",
    "downscale_nearest",
    "load_image",
    "pack_argb",
    "render",
    "to_ppm",
    "unpack_argb",
    "verify_roundtrip",
]

MODES = ("normal", "rapid")
RAPID_SIZE = 32
#: Opaque-ish black under the 0xFE alpha convention.
BLACK = -33554432  # 0xFE000000

_U32 = 1 << 32
_FORCE_ALPHA = 0xFE << 24


class ImageFormatError(ValueError):
    """Base for image decoding errors; ``offset`` is a byte position."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"byte {offset}: {message}")


class PpmHeaderError(ImageFormatError):
    """Malformed pixmap header."""


class PpmTruncatedError(ImageFormatError):
    """Pixel payload shorter than the header promised."""


class UnsupportedFormatError(ImageFormatError):
    """Recognizably not a supported raster format."""


class DimensionCapError(ValueError):
    """Image exceeds the compiler's dimension cap."""


def pack_argb(a: int, r: int, g: int, b: int) -> int:
    """Signed 32-bit ARGB from channel bytes."""
    u = (a << 24) | (r << 16) | (g << 8) | b
    return u - _U32 if u >= _U32 // 2 else u


def unpack_argb(value: int) -> tuple[int, int, int, int]:
    """Channel bytes (a, r, g, b) of a signed 32-bit ARGB value."""
    u = value & 0xFFFFFFFF
    return (u >> 24) & 0xFF, (u >> 16) & 0xFF, (u >> 8) & 0xFF, u & 0xFF


class RasterImage:
    """A width x height grid of signed ARGB pixels.

    ``pixels`` is an int32 array of shape (height, width), top row first.
    """

    __slots__ = ("width", "height", "pixels")

    def __init__(self, width: int, height: int, pixels):
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be >= 1, "
                             f"got {width}x{height}")
        arr = np.asarray(pixels, dtype=np.int64)
        if arr.size != width * height:
            raise ValueError(f"expected {width * height} pixels, "
                             f"got {arr.size}")
        arr = arr.reshape(height, width)
        arr = np.where(arr >= _U32 // 2, arr - _U32, arr)
        self.width = width
        self.height = height
        self.pixels = arr.astype(np.int32)

    def pixel(self, x: int, y: int) -> int:
        return int(self.pixels[y, x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and bool(np.array_equal(self.pixels, other.pixels)))

    def __repr__(self) -> str:
        return f"RasterImage({self.width}x{self.height})"


class _ByteScanner:
    """Tokenizer over pixmap bytes; keeps byte offsets for errors."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_space(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if b in b" \t\r\n\x0b\x0c":
                self.pos += 1
            elif b == ord("#"):
                while self.pos < n and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                break

    def read_uint(self, what: str) -> int:
        self.skip_space()
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and 48 <= data[self.pos] <= 57:
            self.pos += 1
        if self.pos == start:
            if start >= n:
                raise PpmTruncatedError(f"expected {what}, hit end of data",
                                        start)
            raise PpmHeaderError(f"expected {what}", start)
        return int(data[start:self.pos])


def load_image(data: bytes, format_hint: str | None = None) -> RasterImage:
    """Decode a P3 or P6 portable pixmap.

    Alpha is forced to 0xFE.  Sample values are rescaled to 0..255 when
    the header's maxval is below 255; maxvals above 255 (two-byte
    samples) are rejected.  ``format_hint`` only decorates error messages.
    """
    if len(data) < 2 or data[0:1] != b"P" or data[1:2] not in b"36":
        hint = f" (hint: {format_hint})" if format_hint else ""
        raise UnsupportedFormatError(
            f"not a P3/P6 portable pixmap{hint}", 0)
    binary = data[1:2] == b"6"
    scan = _ByteScanner(data)
    scan.pos = 2
    width = scan.read_uint("width")
    height = scan.read_uint("height")
    maxval = scan.read_uint("maxval")
    if width < 1 or height < 1:
        raise PpmHeaderError(f"bad dimensions {width}x{height}", scan.pos)
    if maxval < 1:
        raise PpmHeaderError(f"bad maxval {maxval}", scan.pos)
    if maxval > 255:
        raise UnsupportedFormatError(
            f"maxval {maxval} needs two-byte samples; not supported",
            scan.pos)

    count = width * height * 3
    if binary:
        if scan.pos >= len(data):
            raise PpmTruncatedError("missing pixel payload", scan.pos)
        if data[scan.pos] not in b" \t\r\n\x0b\x0c":
            raise PpmHeaderError("expected single whitespace before payload",
                                 scan.pos)
        scan.pos += 1
        payload = data[scan.pos:scan.pos + count]
        if len(payload) < count:
            raise PpmTruncatedError(
                f"payload holds {len(payload)} bytes, need {count}",
                len(data))
        if len(data) > scan.pos + count:
            raise PpmHeaderError("trailing data after pixel payload",
                                 scan.pos + count)
        samples = np.frombuffer(payload, dtype=np.uint8).astype(np.uint32)
    else:
        values = np.empty(count, dtype=np.uint32)
        for i in range(count):
            v = scan.read_uint("pixel sample")
            if v > maxval:
                raise PpmHeaderError(f"sample {v} exceeds maxval {maxval}",
                                     scan.pos)
            values[i] = v
        scan.skip_space()
        if scan.pos != len(data):
            raise PpmHeaderError("trailing data after pixel samples",
                                 scan.pos)
        samples = values
    if maxval != 255:
        samples = (samples * 255 + maxval // 2) // maxval
    rgb = samples.reshape(height, width, 3)
    u32 = (np.uint32(_FORCE_ALPHA) | (rgb[:, :, 0] << np.uint32(16))
           | (rgb[:, :, 1] << np.uint32(8)) | rgb[:, :, 2])
    return RasterImage(width, height, u32.astype(np.uint32).view(np.int32))


def to_ppm(img: RasterImage, binary: bool = True) -> bytes:
    """Encode as a pixmap with the fixed header ``P? W H 255\\n``.

    P6 payload is raw RGB triples; P3 writes one image row per line with
    single spaces between samples.  Alpha is dropped.
    """
    u32 = img.pixels.view(np.uint32)
    r = ((u32 >> np.uint32(16)) & np.uint32(0xFF)).astype(np.uint8)
    g = ((u32 >> np.uint32(8)) & np.uint32(0xFF)).astype(np.uint8)
    b = (u32 & np.uint32(0xFF)).astype(np.uint8)
    if binary:
        header = f"P6 {img.width} {img.height} 255\n".encode("ascii")
        return header + np.dstack([r, g, b]).tobytes()
    lines = [f"P3 {img.width} {img.height} 255"]
    stacked = np.dstack([r, g, b]).reshape(img.height, img.width * 3)
    for row in stacked:
        lines.append(" ".join(str(int(v)) for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def downscale_nearest(img: RasterImage, width: int, height: int) -> RasterImage:
    """Nearest-neighbor resample to width x height.

    Output pixel (x, y) samples the input at
    (floor((x + 0.5) * W / width), floor((y + 0.5) * H / height)), which
    is the identity when the sizes already match.
    """
    xs = ((2 * np.arange(width) + 1) * img.width) // (2 * width)
    ys = ((2 * np.arange(height) + 1) * img.height) // (2 * height)
    return RasterImage(width, height, img.pixels[np.ix_(ys, xs)])


def _edge_glues(width: int, height: int):
    """Positional glue numbering for the pixel grid.

    Returns (h_edge, v_edge, strengths): ``h_edge[r][c]`` is the glue on
    the edge between lattice columns c-1 and c in row r (c >= 1), and
    ``v_edge[r][c]`` the glue between rows r-1 and r in column c (r >= 1).
    The bottom-row and seed-column chains come first and bind at strength
    2; all remaining edges bind at strength 1.
    """
    h_edge = {}
    v_edge = {}
    glue = 0
    for c in range(1, width):
        glue += 1
        h_edge[(0, c)] = glue
    for r in range(1, height):
        glue += 1
        v_edge[(r, 0)] = glue
    strong = glue
    for r in range(1, height):
        for c in range(1, width):
            glue += 1
            v_edge[(r, c)] = glue
    for r in range(1, height):
        for c in range(1, width):
            glue += 1
            h_edge[(r, c)] = glue
    strengths = tuple(2 if g <= strong else 1 for g in range(1, glue + 1))
    return h_edge, v_edge, strengths


def compile_image(img: RasterImage, mode: str = "normal",
                  max_dim: int = 256) -> TileSystem:
    """Compile an image into a directed tile system, one tile per pixel.

    Normal mode refuses images over ``max_dim`` in either dimension (the
    cap exists to keep accidental huge compiles in check; raise it
    explicitly for bigger inputs).  Rapid mode downsamples to 32x32 first,
    so the cap does not apply.
    """
    if mode not in MODES:
        raise ValueError(f"unknown compile mode {mode!r}")
    if mode == "rapid":
        img = downscale_nearest(img, RAPID_SIZE, RAPID_SIZE)
    elif img.width > max_dim or img.height > max_dim:
        raise DimensionCapError(
            f"{img.width}x{img.height} exceeds the {max_dim}x{max_dim} cap "
            f"for normal mode; pass a larger max_dim to override")
    w, h = img.width, img.height
    h_edge, v_edge, strengths = _edge_glues(w, h)
    tiles = []
    for r in range(h):
        for c in range(w):
            edges = (
                v_edge.get((r + 1, c), 0),
                h_edge.get((r, c), 0),
                v_edge.get((r, c), 0),
                h_edge.get((r, c + 1), 0),
            )
            color = img.pixel(w - 1 - c, h - 1 - r)
            tiles.append(TileType(r * w + c, edges, color, f"{r},{c}"))
    comments = ((0, "seed tile"),)
    if len(tiles) > 1:
        comments += ((1, "Pixel tiles"),)
    return TileSystem(tiles=tuple(tiles), strengths=strengths, seed_id=0,
                      temperature=2, comments=comments)


def render(asm: Assembly, system: TileSystem,
           background: int = BLACK) -> RasterImage:
    """Paint an assembly onto the tight bounding box of its sites.

    Columns are mirrored (see the module docstring) so compiled images
    come back in source orientation and the seed lands bottom-right.
    Unoccupied sites get ``background``.
    """
    if not asm.placed:
        raise ValueError("cannot render an empty assembly")
    rmin, rmax, cmin, cmax = asm.bounds()
    w = cmax - cmin + 1
    h = rmax - rmin + 1
    out = np.full((h, w), background, dtype=np.int64)
    for site, tid in asm.placed.items():
        x = cmax - site.col
        y = rmax - site.row
        out[y, x] = system.tiles[tid].color
    return RasterImage(w, h, out)


@dataclass
class RoundTripReport:
    """Result of compiling, growing and re-rendering an image."""

    ok: bool
    mode: str
    width: int
    height: int
    tile_types: int
    glue_count: int
    steps: int
    wall_time: float
    first_mismatch: tuple[int, int, int, int] | None = None  # x, y, want, got

    def summary(self) -> str:
        verdict = "pass" if self.ok else (
            f"FAIL at ({self.first_mismatch[0]}, {self.first_mismatch[1]}): "
            f"expected {self.first_mismatch[2]}, got {self.first_mismatch[3]}")
        return (f"{self.mode} round trip {self.width}x{self.height}: "
                f"{verdict} ({self.tile_types} tiles, {self.glue_count} "
                f"glues, {self.steps} steps, {self.wall_time:.3f}s)")


def verify_roundtrip(img: RasterImage, mode: str = "normal",
                     max_dim: int = 256, *,
                     backend: str | None = None) -> RoundTripReport:
    """Compile, simulate to quiescence, render, and compare.

    Normal mode must reproduce the image pixel-exactly; rapid mode must
    match its 32x32 nearest-neighbor reduction.
    """
    system = compile_image(img, mode, max_dim=max_dim)
    expected = img if mode == "normal" else downscale_nearest(
        img, RAPID_SIZE, RAPID_SIZE)
    cfg = SimConfig(max_steps=max(1, expected.width * expected.height))
    result: SimResult = run(system, cfg, backend=backend)
    got = render(result.assembly, system)
    mismatch = None
    ok = (got.width, got.height) == (expected.width, expected.height)
    if not ok:
        mismatch = (-1, -1, expected.width * expected.height,
                    got.width * got.height)
    else:
        diff = np.argwhere(got.pixels != expected.pixels)
        if diff.size:
            y, x = (int(v) for v in diff[0])
            mismatch = (x, y, expected.pixel(x, y), got.pixel(x, y))
            ok = False
    return RoundTripReport(
        ok=ok, mode=mode, width=img.width, height=img.height,
        tile_types=len(system.tiles), glue_count=system.num_glues,
        steps=result.steps, wall_time=result.wall_time,
        first_mismatch=mismatch)
