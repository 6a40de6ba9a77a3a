"""Raster image container and the two pipeline image transforms.

``render_request_banner`` stacks a white banner with the user request (drawn
with the embedded bitmap font) above the document image, the way requests are
rendered into the model input. ``draw_set_of_marks`` outlines the grounded
RoI so a multimodal model can attend to it.
"""

from __future__ import annotations

import io
import textwrap
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .font8x16 import GLYPH_HEIGHT, GLYPH_WIDTH, render_line
from .grounding import BoundingBox

DEFAULT_MARK_COLOR = (255, 0, 0)
DEFAULT_MARK_THICKNESS = 3
BANNER_PADDING = 4
MAX_BANNER_FRACTION = 0.5


class TextTooLong(ValueError):
    """The wrapped banner would exceed the allowed fraction of image height."""


class BoxOutOfBounds(ValueError):
    """The box does not fit inside the image."""


@dataclass
class RasterImage:
    """RGB8 image; ``pixels`` is a (height, width, 3) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.ndim != 3 or px.shape[2] != 3 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"pixels must be (H, W, 3) uint8, got {px.shape}")
        self.pixels = px

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def copy(self) -> "RasterImage":
        return RasterImage(self.pixels.copy())

    @classmethod
    def blank(cls, width: int, height: int, color=(255, 255, 255)) -> "RasterImage":
        px = np.empty((height, width, 3), dtype=np.uint8)
        px[:] = color
        return cls(px)

    def to_png_bytes(self) -> bytes:
        buf = io.BytesIO()
        Image.fromarray(self.pixels, mode="RGB").save(buf, format="PNG")
        return buf.getvalue()

    def save_png(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_png_bytes())

    @classmethod
    def from_png_bytes(cls, data: bytes) -> "RasterImage":
        with Image.open(io.BytesIO(data)) as img:
            return cls(np.asarray(img.convert("RGB")))

    @classmethod
    def load_png(cls, path: str | Path) -> "RasterImage":
        return cls.from_png_bytes(Path(path).read_bytes())


def _wrap_request(request: str, max_cols: int) -> list[str]:
    lines: list[str] = []
    for part in request.splitlines() or [request]:
        wrapped = textwrap.wrap(
            part,
            width=max_cols,
            break_long_words=True,
            break_on_hyphens=False,
            drop_whitespace=True,
        )
        lines.extend(wrapped or [""])
    return lines


def render_request_banner(
    image: RasterImage,
    request: str,
    max_banner_fraction: float = MAX_BANNER_FRACTION,
) -> RasterImage:
    """Stack a white banner with the request text above the image.

    Output width is unchanged; output height grows by the banner height.
    Raises :class:`TextTooLong` when the wrapped banner would exceed
    ``max_banner_fraction`` of the original image height.
    """
    if not request or not request.strip():
        raise ValueError("request must be non-empty")
    max_cols = max(1, (image.width - 2 * BANNER_PADDING) // GLYPH_WIDTH)
    lines = _wrap_request(request.strip(), max_cols)
    banner_h = len(lines) * GLYPH_HEIGHT + 2 * BANNER_PADDING
    if banner_h > max_banner_fraction * image.height:
        raise TextTooLong(
            f"banner of {banner_h}px exceeds {max_banner_fraction:.0%} of "
            f"{image.height}px image height"
        )
    banner = np.full((banner_h, image.width, 3), 255, dtype=np.uint8)
    y = BANNER_PADDING
    for line in lines:
        bitmap = render_line(line)
        w = min(bitmap.shape[1], image.width - BANNER_PADDING)
        banner[y : y + GLYPH_HEIGHT, BANNER_PADDING : BANNER_PADDING + w][
            bitmap[:, :w]
        ] = 0
        y += GLYPH_HEIGHT
    return RasterImage(np.vstack([banner, image.pixels]))


def draw_set_of_marks(
    image: RasterImage,
    box: BoundingBox,
    color: tuple[int, int, int] = DEFAULT_MARK_COLOR,
    thickness: int = DEFAULT_MARK_THICKNESS,
) -> RasterImage:
    """Draw a rectangle outline at ``box``; pixels outside the frame band
    are untouched. The band lies inside the box extent."""
    if box.x < 0 or box.y < 0 or box.x + box.w > image.width or box.y + box.h > image.height:
        raise BoxOutOfBounds(
            f"box {box} outside {image.width}x{image.height} image"
        )
    t = max(1, int(thickness))
    px = image.pixels.copy()
    x0, y0 = box.x, box.y
    x1, y1 = box.x + box.w, box.y + box.h
    ty = min(t, box.h)
    tx = min(t, box.w)
    px[y0 : y0 + ty, x0:x1] = color
    px[y1 - ty : y1, x0:x1] = color
    px[y0:y1, x0 : x0 + tx] = color
    px[y0:y1, x1 - tx : x1] = color
    return RasterImage(px)
