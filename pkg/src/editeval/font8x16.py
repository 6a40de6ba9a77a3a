"""Embedded 8x16 bitmap font for deterministic text rendering.

Glyphs are authored on an 8x8 grid (one hex byte per row, most significant
bit = leftmost pixel) and doubled vertically to 8x16 at render time. Covers
printable ASCII; anything else renders as a filled block.
"""

from __future__ import annotations

import numpy as np

GLYPH_WIDTH = 8
GLYPH_HEIGHT = 16

_FALLBACK = "007E7E7E7E7E7E00"

_GLYPHS = {
    " ": "0000000000000000",
    "!": "1818181818001800",
    '"': "6C6C480000000000",
    "#": "6C6CFE6CFE6C6C00",
    "$": "187EC07C06FC1800",
    "%": "00C60C183066C600",
    "&": "386C3876DCCC7600",
    "'": "1818300000000000",
    "(": "0C18303030180C00",
    ")": "30180C0C0C183000",
    "*": "00663CFF3C660000",
    "+": "0018187E18180000",
    ",": "0000000000181830",
    "-": "0000007E00000000",
    ".": "0000000000181800",
    "/": "060C183060C08000",
    "0": "7CC6CED6E6C67C00",
    "1": "1838181818187E00",
    "2": "7CC6061C70C0FE00",
    "3": "7CC6063C06C67C00",
    "4": "1C3C6CCCFE0C0C00",
    "5": "FEC0FC0606C67C00",
    "6": "3C60C0FCC6C67C00",
    "7": "FE060C1830303000",
    "8": "7CC6C67CC6C67C00",
    "9": "7CC6C67E060C7800",
    ":": "0018180000181800",
    ";": "0018180000181830",
    "<": "0C18306030180C00",
    "=": "00007E007E000000",
    ">": "30180C060C183000",
    "?": "7CC60C1818001800",
    "@": "7CC6DEDEDCC07C00",
    "A": "386CC6C6FEC6C600",
    "B": "FCC6C6FCC6C6FC00",
    "C": "3C66C0C0C0663C00",
    "D": "F8CCC6C6C6CCF800",
    "E": "FEC0C0F8C0C0FE00",
    "F": "FEC0C0F8C0C0C000",
    "G": "3C66C0CEC6663E00",
    "H": "C6C6C6FEC6C6C600",
    "I": "7E18181818187E00",
    "J": "1E060606C6C67C00",
    "K": "C6CCD8F0D8CCC600",
    "L": "C0C0C0C0C0C0FE00",
    "M": "C6EEFED6C6C6C600",
    "N": "C6E6F6DECEC6C600",
    "O": "7CC6C6C6C6C67C00",
    "P": "FCC6C6FCC0C0C000",
    "Q": "7CC6C6C6D6CC7600",
    "R": "FCC6C6FCD8CCC600",
    "S": "7CC6C07C06C67C00",
    "T": "FF18181818181800",
    "U": "C6C6C6C6C6C67C00",
    "V": "C6C6C6C66C381000",
    "W": "C6C6C6D6FEEEC600",
    "X": "C66C3810386CC600",
    "Y": "6666663C18181800",
    "Z": "FE0C183060C0FE00",
    "[": "3C30303030303C00",
    "\\": "C06030180C060200",
    "]": "3C0C0C0C0C0C3C00",
    "^": "10386CC600000000",
    "_": "00000000000000FF",
    "`": "30180C0000000000",
    "a": "00007C067EC67E00",
    "b": "C0C0FCC6C6C6FC00",
    "c": "00007CC6C0C67C00",
    "d": "06067EC6C6C67E00",
    "e": "00007CC6FEC07C00",
    "f": "1C307C3030303000",
    "g": "00007EC6C67E067C",
    "h": "C0C0FCC6C6C6C600",
    "i": "1800381818183C00",
    "j": "06000E060606663C",
    "k": "C0C0CCD8F0D8CC00",
    "l": "3818181818183C00",
    "m": "0000ECFED6D6C600",
    "n": "0000FCC6C6C6C600",
    "o": "00007CC6C6C67C00",
    "p": "0000FCC6C6FCC0C0",
    "q": "00007EC6C67E0606",
    "r": "0000DCE6C0C0C000",
    "s": "00007EC07C06FC00",
    "t": "30307C3030301C00",
    "u": "0000C6C6C6C67E00",
    "v": "0000C6C6C66C3800",
    "w": "0000C6D6D6FE6C00",
    "x": "0000C66C386CC600",
    "y": "0000C6C6C67E067C",
    "z": "0000FE0C3860FE00",
    "{": "0E18187018180E00",
    "|": "1818181818181800",
    "}": "7018180E18187000",
    "~": "0076DC0000000000",
}

_cache: dict[str, np.ndarray] = {}


def glyph_bitmap(char: str) -> np.ndarray:
    """Boolean (16, 8) bitmap for one character."""
    cached = _cache.get(char)
    if cached is not None:
        return cached
    rows = bytes.fromhex(_GLYPHS.get(char, _FALLBACK))
    grid8 = np.unpackbits(np.frombuffer(rows, dtype=np.uint8).reshape(8, 1), axis=1)
    bitmap = np.repeat(grid8.astype(bool), 2, axis=0)
    _cache[char] = bitmap
    return bitmap


def render_line(text: str) -> np.ndarray:
    """Boolean (16, 8 * len(text)) bitmap for one line of text."""
    if not text:
        return np.zeros((GLYPH_HEIGHT, 0), dtype=bool)
    return np.hstack([glyph_bitmap(c) for c in text])
