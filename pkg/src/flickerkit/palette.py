"""The eight-color display palette and nearest-color quantization.

The palette colors sit on the corners of the RGB unit cube. The index
order is fixed (Black first, White last) and doubles as the row/column
order of every table in the stochastic module. Conveniently the index
bits spell out the channels: bit 2 = red, bit 1 = green, bit 0 = blue.
"""

from enum import IntEnum

import numpy as np


class PaletteColor(IntEnum):
    BLACK = 0
    BLUE = 1
    GREEN = 2
    CYAN = 3
    RED = 4
    MAGENTA = 5
    YELLOW = 6
    WHITE = 7


# (8, 3) corner codes, row i = ((i>>2)&1, (i>>1)&1, i&1)
PALETTE_CODES = np.array(
    [[(i >> 2) & 1, (i >> 1) & 1, i & 1] for i in range(8)], dtype=np.float64
)
PALETTE_CODES.flags.writeable = False

COLOR_NAMES = tuple(c.name.capitalize() for c in PaletteColor)


def palette_code(color):
    """Return the canonical (r, g, b) code of a palette color, channels in {0, 1}."""
    c = PaletteColor(color)
    r, g, b = PALETTE_CODES[int(c)]
    return (float(r), float(g), float(b))


def quantize(pixel):
    """Map an (r, g, b) pixel onto the nearest palette color.

    Nearest by Euclidean distance in RGB space; ties break to the lowest
    index, so the grey midpoint lands on Black. Total over the unit cube.
    """
    r, g, b = float(pixel[0]), float(pixel[1]), float(pixel[2])
    best = 0
    best_d = None
    for i in range(8):
        cr, cg, cb = PALETTE_CODES[i]
        dr = r - cr
        dg = g - cg
        db = b - cb
        d = dr * dr + dg * dg + db * db
        if best_d is None or d < best_d:
            best_d = d
            best = i
    return PaletteColor(best)


def quantize_pixels(pixels):
    """Vectorized quantize: (..., 3) float array -> (...) array of palette indices.

    Accumulates the squared distance channel by channel in the same order
    as the scalar version, so both agree bit for bit; argmin takes the
    first minimum, which is the lowest-index tie-break.
    """
    px = np.asarray(pixels, dtype=np.float64)
    diff = px[..., None, :] - PALETTE_CODES  # (..., 8, 3)
    d = diff[..., 0] * diff[..., 0]
    d = d + diff[..., 1] * diff[..., 1]
    d = d + diff[..., 2] * diff[..., 2]
    return np.argmin(d, axis=-1).astype(np.uint8)


def distance_matrix():
    """8x8 color separation table: zero diagonal, (i + j) / 2 off it.

    Every entry is an exact binary half, so comparisons against the
    published table need no tolerance.
    """
    d = np.zeros((8, 8), dtype=np.float64)
    for i in range(8):
        for j in range(8):
            if i != j:
                d[i, j] = (i + j) / 2.0
    return d
