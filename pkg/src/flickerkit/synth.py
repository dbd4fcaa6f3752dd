"""Deterministic synthetic sequences with flicker injected at known pixels.

Ground truth comes for free: even frames are a uniform base color, odd
frames carry the flicker color at a seeded set of distinct locations, so
every consecutive pair differs at exactly those pixels.
"""

import math
from dataclasses import dataclass

import numpy as np

from .detector import FlickerMap
from .errors import InputError
from .frames import FrameSequence
from .palette import PaletteColor, palette_code

# 32-bit linear congruential generator, Numerical Recipes constants.
# Statistical quality is irrelevant here; cross-platform reproducibility
# of the location picks is the point.
_LCG_A = 1664525
_LCG_C = 1013904223
_LCG_M = 2 ** 32


@dataclass(frozen=True)
class InjectionSpec:
    """Recipe for a synthetic flickering sequence."""

    width: int
    height: int
    frame_count: int = 2
    fraction: float = 0.06
    base_color: PaletteColor = PaletteColor.BLACK
    flicker_color: PaletteColor = PaletteColor.WHITE
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InputError(f"dimensions must be positive, got {self.width}x{self.height}")
        if self.frame_count < 1:
            raise InputError(f"frame count must be >= 1, got {self.frame_count}")
        if not (0.0 <= self.fraction <= 1.0):
            raise InputError(f"fraction must lie in [0, 1], got {self.fraction}")


def _lcg(state):
    return (_LCG_A * state + _LCG_C) % _LCG_M


def pick_locations(total, count, seed):
    """First `count` entries of a seeded partial Fisher-Yates shuffle of range(total).

    The modulo draw has negligible bias for our sizes and keeps the scheme
    reproducible from the published constants alone.
    """
    if count > total:
        raise InputError(f"cannot pick {count} distinct locations from {total}")
    idx = list(range(total))
    state = seed % _LCG_M
    for i in range(count):
        state = _lcg(state)
        j = i + state % (total - i)
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:count]


def generate(spec):
    """Build the sequence and one ground-truth mask per consecutive pair.

    round(fraction * width * height) distinct pixels are selected; every
    returned map flags exactly those pixels. Identical spec and seed give
    bit-identical output.
    """
    total = spec.width * spec.height
    count = int(math.floor(spec.fraction * total + 0.5))  # round half up
    locations = pick_locations(total, count, spec.seed)

    flags = np.zeros((spec.height, spec.width), dtype=bool)
    for loc in locations:
        flags[loc // spec.width, loc % spec.width] = True

    base = np.empty((spec.height, spec.width, 3), dtype=np.float64)
    base[:, :] = palette_code(spec.base_color)
    odd = base.copy()
    odd[flags] = palette_code(spec.flicker_color)

    frames = [base if i % 2 == 0 else odd for i in range(spec.frame_count)]
    maps = [FlickerMap(flags=flags.copy(), pair_index=i)
            for i in range(spec.frame_count - 1)]
    return FrameSequence(frames), maps
