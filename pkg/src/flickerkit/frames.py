"""Frame containers.

A frame is a (height, width, 3) float64 array with every channel in the
unit interval; 8-bit values are normalized by v/255 at the I/O boundary
so all in-memory math runs without premature rounding.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError


def as_frame(pixels):
    """Validate pixels and return the canonical float64 (h, w, 3) view."""
    arr = np.asarray(pixels, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise InputError(f"frame must have shape (height, width, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"frame must contain at least one pixel, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InputError("frame contains non-finite channel values")
    if float(arr.min()) < 0.0 or float(arr.max()) > 1.0:
        raise InputError("frame channel values must lie in [0, 1]")
    return arr


@dataclass
class FrameSequence:
    """Ordered frames of identical dimensions, with optional frame rate.

    Frames are treated as immutable once inside a sequence; operations that
    change pixels always build new arrays.
    """

    frames: list
    fps: float | None = None

    def __post_init__(self):
        if not self.frames:
            raise InputError("a sequence needs at least one frame")
        self.frames = [as_frame(f) for f in self.frames]
        h, w = self.frames[0].shape[:2]
        for k, f in enumerate(self.frames):
            if f.shape[:2] != (h, w):
                raise InputError(
                    f"frame {k} is {f.shape[1]}x{f.shape[0]}, expected {w}x{h}"
                )
        if self.fps is not None and self.fps <= 0:
            raise InputError(f"fps must be positive, got {self.fps}")

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    def __getitem__(self, i):
        return self.frames[i]

    @property
    def width(self):
        return self.frames[0].shape[1]

    @property
    def height(self):
        return self.frames[0].shape[0]
