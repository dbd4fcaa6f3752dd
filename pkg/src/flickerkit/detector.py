"""Pixelwise flicker detection between consecutive frames.

A pixel is flagged when the transition probability of its quantized color
pair meets the threshold (>=, not strict). The earlier frame's color
selects the table row, the later frame's color the column.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .palette import quantize_pixels
from .stochastic import build_tables

DEFAULT_THRESHOLD = 0.05
DEFAULT_SOURCE = "col_stochastic"


@dataclass
class FlickerMap:
    """Boolean flicker mask for one consecutive frame pair."""

    flags: np.ndarray
    pair_index: int = 0

    @property
    def width(self):
        return self.flags.shape[1]

    @property
    def height(self):
        return self.flags.shape[0]

    @property
    def count(self):
        return int(self.flags.sum())


@dataclass
class FlickerReport:
    """Per-pair summary: flagged count, total pixels, flagged/total ratio."""

    pair_index: int
    flagged: int
    total: int
    ratio: float
    locations: list | None = None


def compare_frames(fa, fb, threshold=DEFAULT_THRESHOLD, source=DEFAULT_SOURCE,
                   mode="exact", pair_index=0):
    """Flag every pixel whose (earlier, later) color-pair probability >= threshold."""
    fa = np.asarray(fa, dtype=np.float64)
    fb = np.asarray(fb, dtype=np.float64)
    if fa.shape != fb.shape:
        raise InputError(f"frame dimensions differ: {fa.shape} vs {fb.shape}")
    if not (0.0 <= float(threshold) <= 1.0):
        raise InputError(f"threshold must lie in [0, 1], got {threshold}")
    table = build_tables(mode).source(source)
    qa = quantize_pixels(fa)
    qb = quantize_pixels(fb)
    flags = table[qa, qb] >= float(threshold)
    return FlickerMap(flags=flags, pair_index=pair_index)


def flicker_ratio(fmap):
    """Flagged pixels divided by total pixels."""
    return fmap.count / fmap.flags.size


def map_report(fmap, include_locations=False):
    """Summarize one map into a FlickerReport."""
    locations = None
    if include_locations:
        locations = [[int(r), int(c)] for r, c in np.argwhere(fmap.flags)]
    return FlickerReport(
        pair_index=fmap.pair_index,
        flagged=fmap.count,
        total=int(fmap.flags.size),
        ratio=flicker_ratio(fmap),
        locations=locations,
    )


def detect_sequence(seq, threshold=DEFAULT_THRESHOLD, source=DEFAULT_SOURCE,
                    mode="exact", include_locations=False):
    """Run compare_frames over every consecutive pair.

    Returns one (FlickerMap, FlickerReport) per pair, in pair order.
    """
    frames = list(seq)
    if len(frames) < 2:
        raise InputError(f"need at least 2 frames to detect flicker, got {len(frames)}")
    results = []
    for i in range(len(frames) - 1):
        fmap = compare_frames(frames[i], frames[i + 1], threshold=threshold,
                              source=source, mode=mode, pair_index=i)
        results.append((fmap, map_report(fmap, include_locations)))
    return results


def aggregate_ratio(reports):
    """Unweighted mean of the per-pair ratios."""
    reports = list(reports)
    if not reports:
        return 0.0
    return sum(r.ratio for r in reports) / len(reports)


def sequence_report(results):
    """Build the report dict: {"pairs": [...], "aggregate_ratio": ...}."""
    pairs = []
    for _, rep in results:
        entry = {
            "index": rep.pair_index,
            "flagged": rep.flagged,
            "total": rep.total,
            "ratio": rep.ratio,
        }
        if rep.locations is not None:
            entry["locations"] = rep.locations
        pairs.append(entry)
    return {
        "pairs": pairs,
        "aggregate_ratio": aggregate_ratio([rep for _, rep in results]),
    }
