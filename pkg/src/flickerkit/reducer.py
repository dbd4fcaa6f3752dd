"""Flicker reduction by mean-reconstructed frames.

For each flagged frame pair a reconstruction is built: flagged pixels carry
the channelwise mean of the two source pixels, unflagged pixels copy the
earlier frame (keeping temporal order causal). Insert mode places the
reconstruction between the pair; replace mode overwrites the flagged
pixels of the later frame instead, preserving length.
"""

from dataclasses import dataclass

import numpy as np

from .detector import (DEFAULT_SOURCE, DEFAULT_THRESHOLD, aggregate_ratio,
                       detect_sequence)
from .errors import InputError
from .frames import FrameSequence

REDUCE_MODES = ("insert", "replace")


def mean_pixel(a, b):
    """Channelwise arithmetic mean of two (r, g, b) pixels."""
    return (
        (float(a[0]) + float(b[0])) / 2.0,
        (float(a[1]) + float(b[1])) / 2.0,
        (float(a[2]) + float(b[2])) / 2.0,
    )


@dataclass
class ReconstructedFrame:
    """A synthesized frame plus the pair and mask it came from."""

    frame: np.ndarray
    pair_index: int
    mask: np.ndarray


def reconstruct_frame(fa, fb, fmap, full_mean=False):
    """Build the reconstruction for a frame pair.

    full_mean averages every pixel instead of only the flagged ones, for
    smoother interpolation; the flagged pixels are identical either way.
    """
    fa = np.asarray(fa, dtype=np.float64)
    fb = np.asarray(fb, dtype=np.float64)
    if fa.shape != fb.shape:
        raise InputError(f"frame dimensions differ: {fa.shape} vs {fb.shape}")
    if fmap.flags.shape != fa.shape[:2]:
        raise InputError(
            f"map dimensions {fmap.flags.shape} do not match frames {fa.shape[:2]}"
        )
    mean = (fa + fb) / 2.0
    if full_mean:
        frame = mean
    else:
        frame = fa.copy()
        frame[fmap.flags] = mean[fmap.flags]
    return ReconstructedFrame(frame=frame, pair_index=fmap.pair_index,
                              mask=fmap.flags.copy())


def insert_frames(seq, maps, mode="insert", full_mean=False):
    """Apply the reduction to a whole sequence.

    insert: a reconstruction goes between every pair whose map has at least
    one flag, so the output grows by the number of flagged pairs and the
    original frames pass through untouched. replace: the later frame of
    each flagged pair gets its flagged pixels overwritten with the pair
    mean (means always taken from the input frames), length preserved.
    """
    if mode not in REDUCE_MODES:
        raise InputError(f"unknown reduce mode {mode!r}, expected one of {REDUCE_MODES}")
    fps = seq.fps if isinstance(seq, FrameSequence) else None
    frames = list(seq)
    maps = list(maps)
    if len(maps) != len(frames) - 1:
        raise InputError(
            f"got {len(maps)} maps for {len(frames)} frames, expected {len(frames) - 1}"
        )
    for m in maps:
        if m.flags.shape != frames[0].shape[:2]:
            raise InputError(
                f"map {m.pair_index} dimensions {m.flags.shape} do not match "
                f"frames {frames[0].shape[:2]}"
            )

    if mode == "insert":
        out = [frames[0]]
        for i, m in enumerate(maps):
            if m.count > 0:
                out.append(reconstruct_frame(frames[i], frames[i + 1], m,
                                             full_mean=full_mean).frame)
            out.append(frames[i + 1])
    else:
        out = list(frames)
        for i, m in enumerate(maps):
            if m.count > 0:
                nb = frames[i + 1].copy()
                mean = (frames[i] + frames[i + 1]) / 2.0
                nb[m.flags] = mean[m.flags]
                out[i + 1] = nb
    return FrameSequence(out, fps=fps)


def _max_step(fa, fb, flags):
    """Largest per-channel absolute step between two frames at flagged pixels."""
    if not flags.any():
        return 0.0
    return float(np.abs(fb - fa)[flags].max())


def reduction_report(before, after, threshold=DEFAULT_THRESHOLD,
                     source=DEFAULT_SOURCE, cdf_mode="exact",
                     reduce_mode="insert"):
    """Re-detect both sequences and measure step sizes at originally flagged pixels.

    Returns a dict with before/after aggregate ratios, the percent
    reduction between them, and the maximum per-channel inter-frame step at
    the originally flagged pixel locations before and after the reduction
    (for insert mode the two half-steps around the inserted frame).
    """
    if reduce_mode not in REDUCE_MODES:
        raise InputError(f"unknown reduce mode {reduce_mode!r}, expected one of {REDUCE_MODES}")
    before_frames = list(before)
    after_frames = list(after)
    det_before = detect_sequence(before, threshold=threshold, source=source, mode=cdf_mode)
    maps = [m for m, _ in det_before]
    flagged_pairs = [i for i, m in enumerate(maps) if m.count > 0]

    expected = len(before_frames) + (len(flagged_pairs) if reduce_mode == "insert" else 0)
    if len(after_frames) != expected:
        raise InputError(
            f"after sequence has {len(after_frames)} frames, expected {expected} "
            f"for {reduce_mode} mode"
        )

    det_after = detect_sequence(after, threshold=threshold, source=source, mode=cdf_mode)
    before_ratios = [rep.ratio for _, rep in det_before]
    after_ratios = [rep.ratio for _, rep in det_after]
    before_ratio = aggregate_ratio([rep for _, rep in det_before])
    after_ratio = aggregate_ratio([rep for _, rep in det_after])

    max_before = 0.0
    max_after = 0.0
    inserted = 0
    for i, m in enumerate(maps):
        if m.count == 0:
            continue
        fa, fb = before_frames[i], before_frames[i + 1]
        max_before = max(max_before, _max_step(fa, fb, m.flags))
        if reduce_mode == "insert":
            pos = i + inserted
            recon = after_frames[pos + 1]
            max_after = max(max_after,
                            _max_step(after_frames[pos], recon, m.flags),
                            _max_step(recon, after_frames[pos + 2], m.flags))
            inserted += 1
        else:
            max_after = max(max_after, _max_step(after_frames[i], after_frames[i + 1], m.flags))

    if before_ratio > 0.0:
        percent = 100.0 * (before_ratio - after_ratio) / before_ratio
    else:
        percent = 0.0

    return {
        "before_ratio": before_ratio,
        "after_ratio": after_ratio,
        "percent_reduction": percent,
        "max_step_before": max_before,
        "max_step_after": max_after,
        "flagged_pairs": len(flagged_pairs),
        "pairs_before": before_ratios,
        "pairs_after": after_ratios,
        "threshold": float(threshold),
        "source": source,
        "cdf_mode": cdf_mode,
        "reduce_mode": reduce_mode,
    }
