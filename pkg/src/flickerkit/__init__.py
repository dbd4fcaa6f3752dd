"""Inter-frame flicker detection and reduction for image sequences.

The pipeline quantizes pixels onto an eight-color palette, scores each
consecutive pixel pair against precomputed transition-probability tables,
flags pairs that cross a threshold, and splices mean-reconstructed frames
between flagged pairs. A separate phosphor model covers the electronic
side: luminance-modulation amplitude, visual angle, and flicker rate.
"""

__version__ = "0.1.0"

from .detector import (DEFAULT_SOURCE, DEFAULT_THRESHOLD, FlickerMap,
                       FlickerReport, aggregate_ratio, compare_frames,
                       detect_sequence, flicker_ratio, sequence_report)
from .errors import (DegenerateInputError, FlickerError, FormatError,
                     InputError, SingularityError)
from .frames import FrameSequence, as_frame
from .palette import (COLOR_NAMES, PaletteColor, distance_matrix, palette_code,
                      quantize, quantize_pixels)
from .phosphor import (DisplayGeometry, Phosphor, RefreshSweep, amp_coeff,
                       amp_curve_table, default_phosphors, flicker_rate,
                       parse_phosphor_config, visual_angle, visual_angle_table)
from .reducer import (ReconstructedFrame, insert_frames, mean_pixel,
                      reconstruct_frame, reduction_report)
from .stochastic import (CDF_MODES, SOURCES, StochasticTables, build_tables,
                         normal_cdf, pair_probability)
from .synth import InjectionSpec, generate

__all__ = [
    "__version__",
    "COLOR_NAMES", "PaletteColor", "palette_code", "quantize", "quantize_pixels",
    "distance_matrix",
    "CDF_MODES", "SOURCES", "StochasticTables", "build_tables", "normal_cdf",
    "pair_probability",
    "FrameSequence", "as_frame",
    "DEFAULT_SOURCE", "DEFAULT_THRESHOLD", "FlickerMap", "FlickerReport",
    "compare_frames", "flicker_ratio", "detect_sequence", "aggregate_ratio",
    "sequence_report",
    "ReconstructedFrame", "mean_pixel", "reconstruct_frame", "insert_frames",
    "reduction_report",
    "Phosphor", "DisplayGeometry", "RefreshSweep", "amp_coeff", "visual_angle",
    "flicker_rate", "amp_curve_table", "visual_angle_table", "default_phosphors",
    "parse_phosphor_config",
    "InjectionSpec", "generate",
    "FlickerError", "InputError", "DegenerateInputError", "SingularityError",
    "FormatError",
]
