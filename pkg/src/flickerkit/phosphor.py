"""Electronic flicker model for CRT displays.

Covers the closed-form quantities only: the amplitude coefficient of the
fundamental frequency of the time-varying screen luminance, the visual
angle a display subtends, and the flicker-rate quotient. Sweep helpers
produce the plot-ready tables the CLI writes as CSV.
"""

import math
from dataclasses import dataclass

from .errors import FormatError, InputError, SingularityError

# Placeholder persistence constants (seconds). Chosen so the fast phosphor
# has the shortest decay, DP104 < P31 < D65_P4; the magnitudes are shipped
# conventions, not measured data, and tests assert only the ordering.
DEFAULT_PHOSPHOR_ALPHAS = {
    "DP104": 0.0005,
    "P31": 0.002,
    "D65_P4": 0.008,
}

DEFAULT_VIEWING_MM = 500.0  # 1.5 feet
DEFAULT_PIXEL_PITCH_MM = 0.25  # convention, not display data


@dataclass(frozen=True)
class Phosphor:
    """A named phosphor with its decay/persistence time constant in seconds."""

    name: str
    alpha: float

    def __post_init__(self):
        if not self.name:
            raise InputError("phosphor needs a non-empty name")
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise InputError(f"phosphor {self.name!r}: alpha must be >= 0, got {self.alpha}")


@dataclass(frozen=True)
class DisplayGeometry:
    """Display extent and viewing distance, both in millimeters."""

    display_mm: float
    viewing_mm: float = DEFAULT_VIEWING_MM

    def __post_init__(self):
        if not math.isfinite(self.display_mm) or self.display_mm < 0:
            raise InputError(f"display extent must be >= 0 mm, got {self.display_mm}")
        if not math.isfinite(self.viewing_mm) or self.viewing_mm <= 0:
            raise InputError(f"viewing distance must be > 0 mm, got {self.viewing_mm}")


@dataclass(frozen=True)
class RefreshSweep:
    """Inclusive refresh-rate range in hertz, stepped evenly."""

    f_min: float
    f_max: float
    step: float

    def __post_init__(self):
        if self.f_min < 0:
            raise InputError(f"sweep start must be >= 0 Hz, got {self.f_min}")
        if self.f_max <= self.f_min:
            raise InputError(f"sweep end {self.f_max} must exceed start {self.f_min}")
        if self.step <= 0:
            raise InputError(f"sweep step must be positive, got {self.step}")

    def frequencies(self):
        count = int(math.floor((self.f_max - self.f_min) / self.step + 1e-9)) + 1
        return [self.f_min + k * self.step for k in range(count)]


def amp_coeff(alpha, f):
    """Luminance-modulation amplitude 2 / sqrt(1 + (2*pi*f*alpha)^2).

    Always in (0, 2]; equals 2 exactly when alpha*f == 0 and decreases
    strictly in both alpha and f on the positive domain.
    """
    alpha = float(alpha)
    f = float(f)
    if alpha < 0:
        raise InputError(f"alpha must be >= 0 seconds, got {alpha}")
    if f < 0:
        raise InputError(f"refresh rate must be >= 0 Hz, got {f}")
    omega = 2.0 * math.pi * f
    return 2.0 / math.sqrt(1.0 + (alpha * omega) ** 2)


def visual_angle(geometry):
    """Angular extent 2*atan(D / 2V) of the display, in degrees."""
    return math.degrees(
        2.0 * math.atan(geometry.display_mm / (2.0 * geometry.viewing_mm))
    )


def flicker_rate(regression, decay_time):
    """Flicker regression divided by the pixel luminance decay time."""
    if decay_time <= 0:
        raise SingularityError(f"decay time must be positive, got {decay_time}")
    return float(regression) / float(decay_time)


def amp_curve_table(phosphors, sweep):
    """One row per refresh rate, one amplitude column per phosphor."""
    phosphors = list(phosphors)
    if not phosphors:
        raise InputError("need at least one phosphor for an amplitude sweep")
    header = ["refresh_hz"] + [p.name for p in phosphors]
    rows = []
    for f in sweep.frequencies():
        rows.append([f] + [amp_coeff(p.alpha, f) for p in phosphors])
    return header, rows


def visual_angle_table(resolutions, pitch_mm=DEFAULT_PIXEL_PITCH_MM,
                       viewing_mm=DEFAULT_VIEWING_MM):
    """Visual angle per resolution: D = diagonal pixel count * pixel pitch."""
    resolutions = list(resolutions)
    if not resolutions:
        raise InputError("need at least one resolution")
    if pitch_mm <= 0:
        raise InputError(f"pixel pitch must be positive, got {pitch_mm}")
    header = ["width_px", "height_px", "diagonal_px", "display_mm", "visual_angle_deg"]
    rows = []
    for w, h in resolutions:
        if w < 0 or h < 0:
            raise InputError(f"resolution must be non-negative, got {w}x{h}")
        diag = math.sqrt(float(w) * w + float(h) * h)
        d_mm = diag * pitch_mm
        angle = visual_angle(DisplayGeometry(display_mm=d_mm, viewing_mm=viewing_mm))
        rows.append([w, h, diag, d_mm, angle])
    return header, rows


def default_phosphors():
    """The shipped phosphor set, shortest decay first."""
    return [Phosphor(name, alpha)
            for name, alpha in sorted(DEFAULT_PHOSPHOR_ALPHAS.items(), key=lambda kv: kv[1])]


def parse_phosphor_config(text):
    """Parse a key=value phosphor config: one "name = seconds" per line, # comments."""
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        name = name.strip()
        value = value.strip()
        if not sep or not name or not value:
            raise FormatError(f"phosphor config line {ln}: expected 'name = seconds', got {raw!r}")
        try:
            alpha = float(value)
        except ValueError:
            raise FormatError(f"phosphor config line {ln}: bad decay constant {value!r}") from None
        if not math.isfinite(alpha) or alpha < 0:
            raise FormatError(f"phosphor config line {ln}: decay constant must be >= 0, got {alpha}")
        out.append(Phosphor(name, alpha))
    if not out:
        raise FormatError("phosphor config defines no phosphors")
    return out
