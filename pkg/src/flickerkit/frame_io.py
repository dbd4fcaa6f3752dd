"""Frame and report persistence plus sequence discovery.

Binary PPM (P6, maxval 255) is the bit-exact interchange format: channels
map byte/255 on read and round(channel*255), ties away from zero, on
write. PNG (8-bit RGB) is accepted as a convenience and decoded to the
same unit-interval representation. Every writer goes through a temp file
and an atomic rename, so a failure never leaves a partial output behind.
"""

import csv
import glob
import io
import json
import os
import re
import tempfile
from pathlib import Path

import numpy as np

from .errors import FormatError, InputError
from .frames import FrameSequence, as_frame
from .palette import COLOR_NAMES
from .stochastic import build_tables

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_PPM_WS = b" \t\r\n\x0b\x0c"
_INDEX_RE = re.compile(r"\d+")


def to_bytes(frame):
    """8-bit export of a unit-interval frame: floor(v*255 + 0.5), ties away from zero."""
    arr = as_frame(frame)
    return np.floor(arr * 255.0 + 0.5).astype(np.uint8)


def from_bytes(data):
    """Inverse of to_bytes up to quantization: byte / 255."""
    return np.asarray(data, dtype=np.float64) / 255.0


# --- atomic writing -------------------------------------------------------

def _atomic_write(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# --- PPM ------------------------------------------------------------------

def encode_ppm(frame):
    """Serialize a frame as canonical binary PPM bytes."""
    data = to_bytes(frame)
    h, w = data.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + data.tobytes()


def _parse_ppm(data, name):
    if data[:2] != b"P6":
        raise FormatError(f"{name}: not a binary PPM, expected magic 'P6' at byte offset 0")
    pos = 2

    def skip_separators(pos):
        while pos < len(data):
            c = data[pos:pos + 1]
            if c in _PPM_WS:
                pos += 1
            elif c == b"#":
                while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            else:
                break
        return pos

    def read_int(pos, what):
        pos = skip_separators(pos)
        start = pos
        while pos < len(data) and data[pos:pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise FormatError(f"{name}: expected {what} at byte offset {start}")
        return int(data[start:pos]), pos, start

    width, pos, w_off = read_int(pos, "width")
    height, pos, h_off = read_int(pos, "height")
    maxval, pos, m_off = read_int(pos, "maxval")
    if width <= 0:
        raise FormatError(f"{name}: width must be positive, got {width} at byte offset {w_off}")
    if height <= 0:
        raise FormatError(f"{name}: height must be positive, got {height} at byte offset {h_off}")
    if maxval != 255:
        raise FormatError(f"{name}: unsupported maxval {maxval} at byte offset {m_off}, only 255")
    if pos >= len(data) or data[pos:pos + 1] not in _PPM_WS:
        raise FormatError(f"{name}: expected single whitespace after maxval at byte offset {pos}")
    pos += 1
    need = width * height * 3
    if len(data) - pos < need:
        raise FormatError(
            f"{name}: truncated pixel data, expected {need} bytes from byte offset {pos} "
            f"but the file ends at byte offset {len(data)}"
        )
    pixels = np.frombuffer(data[pos:pos + need], dtype=np.uint8).reshape(height, width, 3)
    return pixels


def decode_ppm(data, name="<ppm>"):
    """Parse binary PPM bytes into a unit-interval frame."""
    return from_bytes(_parse_ppm(data, name))


# --- PNG ------------------------------------------------------------------

def _decode_png(data, name):
    try:
        from PIL import Image
    except ImportError:
        raise FormatError(f"{name}: PNG input but no PNG decoder is available") from None
    with Image.open(io.BytesIO(data)) as img:
        rgb = img.convert("RGB")
        pixels = np.asarray(rgb, dtype=np.uint8)
    return from_bytes(pixels)


def _encode_png(frame):
    from PIL import Image
    buf = io.BytesIO()
    Image.fromarray(to_bytes(frame), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


# --- frame files ----------------------------------------------------------

def read_frame(path):
    """Load one frame, sniffing PPM/PNG by magic bytes."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"no such frame file: {path}")
    data = path.read_bytes()
    if data[:8] == _PNG_MAGIC:
        return _decode_png(data, str(path))
    if data[:2] == b"P6":
        return decode_ppm(data, str(path))
    raise FormatError(f"{path}: unrecognized image format at byte offset 0, expected PPM or PNG")


def write_frame(frame, path):
    """Write one frame; the extension picks the format (.ppm or .png)."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".ppm":
        _atomic_write(path, encode_ppm(frame))
    elif suffix == ".png":
        _atomic_write(path, _encode_png(frame))
    else:
        raise InputError(f"unsupported frame format {suffix!r} for {path}, use .ppm or .png")
    return path


def write_mask(flags, path):
    """Write a boolean mask as a 1-bit portable bitmap (P4), flag = 1."""
    flags = np.asarray(flags, dtype=bool)
    h, w = flags.shape
    payload = b"P4\n%d %d\n" % (w, h) + np.packbits(flags, axis=1).tobytes()
    _atomic_write(path, payload)
    return Path(path)


# --- sequence discovery ---------------------------------------------------

def _frame_index(path):
    runs = _INDEX_RE.findall(path.stem)
    return int(runs[-1]) if runs else None


def find_sequence_files(location):
    """Resolve a directory or glob pattern into index-ordered frame paths.

    The last digit run in each stem is the frame index; indices must be
    unique and contiguous.
    """
    p = Path(location)
    if p.is_dir():
        candidates = [q for q in sorted(p.iterdir())
                      if q.is_file() and q.suffix.lower() in (".ppm", ".png")]
    elif p.is_file():
        candidates = [p]
    else:
        candidates = [Path(s) for s in sorted(glob.glob(str(location)))]
    if not candidates:
        raise InputError(f"no frames found for {str(location)!r}")

    indexed = []
    for q in candidates:
        idx = _frame_index(q)
        if idx is None:
            raise InputError(f"{q}: file name carries no numeric frame index")
        indexed.append((idx, q))
    indexed.sort(key=lambda t: (t[0], t[1].name))

    for (i1, q1), (i2, q2) in zip(indexed, indexed[1:]):
        if i2 == i1:
            raise InputError(f"duplicate frame index {i1}: {q1.name} and {q2.name}")
        if i2 != i1 + 1:
            raise InputError(
                f"gap in frame indices: {q1.name} has index {i1} but the next file "
                f"{q2.name} has index {i2}"
            )
    return [q for _, q in indexed]


def load_sequence(location, fps=None):
    """Load an index-ordered, dimension-uniform frame sequence."""
    files = find_sequence_files(location)
    frames = []
    first = None
    for q in files:
        f = read_frame(q)
        if first is None:
            first = (f.shape[1], f.shape[0], q)
        elif (f.shape[1], f.shape[0]) != first[:2]:
            raise InputError(
                f"{q}: frame is {f.shape[1]}x{f.shape[0]} but {first[2].name} "
                f"is {first[0]}x{first[1]}"
            )
        frames.append(f)
    return FrameSequence(frames, fps=fps)


def write_sequence(seq, outdir, prefix="frame_", suffix=".ppm"):
    """Write frames as zero-padded numbered files; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    digits = max(4, len(str(max(len(seq) - 1, 0))))
    paths = []
    for i, frame in enumerate(seq):
        paths.append(write_frame(frame, outdir / f"{prefix}{i:0{digits}d}{suffix}"))
    return paths


# --- reports --------------------------------------------------------------

def _detect_fmt(path, fmt):
    if fmt is not None:
        return fmt
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix in ("json", "csv"):
        return suffix
    raise InputError(f"cannot infer report format from {path}, pass fmt='json' or 'csv'")


def _fmt_cell(value):
    if isinstance(value, float):
        return repr(value)  # full precision, round-trips exactly
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return str(value)


def _pairs_to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "flagged", "total", "ratio"])
    for pair in report["pairs"]:
        writer.writerow([pair["index"], pair["flagged"], pair["total"], _fmt_cell(pair["ratio"])])
    writer.writerow(["aggregate", "", "", _fmt_cell(report["aggregate_ratio"])])
    return buf.getvalue()


def _keyvalue_to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in report.items():
        writer.writerow([key, _fmt_cell(value)])
    return buf.getvalue()


def write_report(report, path, fmt=None):
    """Persist a report dict as JSON (stable key order) or CSV."""
    fmt = _detect_fmt(path, fmt)
    if fmt == "json":
        payload = json.dumps(report, indent=2) + "\n"
    else:
        if "pairs" in report:
            payload = _pairs_to_csv(report)
        else:
            payload = _keyvalue_to_csv(report)
    _atomic_write(path, payload.encode("utf-8"))
    return Path(path)


def _parse_cell(text):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return json.loads(text)
    except (json.JSONDecodeError, ValueError):
        return text


def read_report(path, fmt=None):
    """Read back a report written by write_report."""
    fmt = _detect_fmt(path, fmt)
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "json":
        return json.loads(text)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise FormatError(f"{path}: empty CSV report")
    header = rows[0]
    if header == ["index", "flagged", "total", "ratio"]:
        pairs = []
        aggregate = 0.0
        for row in rows[1:]:
            if row[0] == "aggregate":
                aggregate = float(row[3])
            else:
                pairs.append({
                    "index": int(row[0]),
                    "flagged": int(row[1]),
                    "total": int(row[2]),
                    "ratio": float(row[3]),
                })
        return {"pairs": pairs, "aggregate_ratio": aggregate}
    if header == ["key", "value"]:
        return {row[0]: _parse_cell(row[1]) for row in rows[1:]}
    raise FormatError(f"{path}: unrecognized CSV report header {header!r} on line 1")


# --- generic CSV + statistics tables ---------------------------------------

def _sig(value, digits=6):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), f".{digits}g")


def write_csv(path, header, rows, digits=6):
    """Write a plain CSV table, floats at the given significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else _sig(cell, digits) for cell in row])
    _atomic_write(path, buf.getvalue().encode("utf-8"))
    return Path(path)


def _matrix_rows(matrix):
    return [[COLOR_NAMES[i]] + list(matrix[i]) for i in range(len(COLOR_NAMES))]


def write_tables(outdir, mode="exact"):
    """Dump every statistics table as CSV, one file per table."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    tables = build_tables(mode)
    header = ["color"] + list(COLOR_NAMES)
    written = []
    for name, matrix in (
        ("distance", tables.distance),
        ("col_stochastic", tables.col_stochastic),
        ("z_col", tables.z_col),
        ("prob_col", tables.prob_col),
        ("prob_row", tables.prob_row),
    ):
        written.append(write_csv(outdir / f"{name}.csv", header, _matrix_rows(matrix)))
    stats_rows = [
        [COLOR_NAMES[i], tables.row_stats.sum[i], tables.row_stats.mean[i],
         tables.row_stats.variance[i], tables.row_stats.stddev[i]]
        for i in range(len(COLOR_NAMES))
    ]
    written.append(write_csv(outdir / "row_stats.csv",
                             ["color", "sum", "mean", "variance", "stddev"], stats_rows))
    return written
