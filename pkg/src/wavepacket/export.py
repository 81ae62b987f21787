"""File writers: CSV, JSON, binary PGM and SVG, all written atomically.

Floats are always printed with 17 significant digits so that output files
round-trip exactly and repeated runs are byte-identical.
"""
import csv
import io
import json
import math
import os
import tempfile

import numpy as np


def fmt(value):
    """17-significant-digit text for a number; ints and strings pass through."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0.0:
            return "0"
        return f"{v:.17g}"
    return str(value)


def atomic_write(path, data):
    """Write ``data`` (str or bytes) to ``path`` through a temp file and rename."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data.encode("utf-8") if isinstance(data, str) else data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows, comments=()):
    """CSV with optional leading ``# key=value`` comment lines."""
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    # mode labels such as "hg:2,1" contain commas and get quoted
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def json_text(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False) + "\n"


def grid_csv_text(values, x, y, comments=()):
    """Dump a 2D array as CSV: first column ``y``, one column per ``x``."""
    header = ["y\\x"] + [fmt(v) for v in x]
    rows = ([yv] + list(row) for yv, row in zip(y, values))
    return csv_text(header, rows, comments)


def pgm_bytes(values):
    """8-bit binary PGM (P5), linearly scaled so the frame maximum is 255.

    Row 0 of ``values`` is the lowest ``y``; image rows run top-down, so the
    array is flipped vertically.
    """
    values = np.asarray(values, dtype=float)
    peak = values.max()
    scaled = np.zeros(values.shape) if peak <= 0 else values / peak * 255.0
    pixels = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)[::-1]
    ny, nx = pixels.shape
    return f"P5\n{nx} {ny}\n255\n".encode("ascii") + pixels.tobytes()


def read_pgm(data):
    """Parse bytes written by :func:`pgm_bytes` back into ``(header, pixels)``."""
    magic, dims, maxval, rest = data.split(b"\n", 3)
    nx, ny = (int(v) for v in dims.split())
    pixels = np.frombuffer(rest, dtype=np.uint8).reshape(ny, nx)
    return (magic.decode(), nx, ny, int(maxval)), pixels


def svg_text(polylines, grid, size=512, closed=()):
    """Minimal SVG with one ``<path>`` per polyline.

    The viewBox is ``0 0 size size`` mapped onto the grid window with ``y``
    pointing up.  Indices listed in ``closed`` get a closing ``Z``.
    """
    cx, cy = grid.center
    h = grid.half_width
    scale = size / (2.0 * h)

    def px(x, y):
        return f"{(x - cx + h) * scale:.3f} {(cy + h - y) * scale:.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" '
        f'width="{size}" height="{size}">',
    ]
    closed = set(closed)
    for k, line in enumerate(polylines):
        pts = line.points
        d = "M " + " L ".join(px(x, y) for x, y in pts)
        if k in closed:
            d += " Z"
        lines.append(f'  <path d="{d}" fill="none" stroke="black" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
