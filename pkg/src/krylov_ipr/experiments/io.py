"""Result serialization: CSV curves, JSON summaries, SVG plots, manifests."""

from dataclasses import dataclass
import hashlib
import json
import math
from pathlib import Path
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

FLOAT_FORMAT = "%.17g"


@dataclass
class Curve:
    """One time series; `stderr` is optional (ensemble runs)."""

    name: str
    times: np.ndarray
    values: np.ndarray
    stderr: Optional[np.ndarray] = None
    label: str = ""


@dataclass
class Table:
    """Non-temporal results (one row per parameter value)."""

    name: str
    columns: tuple
    rows: np.ndarray


@dataclass
class PlotSpec:
    title: str
    xlabel: str
    ylabel: str
    log_x: bool = False


def _fmt(x) -> str:
    return FLOAT_FORMAT % x


def curve_csv(curve: Curve) -> str:
    header = "step,time,value" + (",stderr" if curve.stderr is not None else "")
    lines = [header]
    for k, (t, v) in enumerate(zip(curve.times, curve.values)):
        row = f"{k},{_fmt(t)},{_fmt(v)}"
        if curve.stderr is not None:
            row += "," + _fmt(curve.stderr[k])
        lines.append(row)
    return "\n".join(lines) + "\n"


def table_csv(table: Table) -> str:
    lines = [",".join(table.columns)]
    for row in np.atleast_2d(table.rows):
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def read_curve_csv(path):
    """Load a curve CSV back as ``(steps, times, values, stderr_or_None)``."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    stderr = data[:, 3] if data.shape[1] > 3 else None
    return data[:, 0].astype(int), data[:, 1], data[:, 2], stderr


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def verify_manifest(path) -> list[str]:
    """Return the files whose digest no longer matches (empty list = valid)."""
    path = Path(path)
    manifest = json.loads(path.read_text())
    bad = []
    for entry in manifest["files"]:
        target = path.parent / entry["path"]
        if not target.exists() or sha256_file(target) != entry["sha256"]:
            bad.append(entry["path"])
    return bad


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
_W, _H = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 160, 40, 50


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def svg_plot(series: Sequence[tuple[str, np.ndarray, np.ndarray]], spec: PlotSpec) -> str:
    """Polyline plot of ``(label, x, y)`` triples with axes and a legend."""
    xs = [np.asarray(x, float) for _, x, _ in series]
    ys = [np.asarray(y, float) for _, _, y in series]
    if spec.log_x:
        # drop non-positive abscissae (t = 0) on a log axis
        keep = [x > 0 for x in xs]
        xs = [np.log10(x[k]) for x, k in zip(xs, keep)]
        ys = [y[k] for y, k in zip(ys, keep)]
    finite = [np.concatenate(v) for v in (xs, ys)] if xs else [np.zeros(1), np.zeros(1)]
    x_lo, x_hi = float(np.min(finite[0])), float(np.max(finite[0]))
    y_lo, y_hi = float(np.min(finite[1])), float(np.max(finite[1]))
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def px(x):
        return _LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        return _TOP + ph - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(spec.title)}</text>',
        f'<line x1="{_LEFT}" y1="{_TOP + ph}" x2="{_LEFT + pw}" y2="{_TOP + ph}" stroke="black"/>',
        f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + ph}" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        label = f"{10 ** t:.3g}" if spec.log_x else f"{t:.3g}"
        out.append(f'<text x="{px(t):.1f}" y="{_TOP + ph + 16}" text-anchor="middle">{label}</text>')
    for t in _ticks(y_lo, y_hi):
        out.append(f'<text x="{_LEFT - 6}" y="{py(t) + 4:.1f}" text-anchor="end">{t:.3g}</text>')
    xlabel = spec.xlabel + (" (log scale)" if spec.log_x else "")
    out.append(f'<text x="{_LEFT + pw / 2:.1f}" y="{_H - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{_TOP + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {_TOP + ph / 2:.1f})">{escape(spec.ylabel)}</text>')
    for k, ((label, _, _), x, y) in enumerate(zip(series, xs, ys)):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y) if math.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        ly = _TOP + 14 * k + 8
        out.append(f'<line x1="{_W - _RIGHT + 10}" y1="{ly}" x2="{_W - _RIGHT + 30}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{_W - _RIGHT + 35}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
