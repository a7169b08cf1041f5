"""One-dimensional parameter sweeps over the mechanical steady state.

A sweep varies either the squeezing ``r`` or the first bath occupation
``n_th1`` on a uniform grid, holds everything else fixed, and evaluates the
steering/entanglement measures at every grid point. Points are independent
and may be farmed out to a process pool; rows always come back in grid
order so output is byte-identical for any worker count.
"""

import csv
import io
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence
from xml.sax.saxutils import escape

from .errors import ConfigError, DomainError, InvalidArgumentError, SteerlabError
from .measures import steering_report
from .model import LAB_DAMPING_RATIO
from .steady import analytic_mechanical_cm, numeric_mechanical_cm, relative_deviation

AXES = {"squeezing_r": "r", "thermal_n1": "nth1"}
AXIS_ALIASES = {"r": "squeezing_r", "squeezing_r": "squeezing_r", "nth1": "thermal_n1", "thermal_n1": "thermal_n1"}
FIXED_KEYS = ("c1", "c2", "nth1", "nth2", "r", "tau")
ENGINES = ("analytic", "numeric", "both")
FORMATS = ("csv", "json", "svg")

CSV_HEADER = ("axis", "v1", "v2", "v12", "g_ab", "g_ba", "g_delta", "e2", "class", "engine")

WORKERS_ENV = "STEERLAB_WORKERS"


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    lo: float
    hi: float
    points: int
    fixed: Dict[str, float]
    engine: str = "analytic"
    format: str = "csv"
    out: Optional[str] = None
    name: Optional[str] = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise InvalidArgumentError(f"axis must be one of {sorted(AXES)}, got {self.axis!r}")
        if not self.lo < self.hi:
            raise InvalidArgumentError(f"need lo < hi, got lo={self.lo!r}, hi={self.hi!r}")
        if self.lo < 0:
            raise InvalidArgumentError(f"axis range must be non-negative, got lo={self.lo!r}")
        if int(self.points) != self.points or self.points < 2:
            raise InvalidArgumentError(f"points must be an integer >= 2, got {self.points!r}")
        var = AXES[self.axis]
        if var in self.fixed:
            raise InvalidArgumentError(f"{var!r} is the sweep axis and cannot also be fixed")
        missing = [k for k in FIXED_KEYS if k != var and k not in self.fixed]
        if missing:
            raise InvalidArgumentError(f"missing fixed parameters: {', '.join(missing)}")
        extra = [k for k in self.fixed if k not in FIXED_KEYS]
        if extra:
            raise InvalidArgumentError(f"unknown fixed parameters: {', '.join(extra)}")
        for k, v in self.fixed.items():
            if not v >= 0:
                raise InvalidArgumentError(f"{k} must be non-negative, got {v!r}")
        if not self.fixed["tau"] > 0:
            raise InvalidArgumentError("tau must be strictly positive")
        if self.engine not in ENGINES:
            raise InvalidArgumentError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.format not in FORMATS:
            raise InvalidArgumentError(f"format must be one of {FORMATS}, got {self.format!r}")

    @property
    def variable(self) -> str:
        return AXES[self.axis]

    def grid(self) -> List[float]:
        n = self.points - 1
        return [self.lo + (self.hi - self.lo) * i / n for i in range(self.points)]

    def point(self, value: float) -> Dict[str, float]:
        return {**self.fixed, self.variable: value}


_LINE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


def parse_config(text: str) -> SweepSpec:
    """Parse the ``key = value`` sweep grammar.

    One pair per line, ``#`` starts a comment, blank lines are ignored and
    an optional ``[sweep]`` header may precede the keys. Recognized keys:
    axis, lo, hi, points, c1, c2, nth1, nth2, r, tau, engine, format, out.
    """
    numeric = {"lo", "hi", "c1", "c2", "nth1", "nth2", "r", "tau"}
    known = numeric | {"axis", "points", "engine", "format", "out"}
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if line != "[sweep]":
                raise ConfigError(f"unknown section {line!r}, expected [sweep]", lineno)
            continue
        m = _LINE.match(line)
        if not m:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = m.group(1).lower(), m.group(2).strip()
        if key not in known:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        if key in numeric:
            try:
                values[key] = float(value)
                if not math.isfinite(values[key]):
                    raise ValueError
            except ValueError:
                raise ConfigError(f"malformed number for {key!r}: {value!r}", lineno) from None
        elif key == "points":
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"points must be an integer, got {value!r}", lineno) from None
        else:
            values[key] = value
        lines[key] = lineno

    for key in ("axis", "lo", "hi", "points"):
        if key not in values:
            raise ConfigError(f"missing mandatory key {key!r}")
    axis = AXIS_ALIASES.get(values["axis"].lower())
    if axis is None:
        raise ConfigError(f"axis must be 'r' or 'nth1', got {values['axis']!r}", lines["axis"])
    var = AXES[axis]
    if var in values:
        raise ConfigError(f"{var!r} is the sweep axis and cannot also be set", lines[var])
    for key in FIXED_KEYS:
        if key != var and key not in values:
            raise ConfigError(f"missing mandatory key {key!r}")
    fixed = {k: values[k] for k in FIXED_KEYS if k in values}
    try:
        return SweepSpec(
            axis=axis,
            lo=values["lo"],
            hi=values["hi"],
            points=values["points"],
            fixed=fixed,
            engine=values.get("engine", "analytic"),
            format=values.get("format", "csv"),
            out=values.get("out"),
        )
    except InvalidArgumentError as exc:
        # point at the offending key when the message names one
        lineno = next((n for k, n in lines.items() if re.search(rf"\b{k}\b", str(exc))), None)
        raise ConfigError(str(exc), lineno) from None


DEFAULT_R_GRID = (0.0, 3.0, 301)
DEFAULT_NTH1_GRID = (0.0, 10.0, 201)

_FIG2 = {"fig2a": (2.0, 0.5), "fig2b": (0.5, 2.0), "fig2c": (1.0, 2.0), "fig2d": (1.0, 5.0)}
_FIG3 = {"fig3a": (0.5, 0.1), "fig3b": (0.5, 15.0), "fig3c": (0.05, 0.01), "fig3d": (0.05, 1.5)}
PRESET_NAMES = tuple(sorted(_FIG2) + sorted(_FIG3))


def figure_preset(name: str, engine: str = "analytic", fmt: str = "csv", out: Optional[str] = None) -> SweepSpec:
    """Named sweep preset (``fig2a``-``fig2d``, ``fig3a``-``fig3d``).

    ``fig2a``-``fig2d`` sweep ``r`` over [0, 3] (301 points) at C1=35, C2=15;
    ``fig3a``-``fig3d`` sweep ``n_th1`` over [0, 10] (201 points) at C1=35,
    C2=25. Both grid ranges are choices of this package.
    """
    tau = LAB_DAMPING_RATIO
    if name in _FIG2:
        n1, n2 = _FIG2[name]
        lo, hi, pts = DEFAULT_R_GRID
        fixed = {"c1": 35.0, "c2": 15.0, "nth1": n1, "nth2": n2, "tau": tau}
        axis = "squeezing_r"
    elif name in _FIG3:
        r, n2 = _FIG3[name]
        lo, hi, pts = DEFAULT_NTH1_GRID
        fixed = {"c1": 35.0, "c2": 25.0, "nth2": n2, "r": r, "tau": tau}
        axis = "thermal_n1"
    else:
        raise InvalidArgumentError(f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}")
    return SweepSpec(axis, lo, hi, pts, fixed, engine=engine, format=fmt, out=out, name=name)


@dataclass(frozen=True)
class OutputRow:
    axis: float
    v1: float
    v2: float
    v12: float
    g_ab: float
    g_ba: float
    g_delta: float
    e2: float
    direction: str
    engine: str
    deviation: Optional[float] = field(default=None)


def evaluate_point(point: Dict[str, float], engine: str = "analytic", axis_value: float = 0.0) -> OutputRow:
    """Evaluate one grid point. With ``engine='both'`` the reported values are analytic."""
    args = (point["c1"], point["c2"], point["nth1"], point["nth2"], point["r"], point["tau"])
    deviation = None
    if engine == "analytic":
        cm = analytic_mechanical_cm(*args)
    elif engine == "numeric":
        cm = numeric_mechanical_cm(*args)
    elif engine == "both":
        cm = analytic_mechanical_cm(*args)
        deviation = relative_deviation(numeric_mechanical_cm(*args), cm)
    else:
        raise InvalidArgumentError(f"engine must be one of {ENGINES}, got {engine!r}")
    rep = steering_report(cm.standard_form)
    return OutputRow(
        axis=axis_value,
        v1=cm.v1,
        v2=cm.v2,
        v12=cm.v12,
        g_ab=rep.g_ab,
        g_ba=rep.g_ba,
        g_delta=rep.asymmetry,
        e2=rep.e2,
        direction=rep.direction.value,
        engine=engine,
        deviation=deviation,
    )


def _evaluate_task(task):
    index, point, engine, axis_value, var = task
    try:
        return index, evaluate_point(point, engine, axis_value)
    except SteerlabError as exc:
        raise DomainError(f"at {var} = {axis_value!r}: {exc}") from None


def resolve_workers(workers: Optional[int] = None) -> int:
    """Worker count: explicit argument, then ``$STEERLAB_WORKERS``, then CPU count."""
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        if env is not None:
            try:
                workers = int(env)
            except ValueError:
                raise InvalidArgumentError(f"{WORKERS_ENV} must be a positive integer, got {env!r}") from None
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise InvalidArgumentError(f"worker count must be positive, got {workers}")
    return workers


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> List[OutputRow]:
    workers = resolve_workers(workers)
    var = spec.variable
    tasks = [(i, spec.point(v), spec.engine, v, var) for i, v in enumerate(spec.grid())]
    if workers == 1:
        results = [_evaluate_task(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_task, tasks, chunksize=chunk))
    results.sort(key=lambda item: item[0])
    return [row for _, row in results]


def _fmt(x: float) -> str:
    return format(x, ".12g")


def format_csv(rows: Sequence[OutputRow]) -> str:
    if not rows:
        raise InvalidArgumentError("no rows to write")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [_fmt(r.axis), _fmt(r.v1), _fmt(r.v2), _fmt(r.v12), _fmt(r.g_ab), _fmt(r.g_ba),
             _fmt(r.g_delta), _fmt(r.e2), r.direction, r.engine]
        )
    return buf.getvalue()


def emit_csv(rows: Sequence[OutputRow], path) -> None:
    text = format_csv(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_csv(path) -> List[OutputRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise InvalidArgumentError(f"unexpected CSV header {header!r}")
        rows = []
        for rec in reader:
            nums = [float(x) for x in rec[:8]]
            rows.append(OutputRow(*nums, direction=rec[8], engine=rec[9]))
    return rows


def format_json(rows: Sequence[OutputRow], spec: Optional[SweepSpec] = None) -> str:
    if not rows:
        raise InvalidArgumentError("no rows to write")
    doc = {"rows": [asdict(r) for r in rows]}
    if spec is not None:
        doc["spec"] = {
            "name": spec.name,
            "axis": spec.axis,
            "lo": spec.lo,
            "hi": spec.hi,
            "points": spec.points,
            "fixed": dict(spec.fixed),
            "engine": spec.engine,
        }
    return json.dumps(doc, indent=2) + "\n"


def emit_json(rows: Sequence[OutputRow], path, spec: Optional[SweepSpec] = None) -> None:
    text = format_json(rows, spec)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


SVG_WIDTH, SVG_HEIGHT = 800, 500
_SERIES = (
    ("g_ab", "G(A->B)", "#d62728", None),
    ("g_ba", "G(B->A)", "#2ca02c", None),
    ("g_delta", "asymmetry", "#1f77b4", "6,4"),
    ("e2", "E2", "#e6b800", None),
)


def format_svg(rows: Sequence[OutputRow], axis_label: str = "axis", title: str = "") -> str:
    """Four polylines (both steerings, asymmetry, E2) against the axis value."""
    if not rows:
        raise InvalidArgumentError("no rows to plot")
    left, right, top, bottom = 70, 170, 40, 60
    pw, ph = SVG_WIDTH - left - right, SVG_HEIGHT - top - bottom
    xs = [r.axis for r in rows]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1.0
    ymax = max(max(getattr(r, key) for r in rows) for key, *_ in _SERIES)
    ymax = ymax * 1.05 if ymax > 0 else 1.0

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - y / ymax * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{left + pw / 2:g}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>')
    for i in range(5):
        xv = x0 + (x1 - x0) * i / 4
        yv = ymax * i / 4
        out.append(
            f'<text x="{sx(xv):.2f}" y="{top + ph + 18}" text-anchor="middle" font-size="12">{xv:.3g}</text>'
        )
        out.append(f'<text x="{left - 8}" y="{sy(yv) + 4:.2f}" text-anchor="end" font-size="12">{yv:.3g}</text>')
    out.append(
        f'<text x="{left + pw / 2:g}" y="{SVG_HEIGHT - 15}" text-anchor="middle" font-size="14">'
        f"{escape(axis_label)}</text>"
    )
    for k, (key, label, colour, dash) in enumerate(_SERIES):
        pts = " ".join(f"{sx(r.axis):.2f},{sy(getattr(r, key)):.2f}" for r in rows)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="2"{dash_attr} points="{pts}"/>')
        ly = top + 20 + 22 * k
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 30}" y2="{ly}" stroke="{colour}" stroke-width="2"{dash_attr}/>')
        out.append(f'<text x="{lx + 38}" y="{ly + 4}" font-size="13">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(rows: Sequence[OutputRow], path, axis_label: str = "axis", title: str = "") -> None:
    text = format_svg(rows, axis_label, title)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
