"""Plain-text I/O: CSV field grids with key=value sidecars, and config files."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict[str, str]:
    """``key=value`` per line; ``#`` starts a comment; blank lines ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        out[key] = value
    return out


def read_config(path) -> dict[str, str]:
    return parse_config_text(Path(path).read_text(encoding="utf-8"))


def parse_grid(text: str) -> tuple[int, ...]:
    """``'64x64'`` -> ``(64, 64)``."""
    try:
        ext = tuple(int(s) for s in str(text).lower().split("x"))
    except ValueError:
        raise ConfigError(f"bad grid spec {text!r}; expected e.g. 64x64") from None
    if not ext or min(ext) < 3:
        raise ConfigError(f"grid {text!r} needs at least 3 points per axis")
    return ext


def sidecar_path(csv_path) -> Path:
    p = Path(csv_path)
    return p.with_suffix(".grid")


def write_field_csv(path, axes, values, field_name: str) -> Path:
    """Write one field: header ``x0,...,xn,<field_name>``, row-major over the grid.

    A sidecar ``<stem>.grid`` records ``extents``, ``spacings`` and ``origin``.
    """
    path = Path(path)
    values = np.asarray(values, dtype=float)
    axes = [np.asarray(a, dtype=float) for a in axes]
    if values.shape != tuple(a.size for a in axes):
        raise ValueError("field shape does not match the axes")
    mesh = np.meshgrid(*axes, indexing="ij")
    cols = [m.ravel() for m in mesh] + [values.ravel()]
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{i}" for i in range(len(axes))] + [field_name])
        for row in zip(*cols):
            w.writerow([repr(float(c)) for c in row])
    spacing = [float(a[1] - a[0]) if a.size > 1 else 0.0 for a in axes]
    meta = {
        "field": field_name,
        "extents": "x".join(str(a.size) for a in axes),
        "spacings": ",".join(repr(h) for h in spacing),
        "origin": ",".join(repr(float(a[0])) for a in axes),
    }
    sidecar_path(path).write_text("".join(f"{k}={v}\n" for k, v in meta.items()), encoding="utf-8")
    return path


def read_field_csv(path):
    """Inverse of :func:`write_field_csv`: ``(axes, values, field_name)``."""
    path = Path(path)
    meta = read_config(sidecar_path(path))
    ext = tuple(int(s) for s in meta["extents"].split("x"))
    spacings = [float(s) for s in meta["spacings"].split(",")]
    origin = [float(s) for s in meta["origin"].split(",")]
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float)
    axes = [o + h * np.arange(m) for o, h, m in zip(origin, spacings, ext)]
    return axes, body[:, -1].reshape(ext), header[-1]
