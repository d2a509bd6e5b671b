"""Key-value run configuration.

One ``key = value`` per line; ``#`` starts a comment.  Numbers may be decimals or exact
rationals ``p/q`` (parsed with :class:`fractions.Fraction` before conversion).

========================  ==========================================================
key                       meaning (default)
========================  ==========================================================
``dim``                   ambient dimension d (1)
``matrix``                d*d entries of R, row-major, comma or space separated
``digits``                digit set B; ``;`` separates points, ``,`` coordinates.
                          In d = 1 a plain comma list is one digit per entry.
``spectrum.base``         base matrix S of the digit spectrum (transpose of R)
``spectrum.digits``       spectrum digits L, same syntax as ``digits``
``spectrum.scale``        multiplier c (1)
``spectrum.level``        truncation word length (8)
``spectrum.points``       CSV file with explicit points (excludes the digit keys)
``level``                 measure level n for frame bounds (8)
``eps``                   target error of the transform (1e-10)
``max_terms``             cap on mask factors (200)
``seed``                  jitter seed (0)
``jitter``                jitter bound L (0)
``r``                     density exponent (fitted dimension)
``window``                ``cube`` or ``ball`` (cube)
``h_min`` / ``h_max``     window-radius range (smallest gap / extent/4)
``h_count``               grid size (40)
``fit_fraction``          middle share of the log-range used in the fit (0.6)
``tail_fraction``         top share of the log-range for the density sup (0.5)
``output``                output path, ``-`` for stdout (-)
``format``                ``csv`` or ``text`` (csv)
========================  ==========================================================
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ParseError, SchemaError
from .ifs_core import validate_ifs

KNOWN_KEYS = {
    "dim", "matrix", "digits",
    "spectrum.base", "spectrum.digits", "spectrum.scale", "spectrum.level", "spectrum.points",
    "level", "eps", "max_terms", "seed", "jitter",
    "r", "window", "h_min", "h_max", "h_count", "fit_fraction", "tail_fraction",
    "output", "format",
}


def parse_number(text):
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a number: {text!r}") from exc


def parse_numbers(text):
    parts = [p for p in text.replace(",", " ").split() if p]
    return [parse_number(p) for p in parts]


def parse_point_list(text, dim):
    """Parse a digit list; returns an ``(m, dim)`` array."""
    if ";" in text:
        rows = [parse_numbers(chunk) for chunk in text.split(";") if chunk.strip()]
    elif dim == 1:
        rows = [[v] for v in parse_numbers(text)]
    else:
        rows = [parse_numbers(text)]
    for row in rows:
        if len(row) != dim:
            raise ValueError(f"point {row} does not have dimension {dim}")
    return np.array(rows, dtype=float).reshape(-1, dim)


def parse_matrix(text, dim):
    vals = parse_numbers(text)
    if len(vals) != dim * dim:
        raise ValueError(f"matrix needs {dim * dim} entries, got {len(vals)}")
    return np.array(vals, dtype=float).reshape(dim, dim)


def read_pairs(text):
    """``key = value`` pairs in file order; duplicate or unknown keys are schema errors."""
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ParseError("empty key", lineno)
        if key not in KNOWN_KEYS:
            raise SchemaError(f"unknown key {key!r} (line {lineno})", key)
        if key in pairs:
            raise SchemaError(f"duplicate key {key!r} (line {lineno})", key)
        pairs[key] = (value, lineno)
    return pairs


@dataclass
class RunConfig:
    ifs: object = None
    similarity: object = None
    spectrum: object = None
    spectrum_level: int = 8
    level: int = 8
    eps: float = 1e-10
    max_terms: int = 200
    seed: int = 0
    jitter: float = 0.0
    r: float | None = None
    window: str = "cube"
    h_min: float | None = None
    h_max: float | None = None
    h_count: int = 40
    fit_fraction: float = 0.6
    tail_fraction: float = 0.5
    output: str = "-"
    format: str = "csv"
    source: dict = field(default_factory=dict)

    def echo(self):
        """Config as ``(key, value)`` text pairs, in sorted key order."""
        return sorted((k, v) for k, v in self.source.items())


def _convert(key, value, lineno, fn):
    try:
        return fn(value)
    except ValueError as exc:
        raise ParseError(f"{key}: {exc}", lineno) from exc


def config_from_pairs(pairs, base_dir=None):
    from .spectra import SpectrumSpec, points_from_csv

    cfg = RunConfig(source={k: v for k, (v, _) in pairs.items()})

    def get(key, fn, default=None):
        if key not in pairs:
            return default
        value, lineno = pairs[key]
        return _convert(key, value, lineno, fn)

    dim = get("dim", lambda s: int(s), 1)
    if dim < 1:
        raise SchemaError("dim must be positive", "dim")
    if ("matrix" in pairs) != ("digits" in pairs):
        raise SchemaError("matrix and digits must be given together",
                          "digits" if "matrix" in pairs else "matrix")
    if "matrix" in pairs:
        R = get("matrix", lambda s: parse_matrix(s, dim))
        B = get("digits", lambda s: parse_point_list(s, dim))
        cfg.ifs, cfg.similarity = validate_ifs(R, B)

    if "spectrum.points" in pairs:
        if "spectrum.digits" in pairs or "spectrum.base" in pairs:
            raise SchemaError("spectrum.points excludes spectrum.digits/base", "spectrum.points")
        path = Path(pairs["spectrum.points"][0])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        with open(path) as fh:
            ps = points_from_csv(fh)
        cfg.spectrum = SpectrumSpec.explicit(ps.points, ps.dim)
    elif "spectrum.digits" in pairs:
        if "spectrum.base" in pairs:
            S = get("spectrum.base", lambda s: parse_matrix(s, dim))
        elif cfg.ifs is not None:
            S = cfg.ifs.adjoint
        else:
            raise SchemaError("spectrum.base is required without an IFS", "spectrum.base")
        L = get("spectrum.digits", lambda s: parse_point_list(s, dim))
        cfg.spectrum = SpectrumSpec.digit_lambda(S, L, get("spectrum.scale", parse_number, 1.0))

    cfg.spectrum_level = get("spectrum.level", int, cfg.spectrum_level)
    cfg.level = get("level", int, cfg.level)
    cfg.eps = get("eps", parse_number, cfg.eps)
    cfg.max_terms = get("max_terms", int, cfg.max_terms)
    cfg.seed = get("seed", int, cfg.seed)
    cfg.jitter = get("jitter", parse_number, cfg.jitter)
    cfg.r = get("r", parse_number, cfg.r)
    cfg.window = get("window", str, cfg.window)
    cfg.h_min = get("h_min", parse_number, cfg.h_min)
    cfg.h_max = get("h_max", parse_number, cfg.h_max)
    cfg.h_count = get("h_count", int, cfg.h_count)
    cfg.fit_fraction = get("fit_fraction", parse_number, cfg.fit_fraction)
    cfg.tail_fraction = get("tail_fraction", parse_number, cfg.tail_fraction)
    cfg.output = get("output", str, cfg.output)
    cfg.format = get("format", str, cfg.format)
    if cfg.window not in ("cube", "ball"):
        raise SchemaError(f"window must be cube or ball, got {cfg.window!r}", "window")
    if cfg.format not in ("csv", "text"):
        raise SchemaError(f"format must be csv or text, got {cfg.format!r}", "format")
    if cfg.eps <= 0:
        raise SchemaError("eps must be positive", "eps")
    return cfg


def parse_config(text, base_dir=None):
    return config_from_pairs(read_pairs(text), base_dir)


def load_config(path):
    """Read and validate a config file; relative ``spectrum.points`` paths resolve next to it."""
    path = Path(path)
    return parse_config(path.read_text(), base_dir=path.parent)
