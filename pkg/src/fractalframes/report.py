"""Stable CSV and structured-text output.

Floats are written with ``repr`` so that identical inputs give byte-identical files.
The structured-text run line carries a digest of the config echo, never a timestamp.
"""

import hashlib
from dataclasses import dataclass, field

from . import __version__


@dataclass
class Check:
    name: str
    measured: float
    band: tuple
    passed: bool
    detail: str = ""

    def line(self):
        lo, hi = self.band
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: measured={fmt(self.measured)} band=[{fmt(lo)}, {fmt(hi)}]"
        return text + (f" ({self.detail})" if self.detail else "")


@dataclass
class Report:
    title: str
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    config: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)


def fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(float(v))
    if hasattr(v, "item"):
        return fmt(v.item())
    if v is None:
        return ""
    return str(v)


def run_line(report):
    digest = hashlib.sha1(repr(report.config).encode()).hexdigest()[:12]
    return f"# run {report.title} fractalframes-{__version__} config-{digest}"


def emit_report(report, fmt_name, sink):
    """Write ``report`` to the text stream ``sink`` as ``csv`` or ``text``."""
    if fmt_name == "csv":
        if report.columns:
            sink.write(",".join(report.columns) + "\n")
            for row in report.rows:
                sink.write(",".join(fmt(v) for v in row) + "\n")
        elif report.summary:
            sink.write("key,value\n")
            for k, v in report.summary:
                sink.write(f"{k},{fmt(v)}\n")
        if report.checks:
            sink.write("check,measured,lo,hi,passed\n")
            for c in report.checks:
                sink.write(f"{c.name},{fmt(c.measured)},{fmt(c.band[0])},{fmt(c.band[1])},{fmt(c.passed)}\n")
        return
    if fmt_name != "text":
        raise ValueError(f"unknown format {fmt_name!r}")
    sink.write(run_line(report) + "\n")
    if report.config:
        sink.write("[config]\n")
        for k, v in report.config:
            sink.write(f"{k} = {v}\n")
    if report.summary:
        sink.write("[summary]\n")
        for k, v in report.summary:
            sink.write(f"{k}: {fmt(v)}\n")
    if report.columns:
        sink.write("[table]\n")
        sink.write(",".join(report.columns) + "\n")
        for row in report.rows:
            sink.write(",".join(fmt(v) for v in row) + "\n")
    if report.checks:
        sink.write("[checks]\n")
        for c in report.checks:
            sink.write(c.line() + "\n")
