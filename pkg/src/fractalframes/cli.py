"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 a declared contract band was violated.
"""

import argparse
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import config as config_mod
from .beurling import DensityConfig, beurling_report
from .errors import FractalFramesError, ParseError, SchemaError
from .fourier import FtConfig, ft_many
from .frames import bessel_divergence_probe, frame_bounds_finite, oversample_check
from .ifs_core import attractor_level, first_collision_level, support_radius
from .report import Check, Report, emit_report, fmt
from .spectra import enumerate_truncation, jitter as jitter_points, points_from_csv

EXIT_OK, EXIT_USAGE, EXIT_BAND = 0, 1, 2

# command-line option -> config key
OPTION_KEYS = {
    "dim": "dim", "matrix": "matrix", "digits": "digits",
    "spectrum_base": "spectrum.base", "spectrum_digits": "spectrum.digits",
    "scale": "spectrum.scale", "spectrum_level": "spectrum.level",
    "level": "level", "eps": "eps", "max_terms": "max_terms", "seed": "seed", "jitter": "jitter",
    "r": "r", "window": "window", "h_min": "h_min", "h_max": "h_max", "h_count": "h_count",
    "fit_fraction": "fit_fraction", "tail_fraction": "tail_fraction",
    "output": "output", "format": "format",
}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def build_config(args):
    pairs = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            pairs = config_mod.read_pairs(fh.read())
    for opt, key in OPTION_KEYS.items():
        value = getattr(args, opt, None)
        if value is not None:
            pairs[key] = (str(value), None)
    base_dir = None
    if getattr(args, "config", None):
        base_dir = Path(args.config).parent
    return config_mod.config_from_pairs(pairs, base_dir)


def _need_ifs(cfg):
    if cfg.ifs is None:
        raise SchemaError("an IFS is required (matrix and digits)", "matrix")
    return cfg.ifs


def _need_spectrum(cfg, level=None):
    if cfg.spectrum is None:
        raise SchemaError("a spectrum is required (spectrum.digits or spectrum.points)",
                          "spectrum.digits")
    ps = enumerate_truncation(cfg.spectrum, cfg.spectrum_level if level is None else level)
    if cfg.jitter:
        ps = jitter_points(ps, cfg.jitter, cfg.seed)
    return ps


def _parse_band(text):
    if text is None:
        return None
    lo, hi = (config_mod.parse_number(t) for t in text.split(","))
    return lo, hi


def _parse_xs(values, dim):
    if not values:
        raise UsageError("at least one --x is required")
    return np.array([config_mod.parse_numbers(v) for v in values], dtype=float).reshape(-1, dim)


def cmd_ifs_info(args, cfg):
    spec = _need_ifs(cfg)
    sim = cfg.similarity
    summary = [
        ("dim", spec.dim), ("N", spec.N),
        ("matrix", " ".join(fmt(float(v)) for v in spec.R.ravel())),
        ("digits", "; ".join(" ".join(fmt(float(v)) for v in b) for b in spec.digits)),
        ("contains_zero", spec.contains_zero),
        ("is_similarity", sim.is_similarity),
        ("rho", sim.rho), ("hausdorff_dim", sim.hausdorff_dim),
        ("hausdorff_note", sim.note if sim.is_similarity else "undefined (not a similarity)"),
        ("support_radius", support_radius(spec)),
        ("first_collision_level",
         first_collision_level(spec, args.scan_levels, budget=2**16) or f"none up to {args.scan_levels}"),
    ]
    return Report("ifs-info", summary=summary, config=cfg.echo())


def cmd_ifs_atoms(args, cfg):
    mu = attractor_level(_need_ifs(cfg), cfg.level)
    cols = ["index"] + [f"x{i}" for i in range(mu.dim)] + ["weight", "first_digit"]
    rows = [[j, *map(float, mu.atoms[j]), float(mu.weights[j]), int(mu.first_digit[j])]
            for j in range(len(mu))]
    return Report("ifs-atoms", columns=cols, rows=rows, config=cfg.echo(),
                  summary=[("atoms", len(mu)), ("collisions", mu.collisions)])


def cmd_ft_eval(args, cfg):
    spec = _need_ifs(cfg)
    xs = _parse_xs(args.x, spec.dim)
    vals, terms, tails = ft_many(spec, xs, FtConfig(cfg.eps, cfg.max_terms))
    cols = [f"x{i}" for i in range(spec.dim)] + ["re", "im", "abs", "terms_used", "tail_bound"]
    rows = [[*map(float, xs[i]), float(vals[i].real), float(vals[i].imag), float(abs(vals[i])),
             int(terms[i]), float(tails[i])] for i in range(len(xs))]
    return Report("ft-eval", columns=cols, rows=rows, config=cfg.echo())


def cmd_spectrum_gen(args, cfg):
    ps = _need_spectrum(cfg)
    cols = [f"x{i}" for i in range(ps.dim)]
    return Report("spectrum-gen", columns=cols, rows=[list(map(float, p)) for p in ps.points],
                  config=cfg.echo(), summary=[("points", len(ps))])


def cmd_density(args, cfg):
    if args.points:
        with open(args.points) as fh:
            ps = points_from_csv(fh)
    else:
        ps = _need_spectrum(cfg)
    dcfg = DensityConfig(cfg.window, cfg.h_min, cfg.h_max, cfg.h_count, cfg.fit_fraction,
                         cfg.tail_fraction)
    rep = beurling_report(ps, cfg.r, dcfg)
    rows = []
    for h, c, center, d in rep.rows():
        center_txt = fmt(float(center)) if np.ndim(center) == 0 else " ".join(fmt(float(v)) for v in center)
        rows.append([float(h), c, center_txt, float(d)])
    summary = [("points", len(ps)), ("r", rep.r), ("fitted_dim", rep.fitted_dim),
               ("fit_stderr", rep.fit_stderr), ("D_r_at_fitted_dim", rep.r_density_at_dim),
               ("D_r_upper", rep.upper_density), ("h_cap", rep.h_cap)]
    if cfg.similarity is not None and cfg.similarity.is_similarity:
        s = cfg.similarity.hausdorff_dim
        at_s = beurling_report(ps, s, dcfg).upper_density
        summary += [("hausdorff_dim", s), ("D_r_at_hausdorff_dim", at_s)]
    return Report("density", columns=["h", "max_count", "center", "D_r"], rows=rows,
                  summary=summary, config=cfg.echo())


def _band_checks(name, values, band):
    if band is None:
        return []
    lo, hi = band
    return [Check(f"{name}[{i}]", float(v), band, bool(lo <= v <= hi)) for i, v in enumerate(values)]


def cmd_frames_bounds(args, cfg):
    spec = _need_ifs(cfg)
    ps = _need_spectrum(cfg)
    rep = frame_bounds_finite(spec, cfg.level, ps)
    row = [rep.lower, rep.upper, rep.level, rep.spectrum_size, rep.method]
    checks = _band_checks("bound", [rep.lower, rep.upper], _parse_band(args.band))
    return Report("frames-bounds", columns=["lower", "upper", "level", "size", "method"],
                  rows=[row], checks=checks, config=cfg.echo(),
                  summary=list(zip(["lower", "upper", "level", "size", "method"], row)))


def cmd_frames_oversample(args, cfg):
    spec = _need_ifs(cfg)
    ps = _need_spectrum(cfg)
    xs = _parse_xs(args.x, spec.dim)
    vals = oversample_check(spec, ps, args.n, xs, FtConfig(cfg.eps, cfg.max_terms))
    cols = [f"x{i}" for i in range(spec.dim)] + ["value"]
    rows = [[*map(float, xs[i]), float(vals[i])] for i in range(len(xs))]
    checks = _band_checks("oversample", vals, _parse_band(args.band))
    return Report("frames-oversample", columns=cols, rows=rows, checks=checks, config=cfg.echo(),
                  summary=[("n", args.n), ("spectrum_size", len(ps))])


def cmd_frames_probe(args, cfg):
    S, terms = bessel_divergence_probe(args.a, args.K, FtConfig(cfg.eps, cfg.max_terms))
    rows = [[n, float(3.0**n * args.a), float(t)] for n, t in enumerate(terms)]
    spread = float(terms.max() - terms.min())
    checks = [Check("term_spread", spread, (0.0, 3e-10), spread <= 3e-10)]
    return Report("frames-probe", columns=["n", "x", "term"], rows=rows, checks=checks,
                  summary=[("a", args.a), ("K", args.K), ("S_K", S), ("term", float(terms[0]))],
                  config=cfg.echo())


def cmd_verify_all(args, cfg):
    from .verification import run_all
    return Report("verify-all", checks=run_all(args.budget), config=[("budget", args.budget)])


def _common(p, ifs=True, spectrum=False, density=False):
    p.add_argument("--config", help="key-value config file")
    p.add_argument("--output", help="output path or - for stdout")
    p.add_argument("--format", choices=["csv", "text"])
    if ifs:
        p.add_argument("--dim", type=int)
        p.add_argument("--matrix", help='row-major entries, e.g. "4" or "2,0,0,2"')
        p.add_argument("--digits", help='digit list, e.g. "0,2" or "0,0;1,0;0,1"')
        p.add_argument("--eps", type=float)
        p.add_argument("--max-terms", dest="max_terms", type=int)
        p.add_argument("--level", type=int, help="measure level")
    if spectrum:
        p.add_argument("--spectrum-base", dest="spectrum_base")
        p.add_argument("--spectrum-digits", dest="spectrum_digits")
        p.add_argument("--scale", help="spectrum multiplier")
        p.add_argument("--spectrum-level", dest="spectrum_level", type=int)
        p.add_argument("--jitter", type=float)
        p.add_argument("--seed", type=int)
    if density:
        p.add_argument("--points", help="CSV of points")
        p.add_argument("--r", type=float)
        p.add_argument("--window", choices=["cube", "ball"])
        p.add_argument("--h-min", dest="h_min", type=float)
        p.add_argument("--h-max", dest="h_max", type=float)
        p.add_argument("--h-count", dest="h_count", type=int)
        p.add_argument("--fit-fraction", dest="fit_fraction", type=float)
        p.add_argument("--tail-fraction", dest="tail_fraction", type=float)


def make_parser():
    parser = Parser(prog="fractalframes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    ifs = sub.add_parser("ifs").add_subparsers(dest="action", required=True, parser_class=Parser)
    p = ifs.add_parser("info")
    _common(p)
    p.add_argument("--scan-levels", dest="scan_levels", type=int, default=10)
    p.set_defaults(func=cmd_ifs_info, default_format="text")
    p = ifs.add_parser("atoms")
    _common(p)
    p.set_defaults(func=cmd_ifs_atoms, default_format="csv")

    ftp = sub.add_parser("ft").add_subparsers(dest="action", required=True, parser_class=Parser)
    p = ftp.add_parser("eval")
    _common(p)
    p.add_argument("--x", action="append", help="evaluation point; repeat for several")
    p.set_defaults(func=cmd_ft_eval, default_format="csv")

    sp = sub.add_parser("spectrum").add_subparsers(dest="action", required=True, parser_class=Parser)
    p = sp.add_parser("gen")
    _common(p, spectrum=True)
    p.set_defaults(func=cmd_spectrum_gen, default_format="csv")

    p = sub.add_parser("density")
    _common(p, spectrum=True, density=True)
    p.set_defaults(func=cmd_density, default_format="csv")

    fr = sub.add_parser("frames").add_subparsers(dest="action", required=True, parser_class=Parser)
    p = fr.add_parser("bounds")
    _common(p, spectrum=True)
    p.add_argument("--band", help="declared contract band lo,hi for both bounds")
    p.set_defaults(func=cmd_frames_bounds, default_format="text")
    p = fr.add_parser("oversample")
    _common(p, spectrum=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--x", action="append")
    p.add_argument("--band", help="declared contract band lo,hi for every value")
    p.set_defaults(func=cmd_frames_oversample, default_format="csv")
    p = fr.add_parser("probe")
    _common(p, ifs=False)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--K", type=int, default=16)
    p.set_defaults(func=cmd_frames_probe, default_format="csv")

    vp = sub.add_parser("verify").add_subparsers(dest="action", required=True, parser_class=Parser)
    p = vp.add_parser("all")
    p.add_argument("--budget", default="desk", choices=["desk"])
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "text"])
    p.set_defaults(func=cmd_verify_all, default_format="text", config=None)
    return parser


@contextmanager
def _sink(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def main(argv=None):
    try:
        args = make_parser().parse_args(argv)
        cfg = build_config(args) if args.command != "verify" else config_mod.RunConfig()
        fmt_name = args.format or (cfg.format if "format" in cfg.source else args.default_format)
        report = args.func(args, cfg)
        out = getattr(args, "output", None) or (cfg.output if "output" in cfg.source else "-")
        with _sink(out) as fh:
            emit_report(report, fmt_name, fh)
        if args.command == "density" and fmt_name == "csv":
            line = ", ".join(f"{k}={fmt(v)}" for k, v in report.summary)
            print(line, file=sys.stderr)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(config_mod.__doc__, file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except (FractalFramesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if report.ok else EXIT_BAND


if __name__ == "__main__":
    sys.exit(main())
