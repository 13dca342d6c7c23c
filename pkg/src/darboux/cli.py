"""Command-line front end: figure data, spectra tables, potentials, verification."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from . import bender_boettcher as bb
from . import exp_potential as xp
from . import harmonic, numerics, tables, verify
from .errors import AdmissibilityError, DarbouxError, ParameterError
from .numerics import Grid1D


def parse_complex(text: str) -> complex:
    """'a+bi', 'a-bi', 'a', 'bi' or 'i' with no spaces."""
    t = text.strip()
    if not t or " " in text or "j" in t or "J" in t:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r} (use a+bi)")
    if t.endswith("i"):
        t = t[:-1]
        if t == "" or t[-1] in "+-":
            t += "1"
        t += "j"
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r} (use a+bi)") from None


def parse_grid(text: str) -> Grid1D:
    try:
        return Grid1D.parse(text)
    except (DarbouxError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


@dataclass
class RunConfig:
    command: str
    target: Optional[str] = None
    epsilon: float = -0.5
    beta: complex = 1j
    alpha: complex = 1.0
    N: float = 3.0
    m: int = 2
    levels: int = 6
    grid: Optional[Grid1D] = None
    out: Optional[str] = None
    fmt: str = "csv"
    suite: str = "all"
    corrupt: bool = False
    numerical: bool = True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="darboux", description="Complex Darboux partners with real spectra.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--grid", type=parse_grid, help="lo:hi:count")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    f = sub.add_parser("figures", help="potential data behind the three figures")
    f.add_argument("target", choices=("fig1", "fig2", "fig3"))
    common(f)

    s = sub.add_parser("spectrum", help="analytic and numerical spectra")
    s.add_argument("target", choices=("harmonic", "expwell"))
    s.add_argument("--epsilon", type=float, default=-0.5)
    s.add_argument("--beta", type=parse_complex, default=1j)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--levels", type=int, default=6)
    s.add_argument("--no-numerical", dest="numerical", action="store_false",
                   help="skip the finite-difference spectrum")
    common(s)

    v = sub.add_parser("potential", help="partner potential samples")
    v.add_argument("target", choices=("harmonic", "bb"))
    v.add_argument("--epsilon", type=float, default=-0.5)
    v.add_argument("--beta", type=parse_complex, default=None)
    v.add_argument("--alpha", type=parse_complex, default=1.0)
    v.add_argument("--bigN", dest="N", type=float, default=3.0)
    common(v)

    r = sub.add_parser("verify", help="run the verification checks")
    r.add_argument("--suite", default="all", choices=["all"] + sorted(verify.SUITES))
    r.add_argument("--out", help="JSON report path (default: stdout)")
    r.add_argument("--inject-corruption", dest="corrupt", action="store_true", help=argparse.SUPPRESS)
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for key in ("target", "epsilon", "alpha", "N", "m", "levels", "grid", "out", "fmt", "suite", "corrupt", "numerical"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    if getattr(ns, "beta", None) is not None:
        cfg.beta = ns.beta
    elif cfg.command == "potential" and cfg.target == "bb":
        cfg.beta = 1.0
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    """Fail fast on preconditions before any computation."""
    if cfg.command == "spectrum":
        if cfg.levels < 1:
            raise ParameterError(f"--levels must be positive, got {cfg.levels}")
        if cfg.target == "harmonic":
            harmonic.require_admissible(harmonic.HarmonicParams(cfg.epsilon, cfg.beta))
        else:
            xp.SectorSpec(cfg.m)
    elif cfg.command == "potential":
        if cfg.target == "harmonic":
            harmonic.require_admissible(harmonic.HarmonicParams(cfg.epsilon, cfg.beta))
        else:
            bb.BBParams(cfg.N, cfg.alpha, cfg.beta)
            if cfg.grid is not None and (cfg.grid.lo != -cfg.grid.hi or cfg.grid.count % 2 == 0):
                raise ParameterError("bb contour grids are -s:s:count with an odd count")


def _table(cfg, header, rows) -> str:
    return tables.table_json(header, rows) if cfg.fmt == "json" else tables.format_csv(header, rows)


def cmd_figures(cfg: RunConfig, stdout) -> int:
    grid = cfg.grid or harmonic.FIGURE_GRID
    rows = harmonic.figure_data(cfg.target, grid)
    tables.emit(_table(cfg, harmonic.FIGURE_COLUMNS, rows), cfg.out, stdout)
    return 0


def cmd_spectrum(cfg: RunConfig, stdout, stderr) -> int:
    if cfg.target == "expwell":
        ex = xp.exact_spectrum(cfg.m, cfg.levels)
        sc = xp.semiclassical_spectrum(cfg.m, cfg.levels)
        if ex.kind is xp.SpectrumKind.UNBOUND:
            stderr.write(f"unbound spectrum: m = {cfg.m} gives no quantization condition\n")
        rows = ex.rows() + sc.rows()
        tables.emit(_table(cfg, ("kind", "m", "n", "nu", "energy", "excluded"), rows), cfg.out, stdout)
        return 0
    p = harmonic.HarmonicParams(cfg.epsilon, cfg.beta)
    analytic = harmonic.spectrum(p, cfg.levels).lowest(cfg.levels)
    header = ("n", "analytic", "re_numerical", "im_numerical", "delta")
    if cfg.numerical:
        ev = harmonic.numerical_spectrum(p, cfg.grid or harmonic.VERIFY_GRID).smallest(cfg.levels)
        rep = numerics.match_spectrum(ev, analytic, window=2e-3)
        rows = []
        for n, lv in enumerate(rep.levels):
            if lv.matched:
                rows.append((n, float(lv.analytic), float(lv.numerical.real), float(lv.numerical.imag), float(lv.delta)))
            else:
                rows.append((n, float(lv.analytic), "", "", ""))
    else:
        rows = [(n, float(e), "", "", "") for n, e in enumerate(analytic)]
    tables.emit(_table(cfg, header, rows), cfg.out, stdout)
    return 0


def cmd_potential(cfg: RunConfig, stdout) -> int:
    if cfg.target == "harmonic":
        p = harmonic.HarmonicParams(cfg.epsilon, cfg.beta)
        pot = harmonic.partner_v2(p, cfg.grid or harmonic.FIGURE_GRID)
        rows = [(float(x), float(v.real), float(v.imag)) for x, v in zip(pot.points, pot.values)]
        header = ("x", "re_v2", "im_v2")
    else:
        p = bb.BBParams(cfg.N, cfg.alpha, cfg.beta)
        scale, count = (cfg.grid.hi, cfg.grid.count) if cfg.grid is not None else (10.0, 401)
        c = bb.contour(cfg.N, scale, count, shift=0.0)
        pot = bb.partner_v2(p, c)
        rows = [(float(t), float(x.real), float(x.imag), float(v.real), float(v.imag))
                for t, x, v in zip(c.t, c.x, pot.values)]
        header = ("t", "re_x", "im_x", "re_v2", "im_v2")
    tables.emit(_table(cfg, header, rows), cfg.out, stdout)
    return 0


def cmd_verify(cfg: RunConfig, stdout) -> int:
    rep = verify.run(cfg.suite, corrupt=cfg.corrupt)
    tables.emit(tables.format_json(rep.to_dict()), cfg.out, stdout)
    return 0 if rep.passed else 1


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if cfg.command == "figures":
            return cmd_figures(cfg, stdout)
        if cfg.command == "spectrum":
            return cmd_spectrum(cfg, stdout, stderr)
        if cfg.command == "potential":
            return cmd_potential(cfg, stdout)
        return cmd_verify(cfg, stdout)
    except AdmissibilityError as exc:
        stderr.write(f"error: AdmissibilityError: {exc} (beta_c = {exc.beta_c!r})\n")
        return 2
    except (DarbouxError, ValueError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except BrokenPipeError:
        return 0
    except OSError as exc:
        stderr.write(f"error: IoError: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
