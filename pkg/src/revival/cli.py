"""Command line entry point: ``revival run`` and ``revival validate``."""

from __future__ import annotations

import argparse
import io
import logging
import os
import sys
import tempfile
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import biortho, evolution
from .config import ConfigError, ExperimentConfig, load
from .diagnostics import continuity_report, exclusion_mask, max_jump, zone_centres
from .grid import l2_norm
from .spectral import HypothesisWarning, SpectralError

log = logging.getLogger("revival")

DECOMPOSITION_COLUMNS = ("x", "u_re", "u_im", "revival_re", "revival_im", "w_re", "w_im")
SPECTRUM_COLUMNS = ("j", "lambda_re", "lambda_im", "residual", "k_j_re", "k_j_im")
CONTINUITY_COLUMNS = ("field", "max_jump", "refinement_ratio", "l2", "sup")
SOLUTION_COLUMNS = ("x", "u_re", "u_im")


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def _csv(columns, rows) -> bytes:
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_cell(v) for v in row) + "\n")
    return out.getvalue().encode()


def _split(z):
    return np.asarray(z).real, np.asarray(z).imag


def decomposition_table(d) -> bytes:
    cols = [d.x, *_split(d.solution.values), *_split(d.revival_part.values), *_split(d.correction.values)]
    return _csv(DECOMPOSITION_COLUMNS, zip(*cols))


def solution_table(d) -> bytes:
    return _csv(SOLUTION_COLUMNS, zip(d.x, *_split(d.solution.values)))


def spectrum_table(pairs) -> bytes:
    rows = []
    for p in pairs:
        rows.append((p.index, p.lam.real, p.lam.imag, p.residual, p.deviation.real, p.deviation.imag))
    return _csv(SPECTRUM_COLUMNS, rows)


def continuity_table(coarse, fine) -> bytes:
    """Rows for the revival field, the correction w and w_free = u - free part."""
    N = coarse.modes
    centres = zone_centres(coarse.initial, coarse.time)
    rows = []
    rep = continuity_report(coarse.revival_part, fine.revival_part)
    rows.append(("revival", rep.max_jump, rep.refinement_ratio, rep.l2_norm, rep.sup_norm))
    rep = continuity_report(coarse.correction, fine.correction, centres, N)
    rows.append(("w", rep.max_jump, rep.refinement_ratio, rep.l2_norm, rep.sup_norm))
    wc = coarse.solution - coarse.free_part
    wf = fine.solution - fine.free_part
    rep = continuity_report(wc, wf, centres, N)
    rows.append(("w_free", rep.max_jump, rep.refinement_ratio, rep.l2_norm, rep.sup_norm))
    return _csv(CONTINUITY_COLUMNS, rows)


def _decompose(cfg: ExperimentConfig, M: int, jobs: int):
    V = cfg.potential.build(M)
    f = cfg.initial.build(M)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        if V.sup_norm >= 1.5:
            log.warning("%s: |V|_inf = %.3g is outside the proven regime", cfg.name, V.sup_norm)
        pairs, system = biortho.solve(V, cfg.modes, M, jobs=jobs)
    return pairs, evolution.decompose_at_rational_time(V, system, pairs, f, cfg.time)


def _write_atomic(path: Path, payload: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def run_experiment(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> list[Path]:
    """Run one (non-sweep) experiment and write its outputs; returns the paths written."""
    M = cfg.adjusted_grid
    if M != cfg.grid:
        log.info("%s: grid %d adjusted to %d for q = %d", cfg.name, cfg.grid, M, cfg.time.q)
    pairs, coarse = _decompose(cfg, M, jobs)
    payloads = {}
    if "solution_csv" in cfg.outputs:
        payloads[f"{cfg.name}_solution.csv"] = solution_table(coarse)
    if "decomposition_csv" in cfg.outputs:
        payloads[f"{cfg.name}_decomposition.csv"] = decomposition_table(coarse)
    if "spectrum_csv" in cfg.outputs:
        payloads[f"{cfg.name}_spectrum.csv"] = spectrum_table(pairs)
    if "continuity_csv" in cfg.outputs:
        _, fine = _decompose(cfg, 2 * M, jobs)
        payloads[f"{cfg.name}_continuity.csv"] = continuity_table(coarse, fine)
    if "plot_svg" in cfg.outputs:
        from .plotting import decomposition_svg

        title = f"{cfg.name}: {cfg.potential.label()}, t = {cfg.time}, N = {cfg.modes}"
        payloads[f"{cfg.name}.svg"] = decomposition_svg(coarse, title)

    out.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for name, payload in payloads.items():
            path = out / name
            _write_atomic(path, payload)
            written.append(path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def run(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> list[Path]:
    """Run every entry of a (possibly swept) config.

    Sweep entries run one after another unless ``jobs`` > 1. If any entry
    fails, files written by the other entries are removed too.
    """
    runs = cfg.expand_sweep()
    written: list[Path] = []
    try:
        if jobs > 1 and len(runs) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(run_experiment, r, out, 1) for r in runs]
                errors = []
                for fut in futures:
                    try:
                        written.extend(fut.result())
                    except BaseException as exc:  # collect, clean up after all finish
                        errors.append(exc)
                if errors:
                    raise errors[0]
        else:
            for r in runs:
                written.extend(run_experiment(r, out, jobs))
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def _cmd_run(args) -> int:
    try:
        cfg = load(args.config)
    except (OSError, ConfigError) as exc:
        print(f"revival: config error: {exc}", file=sys.stderr)
        return 2
    try:
        paths = run(cfg, Path(args.out), jobs=args.jobs)
    except SpectralError as exc:
        print(f"revival: spectral solver failed: {exc}", file=sys.stderr)
        return 1
    except (ArithmeticError, ValueError, OSError, RuntimeError) as exc:
        print(f"revival: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    for p in paths:
        print(p)
    return 0


def _cmd_validate(args) -> int:
    from .validation import run_suite

    results = run_suite(args.suite)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    from .validation import SUITES

    parser = argparse.ArgumentParser(prog="revival", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--out", default="out", help="output directory")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("validate", help="run acceptance checks")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("revival: --jobs must be positive", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
