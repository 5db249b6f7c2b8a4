"""Experiment configuration files.

One experiment per file, flat ``key = value`` lines, ``#`` starts a comment::

    name = mathieu_q025
    potential.kind = mathieu        # mathieu | fourier | samples | zero
    potential.q_re = 0
    potential.q_im = 0.25
    initial.kind = indicator        # indicator | sine | poly | samples_file
    initial.a = 3*pi/8
    initial.b = 5*pi/8
    time.p = 1
    time.q = 5
    modes = 100
    grid = 4096
    outputs = decomposition_csv, spectrum_csv, continuity_csv, plot_svg
    sweep = 0.25j, 0.5j, 0.75j, 1j  # optional: one run per Mathieu q

Real-valued entries accept arithmetic in ``pi`` (``3*pi/8``).
"""

from __future__ import annotations

import ast
import math
import operator
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .data import from_csv, indicator, poly, sine
from .potential import DEFAULT_GRID, Potential, load_samples_csv
from .revivals import RationalTime

OUTPUTS = ("solution_csv", "decomposition_csv", "spectrum_csv", "plot_svg", "continuity_csv")
GRID_ENV = "REVIVAL_GRID"


class ConfigError(ValueError):
    pass


_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}


def _arith(node):
    if isinstance(node, ast.Expression):
        return _arith(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_arith(node.left), _arith(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_arith(node.operand))
    raise ConfigError(f"unsupported expression: {ast.dump(node)}")


def number(text: str) -> complex:
    """Evaluate a numeric literal or arithmetic in ``pi``; ``i`` may stand for ``j``."""
    text = text.strip().replace("i", "j").replace("pj", "pi")
    try:
        return _arith(ast.parse(text, mode="eval"))
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse number {text!r}") from exc


def _real(text: str) -> float:
    v = number(text)
    if isinstance(v, complex):
        if v.imag:
            raise ConfigError(f"expected a real number, got {text!r}")
        v = v.real
    return float(v)


def _int(text: str) -> int:
    v = _real(text)
    if v != int(v):
        raise ConfigError(f"expected an integer, got {text!r}")
    return int(v)


def read_pairs(text: str) -> dict[str, str]:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        pairs[key] = value
    return pairs


@dataclass(frozen=True)
class PotentialSpec:
    kind: str = "mathieu"
    qcoef: complex = 0j
    coeffs: tuple = ()
    samples_file: str | None = None

    def build(self, grid: int) -> Potential:
        if self.kind in ("mathieu", "zero"):
            return Potential.mathieu(self.qcoef if self.kind == "mathieu" else 0.0, grid=grid)
        if self.kind == "fourier":
            return Potential.fourier(cos=self.coeffs, grid=grid)
        return load_samples_csv(self.samples_file, grid=grid)

    def label(self) -> str:
        if self.kind == "mathieu":
            q = self.qcoef
            return f"q={q.real:g}{q.imag:+g}i"
        return self.kind


@dataclass(frozen=True)
class InitialSpec:
    kind: str = "indicator"
    a: float = 3 * math.pi / 8
    b: float = 5 * math.pi / 8
    j: int = 1
    samples_file: str | None = None

    def build(self, M: int):
        if self.kind == "indicator":
            return indicator(self.a, self.b, M)
        if self.kind == "sine":
            return sine(self.j, M)
        if self.kind == "poly":
            return poly(M)
        return from_csv(self.samples_file, M)


@dataclass(frozen=True)
class ExperimentConfig:
    name: str = "experiment"
    potential: PotentialSpec = field(default_factory=PotentialSpec)
    initial: InitialSpec = field(default_factory=InitialSpec)
    time: RationalTime = RationalTime(1, 5)
    modes: int = 100
    grid: int = DEFAULT_GRID
    outputs: tuple = ("decomposition_csv",)
    sweep: tuple = ()

    @property
    def adjusted_grid(self) -> int:
        """Grid size rounded up so every shift 2 pi k / q lands on a node."""
        step = 2 * self.time.q
        return -(-self.grid // step) * step

    def expand_sweep(self) -> list["ExperimentConfig"]:
        if not self.sweep:
            return [self]
        runs = []
        for q in self.sweep:
            spec = replace(self.potential, kind="mathieu", qcoef=complex(q))
            runs.append(replace(self, name=f"{self.name}_{spec.label()}", potential=spec, sweep=()))
        return runs


def _resolve(path: str, base: Path) -> str:
    p = Path(path)
    return str(p if p.is_absolute() else base / p)


def parse(text: str, base: Path | str = ".") -> ExperimentConfig:
    base = Path(base)
    kv = read_pairs(text)
    known = {
        "name", "potential.kind", "potential.q_re", "potential.q_im", "potential.coeffs",
        "potential.samples_file", "initial.kind", "initial.a", "initial.b", "initial.j",
        "initial.samples_file", "time.p", "time.q", "modes", "grid", "outputs", "sweep",
    }  # fmt: skip
    unknown = sorted(set(kv) - known)
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(unknown)}")

    kind = kv.get("potential.kind", "mathieu")
    if kind not in ("mathieu", "fourier", "samples", "zero"):
        raise ConfigError(f"unknown potential kind {kind!r}")
    q = complex(_real(kv.get("potential.q_re", "0")), _real(kv.get("potential.q_im", "0")))
    coeffs = tuple(complex(number(c)) for c in kv.get("potential.coeffs", "").split(",") if c.strip())
    samples = kv.get("potential.samples_file")
    if kind == "samples" and not samples:
        raise ConfigError("potential.kind = samples needs potential.samples_file")
    if kind == "fourier" and not coeffs:
        raise ConfigError("potential.kind = fourier needs potential.coeffs")
    potential = PotentialSpec(kind, q, coeffs, _resolve(samples, base) if samples else None)

    ikind = kv.get("initial.kind", "indicator")
    if ikind not in ("indicator", "sine", "poly", "samples_file"):
        raise ConfigError(f"unknown initial datum {ikind!r}")
    a = _real(kv.get("initial.a", "3*pi/8"))
    b = _real(kv.get("initial.b", "5*pi/8"))
    if ikind == "indicator" and not 0 <= a < b <= math.pi:
        raise ConfigError("indicator bounds must satisfy 0 <= a < b <= pi")
    isamples = kv.get("initial.samples_file")
    if ikind == "samples_file" and not isamples:
        raise ConfigError("initial.kind = samples_file needs initial.samples_file")
    initial = InitialSpec(
        ikind, a, b, _int(kv.get("initial.j", "1")), _resolve(isamples, base) if isamples else None
    )

    try:
        t = RationalTime(_int(kv.get("time.p", "1")), _int(kv.get("time.q", "5")))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    grid = _int(kv.get("grid", str(DEFAULT_GRID)))
    if os.environ.get(GRID_ENV):
        grid = _int(os.environ[GRID_ENV])
    modes = _int(kv.get("modes", "100"))
    if modes < 1:
        raise ConfigError("modes must be positive")
    if grid < 64:
        raise ConfigError("grid must be at least 64")

    outputs = tuple(o.strip() for o in kv.get("outputs", "decomposition_csv").split(",") if o.strip())
    bad = [o for o in outputs if o not in OUTPUTS]
    if bad:
        raise ConfigError(f"unknown outputs: {', '.join(bad)}")
    sweep = tuple(complex(number(s)) for s in kv.get("sweep", "").split(",") if s.strip())

    return ExperimentConfig(
        name=kv.get("name", "experiment"),
        potential=potential,
        initial=initial,
        time=t,
        modes=modes,
        grid=grid,
        outputs=outputs,
        sweep=sweep,
    )


def load(path) -> ExperimentConfig:
    path = Path(path)
    return parse(path.read_text(), base=path.parent)
