"""Potentials V on [0, pi] and the integrals that enter the eigenpair asymptotics.

Three representations are supported:

* ``mathieu``: V(x) = 2 q cos(2x) with complex q,
* ``fourier``: a finite series sum a_n cos(nx) + sum b_n sin(nx),
* ``samples``: tabulated values, linearly interpolated.

The first two are evaluated in closed form and integrated with composite
Simpson; tabulated data are integrated exactly as a piecewise-linear function.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .grid import GridFunction, nodes, simpson_weights

DEFAULT_GRID = 4096
_EDGE_TOL = 1e-12


class DomainError(ValueError):
    """A point outside [0, pi] (or outside the tabulated range) was requested."""


class ApproximationWarning(UserWarning):
    """A derived quantity was computed from data too rough for its quadrature."""


def _as_points(x):
    xs = np.asarray(x, dtype=float)
    return xs, xs.ndim == 0


@dataclass(frozen=True, eq=False)
class Potential:
    kind: str
    qcoef: complex = 0j
    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()
    sample_x: np.ndarray | None = field(default=None, repr=False)
    sample_values: np.ndarray | None = field(default=None, repr=False)
    grid: int = DEFAULT_GRID

    def __post_init__(self):
        if self.kind not in ("mathieu", "fourier", "samples"):
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.grid < 2 or self.grid % 2:
            raise ValueError("the quadrature grid needs an even number of intervals")
        if self.kind == "samples":
            xs = np.asarray(self.sample_x, dtype=float)
            vs = np.asarray(self.sample_values, dtype=complex)
            if xs.ndim != 1 or xs.shape != vs.shape or xs.size < 2:
                raise ValueError("sample abscissae and values must be 1-d and equally long")
            if np.any(np.diff(xs) <= 0):
                raise ValueError("sample abscissae must be strictly increasing")
            object.__setattr__(self, "sample_x", xs)
            object.__setattr__(self, "sample_values", vs)

    # constructors

    @classmethod
    def mathieu(cls, q: complex, grid: int = DEFAULT_GRID) -> "Potential":
        return cls("mathieu", qcoef=complex(q), grid=grid)

    @classmethod
    def fourier(cls, cos=(), sin=(), grid: int = DEFAULT_GRID) -> "Potential":
        """sum_n cos[n] cos(nx) + sum_n sin[n-1] sin(nx); cos[0] is the constant term."""
        return cls(
            "fourier",
            cos_coeffs=tuple(complex(c) for c in cos),
            sin_coeffs=tuple(complex(c) for c in sin),
            grid=grid,
        )

    @classmethod
    def constant(cls, c: complex, grid: int = DEFAULT_GRID) -> "Potential":
        return cls.fourier(cos=(c,), grid=grid)

    @classmethod
    def zero(cls, grid: int = DEFAULT_GRID) -> "Potential":
        return cls.mathieu(0.0, grid=grid)

    @classmethod
    def samples(cls, x, values=None, grid: int = DEFAULT_GRID) -> "Potential":
        """Tabulated potential; ``x`` may be a GridFunction carrying its own nodes."""
        if isinstance(x, GridFunction):
            values, x = x.values, x.x
        return cls("samples", sample_x=x, sample_values=values, grid=grid)

    # evaluation

    def _check_domain(self, xs: np.ndarray) -> None:
        lo, hi = 0.0, np.pi
        if self.kind == "samples":
            lo, hi = max(lo, self.sample_x[0]), min(hi, self.sample_x[-1])
        if xs.size and (np.min(xs) < lo - _EDGE_TOL or np.max(xs) > hi + _EDGE_TOL):
            raise DomainError(f"potential evaluated outside [{lo:.6g}, {hi:.6g}]")

    def _raw(self, xs: np.ndarray) -> np.ndarray:
        if self.kind == "mathieu":
            return 2.0 * self.qcoef * np.cos(2.0 * xs)
        if self.kind == "fourier":
            out = np.zeros(xs.shape, dtype=complex)
            for n, a in enumerate(self.cos_coeffs):
                if a:
                    out += a * np.cos(n * xs)
            for n, b in enumerate(self.sin_coeffs, start=1):
                if b:
                    out += b * np.sin(n * xs)
            return out
        sx, sv = self.sample_x, self.sample_values
        return np.interp(xs, sx, sv.real) + 1j * np.interp(xs, sx, sv.imag)

    def evaluate(self, x):
        """V(x) for a point or an array of points in [0, pi]."""
        xs, scalar = _as_points(x)
        self._check_domain(xs)
        out = self._raw(xs)
        return complex(out) if scalar else out

    __call__ = evaluate

    def on_grid(self, M: int | None = None) -> GridFunction:
        return GridFunction(self._raw(nodes(M or self.grid)))

    # derived potentials

    def conj(self) -> "Potential":
        """The potential of the adjoint operator, conj(V)."""
        if self.kind == "mathieu":
            return Potential.mathieu(np.conj(self.qcoef), grid=self.grid)
        if self.kind == "fourier":
            return Potential.fourier(
                np.conj(self.cos_coeffs), np.conj(self.sin_coeffs), grid=self.grid
            )
        return Potential.samples(self.sample_x, np.conj(self.sample_values), grid=self.grid)

    def shifted(self, c: complex) -> "Potential":
        """V + c."""
        c = complex(c)
        if self.kind == "mathieu":
            return Potential.fourier(cos=(c, 0.0, 2.0 * self.qcoef), grid=self.grid)
        if self.kind == "fourier":
            cos = list(self.cos_coeffs) or [0j]
            cos[0] += c
            return Potential.fourier(cos, self.sin_coeffs, grid=self.grid)
        return Potential.samples(self.sample_x, self.sample_values + c, grid=self.grid)

    def centered(self) -> "Potential":
        """V - <V>; a Mathieu potential is returned unchanged."""
        if self.kind == "mathieu":
            return self
        return self.shifted(-self.mean)

    # cached integrals

    @cached_property
    def mean(self) -> complex:
        """<V> = (1/pi) int_0^pi V."""
        if self.kind == "mathieu":
            return 0j
        if self.kind == "samples":
            sx, sv = self.sample_x, self.sample_values
            if sx[0] > _EDGE_TOL or sx[-1] < np.pi - _EDGE_TOL:
                raise DomainError("tabulated potential must cover [0, pi]")
            return complex(np.sum(0.5 * (sv[1:] + sv[:-1]) * np.diff(sx)) / np.pi)
        v = self._raw(nodes(self.grid))
        return complex(np.sum(simpson_weights(self.grid) * v) / np.pi)

    @cached_property
    def sup_norm(self) -> float:
        """max |V| over the quadrature grid (and the samples, when tabulated)."""
        s = float(np.max(np.abs(self._raw(nodes(self.grid)))))
        if self.kind == "samples":
            s = max(s, float(np.max(np.abs(self.sample_values))))
        return s

    @cached_property
    def _fine(self):
        """V, V1 and V*V1 on the half-step grid, plus cumulative integrals at nodes."""
        M = self.grid
        xf = np.linspace(0.0, np.pi, 2 * M + 1)
        v = self._raw(xf)
        eta = np.pi / (2 * M)
        # V1 at nodes: Simpson on each [x_i, x_{i+1}] using its midpoint
        panel = eta / 3.0 * (v[0:-1:2] + 4.0 * v[1::2] + v[2::2])
        v1 = np.empty(2 * M + 1, dtype=complex)
        v1[0::2] = np.concatenate([[0j], np.cumsum(panel)])
        # V1 at midpoints: quadratic through the three samples of the panel
        v1[1::2] = v1[0:-1:2] + eta / 12.0 * (5.0 * v[0:-1:2] + 8.0 * v[1::2] - v[2::2])
        vv1 = v * v1
        panel2 = eta / 3.0 * (vv1[0:-1:2] + 4.0 * vv1[1::2] + vv1[2::2])
        g = np.concatenate([[0j], np.cumsum(panel2)])
        return v1[0::2], g

    def _locate(self, xs: np.ndarray):
        h = np.pi / self.grid
        i = np.clip(np.floor(xs / h).astype(int), 0, self.grid - 1)
        return i, i * h

    # antiderivatives

    def V1(self, x):
        """int_0^x V(s) ds."""
        xs, scalar = _as_points(x)
        self._check_domain(xs)
        if self.kind == "samples":
            out = self._samples_V1(xs)
        else:
            cum, _ = self._fine
            i, xi = self._locate(xs)
            d = xs - xi
            out = cum[i] + d / 6.0 * (
                self._raw(xi) + 4.0 * self._raw(xi + 0.5 * d) + self._raw(xs)
            )
            out = np.where(xs == 0.0, 0j, out)
        return complex(out) if scalar else out

    def _samples_V1(self, xs: np.ndarray) -> np.ndarray:
        sx, sv = self.sample_x, self.sample_values
        if sx[0] > _EDGE_TOL:
            raise DomainError("tabulated potential must start at x = 0")
        cum = np.concatenate([[0j], np.cumsum(0.5 * (sv[1:] + sv[:-1]) * np.diff(sx))])
        i = np.clip(np.searchsorted(sx, xs, side="right") - 1, 0, sx.size - 2)
        d = xs - sx[i]
        vx = self._raw(xs)
        return cum[i] + 0.5 * d * (sv[i] + vx)

    def V2(self, x):
        """int_0^x V V1 ds - V(x) + V(0).

        Only meaningful for continuous V; for tabulated data the value is a
        best-effort quadrature and an ApproximationWarning is issued.
        """
        xs, scalar = _as_points(x)
        self._check_domain(xs)
        if self.kind == "samples":
            warnings.warn(
                "V2 of tabulated data is a best-effort quadrature value",
                ApproximationWarning,
                stacklevel=2,
            )
            fine = np.union1d(nodes(self.grid), self.sample_x)
            prod = self._raw(fine) * self._samples_V1(fine)
            cum = np.concatenate(
                [[0j], np.cumsum(0.5 * (prod[1:] + prod[:-1]) * np.diff(fine))]
            )
            integral = np.interp(xs, fine, cum.real) + 1j * np.interp(xs, fine, cum.imag)
        else:
            _, g = self._fine
            i, xi = self._locate(xs)
            d = xs - xi
            mid = xi + 0.5 * d

            def vv1(p):
                return self._raw(p) * self.V1(p)

            integral = g[i] + d / 6.0 * (vv1(xi) + 4.0 * vv1(mid) + vv1(xs))
        out = integral - self._raw(xs) + self._raw(np.zeros(1))[0]
        out = np.where(xs == 0.0, 0j, out)
        return complex(out) if scalar else out

    def V1_grid(self, M: int | None = None) -> GridFunction:
        return GridFunction(self.V1(nodes(M or self.grid)))


def load_samples_csv(path, grid: int = DEFAULT_GRID) -> Potential:
    """Read a tabulated potential from CSV rows ``x,re,im``."""
    data = np.loadtxt(path, delimiter=",", ndmin=2, comments="#")
    if data.shape[1] != 3:
        raise ValueError(f"{path}: expected three columns x,re,im")
    return Potential.samples(data[:, 0], data[:, 1] + 1j * data[:, 2], grid=grid)
