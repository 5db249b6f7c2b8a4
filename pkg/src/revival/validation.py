"""Acceptance checks, grouped into suites for ``revival validate``.

Each check computes its measured values, compares them with fixed thresholds
and returns a ``Check``.  The pytest acceptance module calls the same
functions, so the command line and the test suite agree by construction.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import biortho, data, evolution, mathieu, spectral
from .diagnostics import continuity_report, jump_ratio, zone_centres
from .grid import GridFunction, l2_norm, nodes
from .potential import Potential
from .revivals import RationalTime, gauss_sum, odd_periodic_extension, revival_superposition
from .spectral import HypothesisWarning


@dataclass
class Check:
    key: str
    title: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        vals = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        extra = f" [{self.note}]" if self.note else ""
        return f"[{status}] {self.key} {self.title}: {vals} ({self.seconds:.2f} s){extra}"


def _fmt(v):
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, (float, np.floating)):
        return f"{v:.3g}"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        check = fn(*args, **kwargs)
        check.seconds = time.perf_counter() - start
        limit = check.measured.pop("_time_limit", None)
        if limit is not None:
            check.measured["time_limit_s"] = limit
            check.passed = check.passed and check.seconds < limit
        return check

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _step_tail_norm(N: int, a: float, b: float, J: int = 4_000_000) -> float:
    """||chi_[a,b] - its N-mode sine truncation||_2 from the exact coefficients."""
    j = np.arange(N + 1, J + 1, dtype=float)
    c2 = (2.0 / np.pi) * ((np.cos(j * a) - np.cos(j * b)) / j) ** 2
    # beyond J the squared coefficients average (2/pi) / j^2
    return float(np.sqrt(np.sum(c2) + (2.0 / np.pi) / J))


# --- criteria -------------------------------------------------------------


@_timed
def gauss_oracle(qmax: int = 50) -> Check:
    """C1: the exponential sum equals q on the residue class of m and 0 off it."""
    worst = 0.0
    for q in range(1, qmax + 1):
        for m in range(q):
            for j in range(q):
                exact = q if (j - m) % q == 0 else 0
                worst = max(worst, abs(gauss_sum(m, j, q) - exact))
    return Check("C1", "Gauss-sum oracle", worst < 1e-9, {"max_err": worst, "_time_limit": 1.0})


@_timed
def free_revival_identity() -> Check:
    """C2: the N-mode free evolution approaches the Gauss-sum field at t = 2 pi / 5."""
    M = 40960
    t = RationalTime(1, 5)
    f = data.step_datum(M)
    revival = revival_superposition(f, t)
    Ns = [250, 500, 1000, 2000, 5000, 10000]
    dist = {N: l2_norm(evolution.free_evolution(f, t, N) - revival) for N in Ns}
    a, b = 3 * np.pi / 8, 5 * np.pi / 8
    oracle = {N: _step_tail_norm(N, a, b) for N in (2000, 10000)}
    decreasing = all(dist[n1] > dist[n2] for n1, n2 in zip(Ns, Ns[1:]))
    agree = all(abs(dist[N] - oracle[N]) < 0.1 * oracle[N] for N in oracle)
    passed = decreasing and agree and dist[2000] < 0.05 and dist[10000] < 0.02
    return Check(
        "C2",
        "free revival identity",
        passed,
        {
            "L2@2000": dist[2000],
            "L2@10000": dist[10000],
            "series_tail@2000": oracle[2000],
            "series_tail@10000": oracle[10000],
            "decreasing": decreasing,
            "_time_limit": 30.0,
        },
    )


@_timed
def full_period_revival() -> Check:
    """C3: exact revival at t = 2 pi for the Gauss sum and the truncated series."""
    M, N = 4096, 500
    f = data.step_datum(M)
    exact = float(np.max(np.abs(revival_superposition(f, RationalTime(1, 1)).values - f.values)))
    trunc = evolution.truncate(f, N)
    # the float 2 pi is recognised as the rational time 1/1
    free = evolution.free_evolution(f, 2 * np.pi, N)
    series = float(np.max(np.abs(free.values - trunc.values)))
    return Check(
        "C3",
        "exact revival at t = 2 pi",
        exact == 0.0 and series < 1e-12,
        {"gauss_sum_err": exact, "series_err": series},
    )


@_timed
def half_period_mirror() -> Check:
    """C4: the t = pi field is f_odd(x - pi)."""
    M = 4096
    x = nodes(M)
    err = 0.0
    for f in (data.step_datum(M), data.poly(M), GridFunction(np.exp(1j * x) * x)):
        r = revival_superposition(f, RationalTime(1, 2))
        err = max(err, float(np.max(np.abs(r.values - odd_periodic_extension(f, x - np.pi)))))
    return Check("C4", "half-period mirror", err < 1e-12, {"max_err": err})


@_timed
def free_spectrum() -> Check:
    """C5: V = 0 eigenvalues j^2 and eigenfunctions sin(jx)."""
    M, N = 4096, 100
    pairs = spectral.eigen_sweep(Potential.zero(), N, M)
    x = nodes(M)
    lam_err = max(abs(p.lam - p.index**2) for p in pairs)
    fun_err = 0.0
    for p in pairs:
        y = p.eigenfunction.values / l2_norm(p.eigenfunction)
        d = np.sqrt(2 / np.pi) * np.sin(p.index * x)
        y = y * (abs(np.vdot(d, y)) / np.vdot(d, y))
        fun_err = max(fun_err, float(np.max(np.abs(y - d))))
    return Check(
        "C5",
        "free spectral oracle",
        lam_err < 1e-8 and fun_err < 1e-7,
        {"max_lambda_err": lam_err, "max_eigenfunction_err": fun_err, "_time_limit": 60.0},
    )


@_timed
def mathieu_cross_solver() -> Check:
    """C6: shooting and the sine-matrix method agree for q = i/4, j <= 20."""
    q, N = 0.25j, 20
    pairs = spectral.eigen_sweep(Potential.mathieu(q), N, 4096)
    ref = mathieu.characteristic_values(q, N)
    err = max(abs(p.lam - ref.values[p.index - 1]) for p in pairs)
    return Check("C6", "Mathieu cross-solver agreement", err < 1e-6, {"max_diff": err, "_time_limit": 120.0})


@_timed
def mathieu_perturbation() -> Check:
    """C7: b_j(q) - j^2 - q^2/(2(j^2-1)) = O(q^4) for q in {0.05, 0.1, 0.2}, j = 2..6.

    The constant C is fitted as the smallest value valid at the largest q,
    where higher-order terms are largest, and must then bound every smaller q.
    """
    qs = (0.05, 0.1, 0.2)
    js = range(2, 7)
    ratio = {(q, j): mathieu.perturbation_residual(q, j) / q**4 for q in qs for j in js}
    C = max(ratio[(qs[-1], j)] for j in js)
    violators = sorted({j for (q, j), r in ratio.items() if r > C * (1 + 1e-9)})
    b3 = mathieu.characteristic_values(0.1, 3).values[2]
    value_ok = abs(b3 - 9.000625) < 1e-4
    per_j = {j: max(ratio[(q, j)] for q in qs) / min(ratio[(q, j)] for q in qs) for j in js}
    return Check(
        "C7",
        "Mathieu perturbation series",
        not violators and value_ok,
        {
            "fitted_C": C,
            "j_violating": violators or "none",
            "ratio_spread_per_j": per_j,
            "b3(0.1)": f"{b3.real:.9f}",
            "b3_err": float(abs(b3 - 9.000625)),
        },
        note="spread = max/min of residual/q^4 over q; ~1 means O(q^4)",
    )


@_timed
def eigenvalue_decay() -> Check:
    """C8: |w_j - j| j^3 bounded over j = 10..40 for q = i/4."""
    pairs = spectral.eigen_sweep(Potential.mathieu(0.25j), 40, 4096)
    s = np.array([abs(spectral.omega_minus_index(p)) * p.index**3 for p in pairs[9:40]])
    spread = float(s.max() / np.median(s))
    return Check(
        "C8",
        "eigenvalue decay law",
        spread < 5,
        {"max_over_median": spread, "median_j3_dev": float(np.median(s))},
    )


@_timed
def biorthogonality() -> Check:
    """C9: gram defect of the L / L* system for q = i/4, N = 50."""
    system = biortho.build_system(Potential.mathieu(0.25j), 50, 4096)
    return Check("C9", "bi-orthogonality", system.gram_defect < 1e-6, {"gram_defect": system.gram_defect})


def step_potential(M: int = 4096) -> Potential:
    """Real BV potential: 1 on [pi/4, pi/2], -1/2 on [3pi/4, pi], 0 elsewhere."""
    x = nodes(M)
    eps = 1e-12
    v = np.where((x >= np.pi / 4 - eps) & (x <= np.pi / 2 + eps), 1.0, 0.0)
    v = np.where(x >= 3 * np.pi / 4 - eps, -0.5, v)
    return Potential.samples(x, v.astype(complex), grid=M)


@_timed
def selfadjoint_conservation() -> Check:
    """C10: the L2 norm is conserved for a real step potential."""
    M, N = 4096, 100
    V = step_potential(M)
    pairs, system = biortho.solve(V, N, M)
    f = data.poly(M)
    norms = [l2_norm(evolution.evolve(system, pairs, f, t)) for t in (0.0, 0.5, 2 * np.pi / 5, 2 * np.pi)]
    drift = float(np.ptp(norms))
    return Check(
        "C10",
        "self-adjoint conservation",
        drift < 1e-6,
        {"norm_drift": drift, "sup_norm_V": V.sup_norm, "norm": norms[0]},
    )


def _decomposition(q: complex, M: int, N: int = 100, t: RationalTime = RationalTime(1, 5)):
    V = Potential.mathieu(q, grid=M)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        pairs, system = biortho.solve(V, N, M)
    return evolution.decompose_at_rational_time(V, system, pairs, data.step_datum(M), t)


def theorem_diagnostics(q: complex, N: int = 100, M: int = 4096):
    """Jump ratio and refinement ratio of w for the Mathieu experiment."""
    coarse = _decomposition(q, M, N)
    fine = _decomposition(q, 2 * M, N)
    ratio = jump_ratio(coarse)
    report = continuity_report(
        coarse.correction, fine.correction, zone_centres(coarse.initial, coarse.time), N
    )
    return ratio, report


@_timed
def theorem_certification() -> Check:
    """C11: w is continuous at desk scale; hard thresholds for q = i/4, i/2 only."""
    measured = {}
    passed = True
    for q, hard in ((0.25j, True), (0.5j, True), (0.75j, False), (1j, False)):
        ratio, report = theorem_diagnostics(q)
        tag = f"q={q.imag:g}i"
        measured[tag] = {"jump_ratio": ratio, "refinement": report.refinement_ratio}
        if hard:
            passed = passed and ratio < 0.1 and report.refinement_ratio > 1.5
    return Check(
        "C11",
        "weak revival certification",
        passed,
        measured,
        note="q=0.75i and q=i are advisory",
    )


@_timed
def mean_shift_covariance() -> Check:
    """C12: V + c multiplies the solution and the revival field by exp(-i c t)."""
    M, N = 4096, 50
    c = 0.3 + 0.1j
    t = RationalTime(1, 5)
    f = data.step_datum(M)
    V = Potential.mathieu(0.25j, grid=M)
    W = V.shifted(c)
    pv, sv = biortho.solve(V, N, M)
    pw, sw = biortho.solve(W, N, M)
    err = 0.0
    for time_ in (0.5, t.value):
        uv = evolution.evolve(sv, pv, f, time_)
        uw = evolution.evolve(sw, pw, f, time_)
        err = max(err, float(np.max(np.abs(uw.values - np.exp(-1j * c * time_) * uv.values))))
    r0 = revival_superposition(f, t, 0.0)
    rc = revival_superposition(f, t, W.mean)
    phase_err = float(np.max(np.abs(rc.values - np.exp(-1j * W.mean * t.value) * r0.values)))
    return Check(
        "C12",
        "mean-shift covariance",
        err < 1e-8 and phase_err < 1e-14,
        {"evolve_err": err, "revival_phase_err": phase_err},
    )


SUITES = {
    "gauss": [gauss_oracle, half_period_mirror],
    "free": [free_revival_identity, full_period_revival, free_spectrum],
    "mathieu": [mathieu_cross_solver, mathieu_perturbation, eigenvalue_decay],
    "biortho": [biorthogonality],
    "selfadjoint": [selfadjoint_conservation],
    "theorem": [theorem_certification, mean_shift_covariance],
}

ALL = [
    gauss_oracle,
    free_revival_identity,
    full_period_revival,
    half_period_mirror,
    free_spectrum,
    mathieu_cross_solver,
    mathieu_perturbation,
    eigenvalue_decay,
    biorthogonality,
    selfadjoint_conservation,
    theorem_certification,
    mean_shift_covariance,
]


def run_suite(name: str, echo=print) -> list[Check]:
    checks = ALL if name == "all" else SUITES[name]
    results = []
    for fn in checks:
        result = fn()
        echo(result.line())
        results.append(result)
    return results
