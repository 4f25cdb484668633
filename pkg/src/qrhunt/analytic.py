"""Dickman's rho, the explicit inequality for x - ((2x)^b - x^b)/b, and smooth densities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .counting import psi_smooth

DEFAULT_RHO_STEP = 1e-4
DEFAULT_RHO_UMAX = 20.0
E4 = math.exp(4.0)


@dataclass
class RhoEvaluator:
    """Tabulates rho on a uniform grid from u*rho(u) = int_{u-1}^{u} rho(t) dt.

    Trapezoid rule on nodes u_k = k*h, solved for rho_k at each step. The
    window sum is split into a suffix sum over the previous unit interval and
    a running sum over the current one; both add positive terms only, so the
    error stays relative even where rho is ~1e-30. (Forward integration of
    u*rho' = -rho(u-1) leaks absolute error and goes negative near u = 10.)
    1/step must be an integer so that nodes land on every integer.
    """

    step: float = DEFAULT_RHO_STEP
    umax: float = DEFAULT_RHO_UMAX
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.step <= 0 or self.umax < 1:
            raise ValueError("need step > 0 and umax >= 1")
        m = round(1.0 / self.step)
        if m < 1 or abs(m * self.step - 1.0) > 1e-9:
            raise ValueError(f"1/step must be an integer, got step={self.step}")
        units = math.ceil(self.umax - 1e-12)
        self.umax = float(units)
        h = 1.0 / m
        rho = [1.0] * (units * m + 1)
        for j in range(1, units):
            prev = rho[(j - 1) * m : j * m + 1]
            # suffix[i] = sum(prev[i:]), accumulated from the small end
            suffix = [0.0] * (m + 2)
            for i in range(m, -1, -1):
                suffix[i] = suffix[i + 1] + prev[i]
            run = 0.0
            for t in range(1, m + 1):
                k = j * m + t
                # window t+1..m of prev, then the new nodes before k
                inner = suffix[t + 1] + run
                rho[k] = h * (0.5 * prev[t] + inner) / (k * h - 0.5 * h)
                run += rho[k]
        self.grid = np.arange(units * m + 1) / m
        self.values = np.array(rho)

    def __call__(self, u: float) -> float:
        if u < 0:
            raise ValueError("rho is evaluated for u >= 0 only")
        if u > self.umax:
            raise ValueError(f"u={u} beyond the tabulated range {self.umax}")
        return float(np.interp(u, self.grid, self.values))


@lru_cache(maxsize=8)
def rho_evaluator(step: float = DEFAULT_RHO_STEP, umax: float = DEFAULT_RHO_UMAX) -> RhoEvaluator:
    return RhoEvaluator(step, umax)


def dickman_rho(u: float, step: float = DEFAULT_RHO_STEP, umax: float = DEFAULT_RHO_UMAX) -> float:
    return rho_evaluator(step, umax)(u)


@dataclass(frozen=True)
class Lemma6Input:
    x: float
    beta: float

    def __post_init__(self):
        if not self.x > E4:
            raise ValueError(f"x={self.x} must exceed e^4")
        if not 0 < self.beta < 1:
            raise ValueError(f"beta={self.beta} must lie in (0, 1)")

    @property
    def main_case(self) -> bool:
        # slack of a few ulps so beta = 1 - 2/ln x computed in floating point still counts
        return 1 - self.beta <= 2 / math.log(self.x) * (1 + 1e-12)

    @property
    def remark_case(self) -> bool:
        return self.beta >= 0.5


def _lhs(x: float, beta: float) -> float:
    return x - ((2 * x) ** beta - x ** beta) / beta


def lemma6_sides(inp: Lemma6Input) -> tuple[float, float]:
    """(lhs, rhs) of x - ((2x)^b - x^b)/b >= (1-b) x ln x / (4e^2), for 0 < 1-b <= 2/ln x."""
    if not inp.main_case:
        raise ValueError(f"1 - beta = {1 - inp.beta} exceeds 2/ln x = {2 / math.log(inp.x)}")
    x, b = inp.x, inp.beta
    return _lhs(x, b), (1 - b) * x * math.log(x) / (4 * math.e ** 2)


def remark_sides(inp: Lemma6Input) -> tuple[float, float]:
    """(lhs, rhs) of x - ((2x)^b - x^b)/b >= (1-b) x / e^2, valid for 1/2 <= b < 1."""
    if not inp.remark_case:
        raise ValueError(f"beta={inp.beta} is below 1/2")
    x, b = inp.x, inp.beta
    return _lhs(x, b), (1 - b) * x / math.e ** 2


def sweep_x_grid(n: int = 200, xmax: float = 1e8) -> np.ndarray:
    """n log-spaced points in (e^4, xmax]."""
    return np.exp(np.linspace(4.0, math.log(xmax), n + 1)[1:])


def lemma6_sweep(n_x: int = 200, n_beta: int = 50, xmax: float = 1e8) -> list[tuple[float, float, float, float, float]]:
    """Rows (x, beta, lhs, rhs, margin) with 1 - beta = (k/n_beta) * 2/ln x, k = 1..n_beta."""
    rows = []
    for x in sweep_x_grid(n_x, xmax).tolist():
        width = 2 / math.log(x)
        for k in range(1, n_beta + 1):
            beta = 1 - width * k / n_beta
            lhs, rhs = lemma6_sides(Lemma6Input(x, beta))
            rows.append((x, beta, lhs, rhs, lhs - rhs))
    return rows


def remark_sweep(n_x: int = 200, n_beta: int = 50, xmax: float = 1e8) -> list[tuple[float, float, float, float, float]]:
    """Rows (x, beta, lhs, rhs, margin) for beta evenly spaced over [1/2, 1 - 2/ln x]."""
    rows = []
    for x in sweep_x_grid(n_x, xmax).tolist():
        for beta in np.linspace(0.5, 1 - 2 / math.log(x), n_beta).tolist():
            lhs, rhs = remark_sides(Lemma6Input(x, beta))
            rows.append((x, beta, lhs, rhs, lhs - rhs))
    return rows


def smooth_density_report(A: float, N: int, M: int, step: float = DEFAULT_RHO_STEP) -> dict:
    """Compare Psi(N, M) with rho(u) N at the actual u = ln N / ln M. Asserts nothing."""
    if A < 1:
        raise ValueError("A must be at least 1")
    if N < 1 or M < 2:
        raise ValueError("need N >= 1 and M >= 2")
    psi = psi_smooth(N, M)
    u = max(math.log(N) / math.log(M), 0.0)
    prediction = dickman_rho(u, step, max(DEFAULT_RHO_UMAX, math.ceil(u))) * N
    out = {"N": N, "M": M, "u": u, "psi": psi, "rho_prediction": prediction, "ratio": psi / prediction}
    if A > 1:
        out["exp_bound"] = math.exp(-3 * A * (math.log(3 * A) + math.log(math.log(A)))) * N
    return out
