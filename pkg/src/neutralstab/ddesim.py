"""Fixed-step simulation of a neutral system at a concrete delay.

The explicit form ``x' = A0 x + sum A_k x(t - k tau) + sum B_k x'(t - k tau)``
is integrated by the classical fourth-order Runge-Kutta method on a grid
whose step divides ``tau``.  State and derivative are stored on the grid:
delayed values at grid points are read directly and half-step values come
from cubic Hermite interpolation over the stored interval.  The derivative
may jump at multiples of ``tau``, so both one-sided limits are kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError
from .stability import NeutralSystem

OVERFLOW = 1e12
UNDERFLOW = 1e-250
RATE_THRESHOLD = 1e-3


@dataclass(frozen=True)
class SimConfig:
    """``tau``, ``step`` (dividing ``tau``), ``horizon`` and the initial function.

    ``history`` is a constant vector or a callable ``t -> x(t)`` on
    ``[-N tau, 0]``.  A constant history has zero derivative; a callable may
    come with ``history_derivative``, otherwise its derivative is taken by
    central differences.
    """

    tau: float
    step: float | None = None
    horizon: float | None = None
    history: Sequence[float] | Callable | None = None
    history_derivative: Callable | None = None

    def resolved(self) -> "SimConfig":
        tau = float(self.tau)
        if not (tau > 0 and math.isfinite(tau)):
            raise ConfigError("tau must be positive")
        step = float(self.step) if self.step is not None else tau / max(20, math.ceil(tau / 0.01))
        if step <= 0:
            raise ConfigError("step must be positive")
        ratio = tau / step
        if abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ConfigError(f"step {step} does not divide tau {tau}")
        if round(ratio) < 20:
            raise ConfigError("step must be at most tau/20")
        step = tau / round(ratio)
        horizon = float(self.horizon) if self.horizon is not None else max(20 * tau, 80.0)
        if horizon < 20 * tau * (1 - 1e-12):
            raise ConfigError("horizon must be at least 20*tau")
        return SimConfig(tau, step, horizon, self.history, self.history_derivative)

    @property
    def per_delay(self) -> int:
        return round(self.tau / self.step)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    derivatives: np.ndarray
    growth_rate: float
    overflowed: bool = False
    stopped_early: bool = False

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)


def _history_arrays(sys: NeutralSystem, cfg: SimConfig, M: int):
    n, N, h = sys.n, sys.N, cfg.step
    times = (np.arange(N * M + 1) - N * M) * h
    hist = cfg.history
    if hist is None:
        hist = np.ones(n)
    if callable(hist):
        xs = np.array([np.asarray(hist(t), dtype=float).reshape(n) for t in times])
        if cfg.history_derivative is not None:
            ds = np.array([np.asarray(cfg.history_derivative(t), dtype=float).reshape(n) for t in times])
        else:
            eps = 1e-6 * max(1.0, cfg.tau)
            ds = np.array(
                [(np.asarray(hist(t + eps), dtype=float) - np.asarray(hist(t - eps), dtype=float)).reshape(n) / (2 * eps)
                 for t in times]
            )
    else:
        x0 = np.asarray(hist, dtype=float).reshape(-1)
        if x0.size != n:
            raise ConfigError(f"history must have {n} components")
        xs = np.tile(x0, (len(times), 1))
        ds = np.zeros_like(xs)
    return xs, ds


def simulate(sys: NeutralSystem, cfg: SimConfig) -> Trajectory:
    cfg = cfg.resolved()
    n, N, h = sys.n, sys.N, cfg.step
    M = cfg.per_delay
    steps = int(round(cfg.horizon / h))
    off = N * M
    total = off + steps + 1

    X = np.zeros((total, n))
    Dp = np.zeros((total, n))  # right limits x'(t+)
    Dm = np.zeros((total, n))  # left limits x'(t-)
    hx, hd = _history_arrays(sys, cfg, M)
    X[: off + 1] = hx
    Dp[: off + 1] = hd
    Dm[: off + 1] = hd

    big = np.hstack(
        [np.array(sys.A0, dtype=float)]
        + [np.array(a, dtype=float) for a in sys.A]
        + [np.array(b, dtype=float) for b in sys.B]
    )
    lags = [k * M for k in range(1, N + 1)]

    def rhs(x, xd, dd):
        return big @ np.concatenate([x] + xd + dd)

    def at_grid(j, D):
        return [X[j - l] for l in lags], [D[j - l] for l in lags]

    def at_mid(j):
        # Hermite interpolation over [j - l, j - l + 1] at its midpoint
        xs, ds = [], []
        for l in lags:
            a = j - l
            x0, x1, d0, d1 = X[a], X[a + 1], Dp[a], Dm[a + 1]
            xs.append(0.5 * (x0 + x1) + h * (d0 - d1) / 8.0)
            ds.append(1.5 * (x1 - x0) / h - 0.25 * (d0 + d1))
        return xs, ds

    xd, dd = at_grid(off, Dp)
    Dp[off] = rhs(X[off], xd, dd)
    overflowed = stopped = False
    last = off
    for i in range(off, off + steps):
        x = X[i]
        xd0, dd0 = at_grid(i, Dp)
        k1 = Dp[i]
        xdm, ddm = at_mid(i)
        k2 = rhs(x + 0.5 * h * k1, xdm, ddm)
        k3 = rhs(x + 0.5 * h * k2, xdm, ddm)
        xd1, dd1 = at_grid(i + 1, Dm)
        k4 = rhs(x + h * k3, xd1, dd1)
        x1 = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        X[i + 1] = x1
        Dm[i + 1] = rhs(x1, xd1, dd1)
        xd1p, dd1p = at_grid(i + 1, Dp)
        Dp[i + 1] = rhs(x1, xd1p, dd1p)
        last = i + 1
        nrm = float(np.linalg.norm(x1))
        if not math.isfinite(nrm) or nrm > OVERFLOW:
            overflowed = stopped = True
            break
        if nrm < UNDERFLOW:
            stopped = True
            break

    times = (np.arange(off, last + 1) - off) * h
    states = X[off : last + 1].copy()
    derivs = Dp[off : last + 1].copy()
    return Trajectory(times, states, derivs, growth_rate(times, states), overflowed, stopped)


def growth_rate(times: np.ndarray, states: np.ndarray) -> float:
    """Least-squares slope of ``log ||x||`` over the final third of the samples."""
    k = len(times)
    if k < 3:
        return 0.0
    start = (2 * k) // 3
    t = times[start:]
    norms = np.linalg.norm(states[start:], axis=1)
    logs = np.log(np.maximum(norms, 1e-300))
    slope, _ = np.polyfit(t, logs, 1)
    return float(slope)


def classify(rate: float, threshold: float = RATE_THRESHOLD) -> str:
    if rate < -threshold:
        return "decaying"
    if rate > threshold:
        return "growing"
    return "inconclusive"


def empirical_stability(sys: NeutralSystem, tau: float, **cfg) -> str:
    """``"decaying"``, ``"growing"`` or ``"inconclusive"`` from a simulation at ``tau``."""
    traj = simulate(sys, SimConfig(tau, **cfg))
    if traj.overflowed:
        return "growing"
    return classify(traj.growth_rate)
