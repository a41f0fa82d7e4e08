"""Independent verification of concentrated-mass solutions against the
generalized jump relations.

The jump relations form an ODE system for the discontinuity position x(t),
the concentrated weight w(t) and the moments w*u and w*g. Forward integration
from t = 0 is ill-posed (the speed wu/w is undefined while w = 0), so this
module verifies sampled trajectories instead: algebraically against the
integrated relations, and by central differences against the differential
ones. Nothing here reuses the closed-form solution path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Params, State, bracket, flux
from .errors import SingularAtOrigin
from .exact import DeltaShockSolution


@dataclass(frozen=True)
class GrhTrajectory:
    """Sampled discontinuity trajectory: position x, weight w and the moments
    wu = w * u_delta and wg = w * g at increasing times >= 0."""

    times: np.ndarray
    x: np.ndarray
    w: np.ndarray
    wu: np.ndarray
    wg: np.ndarray

    def __post_init__(self):
        for name in ("times", "x", "w", "wu", "wg"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.times.ndim != 1 or any(
            getattr(self, name).shape != self.times.shape for name in ("x", "w", "wu", "wg")
        ):
            raise ValueError("trajectory arrays must share one 1-d shape")
        if np.any(self.times < 0.0) or np.any(np.diff(self.times) <= 0.0):
            raise ValueError("times must be non-negative and strictly increasing")


def default_times(t_final: float) -> np.ndarray:
    """Geometric sample times 1e-3 * 2^k, k = 0..10, capped at t_final."""
    ts = 1e-3 * 2.0 ** np.arange(11)
    ts = ts[ts < t_final]
    return np.append(ts, t_final)


def trajectory_from_solution(sol: DeltaShockSolution, times) -> GrhTrajectory:
    """Sample the closed-form trajectory x = u_delta*t, w = w_rate*t."""
    t = np.asarray(times, dtype=float)
    return GrhTrajectory(
        times=t,
        x=sol.u_delta * t,
        w=sol.w_rate * t,
        wu=sol.w_rate * sol.u_delta * t,
        wg=sol.w_rate * sol.g * t,
    )


def _brackets(Ul: State, Ur: State, p: Params) -> tuple[float, float, float, float, float]:
    fl, fr = flux(Ul, p), flux(Ur, p)
    return (
        bracket(Ul.rho, Ur.rho),
        bracket(fl[0], fr[0]),
        bracket(fl[1], fr[1]),
        bracket(Ul.rho * Ul.v, Ur.rho * Ur.v),
        bracket(fl[2], fr[2]),
    )


def verify_integrated(traj: GrhTrajectory, Ul: State, Ur: State, p: Params) -> float:
    """Largest scaled residual of the integrated jump relations

        w  + [rho]   x - [rho u]           t = 0
        wu + [rho u] x - [rho u^2 + s^2 v] t = 0
        wg + [rho v] x - [rho u v + u]     t = 0

    over all samples; each relation is scaled by max(1, |t| * bracket size).
    """
    br, bru, brf, brv, bq = _brackets(Ul, Ur, p)
    t = traj.times
    worst = 0.0
    for lhs, a, b in (
        (traj.w, br, bru),
        (traj.wu, bru, brf),
        (traj.wg, brv, bq),
    ):
        res = np.abs(lhs + a * traj.x - b * t)
        scale = np.maximum(1.0, np.abs(t) * max(abs(a), abs(b)))
        worst = max(worst, float(np.max(res / scale)))
    return worst


def verify_derivatives(
    traj: GrhTrajectory, Ul: State, Ur: State, p: Params, h: float = 1e-4
) -> float:
    """Largest scaled residual of the differential jump relations

        x'    = u          (u recovered as wu/w)
        w'    = -[rho] u    + [rho u]
        (wu)' = -[rho u] u  + [rho u^2 + s^2 v]
        (wg)' = -[rho v] u  + [rho u v + u]

    with derivatives approximated by central differences of step h on the
    piecewise-linear interpolant of the samples. Raises SingularAtOrigin when
    an evaluation point has vanishing weight.
    """
    if h <= 0.0:
        raise ValueError("central-difference step h must be positive")
    t = traj.times
    eval_mask = (t - h >= t[0] - 1e-15) & (t + h <= t[-1] + 1e-15)
    te = t[eval_mask]
    if te.size == 0:
        raise ValueError("no sample admits a centered stencil; reduce h")

    w_at = np.interp(te, t, traj.w)
    wu_at = np.interp(te, t, traj.wu)
    if np.any(np.abs(w_at) <= 1e-14):
        raise SingularAtOrigin("weight vanishes at an evaluation time")
    u_hat = wu_at / w_at

    def ddt(y: np.ndarray) -> np.ndarray:
        return (np.interp(te + h, t, y) - np.interp(te - h, t, y)) / (2.0 * h)

    br, bru, brf, brv, bq = _brackets(Ul, Ur, p)
    worst = 0.0
    for y, a, b in ((traj.x, None, None), (traj.w, br, bru), (traj.wu, bru, brf), (traj.wg, brv, bq)):
        if a is None:
            rhs = u_hat
        else:
            rhs = -a * u_hat + b
        res = np.abs(ddt(y) - rhs)
        worst = max(worst, float(np.max(res / np.maximum(1.0, np.abs(rhs)))))
    return worst
