"""First-order Lax-Friedrichs finite-volume scheme on a uniform 1-d grid.

The update is the classical two-point scheme

    U_j^{n+1} = (U_{j-1} + U_{j+1})/2 - dt/(2 dx) (F(U_{j+1}) - F(U_{j-1}))

with zero-gradient ghost cells. The time step is recomputed from the current
field every step at a fixed CFL number and clamped so the run lands exactly on
each snapshot time.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .core import Params, State
from .errors import DomainExcludesOrigin, VacuumProduced


@dataclass(frozen=True)
class Grid:
    """Uniform grid of n_cells cells covering [x_min, x_max]."""

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if not (self.x_min < self.x_max):
            raise ValueError(f"empty domain [{self.x_min}, {self.x_max}]")
        if self.n_cells < 1:
            raise ValueError(f"need at least one cell, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class SimConfig:
    """Simulation setup: grid, CFL number in (0, 1), final time, wave-speed
    parameter and requested snapshot times (t_final is always included)."""

    grid: Grid
    cfl: float
    t_final: float
    s: float = 1.0
    snapshot_times: tuple[float, ...] = ()

    def __post_init__(self):
        if not (0.0 < self.cfl < 1.0):
            raise ValueError(f"CFL number must lie in (0, 1), got {self.cfl}")
        if self.t_final < 0.0:
            raise ValueError(f"final time must be non-negative, got {self.t_final}")
        object.__setattr__(self, "snapshot_times", tuple(float(t) for t in self.snapshot_times))
        for t in self.snapshot_times:
            if not (0.0 <= t <= self.t_final):
                raise ValueError(f"snapshot time {t} outside [0, {self.t_final}]")


@dataclass
class Field:
    """Grid function of the conserved variables, shape (3, n_cells), plus the
    current time."""

    U: np.ndarray
    time: float

    def __post_init__(self):
        self.U = np.asarray(self.U, dtype=float)
        if self.U.ndim != 2 or self.U.shape[0] != 3:
            raise ValueError(f"expected shape (3, n_cells), got {self.U.shape}")

    def primitives(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        rho = self.U[0]
        return rho, self.U[1] / rho, self.U[2] / rho

    def totals(self, dx: float) -> np.ndarray:
        """Discrete integrals of the three conserved quantities."""
        return self.U.sum(axis=1) * dx


@dataclass
class SimResult:
    """Snapshots plus conservation bookkeeping for a completed run."""

    snapshots: list[tuple[float, Field]]
    steps: int = 0
    #: time integral of (flux at left edge - flux at right edge), per component;
    #: exact discrete conservation means totals(final) - totals(initial) equals this.
    boundary_flux_integral: np.ndarray = dataclass_field(
        default_factory=lambda: np.zeros(3)
    )


def _flux_array(U: np.ndarray, s: float) -> np.ndarray:
    rho = U[0]
    u = U[1] / rho
    v = U[2] / rho
    return np.stack([U[1], U[1] * u + s * s * v, U[1] * v + u])


def max_wave_speed(f: Field, p: Params) -> float:
    """Largest |u -+ s/rho| over the field."""
    rho, u, _ = f.primitives()
    c = p.s / rho
    return float(np.max(np.maximum(np.abs(u - c), np.abs(u + c))))


def init_riemann(grid: Grid, Ul: State, Ur: State) -> Field:
    """Piecewise-constant initial data split at x = 0 (cell centers decide)."""
    if not (grid.x_min < 0.0 < grid.x_max):
        raise DomainExcludesOrigin(
            f"x = 0 not inside ({grid.x_min}, {grid.x_max})"
        )
    left = grid.centers() < 0.0
    U = np.empty((3, grid.n_cells))
    U[0] = np.where(left, Ul.rho, Ur.rho)
    U[1] = np.where(left, Ul.rho * Ul.u, Ur.rho * Ur.u)
    U[2] = np.where(left, Ul.rho * Ul.v, Ur.rho * Ur.v)
    return Field(U, 0.0)


def cfl_dt(f: Field, dx: float, cfl: float, p: Params) -> float:
    """Stable step dt = cfl * dx / max wave speed."""
    return cfl * dx / max_wave_speed(f, p)


def lxf_step(f: Field, dx: float, dt: float, p: Params) -> Field:
    """One Lax-Friedrichs update with zero-gradient ghost cells.

    Raises VacuumProduced if any updated density drops below the vacuum guard,
    which signals a CFL violation or data outside the supported regime.
    """
    U = f.U
    F = _flux_array(U, p.s)
    Ug = np.concatenate([U[:, :1], U, U[:, -1:]], axis=1)
    Fg = np.concatenate([F[:, :1], F, F[:, -1:]], axis=1)
    U_new = 0.5 * (Ug[:, :-2] + Ug[:, 2:]) - dt / (2.0 * dx) * (Fg[:, 2:] - Fg[:, :-2])
    if np.min(U_new[0]) < p.eps_rho:
        raise VacuumProduced(
            f"density fell to {np.min(U_new[0])} at t = {f.time + dt}"
        )
    return Field(U_new, f.time + dt)


def step_boundary_flux(f: Field, p: Params) -> np.ndarray:
    """Per-unit-time net inflow (left-edge flux minus right-edge flux) implied
    by the zero-gradient ghost cells for the upcoming step."""
    F = _flux_array(f.U, p.s)
    return F[:, 0] - F[:, -1]


def run(config: SimConfig, Ul: State, Ur: State) -> SimResult:
    """Advance Riemann initial data to t_final, recording snapshots.

    The step size is recomputed from the current field every step and clamped
    to land exactly on every snapshot time and on t_final.
    """
    p = Params(s=config.s)
    grid = config.grid
    dx = grid.dx
    events = sorted(set(config.snapshot_times) | {config.t_final})

    f = init_riemann(grid, Ul, Ur)
    result = SimResult(snapshots=[])
    if events and events[0] == 0.0:
        result.snapshots.append((0.0, Field(f.U.copy(), 0.0)))
        events = events[1:]

    t = 0.0
    for target in events:
        while t < target - 1e-14:
            dt = min(cfl_dt(f, dx, config.cfl, p), target - t)
            inflow = step_boundary_flux(f, p)
            f = lxf_step(f, dx, dt, p)
            result.boundary_flux_integral += dt * inflow
            result.steps += 1
            t = f.time
        f.time = target
        t = target
        result.snapshots.append((target, Field(f.U.copy(), target)))
    return result


def snapshot_filename(time: float) -> str:
    return f"snap_t{time:.6f}.csv"


def write_snapshot_csv(path, grid: Grid, f: Field) -> None:
    """Write one row per cell center with header x,rho,u,v."""
    rho, u, v = f.primitives()
    x = grid.centers()
    with open(path, "w", newline="\n") as fh:
        fh.write("x,rho,u,v\n")
        for j in range(grid.n_cells):
            fh.write(f"{x[j]:.12e},{rho[j]:.12e},{u[j]:.12e},{v[j]:.12e}\n")
