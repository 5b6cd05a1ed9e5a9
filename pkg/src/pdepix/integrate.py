"""Explicit time integration: Euler and classical RK4 steps, CFL reports,
and the evolution loop with divergence guard and snapshot recording."""

from dataclasses import dataclass

import numpy as np

# states beyond this magnitude are treated as blow-up, not clamped
DIVERGENCE_LIMIT = 1e6


class DivergenceError(ArithmeticError):
    """Non-finite values or unbounded growth during time stepping."""

    def __init__(self, message: str = "solution diverged", step: int | None = None):
        self.step = step
        if step is not None:
            message = f"{message} at step {step}"
        super().__init__(message)


class CflError(ValueError):
    """Advective Courant number exceeds the explicit stability limit."""


@dataclass(frozen=True)
class TimeGrid:
    dt: float
    steps: int

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.steps < 1:
            raise ValueError("steps must be at least 1")


@dataclass(frozen=True)
class CflReport:
    courant: float
    limit: float

    @property
    def ok(self) -> bool:
        return self.courant <= self.limit


def cfl_check(ax: float, ay: float, dt: float, limit: float = 1.0) -> CflReport:
    """Courant number |ax| dt + |ay| dt on the unit pixel grid; the explicit
    Euler upwind limit is 1."""
    return CflReport(courant=(abs(ax) + abs(ay)) * dt, limit=limit)


def require_cfl(ax: float, ay: float, dt: float, limit: float = 1.0) -> CflReport:
    report = cfl_check(ax, ay, dt, limit)
    if not report.ok:
        raise CflError(
            f"Courant number {report.courant:.6g} exceeds limit {report.limit:.6g}")
    return report


def _checked(arr, what="rhs"):
    if not np.all(np.isfinite(arr)):
        raise DivergenceError(f"non-finite values in {what}")
    return arr


def euler_step(u, rhs, dt: float):
    """One forward Euler step u + dt * rhs(u)."""
    return u + dt * _checked(rhs(u))


def rk4_step(u, rhs, dt: float):
    """One classical Runge-Kutta 4 step; the full rhs is re-evaluated at
    every stage."""
    k1 = _checked(rhs(u))
    k2 = _checked(rhs(u + 0.5 * dt * k1))
    k3 = _checked(rhs(u + 0.5 * dt * k2))
    k4 = _checked(rhs(u + dt * k3))
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


_STEPPERS = {"euler": euler_step, "rk4": rk4_step}


def guard_state(u, step: int | None = None):
    """Divergence guard: reject non-finite values or magnitudes past 1e6."""
    if not np.all(np.isfinite(u)) or np.max(np.abs(u)) > DIVERGENCE_LIMIT:
        raise DivergenceError(step=step)
    return u


def evolve(u0, rhs, grid: TimeGrid, scheme: str = "euler",
           snapshot_every: int | None = None, stop_tol: float | None = None):
    """March `grid.steps` explicit steps from u0.

    Snapshots are copies taken every `snapshot_every` steps, with the final
    state always included.  `stop_tol` enables an optional early stop when
    the max elementwise change falls below it (off by default).  Returns
    (final_field, snapshots).
    """
    try:
        stepper = _STEPPERS[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}") from None
    if snapshot_every is not None and snapshot_every < 1:
        raise ValueError("snapshot_every must be positive")

    u = np.array(u0, dtype=np.float64, copy=True)
    snapshots = []
    last_snap = 0
    for k in range(1, grid.steps + 1):
        try:
            u_next = stepper(u, rhs, grid.dt)
        except DivergenceError as err:
            raise DivergenceError(str(err.args[0]), step=k) from None
        guard_state(u_next, step=k)
        change = np.max(np.abs(u_next - u))
        u = u_next
        if snapshot_every is not None and k % snapshot_every == 0:
            snapshots.append(u.copy())
            last_snap = k
        if stop_tol is not None and change < stop_tol:
            break
    if snapshot_every is not None and last_snap != k:
        snapshots.append(u.copy())
    return u, snapshots
