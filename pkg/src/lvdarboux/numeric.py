"""Floating-point checks along trajectories of the LV flow.

Fixed-step classical RK4 only; the exact engine stays authoritative and this
module just confirms that invariants and Darboux growth rates behave as the
algebra says they should.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .lv import PERIODIC_KM, LVParams, lie_derivative
from .poly import ONE, X1, X2, X3, LinForm, Poly, evaluate_float

State = tuple[float, float, float]
BLOWUP_LIMIT = 1e12


class BlowUp(ArithmeticError):
    """A coordinate left the region |x_i| <= 1e12 during integration."""


@dataclass(frozen=True)
class SimConfig:
    initial: State
    step: float = 1e-3
    t_end: float = 1.0

    def __post_init__(self):
        if not (self.step > 0 and self.t_end > 0):
            raise ValueError("step and t_end must be positive")
        if self.step > self.t_end:
            raise ValueError("step must not exceed t_end")


@dataclass(frozen=True)
class Trajectory:
    times: list[float]
    states: list[State]
    params: tuple[float, float, float]

    def __len__(self) -> int:
        return len(self.times)


def _rhs(r: float, s: float, t: float, x: State) -> State:
    x1, x2, x3 = x
    return (x1 * (r * x2 + s * x3), x2 * (-r * x1 + t * x3), x3 * (-s * x1 - t * x2))


def simulate(p: LVParams, cfg: SimConfig) -> Trajectory:
    r, s, t = p.as_floats()
    n = int(round(cfg.t_end / cfg.step))
    h = cfg.t_end / n
    x = tuple(float(v) for v in cfg.initial)
    times = [0.0]
    states = [x]
    for step in range(1, n + 1):
        k1 = _rhs(r, s, t, x)
        k2 = _rhs(r, s, t, tuple(a + 0.5 * h * b for a, b in zip(x, k1)))
        k3 = _rhs(r, s, t, tuple(a + 0.5 * h * b for a, b in zip(x, k2)))
        k4 = _rhs(r, s, t, tuple(a + h * b for a, b in zip(x, k3)))
        x = tuple(a + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4) for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4))
        if not all(math.isfinite(v) and abs(v) <= BLOWUP_LIMIT for v in x):
            raise BlowUp(f"trajectory left the bounded region at t={step * h:g}")
        times.append(step * h)
        states.append(x)
    return Trajectory(times, states, (r, s, t))


Invariant = Union[Poly, Sequence[int]]


def _laurent_value(exps: Sequence[int], x: State) -> float:
    return math.prod(v**e for v, e in zip(x, exps))


def conservation_report(traj: Trajectory, f: Invariant) -> float:
    """Maximum relative drift |f(x(t)) - f(x(0))| / max(1, |f(x(0))|)."""
    if isinstance(f, Poly):
        values = [evaluate_float(f, x) for x in traj.states]
    else:
        exps = tuple(int(e) for e in f)
        for x in traj.states:
            if any(e and abs(v) <= 1e-9 for v, e in zip(x, exps)):
                raise ValueError("Laurent invariant evaluated too close to a coordinate plane")
        values = [_laurent_value(exps, x) for x in traj.states]
    f0 = values[0]
    scale = max(1.0, abs(f0))
    return max(abs(v - f0) for v in values) / scale


def darboux_flow_check(p: LVParams, f: Poly, lam: LinForm, traj: Trajectory) -> float:
    """|log f(x(T)) - log f(x(0)) - integral of lam(x(t)) dt| (trapezoid rule).

    ``p`` is accepted for symmetry with the exact API; only the trajectory is
    used numerically.
    """
    values = [evaluate_float(f, x) for x in traj.states]
    sign = math.copysign(1.0, values[0])
    if any(abs(v) <= 1e-12 or math.copysign(1.0, v) != sign for v in values):
        raise ValueError("f changes sign or underflows along the trajectory")
    rates = [lam.evaluate_float(x) for x in traj.states]
    integral = 0.0
    for k in range(1, len(traj.times)):
        integral += 0.5 * (rates[k] + rates[k - 1]) * (traj.times[k] - traj.times[k - 1])
    return abs(math.log(abs(values[-1])) - math.log(abs(values[0])) - integral)


def km_lax_matrix(x: State) -> np.ndarray:
    """The 4x4 Lax matrix of the three-particle KM system (needs x > 0)."""
    x1, x2, x3 = x
    if min(x) <= 0:
        raise ValueError("KM Lax matrix needs strictly positive coordinates")
    a, b = math.sqrt(x1 * x2), math.sqrt(x2 * x3)
    return np.array(
        [
            [x1, 0.0, a, 0.0],
            [0.0, x1 + x2, 0.0, b],
            [a, 0.0, x2 + x3, 0.0],
            [0.0, b, 0.0, x3],
        ]
    )


def km_lax_traces(x: State, powers: int = 4) -> list[float]:
    L = km_lax_matrix(x)
    out = []
    Lk = np.eye(4)
    for _ in range(powers):
        Lk = Lk @ L
        out.append(float(np.trace(Lk)))
    return out


def km_lax_invariants(traj: Trajectory) -> list[float]:
    """Relative drifts of Tr L^i, i = 1..4, along a KM trajectory."""
    traces = np.array([km_lax_traces(x) for x in traj.states])
    ref = traces[0]
    drift = np.max(np.abs(traces - ref), axis=0) / np.maximum(1.0, np.abs(ref))
    return [float(d) for d in drift]


# -- periodic KM: exact Lax pair --------------------------------------------------

Matrix = list[list[Poly]]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Poly()) for j in range(n)] for i in range(n)]


def _matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def periodic_lax_pair() -> tuple[Matrix, Matrix]:
    zero = Poly()
    L = [[zero, X1, ONE], [ONE, zero, X2], [X3, ONE, zero]]
    B = [[zero, zero, X1 * X2], [X2 * X3, zero, zero], [zero, X3 * X1, zero]]
    return L, B


def _time_derivative(p: LVParams, m: Matrix) -> Matrix:
    return [[lie_derivative(p, e) for e in row] for row in m]


def periodic_lax_symbolic() -> bool:
    """Exact check of dL/dt = BL - LB for the periodic KM system."""
    L, B = periodic_lax_pair()
    lhs = _time_derivative(PERIODIC_KM, L)
    rhs = _matsub(_matmul(B, L), _matmul(L, B))
    return lhs == rhs


def periodic_lax_traces(powers: int = 3) -> list[Poly]:
    """(1/i) Tr L^i for i = 1..powers, as exact polynomials."""
    L, _ = periodic_lax_pair()
    out = []
    Lk = L
    for i in range(1, powers + 1):
        if i > 1:
            Lk = _matmul(Lk, L)
        out.append(sum((Lk[j][j] for j in range(3)), Poly()).scale(1) / i)
    return out


def step_halving_ratio(p: LVParams, cfg: SimConfig, f: Invariant) -> float:
    """drift(step) / drift(step / 2) for the invariant ``f``."""
    coarse = conservation_report(simulate(p, cfg), f)
    fine = conservation_report(simulate(p, SimConfig(cfg.initial, cfg.step / 2, cfg.t_end)), f)
    return coarse / fine if fine else math.inf
