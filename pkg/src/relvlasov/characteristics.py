"""Characteristics of the cutoff transport operator and their tangent flow.

The ODE system is

    dX/dt = V/|V|,        dV/dt = chi(|V|) * F(t, X),

where F is the (already sigma-signed) force field.  The first
variational equations advance the 6x6 Jacobian J = D(X,V)/D(X0,V0):

    dJ/dt = A(t,X,V) J,
    A = [[0,            P(V)          ],
         [chi(|V|) dF,  chi'(|V|) F vhat^T]],

with P(V) = (I - vhat vhat^T)/|V| the Jacobian of V -> V/|V|.

Integrator: classical RK4 with fixed step; the force field is frozen at
the step's start time inside the substages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import phase
from .radial import RadialField


# ------------------------------------------------------------- field sources

class ZeroSource:
    """Force-free transport."""

    def force(self, t, x):
        return np.zeros(3)

    def force_jacobian(self, t, x):
        return np.zeros((3, 3))


class RadialFieldSource:
    """Force sigma * E(|x|) xhat from a solved radial field snapshot."""

    def __init__(self, fld: RadialField, sigma: float):
        self.field = fld
        self.sigma = float(sigma)

    def force(self, t, x):
        r = float(np.linalg.norm(x))
        if r < 1e-300:
            return np.zeros(3)
        E, _ = self.field.field_at(r)
        return self.sigma * E * x / r

    def force_jacobian(self, t, x):
        return self.field.force_hessian(x, self.sigma)


class AnalyticRadialSource:
    """Radial force sigma*E(r)*xhat from closed-form E and dE/dr (for tests)."""

    def __init__(self, E: Callable, dE: Callable, sigma: float = 1.0):
        self.E = E
        self.dE = dE
        self.sigma = float(sigma)

    def force(self, t, x):
        r = float(np.linalg.norm(x))
        if r < 1e-12:
            return np.zeros(3)
        return self.sigma * self.E(r) * x / r

    def force_jacobian(self, t, x):
        r = float(np.linalg.norm(x))
        if r < 1e-12:
            return self.sigma * self.dE(0.0) * np.eye(3)
        rhat = x / r
        P = np.eye(3) - np.outer(rhat, rhat)
        return self.sigma * ((self.E(r) / r) * P + self.dE(r) * np.outer(rhat, rhat))


class UniformSource:
    """Constant force (test helper; not radial)."""

    def __init__(self, f):
        self.f = np.asarray(f, dtype=float)

    def force(self, t, x):
        return self.f

    def force_jacobian(self, t, x):
        return np.zeros((3, 3))


# ------------------------------------------------------------------- states

@dataclass
class CharState:
    t: float
    x: np.ndarray
    v: np.ndarray
    tangent: Optional[np.ndarray] = None  # 6x6, D(X,V)/D(X0,V0)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        if np.linalg.norm(self.v) == 0.0:
            raise ValueError("|V| must stay positive")
        if self.tangent is not None:
            self.tangent = np.asarray(self.tangent, dtype=float)

    @property
    def speed(self):
        return float(np.linalg.norm(self.v))

    def with_tangent(self):
        return CharState(self.t, self.x.copy(), self.v.copy(), np.eye(6))


def _unit_projector(v):
    n = np.linalg.norm(v)
    vhat = v / n
    return (np.eye(3) - np.outer(vhat, vhat)) / n


DEFAULT_CUTOFF = (phase.chi, phase.chi_prime)
NO_CUTOFF = (lambda s: 1.0, lambda s: 0.0)


def _rhs(t, x, v, J, source, cutoff):
    chi, chi_p = cutoff
    n = np.linalg.norm(v)
    if n == 0.0:
        raise FloatingPointError("velocity reached 0 during integration")
    F = source.force(t, x)
    dx = v / n
    dv = chi(n) * F
    if J is None:
        return dx, dv, None
    A = np.zeros((6, 6))
    A[:3, 3:] = _unit_projector(v)
    A[3:, :3] = chi(n) * source.force_jacobian(t, x)
    A[3:, 3:] = chi_p(n) * np.outer(F, v / n)
    return dx, dv, A @ J


def push(state: CharState, source, dt: float, cutoff=DEFAULT_CUTOFF) -> CharState:
    """One RK4 step of the characteristic (and tangent) system."""
    if dt == 0.0:
        raise ValueError("dt must be nonzero")
    t0, x0, v0 = state.t, state.x, state.v
    J0 = state.tangent
    # field frozen at the step's start time
    k1 = _rhs(t0, x0, v0, J0, source, cutoff)
    k2 = _rhs(t0, x0 + 0.5 * dt * k1[0], v0 + 0.5 * dt * k1[1],
              None if J0 is None else J0 + 0.5 * dt * k1[2], source, cutoff)
    k3 = _rhs(t0, x0 + 0.5 * dt * k2[0], v0 + 0.5 * dt * k2[1],
              None if J0 is None else J0 + 0.5 * dt * k2[2], source, cutoff)
    k4 = _rhs(t0, x0 + dt * k3[0], v0 + dt * k3[1],
              None if J0 is None else J0 + dt * k3[2], source, cutoff)
    x1 = x0 + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    v1 = v0 + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    if np.linalg.norm(v1) == 0.0:
        raise FloatingPointError(
            "step produced |V| = 0; cutoff not honored by the field source"
        )
    J1 = None
    if J0 is not None:
        J1 = J0 + dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
    return CharState(t0 + dt, x1, v1, J1)


def free_flow(state: CharState, delta_t: float) -> CharState:
    """Closed-form force-free flow: X + dt*V/|V|, V unchanged."""
    n = state.speed
    x1 = state.x + delta_t * state.v / n
    J1 = None
    if state.tangent is not None:
        Jf = np.eye(6)
        Jf[:3, 3:] = delta_t * _unit_projector(state.v)
        J1 = Jf @ state.tangent
    return CharState(state.t + delta_t, x1, state.v.copy(), J1)


# ---------------------------------------------------------------- trajectory

@dataclass
class Trajectory:
    states: list = field(default_factory=list)

    def append(self, state):
        self.states.append(state)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def min_speed(self) -> float:
        if not self.states:
            raise ValueError("empty trajectory")
        return min(s.speed for s in self.states)

    def weight_series(self, weight_id: str) -> np.ndarray:
        return np.array(
            [phase.eval_weight(weight_id, t=s.t, x=s.x, v=s.v) for s in self.states]
        )

    def to_csv(self, path):
        with open(path, "w") as f:
            f.write("t,X1,X2,X3,V1,V2,V3,speed,s,z\n")
            for st in self.states:
                svals = phase.eval_weight("s", t=st.t, x=st.x, v=st.v)
                zvals = phase.eval_weight("z", t=st.t, x=st.x, v=st.v)
                row = [st.t, *st.x, *st.v, st.speed, svals, zvals]
                f.write(",".join(f"{val:.17g}" for val in row) + "\n")


def integrate(state, source, dt, n_steps, cutoff=DEFAULT_CUTOFF) -> Trajectory:
    """Push n_steps times, recording every state (including the start)."""
    traj = Trajectory([state])
    for _ in range(n_steps):
        state = push(state, source, dt, cutoff)
        traj.append(state)
    return traj


def min_speed(traj: Trajectory) -> float:
    return traj.min_speed()


def flow_jacobian_fd(state, source, dt, n_steps, eps=1e-6, cutoff=DEFAULT_CUTOFF):
    """Finite-difference flow Jacobian (independent oracle for the tangent)."""
    def final(pert):
        s = CharState(state.t, state.x + pert[:3], state.v + pert[3:])
        for _ in range(n_steps):
            s = push(s, source, dt, cutoff)
        return np.concatenate([s.x, s.v])

    J = np.empty((6, 6))
    for k in range(6):
        d = np.zeros(6)
        d[k] = eps
        J[:, k] = (final(d) - final(-d)) / (2 * eps)
    return J
