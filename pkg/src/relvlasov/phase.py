"""Floating-point evaluation of weights, cutoff and cone distances.

Numeric twin of the exact algebra: everything here is a plain function
of a phase point (t, x, v) with |v| > 0, vectorized over trailing-axis
numpy arrays where useful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WEIGHT_IDS = (
    "v0/v0",
    "v1/v0",
    "v2/v0",
    "v3/v0",
    "s",
    "z12",
    "z13",
    "z23",
    "z01",
    "z02",
    "z03",
)


@dataclass(frozen=True)
class PhasePoint:
    """A point (t, X, V) with t >= 0 and V in R^3 minus the origin."""

    t: float
    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))
        if self.x.shape[-1] != 3 or self.v.shape[-1] != 3:
            raise ValueError("x and v must be 3-vectors")
        if np.any(np.linalg.norm(self.v, axis=-1) == 0.0):
            raise ValueError("|v| must be positive (velocity domain excludes 0)")


def _split(t, x, v):
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    w = np.linalg.norm(v, axis=-1)
    r = np.linalg.norm(x, axis=-1)
    xv = np.sum(x * v, axis=-1)
    return t, x, v, w, r, xv


def eval_weight(name, p=None, *, t=None, x=None, v=None):
    """Evaluate a weight by id at a phase point (or at arrays t, x, v).

    Accepts the 11 transport-preserved weights, plus "z" (the
    nonnegative root of the sum of their squares) and "morawetz".
    """
    if p is not None:
        t, x, v = p.t, p.x, p.v
    t, x, v, w, r, xv = _split(t, x, v)
    if np.any(w == 0.0):
        raise ValueError("|v| must be positive")
    if name == "v0/v0":
        return np.ones_like(w)
    if name in ("v1/v0", "v2/v0", "v3/v0"):
        k = int(name[1]) - 1
        return v[..., k] / w
    if name == "s":
        return t - xv / w
    if name == "z":
        return np.sqrt(z_squared(t, x, v))
    if name == "morawetz":
        return -(t**2 + r**2) + 2.0 * t * xv / w
    if name.startswith("z0"):
        k = int(name[2]) - 1
        return x[..., k] - t * v[..., k] / w
    if name.startswith("z"):
        i, j = int(name[1]) - 1, int(name[2]) - 1
        return (x[..., i] * v[..., j] - x[..., j] * v[..., i]) / w
    raise KeyError(name)


def z_squared(t, x, v):
    """Sum of squares of the 11 weights; closed form
    2 + s^2 + |x ^ v|^2/|v|^2 + |x - t v/|v||^2."""
    t, x, v, w, r, xv = _split(t, x, v)
    s = t - xv / w
    cross2 = r**2 * w**2 - xv**2  # |x ^ v|^2
    boost2 = r**2 - 2.0 * t * xv / w + t**2 * np.ones_like(r)
    return 2.0 + s**2 + cross2 / w**2 + boost2


def chi(s):
    """Quintic smoothstep cutoff: 0 on (-inf, 1/2], 1 on [1, inf), C^2."""
    s = np.asarray(s, dtype=float)
    q = np.clip((s - 0.5) / 0.5, 0.0, 1.0)
    out = q * q * q * (10.0 + q * (-15.0 + 6.0 * q))
    return out if out.ndim else float(out)


def chi_prime(s):
    s = np.asarray(s, dtype=float)
    q = (s - 0.5) / 0.5
    inside = (q > 0.0) & (q < 1.0)
    qc = np.where(inside, q, 0.0)
    out = np.where(inside, 2.0 * 30.0 * qc * qc * (1.0 - qc) ** 2, 0.0)
    return out if out.ndim else float(out)


def tau(p=None, *, t=None, r=None):
    """Cone distances (tau_plus, tau_minus) = sqrt(1+(t+-r)^2); both >= 1."""
    if p is not None:
        t, r = p.t, float(np.linalg.norm(p.x))
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    tp = np.sqrt(1.0 + (t + r) ** 2)
    tm = np.sqrt(1.0 + (t - r) ** 2)
    if tp.ndim:
        return tp, tm
    return float(tp), float(tm)


def vslash(x, v):
    """Angular velocity magnitude sqrt(|v|^2 - ((x.v)/|x|)^2), clamped at 0.

    At x = 0 the formula's limit along rays is |v|, which we adopt.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    w2 = np.sum(v * v, axis=-1)
    xv = np.sum(x * v, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = np.sqrt(np.clip(w2 - np.where(r > 0, (xv / np.where(r > 0, r, 1.0)) ** 2, 0.0), 0.0, None))
    out = np.where(r > 0, val, np.sqrt(w2))
    return out if out.ndim else float(out)
