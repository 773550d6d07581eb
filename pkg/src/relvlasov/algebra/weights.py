"""Catalog of commutation vector fields and transport-preserved weights.

Fields (massless conventions, v0 = |v| = w):

    T        = w d_t + v^i d_i            free transport
    S        = t d_t + x^i d_i            spacetime scaling
    S_v      = v^i d_{v^i}                velocity scaling
    Omega_ij = x^i d_j - x^j d_i          spatial rotations
    OmegaHat_ij = Omega_ij + v^i d_{v^j} - v^j d_{v^i}   complete lifts
    Y_ij     = (v^i/w) d_j - (v^j/w) d_i  null rotations

Weights annihilated by T (the set k0, 11 members):

    v^mu/v^0   (mu = 0..3)
    s   = t - (x.v)/w
    zij = (x^i v^j - x^j v^i)/w
    z0k = x^k - t v^k/w

k is k0 without the three z0k.  z^2 is the sum of squares of all k0
members, and the Morawetz-type weight m = -(t^2+r^2) + 2t(x.v)/w is also
annihilated by T.
"""

from __future__ import annotations

from .expr import Expr, T as t_, W as w_, dot_xv
from .operators import FieldOp, derivation

_X = tuple(Expr.var(f"x{i}") for i in (1, 2, 3))
_V = tuple(Expr.var(f"v{i}") for i in (1, 2, 3))

ROT_PAIRS = ((1, 2), (1, 3), (2, 3))


# ----------------------------------------------------------------- fields

def transport() -> FieldOp:
    return FieldOp({"t": w_, "x1": _V[0], "x2": _V[1], "x3": _V[2]})


def scaling() -> FieldOp:
    return FieldOp({"t": t_, "x1": _X[0], "x2": _X[1], "x3": _X[2]})


def velocity_scaling() -> FieldOp:
    return FieldOp({"v1": _V[0], "v2": _V[1], "v3": _V[2]})


def rotation(i, j) -> FieldOp:
    return FieldOp({f"x{j}": _X[i - 1], f"x{i}": -_X[j - 1]})


def lifted_rotation(i, j) -> FieldOp:
    return rotation(i, j) + FieldOp({f"v{j}": _V[i - 1], f"v{i}": -_V[j - 1]})


def null_rotation(i, j) -> FieldOp:
    """Y_ij = (v^i d_j - v^j d_i)/v0, the null form of the rotations."""
    return FieldOp({f"x{j}": _V[i - 1] / w_, f"x{i}": -(_V[j - 1] / w_)})


def radial_derivative() -> FieldOp:
    """d_r = (x^i/r) d_i."""
    u = Expr.var("u")
    return FieldOp({f"x{i + 1}": _X[i] / u for i in range(3)})


def commutation_fields() -> dict[str, FieldOp]:
    """The boost-free commutation set: translations, S, S_v, lifted rotations."""
    fields = {
        "d_t": derivation("t"),
        "d_1": derivation("x1"),
        "d_2": derivation("x2"),
        "d_3": derivation("x3"),
        "S": scaling(),
        "S_v": velocity_scaling(),
    }
    for i, j in ROT_PAIRS:
        fields[f"Ohat{i}{j}"] = lifted_rotation(i, j)
    return fields


def base_fields() -> dict[str, FieldOp]:
    """The unlifted set acting on functions of (t, x)."""
    fields = {
        "d_t": derivation("t"),
        "d_1": derivation("x1"),
        "d_2": derivation("x2"),
        "d_3": derivation("x3"),
        "S": scaling(),
    }
    for i, j in ROT_PAIRS:
        fields[f"O{i}{j}"] = rotation(i, j)
    return fields


# ----------------------------------------------------------------- weights

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
K_IDS = tuple(wid for wid in WEIGHT_IDS if not wid.startswith("z0"))


def weight(wid: str) -> Expr:
    if wid == "v0/v0":
        return Expr.const(1)
    if wid in ("v1/v0", "v2/v0", "v3/v0"):
        k = int(wid[1])
        return _V[k - 1] / w_
    if wid == "s":
        return t_ - dot_xv() / w_
    if wid.startswith("z0"):
        k = int(wid[2])
        return _X[k - 1] - t_ * _V[k - 1] / w_
    if wid.startswith("z"):
        i, j = int(wid[1]), int(wid[2])
        return (_X[i - 1] * _V[j - 1] - _X[j - 1] * _V[i - 1]) / w_
    raise KeyError(wid)


def catalog() -> dict[str, Expr]:
    return {wid: weight(wid) for wid in WEIGHT_IDS}


def z_squared() -> Expr:
    out = Expr.zero()
    for wid in WEIGHT_IDS:
        e = weight(wid)
        out = out + e * e
    return out


def morawetz() -> Expr:
    """(t^2+r^2) v_0/v^0 + 2t x.v/v^0 with v_0 = -v^0."""
    r2 = _X[0] * _X[0] + _X[1] * _X[1] + _X[2] * _X[2]
    return -(t_ * t_ + r2) + Expr.const(2) * t_ * dot_xv() / w_
