"""First-order differential operators on phase space.

A :class:`FieldOp` is a derivation  sum_a  c_a(t,x,v) * d/d(a)  over the
seven base directions {d_t, d_x1..3, d_v1..3} with exact Expr
coefficients.  Commutators of two such operators are again first order,
with coefficients A(b_beta) - B(a_beta).
"""

from __future__ import annotations

from fractions import Fraction

from .expr import Expr
from .poly import VAR_NAMES

DERIVATIONS = VAR_NAMES  # ("t", "x1", ..., "v3")


class FieldOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for k, e in (coeffs or {}).items():
            if k not in DERIVATIONS:
                raise ValueError(f"unknown derivation {k!r}")
            if not e.is_zero():
                self.coeffs[k] = e

    @classmethod
    def zero(cls):
        return cls()

    def coeff(self, var):
        return self.coeffs.get(var, Expr.zero())

    def is_zero(self):
        return not self.coeffs

    def equals(self, other):
        return (self - other).is_zero()

    def apply(self, e: Expr) -> Expr:
        out = Expr.zero()
        for var, c in self.coeffs.items():
            out = out + c * e.diff(var)
        return out

    __call__ = apply

    def commutator(self, other: "FieldOp") -> "FieldOp":
        out = {}
        for var in DERIVATIONS:
            c = self.apply(other.coeff(var)) - other.apply(self.coeff(var))
            if not c.is_zero():
                out[var] = c
        return FieldOp(out)

    def __add__(self, other):
        out = dict(self.coeffs)
        for var, c in other.coeffs.items():
            out[var] = out.get(var, Expr.zero()) + c
        return FieldOp(out)

    def __neg__(self):
        return FieldOp({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        """Multiply every coefficient by an Expr or exact scalar."""
        if isinstance(factor, (int, Fraction)):
            factor = Expr.const(factor)
        return FieldOp({k: factor * c for k, c in self.coeffs.items()})

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def residual_terms(self):
        out = []
        for var in DERIVATIONS:
            c = self.coeffs.get(var)
            if c is not None:
                out.append(f"d_{var}: {c!r}")
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({self.coeffs[v]!r}) d_{v}" for v in DERIVATIONS if v in self.coeffs
        )


def derivation(var) -> FieldOp:
    """The coordinate derivative d/d(var)."""
    return FieldOp({var: Expr.const(1)})
