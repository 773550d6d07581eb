"""Exact multivariate polynomials over the rationals.

The seven phase-space variables are, in fixed order,

    t, x1, x2, x3, v1, v2, v3.

A polynomial is a mapping from exponent tuples (7 nonnegative ints) to
nonzero ``Fraction`` coefficients.  All arithmetic is exact; no floats
enter this module.
"""

from __future__ import annotations

from fractions import Fraction

NVARS = 7
VAR_NAMES = ("t", "x1", "x2", "x3", "v1", "v2", "v3")
VAR_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}
_ZERO_EXP = (0,) * NVARS


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: dict exponent-tuple -> Fraction, zero coefficients dropped
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls({_ZERO_EXP: c}) if c else cls()

    @classmethod
    def var(cls, name, power=1):
        e = [0] * NVARS
        e[VAR_INDEX[name]] = power
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff=Fraction(1)):
        return cls({tuple(exps): _as_fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(out)

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return Poly()
        return Poly({e: c * v for e, v in self.terms.items()})

    def diff(self, var_i):
        out = {}
        for e, c in self.terms.items():
            k = e[var_i]
            if k:
                e2 = list(e)
                e2[var_i] = k - 1
                out[tuple(e2)] = c * k
        return Poly(out)

    def min_exponent(self, var_i):
        """Smallest power of variable ``var_i`` over all monomials (None if zero)."""
        if not self.terms:
            return None
        return min(e[var_i] for e in self.terms)

    def shift_down(self, var_i, k):
        """Exact division by var^k (requires min_exponent >= k)."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[var_i] = e[var_i] - k
            if e2[var_i] < 0:
                raise ValueError("not divisible")
            out[tuple(e2)] = c
        return Poly(out)

    def shift_down_multi(self, exps):
        out = {}
        for e, c in self.terms.items():
            e2 = tuple(a - b for a, b in zip(e, exps))
            if any(k < 0 for k in e2):
                raise ValueError("not divisible")
            out[e2] = c
        return Poly(out)

    def divide_exact(self, divisor):
        """Exact multivariate division; returns the quotient or None."""
        if divisor.is_zero():
            raise ZeroDivisionError
        rem = dict(self.terms)
        lead_d = max(divisor.terms)
        lead_c = divisor.terms[lead_d]
        quot = {}
        while rem:
            lead_r = max(rem)
            e = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(k < 0 for k in e):
                return None
            c = rem[lead_r] / lead_c
            quot[e] = quot.get(e, 0) + c
            for ed, cd in divisor.terms.items():
                key = tuple(a + b for a, b in zip(e, ed))
                s = rem.get(key, 0) - c * cd
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return Poly(quot)

    def eval_fraction(self, vals):
        """Evaluate at a point of 7 Fractions; exact."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for vi, k in zip(vals, e):
                if k:
                    term *= vi**k
            total += term
        return total

    def eval_float(self, vals):
        total = 0.0
        for e, c in self.terms.items():
            term = float(c)
            for vi, k in zip(vals, e):
                if k:
                    term *= vi**k
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [] if c != 1 or e == _ZERO_EXP else []
            if c != 1 or all(k == 0 for k in e):
                factors.append(str(c))
            for name, k in zip(VAR_NAMES, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)


# Radical-reduction polynomials: w^2 = v.v and u^2 = x.x.
V_DOT_V = (
    Poly.var("v1") * Poly.var("v1")
    + Poly.var("v2") * Poly.var("v2")
    + Poly.var("v3") * Poly.var("v3")
)
X_DOT_X = (
    Poly.var("x1") * Poly.var("x1")
    + Poly.var("x2") * Poly.var("x2")
    + Poly.var("x3") * Poly.var("x3")
)
