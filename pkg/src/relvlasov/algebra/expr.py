"""Exact phase-space expressions with the radicals w=|v| and u=|x| adjoined.

An :class:`Expr` represents

    (P0 + w*P1 + u*P2 + w*u*P3) / (t^a * x1^b1 ... v3^c3 * w^d * u^e)

where the Pi are rational-coefficient polynomials in (t, x1..3, v1..3)
and the denominator is a monomial with nonnegative integer exponents.
Since w and u are algebraically independent radicals, {1, w, u, wu} is a
free basis: an expression is zero iff all four numerator polynomials are
zero, so equality is decidable by cross-multiplication.  Even radical
powers never appear in numerators; they are eliminated through
w^2 -> v.v and u^2 -> x.x.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .poly import NVARS, VAR_INDEX, VAR_NAMES, Poly, V_DOT_V, X_DOT_X

# denominator slots: the 7 variables, then w, then u
NDEN = NVARS + 2
W_SLOT = NVARS
U_SLOT = NVARS + 1
_ZERO_DEN = (0,) * NDEN

_BASIS_NAMES = ("1", "w", "u", "w*u")


def _quad_zero():
    z = Poly()
    return (z, z, z, z)


def _quad_mul_w(quad):
    p0, p1, p2, p3 = quad
    return (V_DOT_V * p1, p0, V_DOT_V * p3, p2)


def _quad_mul_u(quad):
    p0, p1, p2, p3 = quad
    return (X_DOT_X * p2, X_DOT_X * p3, p0, p1)


def _quad_mul_poly(quad, poly):
    return tuple(p * poly for p in quad)


def _quad_add(a, b):
    return tuple(pa + pb for pa, pb in zip(a, b))


class Expr:
    """Immutable exact expression; all arithmetic stays in the rationals."""

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=_ZERO_DEN):
        self.num = tuple(num) if num is not None else _quad_zero()
        self.den = tuple(den)
        if len(self.num) != 4 or len(self.den) != NDEN:
            raise ValueError("malformed Expr")

    # ---------------------------------------------------------------- builders

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls((Poly.const(c), Poly(), Poly(), Poly()))

    @classmethod
    def rational(cls, p, q=1):
        return cls.const(Fraction(p, q))

    @classmethod
    def var(cls, name):
        """One of t, x1..x3, v1..v3, w (=|v|) or u (=|x|)."""
        if name == "w":
            return cls((Poly(), Poly.const(1), Poly(), Poly()))
        if name == "u":
            return cls((Poly(), Poly(), Poly.const(1), Poly()))
        return cls((Poly.var(name), Poly(), Poly(), Poly()))

    # ---------------------------------------------------------------- basics

    def is_zero(self):
        return all(p.is_zero() for p in self.num)

    def equals(self, other):
        return (self - other).is_zero()

    def _raised(self, delta):
        """Numerator quadruple multiplied by the monomial/radical factor ``delta``."""
        quad = self.num
        mono = [0] * NVARS
        for i in range(NVARS):
            mono[i] = delta[i]
        if any(mono):
            quad = _quad_mul_poly(quad, Poly.monomial(mono))
        for _ in range(delta[W_SLOT]):
            quad = _quad_mul_w(quad)
        for _ in range(delta[U_SLOT]):
            quad = _quad_mul_u(quad)
        return quad

    def _reduce(self):
        """Cancel shared pure-variable factors between numerator and denominator."""
        den = list(self.den)
        quad = self.num
        if self.is_zero():
            return Expr(_quad_zero(), _ZERO_DEN)
        changed = False
        for i in range(NVARS):
            if den[i] == 0:
                continue
            lo = min(
                (p.min_exponent(i) for p in quad if not p.is_zero()),
                default=None,
            )
            k = min(den[i], lo) if lo is not None else 0
            if k:
                quad = tuple(p if p.is_zero() else p.shift_down(i, k) for p in quad)
                den[i] -= k
                changed = True
        if not changed:
            return self
        return Expr(quad, tuple(den))

    # ---------------------------------------------------------------- algebra

    def __add__(self, other):
        other = _coerce(other)
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        d1 = tuple(a - b for a, b in zip(den, self.den))
        d2 = tuple(a - b for a, b in zip(den, other.den))
        quad = _quad_add(self._raised(d1), other._raised(d2))
        return Expr(quad, den)._reduce()

    __radd__ = __add__

    def __neg__(self):
        return Expr(tuple(-p for p in self.num), self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a0, a1, a2, a3 = self.num
        b0, b1, b2, b3 = other.num
        V, X = V_DOT_V, X_DOT_X
        q0 = a0 * b0 + V * (a1 * b1) + X * (a2 * b2) + V * (X * (a3 * b3))
        q1 = a0 * b1 + a1 * b0 + X * (a2 * b3 + a3 * b2)
        q2 = a0 * b2 + a2 * b0 + V * (a1 * b3 + a3 * b1)
        q3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
        den = tuple(a + b for a, b in zip(self.den, other.den))
        return Expr((q0, q1, q2, q3), den)._reduce()

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = Expr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        """Reciprocal, for expressions of the form c * mono * w^d * u^e / D.

        The numerator must sit in a single basis slot and factor as a
        monomial times powers of v.v and x.x (which are even powers of
        the radicals); anything else has no representation in this ring.
        """
        nonzero = [(k, p) for k, p in enumerate(self.num) if not p.is_zero()]
        if len(nonzero) != 1:
            raise ValueError("can only invert a single-term expression")
        k, poly = nonzero[0]
        # strip the monomial gcd, then peel off powers of v.v and x.x
        gcd_exp = tuple(poly.min_exponent(i) for i in range(NVARS))
        core = poly.shift_down_multi(gcd_exp)
        w_even = u_even = 0
        while len(core.terms) > 1:
            q = core.divide_exact(V_DOT_V)
            if q is not None:
                core = q
                w_even += 1
                continue
            q = core.divide_exact(X_DOT_X)
            if q is not None:
                core = q
                u_even += 1
                continue
            raise ValueError("can only invert a single-term expression")
        (exp_rest, coeff), = core.terms.items()
        exp = tuple(a + b for a, b in zip(gcd_exp, exp_rest))
        # 1/(c * mono * B_k * w^2dw * u^2eu / D) = D * (1/c) / (mono * ...)
        den = [0] * NDEN
        for i, e in enumerate(exp):
            den[i] = e
        den[W_SLOT] += 2 * w_even
        den[U_SLOT] += 2 * u_even
        if k == 1:  # basis w
            den[W_SLOT] += 1
        elif k == 2:  # basis u
            den[U_SLOT] += 1
        elif k == 3:
            den[W_SLOT] += 1
            den[U_SLOT] += 1
        inv = Expr((Poly.const(Fraction(1) / coeff), Poly(), Poly(), Poly()), tuple(den))
        # multiply by the original denominator (a monomial with radical powers)
        num = [0] * NVARS
        for i in range(NVARS):
            num[i] = self.den[i]
        out = inv * Expr((Poly.monomial(num), Poly(), Poly(), Poly()))
        for _ in range(self.den[W_SLOT]):
            out = out * Expr.var("w")
        for _ in range(self.den[U_SLOT]):
            out = out * Expr.var("u")
        return out._reduce()

    # ---------------------------------------------------------------- calculus

    def diff(self, var):
        """Exact partial derivative with respect to t, x1..x3 or v1..v3."""
        i = VAR_INDEX[var]
        p0, p1, p2, p3 = self.num
        dnum = Expr((p0.diff(i), p1.diff(i), p2.diff(i), p3.diff(i)))
        if var.startswith("v"):
            # w' = v_i/w acting on  w*(p1 + u*p3)
            vi = Poly.var(var)
            extra = Expr((vi * p1, Poly(), vi * p3, Poly()), _den_single(W_SLOT))
            dnum = dnum + extra
        elif var.startswith("x"):
            # u' = x_i/u acting on  u*(p2 + w*p3)
            xi = Poly.var(var)
            extra = Expr((xi * p2, xi * p3, Poly(), Poly()), _den_single(U_SLOT))
            dnum = dnum + extra
        inv_den = Expr((Poly.const(1), Poly(), Poly(), Poly()), self.den)
        result = dnum * inv_den
        # quotient-rule correction for the denominator monomial
        corr = Expr.zero()
        a = self.den[i]
        if a:
            corr = corr - Expr(
                (Poly.const(a), Poly(), Poly(), Poly()), _den_single(i)
            )
        if var.startswith("v") and self.den[W_SLOT]:
            d = self.den[W_SLOT]
            corr = corr - Expr(
                (Poly.var(var).scale(d), Poly(), Poly(), Poly()),
                _den_single(W_SLOT, 2),
            )
        if var.startswith("x") and self.den[U_SLOT]:
            e = self.den[U_SLOT]
            corr = corr - Expr(
                (Poly.var(var).scale(e), Poly(), Poly(), Poly()),
                _den_single(U_SLOT, 2),
            )
        if not corr.is_zero():
            result = result + self * corr
        return result._reduce()

    # ---------------------------------------------------------------- numerics

    def eval_float(self, t, x, v):
        """Evaluate at a floating-point phase point (t, x[3], v[3])."""
        w = math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
        u = math.sqrt(x[0] ** 2 + x[1] ** 2 + x[2] ** 2)
        vals = (t, x[0], x[1], x[2], v[0], v[1], v[2])
        p0, p1, p2, p3 = (p.eval_float(vals) for p in self.num)
        numer = p0 + w * p1 + u * p2 + w * u * p3
        den = 1.0
        for val, k in zip(vals, self.den[:NVARS]):
            if k:
                den *= val**k
        if self.den[W_SLOT]:
            den *= w ** self.den[W_SLOT]
        if self.den[U_SLOT]:
            den *= u ** self.den[U_SLOT]
        return numer / den

    def eval_fraction(self, t, x, v, w, u):
        """Exact evaluation; caller supplies w=|v| and u=|x| as Fractions
        (i.e. the point must make both radicals rational)."""
        vals = (t, x[0], x[1], x[2], v[0], v[1], v[2])
        p0, p1, p2, p3 = (p.eval_fraction(vals) for p in self.num)
        numer = p0 + w * p1 + u * p2 + w * u * p3
        den = Fraction(1)
        for val, k in zip(vals, self.den[:NVARS]):
            if k:
                den *= val**k
        den *= w ** self.den[W_SLOT] * u ** self.den[U_SLOT]
        return numer / den

    def to_callable(self):
        """Compile to a vectorized function f(t, x, v) of numpy arrays.

        ``t`` is scalar or shape (N,), ``x`` and ``v`` are shape (N, 3).
        """
        packed = []
        for p in self.num:
            if p.is_zero():
                packed.append(None)
                continue
            exps = np.array(sorted(p.terms), dtype=np.int64)
            coeffs = np.array([float(p.terms[tuple(e)]) for e in exps])
            packed.append((exps, coeffs))
        den = self.den

        def evaluate(t, x, v):
            x = np.asarray(x, dtype=float)
            v = np.asarray(v, dtype=float)
            t = np.asarray(t, dtype=float)
            w = np.sqrt(np.sum(v * v, axis=-1))
            u = np.sqrt(np.sum(x * x, axis=-1))
            cols = (t, x[..., 0], x[..., 1], x[..., 2], v[..., 0], v[..., 1], v[..., 2])

            def poly_val(p):
                if p is None:
                    return 0.0
                exps, coeffs = p
                acc = 0.0
                for row, c in zip(exps, coeffs):
                    term = np.full_like(w, c)
                    for col, k in zip(cols, row):
                        if k:
                            term = term * col**int(k)
                    acc = acc + term
                return acc

            numer = (
                poly_val(packed[0])
                + w * poly_val(packed[1])
                + u * poly_val(packed[2])
                + w * u * poly_val(packed[3])
            )
            dval = 1.0
            for col, k in zip(cols, den[:NVARS]):
                if k:
                    dval = dval * col**int(k)
            if den[W_SLOT]:
                dval = dval * w ** int(den[W_SLOT])
            if den[U_SLOT]:
                dval = dval * u ** int(den[U_SLOT])
            return numer / dval

        return evaluate

    # ---------------------------------------------------------------- display

    def __repr__(self):
        parts = []
        for p, name in zip(self.num, _BASIS_NAMES):
            if p.is_zero():
                continue
            parts.append(f"({p!r})" if name == "1" else f"{name}*({p!r})")
        num = " + ".join(parts) if parts else "0"
        dparts = []
        den_names = VAR_NAMES + ("w", "u")
        for name, k in zip(den_names, self.den):
            if k == 1:
                dparts.append(name)
            elif k > 1:
                dparts.append(f"{name}^{k}")
        if dparts:
            return f"[{num}] / ({'*'.join(dparts)})"
        return num

    def residual_terms(self):
        """Human-readable nonzero pieces, for certificate reports."""
        out = []
        for p, name in zip(self.num, _BASIS_NAMES):
            if not p.is_zero():
                out.append(f"{name}*({p!r})")
        return out


def _den_single(slot, k=1):
    d = [0] * NDEN
    d[slot] = k
    return tuple(d)


def _coerce(obj):
    if isinstance(obj, Expr):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Expr.const(obj)
    raise TypeError(f"cannot coerce {type(obj).__name__} to Expr")


# Convenience named atoms
T = Expr.var("t")
X = tuple(Expr.var(f"x{i}") for i in (1, 2, 3))
V = tuple(Expr.var(f"v{i}") for i in (1, 2, 3))
W = Expr.var("w")  # |v| = v^0 for massless particles
U = Expr.var("u")  # |x| = r


def dot_xv():
    """x.v as an Expr."""
    return X[0] * V[0] + X[1] * V[1] + X[2] * V[2]
