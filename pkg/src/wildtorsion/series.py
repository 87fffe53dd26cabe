"""Laurent series over a finite field with explicit, pessimistic precision.

A series is stored densely as ``coeffs[i]`` = coefficient of ``var^(val + i)``;
every exponent >= ``prec`` is unknown.  ``prec`` may be ``math.inf`` for exact
Laurent polynomials.  The stored form is normalized: the leading coefficient is
nonzero, or ``coeffs`` is empty (zero to precision).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, PrecisionError
from .field import FieldCtx, FieldElem

INF = math.inf


@dataclass(frozen=True)
class ZeroToPrecision:
    """Result of an order query on a series that vanishes up to ``prec``."""

    prec: int

    def __str__(self):
        return f"O(>={self.prec})"


class LaurentSeries:
    __slots__ = ("ctx", "val", "coeffs", "prec", "var")

    def __init__(self, ctx: FieldCtx, val, coeffs, prec=INF, var: str = "t"):
        coeffs = [ctx(c) for c in coeffs]
        # normalize: strip leading zeros, drop anything at or beyond prec
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        val = val + i
        coeffs = coeffs[i:]
        if prec != INF:
            coeffs = coeffs[: max(0, prec - val)]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            val = prec
        self.ctx = ctx
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec
        self.var = var

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx, prec=INF, var="t"):
        return cls(ctx, 0, (), prec, var)

    @classmethod
    def monomial(cls, ctx, exponent: int, coeff=1, prec=INF, var="t"):
        return cls(ctx, exponent, (coeff,), prec, var)

    @classmethod
    def from_dict(cls, ctx, terms: dict[int, object], prec=INF, var="t"):
        if not terms:
            return cls.zero(ctx, prec, var)
        lo, hi = min(terms), max(terms)
        coeffs = [ctx.zero] * (hi - lo + 1)
        for k, c in terms.items():
            coeffs[k - lo] = ctx(c)
        return cls(ctx, lo, coeffs, prec, var)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        """True if no nonzero term is known (zero to precision)."""
        return not self.coeffs

    def order_bound(self):
        """Lower bound for the true order: exact when nonzero, ``prec`` otherwise."""
        return self.val

    def __getitem__(self, k: int) -> FieldElem:
        if k >= self.prec:
            raise PrecisionError(f"coefficient of {self.var}^{k} is beyond precision {self.prec}")
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def with_prec(self, prec) -> LaurentSeries:
        """Truncate to a lower precision (never raises precision)."""
        if prec > self.prec:
            raise PrecisionError("cannot raise precision of a truncated series")
        return LaurentSeries(self.ctx, self.val, self.coeffs, prec, self.var)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: LaurentSeries):
        if not isinstance(other, LaurentSeries):
            raise TypeError("LaurentSeries expected")
        if other.ctx != self.ctx:
            raise InputError(f"field mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = LaurentSeries.monomial(self.ctx, 0, other, var=self.var)
        self._check(other)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        if lo == INF:
            return LaurentSeries.zero(self.ctx, prec, self.var)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if prec != INF:
            hi = min(hi, prec)
        out = [self.ctx.zero] * max(0, hi - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.val + i - lo
                if k < len(out):
                    out[k] = out[k] + c
        return LaurentSeries(self.ctx, lo, out, prec, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.ctx, self.val, [-c for c in self.coeffs], self.prec, self.var)

    def __sub__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = LaurentSeries.monomial(self.ctx, 0, other, var=self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentSeries:
        c = self.ctx(c)
        return LaurentSeries(self.ctx, self.val, [c * x for x in self.coeffs], self.prec, self.var)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by var^k."""
        return LaurentSeries(self.ctx, self.val + k, self.coeffs, self.prec + k, self.var)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        self._check(other)
        a, b = self, other
        prec = min(a.prec + b.val, b.prec + a.val)
        if a.is_zero() or b.is_zero():
            return LaurentSeries.zero(self.ctx, prec, self.var)
        lo = a.val + b.val
        n = len(a.coeffs) + len(b.coeffs) - 1
        if prec != INF:
            n = min(n, prec - lo)
        out = [self.ctx.zero] * max(0, n)
        for i, x in enumerate(a.coeffs):
            if not x or i >= n:
                continue
            for j, y in enumerate(b.coeffs[: n - i]):
                if y:
                    out[i + j] = out[i + j] + x * y
        return LaurentSeries(self.ctx, lo, out, prec, self.var)

    __rmul__ = __mul__

    def inv(self, prec=None) -> LaurentSeries:
        """Multiplicative inverse; exact inputs need an explicit relative ``prec``."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series that is zero to precision")
        v = self.val
        rel = self.prec - v if self.prec != INF else None
        if prec is not None:
            rel = prec if rel is None else min(rel, prec)
        if rel is None:
            if len(self.coeffs) == 1:
                return LaurentSeries.monomial(self.ctx, -v, self.coeffs[0].inv(), var=self.var)
            raise PrecisionError("inverse of an exact non-monomial needs a precision")
        # unit part u = sum a_i x^i with a_0 != 0; solve u * w = 1 term by term
        a = self.coeffs
        a0inv = a[0].inv()
        w = []
        for k in range(rel):
            acc = self.ctx.one if k == 0 else self.ctx.zero
            for i in range(1, min(k, len(a) - 1) + 1):
                acc = acc - a[i] * w[k - i]
            w.append(acc * a0inv)
        return LaurentSeries(self.ctx, -v, w, rel - v, self.var)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = LaurentSeries.monomial(self.ctx, 0, 1, var=self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def subs_scale(self, zeta: FieldElem) -> LaurentSeries:
        """The series f(zeta * var)."""
        out = []
        zk = zeta ** self.val if self.coeffs else self.ctx.one
        for c in self.coeffs:
            out.append(c * zk)
            zk = zk * zeta
        return LaurentSeries(self.ctx, self.val, out, self.prec, self.var)

    def __eq__(self, other):
        """Equality of known data: same precision, same known coefficients."""
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.prec == other.prec
            and self.coeffs == other.coeffs
            and (self.val == other.val or not self.coeffs)
        )

    def __hash__(self):
        return hash((self.val, self.coeffs, self.prec))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Coefficients agree on the exponents known to both."""
        d = self - other
        return d.is_zero()

    def __repr__(self):
        return render(self)


def ls_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def ls_neg(a: LaurentSeries) -> LaurentSeries:
    return -a


def ls_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def ls_inv(a: LaurentSeries, prec=None) -> LaurentSeries:
    return a.inv(prec)


def ls_ord(a: LaurentSeries):
    """t-adic order: an int, ``INF`` for the exact zero, or ZeroToPrecision."""
    if a.coeffs:
        return a.val
    if a.prec == INF:
        return INF
    return ZeroToPrecision(a.prec)


def _render_coeff(c: FieldElem) -> str:
    s = repr(c)
    return f"({s})" if "+" in s else s


def render(a: LaurentSeries) -> str:
    """Text form like ``2*t^-1 + 1 + t + O(t^5)``."""
    x = a.var
    parts = []
    for k, c in a.terms():
        cs = _render_coeff(c)
        if k == 0:
            parts.append(cs)
            continue
        mono = x if k == 1 else f"{x}^{k}"
        parts.append(mono if c.is_one() else f"{cs}*{mono}")
    if a.prec != INF:
        parts.append(f"O({x}^{a.prec})")
    return " + ".join(parts) if parts else "0"
