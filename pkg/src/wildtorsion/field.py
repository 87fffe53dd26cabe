"""Finite coefficient fields GF(p^e).

Elements are stored as coefficient tuples (c_0, ..., c_{e-1}) over GF(p) in the
power basis 1, a, ..., a^(e-1) of a root a of the defining modulus.  The same
tuple doubles as the integer code sum(c_i p^i), which fixes the total order used
whenever a "smallest" element or modulus is required.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError

PRIME_BOUND = 97


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p) as coefficient lists, lowest degree first ----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df])


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a, k, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        k >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial f (lowest degree first) over GF(p)."""
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**e, f, p), x, p):
        return False
    for ell in prime_factors(e):
        h = _psub(_ppowmod(x, p ** (e // ell), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e, ordered by the integer code of its lower coefficients."""
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        f = tuple(low + [1])
        if low[0] != 0 and is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FieldCtx:
    """The field GF(p^e) = GF(p)[a]/(modulus)."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None
    bound: int = field(default=PRIME_BOUND, compare=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"characteristic {self.p} is not prime")
        if self.p > self.bound:
            raise InputError(f"characteristic {self.p} exceeds bound {self.bound}")
        if self.e < 1:
            raise InputError("extension degree must be >= 1")
        if self.e == 1:
            if self.modulus is not None:
                raise InputError("prime field takes no modulus")
            return
        if self.modulus is None or len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise InputError("modulus must be monic of degree e")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise InputError("modulus coefficients out of range")
        if not is_irreducible(self.modulus, self.p):
            raise InputError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.e

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise InputError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.e - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.e:
            raise InputError(f"expected {self.e} coefficients, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    @cached_property
    def zero(self) -> FieldElem:
        return self(0)

    @cached_property
    def one(self) -> FieldElem:
        return self(1)

    @cached_property
    def gen(self) -> FieldElem:
        """Root of the modulus (the element 1 for a prime field)."""
        if self.e == 1:
            return self.one
        return self((0, 1) + (0,) * (self.e - 2))

    def from_code(self, code: int) -> FieldElem:
        return FieldElem(self, tuple((code // self.p**i) % self.p for i in range(self.e)))

    def elements(self):
        """All elements in increasing integer-code order."""
        for code in range(self.order):
            yield self.from_code(code)

    def __str__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"


class FieldElem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise InputError(f"field mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if ctx.e == 1:
            return FieldElem(ctx, (self.coeffs[0] * other.coeffs[0] % ctx.p,))
        prod = _pmulmod(list(self.coeffs), list(other.coeffs), ctx.modulus, ctx.p)
        return FieldElem(ctx, tuple(prod) + (0,) * (ctx.e - len(prod)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inv(self) -> FieldElem:
        if not self:
            raise ZeroDivisionError("inverse of zero in " + str(self.ctx))
        if self.ctx.e == 1:
            return FieldElem(self.ctx, (pow(self.coeffs[0], -1, self.ctx.p),))
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.coeffs))

    @property
    def code(self) -> int:
        return sum(c * self.ctx.p**i for i, c in enumerate(self.coeffs))

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def frobenius(self) -> FieldElem:
        return self ** self.ctx.p

    def __repr__(self):
        if self.ctx.e == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def field_make(p: int, d: int = 1, bound: int = PRIME_BOUND) -> FieldCtx:
    """Smallest GF(p^e) containing a primitive d-th root of unity."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p > bound:
        raise InputError(f"characteristic {p} exceeds bound {bound}")
    if d < 1:
        raise InputError("d must be positive")
    if d >= bound:
        raise InputError(f"root-of-unity order {d} exceeds bound {bound}")
    if d % p == 0:
        raise InputError(f"no primitive {d}-th roots of unity in characteristic {p}")
    e = 1
    while (p**e - 1) % d:
        e += 1
    if e == 1:
        return FieldCtx(p, bound=bound)
    return FieldCtx(p, e, smallest_irreducible(p, e), bound=bound)


def primitive_root_of_unity(ctx: FieldCtx, d: int) -> FieldElem:
    """Smallest (by integer code) element of exact multiplicative order d."""
    if d < 1 or (ctx.order - 1) % d:
        raise InputError(f"{d} does not divide {ctx.order} - 1")
    if d == 1:
        return ctx.one
    qs = prime_factors(d)
    for x in itertools.islice(ctx.elements(), 1, None):
        if (x**d).is_one() and all(not (x ** (d // q)).is_one() for q in qs):
            return x
    raise AssertionError("unreachable: the multiplicative group is cyclic")
