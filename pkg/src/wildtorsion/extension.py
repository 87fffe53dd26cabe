"""Totally ramified Galois extensions of k((t)): tame Kummer, Artin-Schreier, compositum.

The tame part adjoins s with s^d = t; the wild part adjoins y with
y^p - y = s^-m (s = t when d = 1).  An element of K' is stored as
sum_{i<p} a_i(s) y^i with Laurent series coordinates a_i.  Valuations are
normalized so that nu(s) = p (1 without wild part) and nu(y) = -m; then
nu(t) = d p and the monomials s^j y^i have pairwise distinct valuations mod p,
which makes nu of a sum the minimum over its monomials.

The generators act by tau(s) = zeta s, tau(y) = zeta^-m y and sigma(y) = y + 1,
so tau sigma tau^-1 = sigma^r with r = zeta^m.  The latter must lie in GF(p);
otherwise the compositum is not Galois over K.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import InputError, NotGaloisError, PrecisionError
from .field import FieldCtx, FieldElem, field_make, is_prime, primitive_root_of_unity
from .groups import GroupTable, metacyclic_group
from .series import INF, LaurentSeries, ZeroToPrecision, ls_ord

MAX_RETRIES = 3


@dataclass(frozen=True)
class ExtensionSpec:
    p: int
    tame_d: int = 1
    as_m: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        if self.tame_d < 1 or math.gcd(self.tame_d, self.p) != 1:
            raise InputError(f"tame degree {self.tame_d} must be positive and prime to p = {self.p}")
        if self.as_m is not None and (self.as_m < 1 or math.gcd(self.as_m, self.p) != 1):
            raise InputError(f"pole order m = {self.as_m} must be positive and prime to p = {self.p}")
        if self.tame_d == 1 and self.as_m is None:
            raise InputError("trivial extension: give a tame degree > 1 or a pole order m")

    @property
    def wild(self) -> bool:
        return self.as_m is not None

    @property
    def wild_degree(self) -> int:
        return self.p if self.wild else 1

    @property
    def ramification_index(self) -> int:
        return self.tame_d * self.wild_degree

    def is_galois(self) -> bool:
        """Galois over K iff zeta^m lies in GF(p), i.e. d | m (p - 1)."""
        if not self.wild:
            return True
        return (self.as_m * (self.p - 1)) % self.tame_d == 0

    @property
    def precision_floor(self) -> int:
        return 4 * self.ramification_index * ((self.as_m or 0) + 2)


class LocalExtension:
    """R'/R for an ExtensionSpec, with working precision ``precision`` in nu-units."""

    def __init__(self, spec: ExtensionSpec, precision: int | None = None):
        if not spec.is_galois():
            raise NotGaloisError(
                f"d = {spec.tame_d} does not divide m (p - 1) = {spec.as_m * (spec.p - 1)}: "
                f"tau does not normalize the Artin-Schreier extension, so K'/K is not Galois"
            )
        floor = spec.precision_floor
        if precision is None:
            precision = floor
        elif precision < floor:
            raise InputError(f"precision {precision} below floor {floor}")
        self.spec = spec
        self.precision = precision
        self.ctx: FieldCtx = field_make(spec.p, spec.tame_d)
        self.zeta: FieldElem = primitive_root_of_unity(self.ctx, spec.tame_d)
        self.var = "s" if spec.tame_d > 1 else "t"
        m = spec.as_m or 0
        self.y_factor: FieldElem = self.zeta ** (-m)
        if not self.y_factor.in_prime_field():
            raise AssertionError("Galois test passed but zeta^-m is not in GF(p)")
        # tau sigma tau^-1 = sigma^r
        self.conj_exponent = int(self.y_factor.inv().coeffs[0]) if spec.wild else 1

    # -- basic data -------------------------------------------------------

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def d(self) -> int:
        return self.spec.tame_d

    @property
    def m(self) -> int:
        return self.spec.as_m or 0

    @property
    def pw(self) -> int:
        return self.spec.wild_degree

    @property
    def e(self) -> int:
        return self.spec.ramification_index

    def with_precision(self, precision: int) -> LocalExtension:
        return LocalExtension(self.spec, precision)

    def monomial_valuation(self, j: int, i: int) -> int:
        return self.pw * j - self.m * i

    def monomial_of_valuation(self, v: int) -> tuple[int, int]:
        """The unique (j, i), 0 <= i < pw, with nu(s^j y^i) = v."""
        if self.pw == 1:
            return v, 0
        i = (-v * pow(self.m, -1, self.p)) % self.p
        return (v + self.m * i) // self.p, i

    @cached_property
    def uniformizer_exponents(self) -> tuple[int, int]:
        """(a, c) with u' = s^a y^c and a nu(s) - c m = 1."""
        if self.pw == 1:
            return 1, 0
        return self.monomial_of_valuation(1)

    # -- elements ---------------------------------------------------------

    def _coord_prec(self, i: int) -> int:
        # s-precision making nu(terms dropped) >= precision
        return -((-(self.precision + self.m * i)) // self.pw)

    def element(self, coords) -> ExtElem:
        coords = list(coords)
        if len(coords) != self.pw:
            raise InputError(f"expected {self.pw} coordinates")
        out = []
        for i, a in enumerate(coords):
            if a.ctx != self.ctx:
                raise InputError("coordinate over the wrong field")
            cp = self._coord_prec(i)
            out.append(a.with_prec(cp) if a.prec > cp else a)
        return ExtElem(self, tuple(out))

    def monomial(self, j: int, i: int = 0, coeff=1) -> ExtElem:
        coords = [LaurentSeries.zero(self.ctx, var=self.var) for _ in range(self.pw)]
        coords[i] = LaurentSeries.monomial(self.ctx, j, coeff, var=self.var)
        return self.element(coords)

    def from_base(self, f: LaurentSeries) -> ExtElem:
        """Embed an element of K = k((t)) (substituting t = s^d)."""
        terms = {k * self.d: c for k, c in f.terms()}
        prec = f.prec * self.d if f.prec != INF else INF
        a0 = LaurentSeries.from_dict(self.ctx, terms, prec, self.var)
        zeros = [LaurentSeries.zero(self.ctx, var=self.var) for _ in range(self.pw - 1)]
        return self.element([a0] + zeros)

    @property
    def one(self) -> ExtElem:
        return self.monomial(0)

    @property
    def t(self) -> ExtElem:
        return self.monomial(self.d)

    @property
    def s(self) -> ExtElem:
        if self.d == 1:
            return self.t
        return self.monomial(1)

    @property
    def y(self) -> ExtElem:
        if self.pw == 1:
            raise InputError("no wild part")
        return self.monomial(0, 1)

    @cached_property
    def uniformizer(self) -> ExtElem:
        a, c = self.uniformizer_exponents
        return self.monomial(a, c)

    # -- Galois action ----------------------------------------------------

    def sigma(self, x: ExtElem) -> ExtElem:
        if self.pw == 1:
            return x
        p = self.p
        coords = []
        for j in range(p):
            acc = LaurentSeries.zero(self.ctx, var=self.var)
            for i in range(j, p):
                b = math.comb(i, j) % p
                if b:
                    acc = acc + x.coords[i].scale(b)
            coords.append(acc)
        return self.element(coords)

    def tau(self, x: ExtElem) -> ExtElem:
        if self.d == 1:
            return x
        coords = [a.subs_scale(self.zeta).scale(self.y_factor**i) for i, a in enumerate(x.coords)]
        return self.element(coords)

    @cached_property
    def group(self) -> GroupTable:
        """G = <tau> x| <sigma>, elements (j, a) = tau^j sigma^a."""
        return metacyclic_group(self.d, self.pw, self.conj_exponent)

    def act(self, g, x: ExtElem) -> ExtElem:
        """Apply a group element (j, a) = tau^j sigma^a."""
        j, a = g
        for _ in range(a % self.pw):
            x = self.sigma(x)
        for _ in range(j % self.d):
            x = self.tau(x)
        return x

    # -- reporting --------------------------------------------------------

    def __repr__(self):
        s = self.spec
        return f"LocalExtension(p={s.p}, d={s.tame_d}, m={s.as_m}, k={self.ctx}, N={self.precision})"


class ExtElem:
    __slots__ = ("ext", "coords")

    def __init__(self, ext: LocalExtension, coords: tuple[LaurentSeries, ...]):
        self.ext = ext
        self.coords = coords

    @property
    def nu_prec(self):
        """Every unknown term has valuation >= this."""
        ext = self.ext
        return min(ext.pw * a.prec - ext.m * i for i, a in enumerate(self.coords))

    def _same(self, other):
        if not isinstance(other, ExtElem) or other.ext is not self.ext:
            if not (isinstance(other, ExtElem) and other.ext.spec == self.ext.spec):
                raise InputError("elements of different extensions")
        return other

    def __add__(self, other):
        other = self._same(other)
        return self.ext.element([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ExtElem(self.ext, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._same(other))

    def scale(self, c) -> ExtElem:
        return ExtElem(self.ext, tuple(a.scale(c) for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._same(other)
        ext = self.ext
        pw = ext.pw
        zero = LaurentSeries.zero(ext.ctx, var=ext.var)
        prod = [zero] * (2 * pw - 1)
        for i, a in enumerate(self.coords):
            for j, b in enumerate(other.coords):
                if a.is_zero() and a.prec == INF or b.is_zero() and b.prec == INF:
                    continue
                prod[i + j] = prod[i + j] + a * b
        # y^k = y^(k-p) (y + s^-m) for k >= p
        for k in range(2 * pw - 2, pw - 1, -1):
            c = prod[k]
            prod[k - pw + 1] = prod[k - pw + 1] + c
            prod[k - pw] = prod[k - pw] + c.shift(-ext.m)
        return ext.element(prod[:pw])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ExtElem:
        if k < 0:
            raise InputError("negative powers are not supported")
        result = self.ext.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def valuation(self):
        return valuation(self)

    def agrees_with(self, other: ExtElem) -> bool:
        d = self - other
        return all(a.is_zero() for a in d.coords)

    def __repr__(self):
        return render_elem(self)


def valuation(x: ExtElem):
    """nu(x) as an int, INF for the exact zero, or ZeroToPrecision when undetermined."""
    ext = x.ext
    nprec = x.nu_prec
    best = INF
    for i, a in enumerate(x.coords):
        o = ls_ord(a)
        if isinstance(o, int):
            best = min(best, ext.pw * o - ext.m * i)
    if best < nprec:
        return best
    if nprec == INF:
        return INF
    return ZeroToPrecision(nprec)


def render_elem(x: ExtElem) -> str:
    ext = x.ext
    parts = []
    for i, a in enumerate(x.coords):
        if a.is_zero():
            continue
        body = " + ".join(
            (f"{c!r}*" if not c.is_one() else "") + (f"{ext.var}^{k}" if k else "1") for k, c in a.terms()
        )
        mono = "" if i == 0 else ("*y" if i == 1 else f"*y^{i}")
        parts.append(f"({body}){mono}")
    head = " + ".join(parts) if parts else "0"
    np_ = x.nu_prec
    return head if np_ == INF else f"{head} + O(nu >= {np_})"


# -- construction ---------------------------------------------------------


def build_extension(spec: ExtensionSpec, precision: int | None = None) -> LocalExtension:
    return LocalExtension(spec, precision)


_WORD_TOKEN = re.compile(r"(sigma|tau|σ|τ)(?:\^(-?\d+))?")


def parse_word(word: str) -> list[tuple[str, int]]:
    out = []
    for tok in word.replace("*", " ").split():
        m = _WORD_TOKEN.fullmatch(tok)
        if not m:
            raise InputError(f"bad group word token {tok!r}")
        name = {"σ": "sigma", "τ": "tau"}.get(m.group(1), m.group(1))
        out.append((name, int(m.group(2) or 1)))
    if not out:
        raise InputError("empty group word")
    return out


def apply_galois(g, x: ExtElem) -> ExtElem:
    """Apply a word such as ``"tau*sigma^2"`` (rightmost letter acts first) or a pair (j, a)."""
    ext = x.ext
    if isinstance(g, tuple):
        return ext.act(g, x)
    for name, k in reversed(parse_word(g)):
        order = ext.pw if name == "sigma" else ext.d
        step = ext.sigma if name == "sigma" else ext.tau
        for _ in range(k % order):
            x = step(x)
    return x


# -- ramification ---------------------------------------------------------


@dataclass(frozen=True)
class RamificationProfile:
    p: int
    n: int
    tame_d: int
    breaks: tuple[int, ...]
    i_table: dict[int, int]
    # lower index of each group element (j, a) != 1: g lies in G_i iff index >= i
    lower_index: dict[tuple[int, int], int] = field(default_factory=dict)

    def subgroup(self, i: int) -> list[tuple[int, int]]:
        """G_i as a list of group elements (identity included)."""
        return [(0, 0)] + [g for g, idx in self.lower_index.items() if idx >= i]


def _profile_once(ext: LocalExtension) -> RamificationProfile:
    u = ext.uniformizer
    lower = {}
    for g in ext.group.elements:
        if g == (0, 0):
            continue
        v = valuation(ext.act(g, u) - u)
        if not isinstance(v, int):
            raise PrecisionError(f"nu(g(u') - u') undetermined for g = {g} at precision {ext.precision}")
        lower[g] = v - 1
    i_table = {l: lower[(0, l)] for l in range(1, ext.p)}
    return RamificationProfile(
        p=ext.p, n=1, tame_d=ext.d, breaks=tuple(sorted(set(i_table.values()))), i_table=i_table, lower_index=lower
    )


def ramification_profile(ext: LocalExtension, retries: int = MAX_RETRIES) -> RamificationProfile:
    """Sen's function i(l) = nu(sigma^l(u') - u') - 1 and the lower filtration of G."""
    if not ext.spec.wild:
        raise InputError("ramification profile needs a wild part")
    for attempt in range(retries + 1):
        try:
            return _profile_once(ext)
        except PrecisionError:
            if attempt == retries:
                raise
            ext = ext.with_precision(2 * ext.precision)
    raise AssertionError("unreachable")


# -- truncation to finite-dimensional modules -----------------------------


@dataclass(frozen=True)
class TruncatedModule:
    """R'/m'^N as a k-vector space with basis the monomials of valuation 0..N-1.

    Matrices are stored in GF(p) form (each k-entry blown up to e x e blocks),
    so dimensions over GF(p) are ``ctx.e`` times dimensions over k.
    """

    ctx: FieldCtx
    N: int
    ram_index: int
    basis: tuple[tuple[int, int], ...]  # valuation v -> (j, i), basis element s^j y^i
    gens: dict[str, np.ndarray]
    t: np.ndarray
    k_entries: dict[str, dict[tuple[int, int], FieldElem]]

    @property
    def dim(self) -> int:
        """Dimension over GF(p)."""
        return self.N * self.ctx.e

    def kdim(self, fp_dim: int) -> int:
        if fp_dim % self.ctx.e:
            raise AssertionError("GF(p)-dimension not divisible by [k : GF(p)]")
        return fp_dim // self.ctx.e

    def restrict(self, N: int) -> TruncatedModule:
        """The quotient R'/m'^N for N <= self.N (valuation filtration is G-stable)."""
        if N > self.N:
            raise PrecisionError("cannot restrict to a larger level")
        n = N * self.ctx.e
        return TruncatedModule(
            self.ctx,
            N,
            self.ram_index,
            self.basis[:N],
            {k: v[:n, :n].copy() for k, v in self.gens.items()},
            self.t[:n, :n].copy(),
            {k: {ij: x for ij, x in v.items() if ij[0] < N and ij[1] < N} for k, v in self.k_entries.items()},
        )


def truncate_to_matrices(ext: LocalExtension, N: int) -> TruncatedModule:
    if N > ext.precision:
        raise PrecisionError(f"level {N} exceeds extension precision {ext.precision}")
    basis = tuple(ext.monomial_of_valuation(v) for v in range(N))
    gens = {}
    k_entries = {}
    steps = []
    if ext.d > 1:
        steps.append(("tau", ext.tau))
    if ext.pw > 1:
        steps.append(("sigma", ext.sigma))
    for name, step in steps:
        entries = {}
        for v, (j, i) in enumerate(basis):
            img = step(ext.monomial(j, i))
            if img.nu_prec < N:
                raise PrecisionError(f"image of basis element {v} known only to nu < {img.nu_prec}")
            for i2, a in enumerate(img.coords):
                for k, c in a.terms():
                    w = ext.monomial_valuation(k, i2)
                    if w < 0:
                        raise AssertionError("Galois image left R'")
                    if w < N:
                        entries[(w, v)] = c
        k_entries[name] = entries
        gens[name] = linalg.blow_up(ext.ctx, entries, (N, N))
    t_entries = {(v + ext.e, v): ext.ctx.one for v in range(N) if v + ext.e < N}
    k_entries["t"] = t_entries
    return TruncatedModule(
        ext.ctx, N, ext.e, basis, gens, linalg.blow_up(ext.ctx, t_entries, (N, N)), k_entries
    )
