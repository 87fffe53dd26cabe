"""Closed-form torsion lengths from ramification data.

For G with wild inertia G_1 cyclic of order p^n, tame quotient of order d and
lower breaks b_1 < ... < b_n of G_1, the closed formula predicts H^1(G, R')
as the sum of R/m^{n_l} over l = 1 .. p^n - 1 with

    n_l = floor((l + i(l) + (d - 1) p^n) / (d p^n)),   i(l) = b_{v_p(l) + 1}.

The same lengths arise in two steps: first nt_l = floor((l + i(l)) / p^n) for
G_1 alone, then n_l = 1 + floor((nt_l - 1) / d) after taking invariants.
For d = 1 this is exact.  For d > 1 the brute-force oracle disagrees on many
compositum instances (the second step ignores how G/G_1 acts on the
generators of the summands); see cohomology.stabilized_h1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InputError
from .field import is_prime


@dataclass(frozen=True)
class TorsionPartition:
    lengths: tuple[int, ...]
    # l -> n_l for every l with n_l >= 1
    provenance: dict[int, int] = field(default_factory=dict, compare=False)
    verified_by_oracle: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        if any(x < 1 for x in self.lengths):
            raise AssertionError("zero-length summands must be dropped")
        if list(self.lengths) != sorted(self.lengths, reverse=True):
            raise AssertionError("lengths must be sorted descending")

    @classmethod
    def from_lengths(cls, lengths: dict[int, int], verified_by_oracle: bool | None = None) -> TorsionPartition:
        kept = {l: n for l, n in lengths.items() if n > 0}
        return cls(tuple(sorted(kept.values(), reverse=True)), kept, verified_by_oracle)

    @property
    def length(self) -> int:
        return sum(self.lengths)

    def __iter__(self):
        return iter(self.lengths)


def p_adic_valuation(l: int, p: int) -> int:
    v = 0
    while l % p == 0:
        l //= p
        v += 1
    return v


def check_breaks(p: int, n: int, breaks) -> tuple[int, ...]:
    """Validate a lower break sequence of a cyclic group of order p^n.

    For n >= 2 the classical congruences b_{j+1} = b_j mod p^j for cyclic
    p-power extensions are enforced.
    """
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    if n < 1:
        raise InputError("n must be >= 1")
    breaks = tuple(int(b) for b in breaks)
    if len(breaks) != n:
        raise InputError(f"expected {n} breaks, got {len(breaks)}")
    if breaks[0] < 1:
        raise InputError("breaks must be >= 1")
    for j in range(1, n):
        if breaks[j] <= breaks[j - 1]:
            raise InputError("breaks must be strictly increasing")
        if (breaks[j] - breaks[j - 1]) % p**j:
            raise InputError(f"break {breaks[j]} is not congruent to {breaks[j - 1]} mod {p}^{j}")
    return breaks


def _check_tame(p: int, d: int):
    if d < 1 or math.gcd(d, p) != 1:
        raise InputError(f"tame degree d = {d} must be positive and prime to p = {p}")


def sen_i_function(p: int, n: int, breaks) -> dict[int, int]:
    breaks = check_breaks(p, n, breaks)
    return {l: breaks[p_adic_valuation(l, p)] for l in range(1, p**n)}


def sen_partition(p: int, n: int, d: int, breaks) -> TorsionPartition:
    _check_tame(p, d)
    q = p**n
    i = sen_i_function(p, n, breaks)
    lengths = {l: (l + i[l] + (d - 1) * q) // (d * q) for l in range(1, q)}
    return TorsionPartition.from_lengths(lengths, verified_by_oracle=None if n == 1 else False)


def sen_intermediate(p: int, n: int, breaks) -> dict[int, int]:
    """nt_l = floor((l + i(l)) / p^n): the lengths of H^1(G_1, R') over the G_1-invariants."""
    q = p**n
    i = sen_i_function(p, n, breaks)
    return {l: (l + i[l]) // q for l in range(1, q)}


def kock_transform(p: int, n: int, d: int, breaks) -> TorsionPartition:
    _check_tame(p, d)
    lengths = {}
    for l, nt in sen_intermediate(p, n, breaks).items():
        if nt == 0:
            continue
        lengths[l] = 1 + (nt - 1) // d
    return TorsionPartition.from_lengths(lengths, verified_by_oracle=None if n == 1 else False)


@dataclass(frozen=True)
class ExampleComparison:
    p: int
    m: int
    quotient: int  # floor(m / p)
    remainder: int  # m mod p
    displayed: TorsionPartition
    formula: TorsionPartition

    @property
    def agree(self) -> bool:
        return self.displayed.lengths == self.formula.lengths


def _multiset(counts: dict[int, int]) -> TorsionPartition:
    lengths = []
    for size, mult in counts.items():
        if size > 0:
            lengths.extend([size] * mult)
    return TorsionPartition(tuple(sorted(lengths, reverse=True)))


def example_closed_form(p: int, m: int) -> ExampleComparison:
    """Artin-Schreier break m: the displayed closed form next to direct evaluation of the formula.

    Writing m = q p + r, the displayed decomposition has q copies of length q+1
    and p - r - 1 copies of length q; evaluating the general formula gives r
    copies of length q+1 and p - 1 - r copies of length q.
    """
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    if m < 1 or math.gcd(m, p) != 1:
        raise InputError(f"m = {m} must be positive and prime to p")
    q_m, r_m = divmod(m, p)
    displayed = _multiset({q_m + 1: q_m, q_m: p - r_m - 1})
    formula = sen_partition(p, 1, 1, [m])
    return ExampleComparison(p, m, q_m, r_m, displayed, formula)
