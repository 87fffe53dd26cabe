"""Finite groups given by an explicit multiplication table."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import GroupRelationError


@dataclass(frozen=True)
class GroupTable:
    elements: tuple[Hashable, ...]
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    gen_names: tuple[str, ...]

    @classmethod
    def from_rule(
        cls,
        elements: Sequence[Hashable],
        mul: Callable[[Hashable, Hashable], Hashable],
        generators: Sequence[Hashable],
        gen_names: Sequence[str],
    ) -> GroupTable:
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
        group = cls(elements, table, tuple(index[g] for g in generators), tuple(gen_names))
        group.check()
        return group

    def __len__(self):
        return len(self.elements)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def identity(self) -> int:
        n = len(self)
        for i in range(n):
            if all(self.table[i][j] == j for j in range(n)):
                return i
        raise GroupRelationError("no identity element")

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for a in range(len(self)):
            hits = [b for b in range(len(self)) if self.table[a][b] == e]
            if len(hits) != 1 or self.table[hits[0]][a] != e:
                raise GroupRelationError(f"element {self.elements[a]!r} has no two-sided inverse")
            inv.append(hits[0])
        return tuple(inv)

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        for _ in range(k % self.order(a)):
            out = self.mul(out, a)
        return out

    def order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def conjugate(self, h: int, x: int) -> int:
        """h^-1 x h."""
        return self.mul(self.mul(self.inverse(h), x), h)

    def check(self):
        n = len(self)
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise GroupRelationError("multiplication table is not a Latin square")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise GroupRelationError("multiplication is not associative")
        self._inverses  # noqa: B018 - raises on failure
        if set(self.closure(self.generators)) != set(range(n)):
            raise GroupRelationError("generators do not generate the group")

    def closure(self, gens: Sequence[int]) -> list[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    g = self.mul(s, h)
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(seen)

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def is_normal(self, sub: Sequence[int]) -> bool:
        s = set(sub)
        return all(self.conjugate(h, x) in s for h in range(len(self)) for x in s)

    def cyclic_generator(self) -> int | None:
        for a in range(len(self)):
            if self.order(a) == len(self):
                return a
        return None

    def subgroup(self, members: Sequence[int], gens: Sequence[int], gen_names: Sequence[str]) -> tuple[GroupTable, list[int]]:
        """Subgroup as its own table, plus the embedding (sub index -> self index)."""
        members = sorted(members)
        if set(self.closure(gens)) != set(members):
            raise GroupRelationError("generators do not generate the requested subgroup")
        pos = {g: i for i, g in enumerate(members)}
        table = tuple(tuple(pos[self.mul(a, b)] for b in members) for a in members)
        sub = GroupTable(
            tuple(self.elements[g] for g in members),
            table,
            tuple(pos[g] for g in gens),
            tuple(gen_names),
        )
        sub.check()
        return sub, members


def metacyclic_group(d: int, q: int, r: int) -> GroupTable:
    """<tau, sigma | tau^d, sigma^q, tau sigma tau^-1 = sigma^r>, elements (j, a) = tau^j sigma^a.

    Either factor may be trivial.  r must be a unit mod q with r^d = 1 mod q.
    """
    if q > 1 and pow(r, d, q) != 1 % q:
        raise GroupRelationError(f"r = {r} does not have order dividing {d} mod {q}")
    rinv = pow(r, -1, q) if q > 1 else 1

    def mul(x, y):
        (j1, a1), (j2, a2) = x, y
        # sigma^a1 tau^j2 = tau^j2 sigma^(a1 * r^-j2)
        return ((j1 + j2) % d, (a1 * pow(rinv, j2, q) + a2) % q if q > 1 else 0)

    elements = [(j, a) for j in range(d) for a in range(q)]
    gens, names = [], []
    if d > 1:
        gens.append((1, 0))
        names.append("tau")
    if q > 1:
        gens.append((0, 1))
        names.append("sigma")
    if not gens:
        gens, names = [(0, 0)], ["id"]
    return GroupTable.from_rule(elements, mul, gens, names)
