"""Brute-force H^1(G, R') by linear algebra over k.

R' is infinite-dimensional over k, so the computation runs on the truncations
M_N = R'/m'^N.  H^1(G, M_N) itself is *not* a truncation of H^1(G, R'): the
connecting map into H^2(G, m'^N) contributes extra classes.  Instead we use

    Z_N = image of Z^1(G, M_N') in M_N^G       (cocycles that lift to level N')
    H_N = Z_N / B^1(G, M_N)

which equals H^1(G, R') / t^k H^1(G, R') when N = k e and N' - N is large
enough.  Stabilization in k then recovers H^1(G, R') with its t-action.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from . import linalg
from .errors import GroupRelationError, InputError, ResourceError, StabilizationError
from .extension import LocalExtension, TruncatedModule, truncate_to_matrices
from .groups import GroupTable

log = logging.getLogger(__name__)

MAX_DIM = 5000
MAX_DOUBLINGS = 4


@dataclass(frozen=True)
class CohomologyResult:
    dim_z1: int
    dim_b1: int
    dim_h1: int
    t_action: np.ndarray = field(repr=False, compare=False)
    partition: tuple[int, ...]
    level: int
    lift_level: int
    method: str = "tree"
    stabilization_level: int | None = None

    def __post_init__(self):
        if sum(self.partition) != self.dim_h1:
            raise AssertionError(f"partition {self.partition} does not sum to dim H^1 = {self.dim_h1}")


@dataclass
class CocycleSpace:
    """Z^1(G, M) at the lift level, in generator coordinates (c_s)_s stacked."""

    basis: np.ndarray
    rho: dict[int, np.ndarray]
    # c_g = expr[g] @ (c_s)_s for every group element g
    expr: dict[int, np.ndarray]
    module: TruncatedModule
    group: GroupTable
    gen_names: tuple[str, ...]


def _gen_matrices(group: GroupTable, module: TruncatedModule) -> list[np.ndarray]:
    mats = []
    for name in group.gen_names:
        if name == "id":
            mats.append(linalg.identity(module.dim))
        elif name not in module.gens:
            raise InputError(f"module has no matrix for generator {name!r}")
        else:
            mats.append(module.gens[name])
    return mats


def _check_dim(group: GroupTable, module: TruncatedModule, max_dim: int):
    if len(group.generators) * module.N > max_dim:
        raise ResourceError(
            f"cocycle system of dimension {len(group.generators) * module.N} over k exceeds bound {max_dim}"
        )


def cocycles_tree(group: GroupTable, module: TruncatedModule, max_dim: int = MAX_DIM) -> CocycleSpace:
    """Solve c_{sh} = c_s + s c_h for all generators s and all h.

    The equations along a breadth-first spanning tree of the Cayley graph express
    every c_g through the generator values; the remaining edges are the
    constraints, folded into the solution space one at a time.
    """
    _check_dim(group, module, max_dim)
    p = module.ctx.p
    n = module.dim
    gens = group.generators
    mats = _gen_matrices(group, module)
    width = len(gens) * n
    ident = group.identity
    rho = {ident: linalg.identity(n)}
    expr = {ident: np.zeros((n, width), dtype=np.int64)}
    sol = linalg.identity(width)
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for gi, s in enumerate(gens):
            g = group.mul(s, h)
            step = linalg.matmul(mats[gi], expr[h], p)
            step[:, gi * n : (gi + 1) * n] += linalg.identity(n)
            step %= p
            rho_g = linalg.matmul(mats[gi], rho[h], p)
            if g not in expr:
                expr[g] = step
                rho[g] = rho_g
                queue.append(g)
                continue
            if not np.array_equal(rho[g], rho_g):
                raise GroupRelationError(
                    f"module matrices violate the group law at {group.elements[s]!r} * {group.elements[h]!r}"
                )
            constraint = (expr[g] - step) % p
            reduced = linalg.matmul(constraint, sol, p)
            if reduced.any():
                sol = linalg.matmul(sol, linalg.nullspace(reduced, p), p)
    return CocycleSpace(sol, rho, expr, module, group, group.gen_names)


def cocycles_full(group: GroupTable, module: TruncatedModule, max_dim: int = MAX_DIM) -> CocycleSpace:
    """Kernel of the assembled system in all unknowns (c_g)_{g in G}; small instances only."""
    if len(group) * module.N > max_dim:
        raise ResourceError(f"full cocycle system of dimension {len(group) * module.N} exceeds bound {max_dim}")
    p = module.ctx.p
    n = module.dim
    order = len(group)
    mats = _gen_matrices(group, module)
    blocks = []

    def row():
        return np.zeros((n, order * n), dtype=np.int64)

    r = row()
    r[:, group.identity * n : (group.identity + 1) * n] = linalg.identity(n)
    blocks.append(r)
    for gi, s in enumerate(group.generators):
        for h in range(order):
            g = group.mul(s, h)
            r = row()
            r[:, g * n : (g + 1) * n] += linalg.identity(n)
            r[:, s * n : (s + 1) * n] -= linalg.identity(n)
            r[:, h * n : (h + 1) * n] -= mats[gi]
            blocks.append(r % p)
    kernel = linalg.nullspace(np.concatenate(blocks), p)
    gen_rows = np.concatenate([kernel[s * n : (s + 1) * n] for s in group.generators])
    basis = linalg.column_basis(gen_rows, p)
    # rho and expressions are only needed downstream through generator data
    tree = cocycles_tree(group, module, max_dim)
    return CocycleSpace(basis, tree.rho, tree.expr, module, group, group.gen_names)


def cocycles_cyclic(group: GroupTable, module: TruncatedModule, max_dim: int = MAX_DIM) -> CocycleSpace:
    """Z^1 = ker(norm) for cyclic G, transported to generator coordinates."""
    g0 = group.cyclic_generator()
    if g0 is None:
        raise InputError("group is not cyclic")
    _check_dim(group, module, max_dim)
    p = module.ctx.p
    n = module.dim
    tree = cocycles_tree_relations_only(group, module)
    rho = tree["rho"]
    order = len(group)
    norm = np.zeros((n, n), dtype=np.int64)
    x = group.identity
    for _ in range(order):
        norm = (norm + rho[x]) % p
        x = group.mul(g0, x)
    kernel = linalg.nullspace(norm, p)
    # c_{g0^k} = (1 + g0 + ... + g0^(k-1)) c_{g0}
    partial = {group.identity: np.zeros((n, n), dtype=np.int64)}
    acc = np.zeros((n, n), dtype=np.int64)
    x = group.identity
    for _ in range(order - 1):
        acc = (acc + rho[x]) % p
        x = group.mul(g0, x)
        partial[x] = acc.copy()
    basis = np.concatenate([linalg.matmul(partial[s], kernel, p) for s in group.generators])
    basis = linalg.column_basis(basis, p)
    return CocycleSpace(basis, rho, tree["expr"], module, group, group.gen_names)


def cocycles_tree_relations_only(group: GroupTable, module: TruncatedModule) -> dict:
    """rho(g) for all g along the BFS tree (no cocycle solve)."""
    p = module.ctx.p
    mats = _gen_matrices(group, module)
    rho = {group.identity: linalg.identity(module.dim)}
    queue = deque([group.identity])
    while queue:
        h = queue.popleft()
        for gi, s in enumerate(group.generators):
            g = group.mul(s, h)
            rg = linalg.matmul(mats[gi], rho[h], p)
            if g not in rho:
                rho[g] = rg
                queue.append(g)
            elif not np.array_equal(rho[g], rg):
                raise GroupRelationError("module matrices violate the group law")
    return {"rho": rho, "expr": None}


_METHODS = {"tree": cocycles_tree, "full": cocycles_full, "cyclic": cocycles_cyclic}


def cocycle_space(group: GroupTable, module: TruncatedModule, method: str = "tree", max_dim: int = MAX_DIM) -> CocycleSpace:
    try:
        solver = _METHODS[method]
    except KeyError:
        raise InputError(f"unknown cocycle method {method!r}") from None
    return solver(group, module, max_dim)


# -- quotient and invariant factors ----------------------------------------


def _project(basis: np.ndarray, ngen: int, n_from: int, n_to: int) -> np.ndarray:
    return np.concatenate([basis[i * n_from : i * n_from + n_to] for i in range(ngen)])


def _coboundaries(mats: list[np.ndarray], p: int) -> np.ndarray:
    n = mats[0].shape[0]
    return np.concatenate([(m - linalg.identity(n)) % p for m in mats])


def _block_diag(a: np.ndarray, copies: int) -> np.ndarray:
    n = a.shape[0]
    out = np.zeros((n * copies, n * copies), dtype=np.int64)
    for i in range(copies):
        out[i * n : (i + 1) * n, i * n : (i + 1) * n] = a
    return out


def partition_from_nilpotent(t: np.ndarray, p: int, e: int = 1) -> tuple[int, ...]:
    """Jordan type of a nilpotent matrix from kernel dimensions of its powers (dims over GF(p^e))."""
    n = t.shape[0]
    if n == 0:
        return ()
    kernel_dims = [0]
    power = linalg.identity(n)
    while kernel_dims[-1] < n:
        power = linalg.matmul(power, t, p)
        kd = n - linalg.rank(power, p)
        if kd == kernel_dims[-1]:
            raise AssertionError("t-action on H^1 is not nilpotent")
        kernel_dims.append(kd)
    if any(k % e for k in kernel_dims):
        raise AssertionError("kernel dimensions not divisible by [k : GF(p)]")
    kd = [k // e for k in kernel_dims]
    # conjugate partition: number of Jordan blocks of size >= j
    conj = [kd[j] - kd[j - 1] for j in range(1, len(kd))]
    return tuple(sum(1 for c in conj if c >= l) for l in range(1, conj[0] + 1))


def _quotient(zbar: np.ndarray, bbar: np.ndarray, tmat: np.ndarray, p: int):
    """Basis of a complement of bbar in zbar and the induced t-action on zbar / bbar."""
    zb = linalg.column_basis(zbar, p)
    bb = linalg.column_basis(bbar, p)
    nb = bb.shape[1]
    both = np.concatenate([bb, zb], axis=1)
    _, pivots = linalg.rref(both, p)
    if pivots[:nb] != list(range(nb)):
        raise AssertionError("coboundaries are not independent")
    comp = zb[:, [c - nb for c in pivots[nb:]]]
    if not comp.shape[1]:
        return zb.shape[1], nb, np.zeros((0, 0), dtype=np.int64)
    full = np.concatenate([bb, comp], axis=1)
    coeffs = linalg.solve_in_span(full, linalg.matmul(tmat, comp, p), p)
    return len(pivots), nb, coeffs[nb:]


def h1_from_cocycles(space: CocycleSpace, level: int | None = None, method: str = "tree") -> CohomologyResult:
    module = space.module
    p = module.ctx.p
    e_k = module.ctx.e
    level = module.N if level is None else level
    if level > module.N:
        raise InputError("level exceeds the lift level")
    small = module.restrict(level)
    ngen = len(space.gen_names)
    zbar = _project(space.basis, ngen, module.dim, small.dim)
    mats = _gen_matrices(space.group, small)
    bbar = _coboundaries(mats, p)
    tmat = _block_diag(small.t, ngen)
    dz, db, t_h = _quotient(zbar, bbar, tmat, p)
    return CohomologyResult(
        dim_z1=small.kdim(dz),
        dim_b1=small.kdim(db),
        dim_h1=small.kdim(dz - db),
        t_action=t_h,
        partition=partition_from_nilpotent(t_h, p, e_k),
        level=level,
        lift_level=module.N,
        method=method,
    )


def h1_cocycle(
    group: GroupTable, module: TruncatedModule, level: int | None = None, method: str = "tree", max_dim: int = MAX_DIM
) -> CohomologyResult:
    """H^1(G, R') / t^k at ``level`` from cocycles that lift to ``module.N``.

    With ``level=None`` this is the plain H^1(G, R'/m'^N).
    """
    return h1_from_cocycles(cocycle_space(group, module, method, max_dim), level, method)


def wild_subgroup(group: GroupTable) -> list[int]:
    """Indices of the Sylow p-part of a group (j, a) = tau^j sigma^a: the elements with j = 0."""
    return [i for i, (j, _) in enumerate(group.elements) if j == 0]


@dataclass
class _InvariantsData:
    sub: GroupTable
    space: CocycleSpace
    # averaging operator over G/G_1 on stacked generator values, at the lift level
    avg: np.ndarray
    module: TruncatedModule


def _invariants_setup(group: GroupTable, sub_members: list[int], module: TruncatedModule, max_dim: int) -> _InvariantsData:
    p = module.ctx.p
    if not group.is_normal(sub_members):
        raise GroupRelationError("subgroup is not normal")
    quotient_order = len(group) // len(sub_members)
    if quotient_order % p == 0:
        raise InputError("index of the subgroup must be prime to p")
    members = set(sub_members)
    sub_gens = [g for g in group.generators if g in members]
    if not sub_gens:
        raise InputError("subgroup must be generated by a subset of the group generators")
    names = [group.gen_names[group.generators.index(g)] for g in sub_gens]
    sub, emb = group.subgroup(sub_members, sub_gens, names)
    space = cocycles_tree(sub, module, max_dim)
    rho_g = cocycles_tree_relations_only(group, module)["rho"]
    reps, covered = [], set()
    for h in range(len(group)):
        if h not in covered:
            reps.append(h)
            covered.update(group.mul(h, x) for x in sub_members)
    pos = {g: i for i, g in enumerate(emb)}
    width = len(names) * module.dim
    avg = np.zeros((width, width), dtype=np.int64)
    for h in reps:
        # (h c)_s = h c_{h^-1 s h}, with c_x written through the generator values
        rows = [linalg.matmul(rho_g[h], space.expr[pos[group.conjugate(h, emb[s])]], p) for s in sub.generators]
        avg = (avg + np.concatenate(rows)) % p
    avg = (avg * pow(quotient_order, -1, p)) % p
    return _InvariantsData(sub, space, avg, module)


def _invariants_at(data: _InvariantsData, level: int) -> CohomologyResult:
    module = data.module
    p = module.ctx.p
    if level > module.N:
        raise InputError("level exceeds the lift level")
    small = module.restrict(level)
    ngen = len(data.sub.gen_names)
    # the truncation M_N' -> M_N is G-equivariant, so the operator restricts blockwise
    idx = np.concatenate([np.arange(i * module.dim, i * module.dim + small.dim) for i in range(ngen)])
    avg = data.avg[np.ix_(idx, idx)]
    zbar = _project(data.space.basis, ngen, module.dim, small.dim)
    bbar = _coboundaries(_gen_matrices(data.sub, small), p)
    w = np.concatenate([linalg.matmul(avg, zbar, p), bbar], axis=1)
    dz, db, t_h = _quotient(w, bbar, _block_diag(small.t, ngen), p)
    return CohomologyResult(
        dim_z1=small.kdim(dz),
        dim_b1=small.kdim(db),
        dim_h1=small.kdim(dz - db),
        t_action=t_h,
        partition=partition_from_nilpotent(t_h, p, module.ctx.e),
        level=level,
        lift_level=module.N,
        method="invariants",
    )


def _trivial_result(level: int, lift: int, method: str) -> CohomologyResult:
    return CohomologyResult(0, 0, 0, np.zeros((0, 0), dtype=np.int64), (), level, lift, method)


def h1_invariants_of_subgroup(
    group: GroupTable,
    sub_members: list[int],
    module: TruncatedModule,
    level: int | None = None,
    max_dim: int = MAX_DIM,
) -> CohomologyResult:
    """H^1(G_1, R')^{G/G_1} with G/G_1 acting by (h c)(x) = h c(h^-1 x h).

    The invariants are the image of the averaging operator over coset
    representatives, which is a projector because |G/G_1| is prime to p.
    """
    level = module.N if level is None else level
    if len(sub_members) == 1:
        return _trivial_result(level, module.N, "invariants")
    return _invariants_at(_invariants_setup(group, sub_members, module, max_dim), level)


# -- stabilization -----------------------------------------------------------


def _level_solver(ext: LocalExtension, lift: int, method: str, max_dim: int):
    """A function level -> CohomologyResult sharing one cocycle solve at ``lift``."""
    work = ext if lift <= ext.precision else ext.with_precision(lift)
    module = truncate_to_matrices(work, lift)
    group = ext.group
    if method == "invariants":
        members = wild_subgroup(group)
        if len(members) == 1:
            return lambda level: _trivial_result(level, lift, method)
        data = _invariants_setup(group, members, module, max_dim)
        return lambda level: _invariants_at(data, level)
    space = cocycle_space(group, module, method, max_dim)
    return lambda level: h1_from_cocycles(space, level, method)


def stabilized_h1(
    ext: LocalExtension,
    method: str = "tree",
    lift: int | None = None,
    runs: int = 3,
    max_dim: int = MAX_DIM,
    doublings: int = MAX_DOUBLINGS,
) -> CohomologyResult:
    """H^1(G, R') as the first partition repeated at ``runs`` consecutive levels N, N+e, ...

    Levels are multiples of e; the lift level starts at 8e (or ``lift``) and
    doubles whenever no stable run fits below half of it.  ``method`` is a
    cocycle solver name or "invariants" for H^1(G_1, R')^{G/G_1}.
    """
    e = ext.e
    lift = lift or 8 * e
    tried = []
    for _ in range(doublings + 1):
        if len(ext.group.generators) * lift > max_dim:
            break
        solve = _level_solver(ext, lift, method, max_dim)
        history = []
        for k in range(1, lift // (2 * e) + 1):
            res = solve(k * e)
            history.append(res)
            log.debug("level %d (lift %d): %s", k * e, lift, res.partition)
            tail = history[-runs:]
            if len(tail) == runs and len({r.partition for r in tail}) == 1:
                first = tail[0]
                return replace(first, lift_level=lift, stabilization_level=first.level)
        tried.append((lift, [r.partition for r in history]))
        lift *= 2
    raise StabilizationError(
        f"no stable partition for {ext!r} within max_dim {max_dim}; lift levels and partitions tried: {tried}"
    )


def recheck_at(ext: LocalExtension, result: CohomologyResult, extra_levels: int = 3, method: str | None = None) -> CohomologyResult:
    """Recompute at stabilization level + extra_levels * e with the lift margin doubled."""
    level = result.level + extra_levels * ext.e
    lift = max(2 * result.lift_level, 2 * level)
    return _level_solver(ext, lift, method or result.method, MAX_DIM * 4)(level)
