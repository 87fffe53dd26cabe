import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildtorsion import linalg
from wildtorsion.cohomology import (
    cocycle_space,
    h1_cocycle,
    h1_from_cocycles,
    h1_invariants_of_subgroup,
    partition_from_nilpotent,
    recheck_at,
    stabilized_h1,
    wild_subgroup,
)
from wildtorsion.errors import GroupRelationError, InputError, ResourceError, StabilizationError
from wildtorsion.extension import ExtensionSpec, TruncatedModule, build_extension, truncate_to_matrices


def ext(p, d=1, m=None):
    return build_extension(ExtensionSpec(p, d, m))


def lifted(e, level, factor=4):
    """Module at lift level factor * level, for H^1(G, R') / t^k at ``level``."""
    lift = factor * level
    return truncate_to_matrices(e.with_precision(max(lift, e.precision)), lift)


def test_examples_at_fixed_level():
    e = ext(2, 1, 1)
    assert h1_cocycle(e.group, lifted(e, 16), level=16).partition == (1,)
    e = ext(3, 1, 4)
    assert h1_cocycle(e.group, lifted(e, 48), level=48).partition == (2, 1)
    e = ext(7, 3)
    assert h1_cocycle(e.group, truncate_to_matrices(e, 12)).partition == ()


def test_plain_truncation_has_extra_classes():
    # H^1(G, R'/m'^N) picks up classes from H^2(G, m'^N); the lifted form does not
    e = ext(2, 1, 1)
    plain = h1_cocycle(e.group, truncate_to_matrices(e, 16))
    assert plain.partition == (1, 1)


@pytest.mark.parametrize(
    "p,d,m,expected",
    [(2, 1, 1, (1,)), (3, 1, 4, (2, 1)), (5, 1, 3, (1, 1, 1)), (5, 1, 7, (2, 2, 1, 1)), (7, 3, None, ()), (2, 3, None, ())],
)
def test_stabilized(p, d, m, expected):
    e = ext(p, d, m)
    res = stabilized_h1(e)
    assert res.partition == expected
    assert res.stabilization_level is not None
    assert res.dim_z1 - res.dim_b1 == sum(res.partition) == res.dim_h1
    assert recheck_at(e, res).partition == expected


def test_stabilization_level_examples():
    assert stabilized_h1(ext(2, 1, 1)).stabilization_level <= 16
    assert stabilized_h1(ext(7, 3)).stabilization_level == 3


@pytest.mark.parametrize("p,m,N", [(2, 1, 12), (2, 3, 16), (3, 1, 12), (3, 2, 18), (5, 2, 20), (3, 4, 24)])
def test_solvers_agree_on_cyclic(p, m, N):
    e = ext(p, 1, m)
    mod = lifted(e, N, factor=2)
    parts = {meth: h1_cocycle(e.group, mod, N, meth).partition for meth in ("tree", "full", "cyclic")}
    assert len(set(parts.values())) == 1, parts
    plain = {meth: h1_cocycle(e.group, truncate_to_matrices(e.with_precision(max(N, e.precision)), N), None, meth).partition for meth in ("tree", "full", "cyclic")}
    assert len(set(plain.values())) == 1, plain


@pytest.mark.parametrize("p,d,m", [(3, 2, 2), (3, 2, 1), (2, 3, 3), (5, 2, 1)])
def test_tree_matches_full_on_compositum(p, d, m):
    e = ext(p, d, m)
    mod = lifted(e, 3 * e.e, factor=2)
    a = h1_cocycle(e.group, mod, 3 * e.e, "tree")
    b = h1_cocycle(e.group, mod, 3 * e.e, "full")
    assert (a.partition, a.dim_z1, a.dim_b1) == (b.partition, b.dim_z1, b.dim_b1)


def test_cyclic_solver_rejects_noncyclic():
    e = ext(3, 2, 1)  # S_3
    with pytest.raises(InputError):
        h1_cocycle(e.group, truncate_to_matrices(e, 12), method="cyclic")


@pytest.mark.parametrize("p,d,m", [(3, 2, 2), (3, 2, 1), (2, 3, 3), (5, 2, 3), (5, 3, 3), (3, 2, 7)])
def test_invariants_match_full_group(p, d, m):
    e = ext(p, d, m)
    a = stabilized_h1(e)
    b = stabilized_h1(e, method="invariants")
    assert a.partition == b.partition
    mod = lifted(e, 4 * e.e)
    direct = h1_invariants_of_subgroup(e.group, wild_subgroup(e.group), mod, 4 * e.e)
    assert direct.partition == h1_cocycle(e.group, mod, 4 * e.e).partition


def test_invariants_degenerate_cases():
    e = ext(3, 1, 4)
    mod = lifted(e, 12)
    assert h1_invariants_of_subgroup(e.group, wild_subgroup(e.group), mod, 12).partition == (
        h1_cocycle(e.group, mod, 12).partition
    )
    e = ext(7, 3)
    mod = truncate_to_matrices(e, 9)
    assert h1_invariants_of_subgroup(e.group, wild_subgroup(e.group), mod).partition == ()


def test_invariants_need_normal_subgroup():
    e = ext(3, 2, 1)
    tame = [i for i, (_, a) in enumerate(e.group.elements) if a == 0]
    with pytest.raises(GroupRelationError):
        h1_invariants_of_subgroup(e.group, tame, truncate_to_matrices(e, 12))


@pytest.mark.parametrize("p,d,m", [(2, 1, 3), (3, 2, 2), (3, 2, 1), (5, 1, 2)])
def test_cocycles_killed_by_group_order(p, d, m):
    # |G| c_h = x - h x with x = sum_g c_g; in characteristic p the left side
    # vanishes, so sum_g c_g must be G-invariant for every cocycle
    e = ext(p, d, m)
    mod = truncate_to_matrices(e, 4 * e.e)
    space = cocycle_space(e.group, mod)
    q = mod.ctx.p
    assert len(e.group) % q == 0
    total = sum(space.expr[g] for g in range(len(e.group))) % q
    x = linalg.matmul(total, space.basis, q)
    for s in e.group.generators:
        assert np.array_equal(linalg.matmul(space.rho[s], x, q), x)


def test_group_relation_violation_detected():
    e = ext(3, 1, 2)
    mod = truncate_to_matrices(e, 9)
    bad = TruncatedModule(mod.ctx, mod.N, mod.ram_index, mod.basis, {"sigma": linalg.identity(9) + np.eye(9, k=-1, dtype=np.int64)}, mod.t, {})
    with pytest.raises(GroupRelationError):
        h1_cocycle(e.group, bad)


def test_resource_bounds():
    e = ext(5, 1, 7)
    with pytest.raises(ResourceError):
        h1_cocycle(e.group, truncate_to_matrices(e, 50), max_dim=20)
    with pytest.raises(StabilizationError):
        stabilized_h1(e, max_dim=30)


def test_level_beyond_lift():
    e = ext(2, 1, 1)
    space = cocycle_space(e.group, truncate_to_matrices(e, 8))
    with pytest.raises(InputError):
        h1_from_cocycles(space, 9)


def jordan(parts):
    n = sum(parts)
    t = np.zeros((n, n), dtype=np.int64)
    pos = 0
    for size in parts:
        for i in range(size - 1):
            t[pos + i + 1, pos + i] = 1
        pos += size
    return t


@given(st.lists(st.integers(1, 5), min_size=0, max_size=6), st.randoms(use_true_random=False))
def test_partition_from_conjugated_jordan(parts, rnd):
    p = 5
    t = jordan(parts)
    n = t.shape[0]
    if n:
        # conjugate by a random unipotent matrix (always invertible)
        u = np.tril(np.array([[rnd.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64), -1) + np.eye(n, dtype=np.int64)
        uinv = linalg.identity(n)
        nil = (u - np.eye(n, dtype=np.int64)) % p
        term = linalg.identity(n)
        for _ in range(n):
            term = (-linalg.matmul(term, nil, p)) % p
            uinv = (uinv + term) % p
        t = linalg.matmul(linalg.matmul(u, t, p), uinv, p)
    assert partition_from_nilpotent(t, p) == tuple(sorted(parts, reverse=True))


def test_partition_over_extension_field():
    # a k-linear nilpotent blown up to GF(p) doubles every kernel dimension
    t = jordan([3, 1])
    big = np.kron(t, np.eye(2, dtype=np.int64))
    assert partition_from_nilpotent(big, 2, e=2) == (3, 1)


def test_non_nilpotent_rejected():
    with pytest.raises(AssertionError):
        partition_from_nilpotent(np.eye(2, dtype=np.int64), 3)
