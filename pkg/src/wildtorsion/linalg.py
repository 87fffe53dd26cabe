"""Dense linear algebra over GF(p) on int64 numpy arrays.

Matrices over GF(p^e) are handled by writing each entry as its e x e
multiplication matrix over GF(p) (``blow_up``); all dimensions reported by
callers are divided back by e.
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx, FieldElem

# products are formed in float64 (BLAS); exact while the accumulated sum stays
# below 2**53
_FLOAT_SAFE = 2**52


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] * (p - 1) ** 2 < _FLOAT_SAFE:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    inverses = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r, c:] = (a[r, c:] * inverses[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[hit, c:] - np.outer(col[hit], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as the columns of the returned matrix."""
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Independent columns spanning the column space of a."""
    if a.shape[1] == 0:
        return a.copy()
    r, _ = rref(a.T, p)
    return r.T.copy()


def solve_in_span(basis: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray:
    """Coefficients x with basis @ x = vectors; basis must have independent columns."""
    k = basis.shape[1]
    aug = np.concatenate([basis, vectors], axis=1)
    r, pivots = rref(aug, p)
    if any(pc >= k for pc in pivots):
        raise ValueError("vectors not in the span of basis")
    coeffs = np.zeros((k, vectors.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        coeffs[pc] = r[i, k:]
    return coeffs


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matrix_power(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


def mult_matrix(x: FieldElem) -> np.ndarray:
    """Matrix over GF(p) of multiplication by x in the power basis."""
    ctx = x.ctx
    out = np.zeros((ctx.e, ctx.e), dtype=np.int64)
    basis_elem = ctx.one
    a = ctx.gen
    for j in range(ctx.e):
        out[:, j] = (x * basis_elem).coeffs
        basis_elem = basis_elem * a
    return out


def blow_up(ctx: FieldCtx, entries: dict[tuple[int, int], FieldElem], shape: tuple[int, int]) -> np.ndarray:
    """GF(p) form of a sparse matrix over GF(p^e) given as {(row, col): value}."""
    e = ctx.e
    out = np.zeros((shape[0] * e, shape[1] * e), dtype=np.int64)
    cache: dict[FieldElem, np.ndarray] = {}
    for (i, j), x in entries.items():
        if not x:
            continue
        if x not in cache:
            cache[x] = mult_matrix(x)
        out[i * e : (i + 1) * e, j * e : (j + 1) * e] = cache[x]
    return out
