"""Linear algebra over GF(q) on uint8 index arrays.

Everything here works on stacks of matrices with shape ``(..., rows, cols)``
so that the enumeration engine can push tens of thousands of subspaces
through one elimination at a time.  Single-matrix helpers are thin
wrappers around the batched kernels.
"""

from __future__ import annotations

import numpy as np

from .field import FieldSpec


def as_index_array(m, F: FieldSpec) -> np.ndarray:
    a = np.asarray(m)
    if a.size and (a.min() < 0 or a.max() >= F.order):
        raise ValueError(f"entries out of range for GF({F})")
    return a.astype(np.uint8)


def batch_eliminate(X: np.ndarray, F: FieldSpec, det: bool = False):
    """Gauss-Jordan elimination of every matrix in the stack ``X``.

    Returns ``(R, rank, pivots)`` where ``R`` is the reduced row-echelon
    form, ``rank`` has shape ``(M,)`` and ``pivots`` is ``(M, rows)`` with
    ``-1`` padding.  With ``det=True`` (square input) the determinant is
    returned as a fourth value.
    """
    X = np.array(X, dtype=np.uint8, copy=True)
    lead = X.shape[:-2]
    r, c = X.shape[-2:]
    X = X.reshape((-1, r, c))
    M = X.shape[0]
    row = np.zeros(M, dtype=np.intp)
    pivots = np.full((M, r), -1, dtype=np.intp)
    dets = np.ones(M, dtype=np.uint8)
    minus_one = F.neg_table[1]
    rows_idx = np.arange(r)
    for col in range(c):
        if r == 0:
            break
        avail = (X[:, :, col] != 0) & (rows_idx[None, :] >= row[:, None])
        has = avail.any(axis=1)
        if not has.any():
            continue
        idx = np.flatnonzero(has)
        pr = avail[idx].argmax(axis=1)
        rr = row[idx]
        swap = pr != rr
        if swap.any():
            si = idx[swap]
            a = X[si, rr[swap]].copy()
            X[si, rr[swap]] = X[si, pr[swap]]
            X[si, pr[swap]] = a
            dets[si] = F.mul_table[dets[si], minus_one]
        pv = X[idx, rr, col]
        dets[idx] = F.mul_table[dets[idx], pv]
        prow = F.mul_table[F.inv_table[pv][:, None], X[idx, rr]]
        X[idx, rr] = prow
        f = X[idx, :, col].copy()
        f[np.arange(idx.size), rr] = 0
        X[idx] = F.sub(X[idx], F.mul_table[f[:, :, None], prow[:, None, :]])
        pivots[idx, rr] = col
        row[idx] += 1
    rank = row
    out = (X.reshape(lead + (r, c)), rank.reshape(lead), pivots.reshape(lead + (r,)))
    if det:
        if r != c:
            raise ValueError("determinant of a non-square matrix")
        dets = np.where(rank == r, dets, 0).astype(np.uint8)
        return out + (dets.reshape(lead),)
    return out


def batch_rank(X: np.ndarray, F: FieldSpec) -> np.ndarray:
    return batch_eliminate(X, F)[1]


def batch_det(X: np.ndarray, F: FieldSpec) -> np.ndarray:
    return batch_eliminate(X, F, det=True)[3]


def rref(m, F: FieldSpec):
    """Reduced row-echelon form with zero rows dropped, and the pivot columns."""
    m = as_index_array(m, F)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    if m.shape[0] == 0:
        return m.copy(), []
    R, rank, piv = batch_eliminate(m[None], F)
    k = int(rank[0])
    return R[0, :k].copy(), [int(p) for p in piv[0, :k]]


def rank(m, F: FieldSpec) -> int:
    m = as_index_array(m, F)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return int(batch_rank(m[None], F)[0])


def det(m, F: FieldSpec) -> int:
    m = as_index_array(m, F)
    if m.shape[0] == 0:
        return 1
    return int(batch_det(m[None], F)[0])


def nullspace(m, F: FieldSpec) -> np.ndarray:
    """Basis (as rows, in RREF) of ``{x : m @ x = 0}``."""
    m = as_index_array(m, F)
    ncols = m.shape[1]
    R, piv = rref(m, F) if m.shape[0] else (m[:0], [])
    free = [j for j in range(ncols) if j not in piv]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(piv):
            basis[t, p] = F.neg_table[R[i, f]]
    if len(free):
        basis, _ = rref(basis, F)
    return basis


def left_nullspace(m, F: FieldSpec) -> np.ndarray:
    """Basis rows of ``{c : c @ m = 0}``."""
    return nullspace(np.asarray(m, dtype=np.uint8).T, F)


def conj_transpose(m, F: FieldSpec) -> np.ndarray:
    return np.swapaxes(F.conj(np.asarray(m, dtype=np.uint8)), -1, -2)


def all_vectors(n: int, F: FieldSpec) -> np.ndarray:
    """All ``|F|**n`` vectors of ``F^n`` as rows, first coordinate most significant."""
    q = F.order
    idx = np.arange(q**n, dtype=np.int64)
    out = np.empty((q**n, n), dtype=np.uint8)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def projective_points(n: int, F: FieldSpec) -> np.ndarray:
    """One representative per 1-subspace of ``F^n``: first nonzero coordinate 1."""
    q = F.order
    reps = []
    for lead in range(n):
        tail = all_vectors(n - lead - 1, F)
        block = np.zeros((len(tail), n), dtype=np.uint8)
        block[:, lead] = 1
        block[:, lead + 1 :] = tail
        reps.append(block)
    if not reps:
        return np.zeros((0, n), dtype=np.uint8)
    out = np.concatenate(reps)
    assert len(out) == (q**n - 1) // (q - 1)
    return out


def in_rowspace(vectors: np.ndarray, bases: np.ndarray, pivots: np.ndarray, F: FieldSpec):
    """Membership of ``vectors`` in the row spaces of RREF ``bases``.

    ``vectors`` has shape ``(..., N)`` broadcasting against ``bases`` of
    shape ``(..., k, N)`` with pivot columns ``(..., k)``.  Uses the RREF
    property that a vector in the row space equals the combination of the
    rows given by its pivot coordinates.
    """
    vectors = np.asarray(vectors, dtype=np.uint8)
    coeffs = np.take_along_axis(
        np.broadcast_to(vectors, np.broadcast_shapes(vectors.shape, bases.shape[:-2] + vectors.shape[-1:])),
        pivots,
        axis=-1,
    )
    recon = F.matmul(coeffs[..., None, :], bases)[..., 0, :]
    return np.all(recon == vectors, axis=-1)
