"""Exact linear algebra over F_q on int64 numpy arrays.

Matrices and vectors are plain ``numpy`` arrays of residues; the modulus is
always passed explicitly.  Everything here is exact: elimination uses modular
inverses, and determinants over a composite modulus go through an integer
(fraction-free) determinant first.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .field import MAX_MODULUS, is_prime


class SingularMatrixError(ValueError):
    pass


def residues(x, q: int) -> np.ndarray:
    """Copy ``x`` into an int64 array reduced into [0, q)."""
    if q > MAX_MODULUS:
        raise ValueError(f"modulus {q} too large")
    a = np.asarray(x, dtype=np.int64)
    return np.mod(a, q)


def matmul(a, b, q: int) -> np.ndarray:
    return np.mod(residues(a, q) @ residues(b, q), q)


def matvec(a, x, q: int) -> np.ndarray:
    return np.mod(residues(a, q) @ residues(x, q), q)


def _row_reduce(a: np.ndarray, q: int):
    """Gauss-Jordan over F_q.  Returns (reduced copy, pivot columns, det factor)."""
    m = residues(a, q).copy()
    rows, cols = m.shape
    pivots = []
    det = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
            det = -det
        piv = int(m[r, c])
        det = det * piv % q
        m[r] = m[r] * pow(piv, -1, q) % q
        others = np.nonzero(m[:, c])[0]
        for i in others:
            if i != r:
                m[i] = (m[i] - int(m[i, c]) * m[r]) % q
        pivots.append(c)
        r += 1
    return m, pivots, det % q


def rank(a, q: int) -> int:
    return len(_row_reduce(np.atleast_2d(a), q)[1])


def null_space(a, q: int) -> np.ndarray:
    """Rows spanning ``{x : a @ x = 0}`` over F_q."""
    a = np.atleast_2d(residues(a, q))
    m, pivots, _ = _row_reduce(a, q)
    free = [c for c in range(a.shape[1]) if c not in pivots]
    basis = np.zeros((len(free), a.shape[1]), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for row, pc in enumerate(pivots):
            basis[b, pc] = -m[row, f] % q
    return basis


def _bareiss_det(rows: list[list[int]]) -> int:
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def det(a, modulus: int) -> int:
    """Determinant modulo ``modulus``.

    Prime moduli use elimination in F_q.  Composite moduli (the exponent ring
    Z_{q-1}) take the exact integer determinant and reduce it.
    """
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"det of non-square {a.shape} matrix")
    if a.shape[0] == 0:
        return 1 % modulus
    if is_prime(modulus):
        m, pivots, d = _row_reduce(a, modulus)
        return d if len(pivots) == a.shape[0] else 0
    rows = [[int(v) % modulus for v in row] for row in a]
    return _bareiss_det(rows) % modulus


def inverse(a, q: int) -> np.ndarray:
    a = np.atleast_2d(residues(a, q))
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"inverse of non-square {a.shape} matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    m, pivots, _ = _row_reduce(aug, q)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular over F_%d" % q)
    return m[:, n:]


def solve(a, b, q: int) -> np.ndarray:
    """Solve ``a @ x = b`` for square invertible ``a``."""
    return matvec(inverse(a, q), b, q)


def is_unit_mod(d: int, modulus: int) -> bool:
    return gcd(int(d) % modulus, modulus) == 1


def vandermonde_rows(points, powers, q: int) -> np.ndarray:
    """Row ``i`` holds ``points ** powers[i]`` mod q (with 0**0 = 1)."""
    pts = [int(p) % q for p in points]
    return np.array([[pow(p, e, q) for p in pts] for e in powers], dtype=np.int64).reshape(
        len(powers), len(pts)
    )


def rs_generator(n: int, dim: int, q: int) -> np.ndarray:
    """Generator of a Reed-Solomon [n, dim] code on evaluation points 1..n.

    Row ``i`` is ``(1**i, 2**i, ..., n**i)``; any ``dim`` columns are
    independent because the points are distinct.
    """
    if n > q:
        raise ValueError(f"need n <= q distinct points, got n={n}, q={q}")
    if not 0 <= dim <= n:
        raise ValueError(f"dimension {dim} outside [0, {n}]")
    return vandermonde_rows(range(1, n + 1), range(dim), q)


def complete_basis(g, q: int) -> np.ndarray:
    """Rows that extend the full-rank ``g`` to an invertible square matrix.

    The Vandermonde power sequence is continued first (exact for outputs of
    :func:`rs_generator`); if that fails for an arbitrary ``g``, standard
    basis vectors are added greedily.
    """
    g = np.atleast_2d(residues(g, q))
    dim, n = g.shape
    if rank(g, q) != dim:
        raise SingularMatrixError("generator matrix is rank deficient")
    if dim == n:
        return np.zeros((0, n), dtype=np.int64)
    if n <= q:
        cont = vandermonde_rows(range(1, n + 1), range(dim, n), q)
        if rank(np.vstack([g, cont]), q) == n:
            return cont
    extra = []
    basis = g
    for j in range(n):
        e = np.zeros((1, n), dtype=np.int64)
        e[0, j] = 1
        trial = np.vstack([basis, e])
        if rank(trial, q) == trial.shape[0]:
            basis = trial
            extra.append(e[0])
        if basis.shape[0] == n:
            break
    return np.array(extra, dtype=np.int64)


def dual_parity_check(g, g_tilde, q: int) -> np.ndarray:
    """H with ``H @ g.T = 0`` and ``H @ g_tilde.T = I``."""
    g = np.atleast_2d(residues(g, q))
    gt = residues(g_tilde, q).reshape(-1, g.shape[1])
    stacked = np.vstack([g, gt])
    n = stacked.shape[1]
    if stacked.shape[0] != n:
        raise ValueError(f"stacked matrix is {stacked.shape}, expected square")
    k = gt.shape[0]
    target = np.zeros((k, n), dtype=np.int64)
    target[:, n - k:] = np.eye(k, dtype=np.int64)
    return matmul(target, inverse(stacked.T, q), q)
