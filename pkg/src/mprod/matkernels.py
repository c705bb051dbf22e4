"""Dense matrix kernels used slice-wise by the tensor operations.

Matrices are plain 2-D float64 :class:`numpy.ndarray` objects (row-major).
Factorizations are delegated to LAPACK through numpy/scipy; the Strassen
multiply is implemented here because its recursion is the point.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotPositiveDefinite,
    NotSymmetric,
    Singular,
)

__all__ = [
    "svd",
    "sym_eig",
    "spd_power",
    "matrix_geomean_t",
    "inverse",
    "strassen_mul",
]

SYM_TOL = 1e-10
PD_TOL = 1e-12
STRASSEN_CROSSOVER = 64


def _as_matrix(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"expected a nonempty matrix, got shape {arr.shape}")
    return arr


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD: a = U @ diag_rect(s) @ V.T.

    Returns square orthogonal ``U`` (m x m) and ``V`` (n x n) and the
    non-increasing singular values ``s`` of length min(m, n).
    """
    arr = _as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(arr, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return u, s, vh.T


def sym_eig(a, sym_tol: float = SYM_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition a = Q @ diag(lam) @ Q.T of a symmetric matrix.

    Eigenvalues come back non-increasing. Raises :class:`NotSymmetric` when
    ||a - a.T|| exceeds ``sym_tol * max(1, ||a||)``.
    """
    arr = _as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {arr.shape}")
    scale = max(1.0, float(np.linalg.norm(arr)))
    if np.linalg.norm(arr - arr.T) > sym_tol * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    try:
        lam, q = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigendecomposition failed: {exc}") from exc
    return q[:, ::-1], lam[::-1]


def spd_power(a, t: float, pd_tol: float = PD_TOL) -> np.ndarray:
    """Spectral power A^t of a symmetric positive-definite matrix.

    Covers square roots (t = 1/2), inverses (t = -1), k-th roots (t = 1/k)
    and geodesic powers t in [0, 1]. Raises :class:`NotPositiveDefinite`
    when lambda_min <= pd_tol * lambda_max.
    """
    q, lam = sym_eig(a)
    if lam[0] <= 0.0 or lam[-1] <= pd_tol * lam[0]:
        raise NotPositiveDefinite(
            f"eigenvalue range [{lam[-1]:.3e}, {lam[0]:.3e}] fails the PD gate"
        )
    out = (q * lam**t) @ q.T
    return 0.5 * (out + out.T)


def matrix_geomean_t(a, b, t: float = 0.5) -> np.ndarray:
    """Weighted geometric mean A^(1/2) (A^(-1/2) B A^(-1/2))^t A^(1/2).

    ``t = 1/2`` is the geometric mean A # B, the midpoint of the affine-
    invariant geodesic between SPD matrices A and B.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    a_half = spd_power(a, 0.5)
    a_ihalf = spd_power(a, -0.5)
    b_arr = _as_matrix(b)
    inner = a_ihalf @ b_arr @ a_ihalf
    mid = spd_power(0.5 * (inner + inner.T), t)
    out = a_half @ mid @ a_half
    return 0.5 * (out + out.T)


def inverse(a) -> np.ndarray:
    """Inverse via LU with partial pivoting; raises :class:`Singular`."""
    arr = _as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {arr.shape}")
    n = arr.shape[0]
    try:
        with warnings.catch_warnings():
            # the pivot check below raises Singular; scipy's warning is noise
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(arr, check_finite=False)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise Singular(f"LU factorization failed: {exc}") from exc
    pivots = np.abs(np.diag(lu))
    threshold = n * np.finfo(np.float64).eps * max(float(np.max(np.abs(arr))), 1e-300)
    if pivots.min() <= threshold:
        raise Singular(f"pivot {pivots.min():.3e} below threshold {threshold:.3e}")
    return scipy.linalg.lu_solve((lu, piv), np.eye(n), check_finite=False)


def strassen_mul(
    a, b, crossover: int = STRASSEN_CROSSOVER, base_mul=None
) -> np.ndarray:
    """Strassen multiplication (Winograd variant) for A @ B.

    7 recursive multiplications and 15 block additions per level. Products
    land directly in the output quadrants and the operand combinations reuse
    one scratch set per recursion level, so steady-state calls allocate
    almost nothing beyond the result. Odd dimensions are zero-padded to even
    at the level where they appear; blocks whose largest dimension is at or
    below ``crossover`` fall back to the base multiply (``base_mul``, the
    standard matmul when not given; the benchmark passes a uniform-rate
    classical kernel instead).
    """
    a_arr = _as_matrix(a)
    b_arr = _as_matrix(b)
    if a_arr.shape[1] != b_arr.shape[0]:
        raise DimensionMismatch(
            f"inner dimensions disagree: {a_arr.shape} x {b_arr.shape}"
        )
    out = np.empty((a_arr.shape[0], b_arr.shape[1]))
    _strassen(a_arr, b_arr, out, max(int(crossover), 1), {}, base_mul)
    return out


def _scratch(ws: dict, role: str, rows: int, cols: int) -> np.ndarray:
    # one buffer per (role, shape); siblings at a recursion level share it
    key = (role, rows, cols)
    buf = ws.get(key)
    if buf is None:
        buf = np.empty((rows, cols))
        ws[key] = buf
    return buf


def _strassen(a, b, out, xo: int, ws: dict, base_mul) -> None:
    m, k = a.shape
    n = b.shape[1]
    if max(m, k, n) <= xo:
        if base_mul is None:
            np.matmul(a, b, out=out)
        else:
            out[...] = base_mul(a, b)
        return
    if (m | k | n) & 1:
        mp, kp, np_ = m + (m & 1), k + (k & 1), n + (n & 1)
        a_pad = np.zeros((mp, kp))
        a_pad[:m, :k] = a
        b_pad = np.zeros((kp, np_))
        b_pad[:k, :n] = b
        o_pad = np.empty((mp, np_))
        _strassen(a_pad, b_pad, o_pad, xo, ws, base_mul)
        out[...] = o_pad[:m, :n]
        return

    m2, k2, n2 = m // 2, k // 2, n // 2
    a11, a12 = a[:m2, :k2], a[:m2, k2:]
    a21, a22 = a[m2:, :k2], a[m2:, k2:]
    b11, b12 = b[:k2, :n2], b[:k2, n2:]
    b21, b22 = b[k2:, :n2], b[k2:, n2:]
    c11, c12 = out[:m2, :n2], out[:m2, n2:]
    c21, c22 = out[m2:, :n2], out[m2:, n2:]
    ta = _scratch(ws, "a", m2, k2)
    tb = _scratch(ws, "b", k2, n2)
    p = _scratch(ws, "p", m2, n2)

    np.subtract(a11, a21, out=ta)           # A11 - A21
    np.subtract(b22, b12, out=tb)           # B22 - B12
    _strassen(ta, tb, c21, xo, ws, base_mul)
    np.add(a21, a22, out=ta)                # A21 + A22
    np.subtract(b12, b11, out=tb)           # B12 - B11
    _strassen(ta, tb, c22, xo, ws, base_mul)
    np.subtract(ta, a11, out=ta)            # A21 + A22 - A11
    np.subtract(b22, tb, out=tb)            # B22 - B12 + B11
    _strassen(ta, tb, c12, xo, ws, base_mul)
    np.subtract(a12, ta, out=ta)            # A12 - A21 - A22 + A11
    _strassen(ta, b22, c11, xo, ws, base_mul)  # c11 holds P3 until folded below
    _strassen(a11, b11, p, xo, ws, base_mul)   # P1
    c12 += p
    c21 += c12
    c12 += c22
    c22 += c21
    c12 += c11
    _strassen(a12, b21, c11, xo, ws, base_mul)  # P2
    c11 += p
    np.subtract(tb, b21, out=tb)            # B22 - B12 + B11 - B21
    _strassen(a22, tb, p, xo, ws, base_mul)     # P4
    c21 -= p
