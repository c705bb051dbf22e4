"""Pseudo-SVD under a full-rank map, with compression metrics.

The associative cases admit a genuine U *_M S *_M V^H factorization; the
injective case does not, so the factorization lives entirely in the hat
domain: transform, take slice SVDs, and (after optional truncation)
face-multiply and pull back with the pseudoinverse. For invertible and
injective maps M+ M = I, so the untruncated reconstruction recovers the
input exactly; for surjective maps it recovers A x3 (M+ M) instead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BadTruncation, DimensionMismatch, SvdFailure
from .linmap import FullRankMap, mode3_product
from .tensor import Tensor3

__all__ = [
    "PsvdFactors",
    "pseudo_svd_full",
    "reconstruct",
    "truncate_factors",
    "pseudo_svd_truncated",
    "relative_error",
    "compression_ratio",
    "singular_tube_norms",
    "CompressionRow",
    "CompressionReport",
]


@dataclass(frozen=True)
class PsvdFactors:
    """Stacked slice-SVD factors of the transformed tensor.

    ``uhat`` is m x m x q, ``shat`` is the f-diagonal m x n x q stack with
    per-slice non-increasing diagonals, ``vhat`` is n x n x q (columns are
    right singular vectors), and ``map`` is the full-rank map that produced
    the hat domain.
    """

    uhat: Tensor3
    shat: Tensor3
    vhat: Tensor3
    map: FullRankMap


def pseudo_svd_full(a: Tensor3, m_map: FullRankMap) -> PsvdFactors:
    """Transform once, then SVD every frontal slice of the hat tensor."""
    if a.p != m_map.p:
        raise DimensionMismatch(f"tensor depth {a.p} != map input dim {m_map.p}")
    a_hat = mode3_product(a, m_map.matrix)
    m, n = a.m, a.n
    us, ss, vs = [], [], []
    for k in range(a_hat.p):
        try:
            u, s, vh = np.linalg.svd(a_hat.slices()[k], full_matrices=True)
        except np.linalg.LinAlgError as exc:
            raise SvdFailure(f"SVD of hat-slice {k + 1} failed: {exc}") from exc
        s_rect = np.zeros((m, n))
        np.fill_diagonal(s_rect, s)
        us.append(u)
        ss.append(s_rect)
        vs.append(vh.T)
    return PsvdFactors(
        Tensor3._from_pmn(np.stack(us)),
        Tensor3._from_pmn(np.stack(ss)),
        Tensor3._from_pmn(np.stack(vs)),
        m_map,
    )


def reconstruct(factors: PsvdFactors) -> Tensor3:
    """(uhat facewise shat facewise vhat^T) x3 M+."""
    u = factors.uhat.slices()
    s = factors.shat.slices()
    vt = np.transpose(factors.vhat.slices(), (0, 2, 1))
    hat = Tensor3._from_pmn(u @ s @ vt)
    return mode3_product(hat, factors.map.pinv)


def _check_k(k: int, m: int, n: int) -> int:
    k = int(k)
    if not 1 <= k <= min(m, n):
        raise BadTruncation(f"k={k} outside [1, {min(m, n)}]")
    return k


def truncate_factors(factors: PsvdFactors, k: int) -> Tensor3:
    """Rank-k reconstruction from precomputed factors.

    Keeps the first k columns of each U and V slice and the leading k x k
    block of S, face-multiplies, and maps back with M+. Useful for sweeping
    k without redoing the slice SVDs.
    """
    m, n = factors.shat.m, factors.shat.n
    k = _check_k(k, m, n)
    u = factors.uhat.slices()[:, :, :k]
    d = np.einsum("qii->qi", factors.shat.slices()[:, :k, :k])
    vt = np.transpose(factors.vhat.slices()[:, :, :k], (0, 2, 1))
    hat = Tensor3._from_pmn((u * d[:, None, :]) @ vt)
    return mode3_product(hat, factors.map.pinv)


def pseudo_svd_truncated(a: Tensor3, m_map: FullRankMap, k: int) -> Tensor3:
    """Rank-k approximation: truncated slice SVDs in the hat domain.

    At k = min(m, n) nothing is discarded and the result equals the full
    pseudo-SVD reconstruction.
    """
    if a.p != m_map.p:
        raise DimensionMismatch(f"tensor depth {a.p} != map input dim {m_map.p}")
    k = _check_k(k, a.m, a.n)
    a_hat = mode3_product(a, m_map.matrix)
    rec = []
    for i in range(a_hat.p):
        try:
            u, s, vh = np.linalg.svd(a_hat.slices()[i], full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise SvdFailure(f"SVD of hat-slice {i + 1} failed: {exc}") from exc
        rec.append((u[:, :k] * s[:k]) @ vh[:k, :])
    hat = Tensor3._from_pmn(np.stack(rec))
    return mode3_product(hat, m_map.pinv)


def relative_error(a: Tensor3, a_rec: Tensor3, s: int | None = None) -> float:
    """Frobenius error over the first s channels, relative to the original.

    ||a[:, :, 1:s] - a_rec[:, :, 1:s]||_F / ||a[:, :, 1:s]||_F, so a perfect
    reconstruction scores 0 and the zero tensor scores 1. ``s`` defaults to
    the full depth.
    """
    if a.shape != a_rec.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {a_rec.shape}")
    if s is None:
        s = a.p
    s = int(s)
    if not 1 <= s <= a.p:
        raise DimensionMismatch(f"channel count s={s} outside [1, {a.p}]")
    diff = a.slices()[:s] - a_rec.slices()[:s]
    num = float(np.linalg.norm(diff.ravel()))
    den = float(np.linalg.norm(a.slices()[:s].ravel()))
    if den == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return num / den


def compression_ratio(m: int, n: int, p: int, q: int, k: int) -> float:
    """Raw-scalar storage ratio of the original cube to the rank-k factors.

    Storage of the compressed form counts q * k * (m + n + 1) scalars for
    the truncated U, V and diagonal S slices plus q * p for the map itself;
    no entropy coding is assumed.
    """
    dims = (m, n, p, q, k)
    if any(int(d) < 1 for d in dims):
        raise ValueError(f"all of (m, n, p, q, k) must be >= 1, got {dims}")
    m, n, p, q, k = (int(d) for d in dims)
    return (m * n * p) / (q * k * (m + n + 1) + q * p)


def singular_tube_norms(factors: PsvdFactors) -> np.ndarray:
    """Frobenius norms of the diagonal tubes of shat, non-increasing."""
    d = np.diagonal(factors.shat.slices(), axis1=1, axis2=2)  # (q, min(m, n))
    return np.linalg.norm(d, axis=0)


@dataclass(frozen=True)
class CompressionRow:
    k: int
    s: int
    relative_error: float
    compression_ratio: float
    seconds: float


@dataclass
class CompressionReport:
    """Per-(k, s) sweep results plus the map descriptor and seed used."""

    map_label: str
    seed: int | None
    rows: list[CompressionRow] = field(default_factory=list)


def run_compression_sweep(
    a: Tensor3,
    m_map: FullRankMap,
    k_values,
    s_values,
    map_label: str,
    seed: int | None,
) -> CompressionReport:
    """Truncated pseudo-SVD sweep over k, scored at each channel prefix s.

    The slice SVDs are computed once; the seconds column times the per-k
    truncation and map-back.
    """
    factors = pseudo_svd_full(a, m_map)
    report = CompressionReport(map_label=map_label, seed=seed)
    for k in k_values:
        t0 = time.perf_counter()
        rec = truncate_factors(factors, k)
        elapsed = time.perf_counter() - t0
        cr = compression_ratio(a.m, a.n, a.p, m_map.q, k)
        for s in s_values:
            report.rows.append(
                CompressionRow(int(k), int(s), relative_error(a, rec, s), cr, elapsed)
            )
    return report
