"""Full-rank linear maps and mode-3 products.

A :class:`FullRankMap` bundles a q x p full-rank matrix M with its kind
(invertible when q = p, surjective when q < p, injective when q > p) and a
cached Moore-Penrose inverse computed from the closed forms

    M+ = M^T (M M^T)^(-1)   (surjective, right inverse: M M+ = I_q)
    M+ = (M^T M)^(-1) M^T   (injective,  left inverse:  M+ M = I_p)
    M+ = M^(-1)             (invertible)

via a symmetric-positive-definite solve of the Gram matrix. The map
parameterizes every *_M operation; ``mode3_product`` applies a matrix to all
mode-3 fibers of a tensor.

Two constructions are provided beyond :func:`classify`: a seeded injective
Johnson-Lindenstrauss-style embedding built from a subsampled signed
Hadamard matrix, and the data-dependent invertible map assembled from the
left singular vectors of a tensor's mode-3 unfolding.
"""

from __future__ import annotations

import enum
import math

import numpy as np
import scipy.linalg

from . import matkernels
from .errors import DimensionMismatch, NotFullRank, NotPowerOfTwo, SvdFailure
from .tensor import Tensor3

__all__ = [
    "MapKind",
    "FullRankMap",
    "classify",
    "mode3_product",
    "hadamard",
    "build_jl_map",
    "build_u3_map",
]


class MapKind(enum.Enum):
    INVERTIBLE = "invertible"
    SURJECTIVE = "surjective"
    INJECTIVE = "injective"


class FullRankMap:
    """A classified full-rank matrix with cached pseudoinverse.

    Instances are produced by :func:`classify` (or the ``build_*`` helpers)
    and are immutable; ``matrix`` is q x p and ``pinv`` is p x q.
    """

    __slots__ = ("matrix", "pinv", "kind")

    def __init__(self, matrix: np.ndarray, pinv: np.ndarray, kind: MapKind):
        matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        pinv = np.ascontiguousarray(pinv, dtype=np.float64)
        matrix.flags.writeable = False
        pinv.flags.writeable = False
        self.matrix = matrix
        self.pinv = pinv
        self.kind = kind

    @property
    def q(self) -> int:
        """Output dimension (rows of M)."""
        return self.matrix.shape[0]

    @property
    def p(self) -> int:
        """Input dimension (columns of M)."""
        return self.matrix.shape[1]

    def __repr__(self) -> str:
        return f"FullRankMap({self.kind.value}, q={self.q}, p={self.p})"


def classify(m, rank_tol: float | None = None) -> FullRankMap:
    """Classify a full-rank matrix and cache its pseudoinverse.

    ``rank_tol`` defaults to max(p, q) * machine epsilon, relative to the
    largest singular value; a smallest singular value at or below
    ``rank_tol * sigma_max`` raises :class:`NotFullRank`.
    """
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"expected a nonempty matrix, got shape {arr.shape}")
    q, p = arr.shape
    if rank_tol is None:
        rank_tol = max(p, q) * np.finfo(np.float64).eps
    sigma = np.linalg.svd(arr, compute_uv=False)
    if sigma[0] == 0.0 or sigma[-1] <= rank_tol * sigma[0]:
        raise NotFullRank(
            f"sigma_min={sigma[-1]:.3e} <= {rank_tol:.1e} * sigma_max={sigma[0]:.3e}"
        )
    try:
        if q == p:
            kind = MapKind.INVERTIBLE
            pinv = matkernels.inverse(arr)
        elif q < p:
            kind = MapKind.SURJECTIVE
            gram = arr @ arr.T
            pinv = scipy.linalg.cho_solve(scipy.linalg.cho_factor(gram), arr).T
        else:
            kind = MapKind.INJECTIVE
            gram = arr.T @ arr
            pinv = scipy.linalg.cho_solve(scipy.linalg.cho_factor(gram), arr.T)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NotFullRank(f"Gram factorization failed: {exc}") from exc
    return FullRankMap(arr, pinv, kind)


def mode3_product(t: Tensor3, w) -> Tensor3:
    """Apply the matrix ``w`` to every mode-3 fiber of ``t``.

    For w of shape (q, p) and t of shape m x n x p the result is m x n x q.
    Satisfies (t x3 M) x3 N == t x3 (N @ M).
    """
    arr = np.asarray(w, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {arr.shape}")
    if arr.shape[1] != t.p:
        raise DimensionMismatch(
            f"map has {arr.shape[1]} columns but tensor depth is {t.p}"
        )
    return Tensor3._from_pmn(np.tensordot(arr, t.slices(), axes=([1], [0])))


def hadamard(n: int) -> np.ndarray:
    """Sylvester-constructed n x n Hadamard matrix, H @ H.T == n * I."""
    n = int(n)
    if n < 1 or (n & (n - 1)) != 0:
        raise NotPowerOfTwo(f"{n} is not a power of two")
    h = np.array([[1.0]])
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return h


def build_jl_map(p: int, seed: int) -> FullRankMap:
    """Seeded injective embedding from a subsampled signed Hadamard matrix.

    With q = 2^ceil(log2(2p)), the map is M = (P S)^T where
    S = H_q D / sqrt(p), D carries random signs, and P selects p of the q
    rows uniformly without replacement. Columns of M are orthogonal with
    M^T M = (q/p) I, so the pseudoinverse is (p/q) M^T.

    Randomness: numpy's default PCG64 generator seeded with ``seed``. Signs
    come first (one uniform draw each, +1 below 0.5), then the row subset
    via a Fisher-Yates prefix driven by the same stream, so the result is
    bit-reproducible for a given (p, seed).
    """
    p = int(p)
    if p < 1:
        raise DimensionMismatch(f"p must be >= 1, got {p}")
    q = 1 << math.ceil(math.log2(2 * p))
    rng = np.random.default_rng(seed)
    signs = np.where(rng.random(q) < 0.5, 1.0, -1.0)
    s = (hadamard(q) * signs) / math.sqrt(p)

    idx = np.arange(q)
    for i in range(p):
        j = i + int(rng.random() * (q - i))
        idx[i], idx[j] = idx[j], idx[i]
    rows = idx[:p]

    return classify(s[rows, :].T)


def build_u3_map(t: Tensor3) -> FullRankMap:
    """Invertible map from the left singular vectors of the mode-3 unfolding.

    The returned matrix is U3^T, so applying it mode-3 expresses each fiber
    in the basis of principal fiber directions. The SVD sign ambiguity is
    pinned by making the largest-magnitude entry of each singular vector
    positive (first occurrence on ties).
    """
    unfolding = t.mode3_unfolding()
    try:
        u, _, _ = np.linalg.svd(unfolding, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(f"SVD of the mode-3 unfolding failed: {exc}") from exc
    for j in range(u.shape[1]):
        lead = np.argmax(np.abs(u[:, j]))
        if u[lead, j] < 0:
            u[:, j] = -u[:, j]
    return classify(u.T)
