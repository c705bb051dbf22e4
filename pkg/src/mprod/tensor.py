"""Dense third-order tensors and tubes.

A :class:`Tensor3` is an immutable stack of ``p`` frontal slices, each an
``m x n`` real matrix. Storage is frontal-slice-major with row-major slices,
i.e. a C-contiguous ``(p, m, n)`` float64 array, so the flat buffer obeys

    entry(i, j, k) == data[(k-1)*m*n + (i-1)*n + (j-1)]

with 1-based external indices ``i in [m], j in [n], k in [p]``. Face-wise
products and slice SVDs therefore touch contiguous memory.

A :class:`Tube` is the scalar-like object of the algebra: a ``1 x 1 x p``
tensor stored as a plain length-``p`` vector.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange

__all__ = ["Tensor3", "Tube", "frobenius_norm", "approx_eq"]


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


class Tensor3:
    """Immutable dense m x n x p tensor of 64-bit floats.

    Parameters
    ----------
    data : array_like
        Cube with shape ``(m, n, p)``: ``data[:, :, k]`` is frontal slice
        ``k+1``. Use :meth:`from_slices` to build from a list of matrices.
    """

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.asarray(data, dtype=np.float64)
        if arr.ndim != 3:
            raise DimensionMismatch(f"expected a 3-way array, got ndim={arr.ndim}")
        if min(arr.shape) < 1:
            raise DimensionMismatch(f"all dimensions must be >= 1, got {arr.shape}")
        # reorder (m, n, p) -> internal (p, m, n)
        self._data = _as_readonly(np.moveaxis(arr, 2, 0))

    @classmethod
    def _from_pmn(cls, pmn: np.ndarray) -> "Tensor3":
        # internal fast path: adopt an already slice-major (p, m, n) array
        t = object.__new__(cls)
        t._data = _as_readonly(pmn)
        return t

    @classmethod
    def from_slices(cls, slices) -> "Tensor3":
        """Stack matrices ``[S1 | S2 | ... | Sp]`` as frontal slices."""
        mats = [np.atleast_2d(np.asarray(s, dtype=np.float64)) for s in slices]
        if not mats:
            raise DimensionMismatch("need at least one frontal slice")
        shape = mats[0].shape
        if any(m.shape != shape for m in mats):
            raise DimensionMismatch("frontal slices must share one shape")
        return cls._from_pmn(np.stack(mats, axis=0))

    @classmethod
    def zeros(cls, m: int, n: int, p: int) -> "Tensor3":
        if min(m, n, p) < 1:
            raise DimensionMismatch("all dimensions must be >= 1")
        return cls._from_pmn(np.zeros((p, m, n)))

    # -- shape ------------------------------------------------------------

    @property
    def m(self) -> int:
        return self._data.shape[1]

    @property
    def n(self) -> int:
        return self._data.shape[2]

    @property
    def p(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self) -> tuple[int, int, int]:
        """(m, n, p)"""
        return (self.m, self.n, self.p)

    def __repr__(self) -> str:
        return f"Tensor3(m={self.m}, n={self.n}, p={self.p})"

    # -- element and slice access (1-based, matching the math convention) --

    def entry(self, i: int, j: int, k: int) -> float:
        """Entry a_{ijk} with 1-based indices."""
        if not (1 <= i <= self.m and 1 <= j <= self.n and 1 <= k <= self.p):
            raise IndexOutOfRange(f"entry ({i},{j},{k}) outside {self.shape}")
        return float(self._data[k - 1, i - 1, j - 1])

    def frontal_slice(self, k: int) -> np.ndarray:
        """The k-th frontal slice as a fresh (m, n) array, 1 <= k <= p."""
        if not 1 <= k <= self.p:
            raise IndexOutOfRange(f"slice index {k} outside [1, {self.p}]")
        return self._data[k - 1].copy()

    def mode3_fiber(self, i: int, j: int) -> "Tube":
        """The mode-3 fiber [a_{ij1} | ... | a_{ijp}], 1-based (i, j)."""
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexOutOfRange(f"fiber ({i},{j}) outside {self.m} x {self.n}")
        return Tube(self._data[:, i - 1, j - 1])

    def slices(self) -> np.ndarray:
        """Read-only (p, m, n) view of all frontal slices."""
        return self._data

    def mode3_unfolding(self) -> np.ndarray:
        """The p x (m*n) matrix whose row k lists slice k in row-major order.

        Column (i-1)*n + (j-1) holds the mode-3 fiber at position (i, j);
        refolding with :meth:`refold` inverts this exactly.
        """
        return self._data.reshape(self.p, self.m * self.n).copy()

    @classmethod
    def refold(cls, unfolding, m: int, n: int) -> "Tensor3":
        """Inverse of :meth:`mode3_unfolding` for the given slice shape."""
        arr = np.asarray(unfolding, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != m * n:
            raise DimensionMismatch(
                f"unfolding shape {arr.shape} incompatible with {m} x {n} slices"
            )
        return cls._from_pmn(arr.reshape(arr.shape[0], m, n))

    def to_array(self) -> np.ndarray:
        """Copy out as an (m, n, p) array, the textbook layout."""
        return np.moveaxis(self._data, 0, 2).copy()

    # -- linear-space arithmetic ------------------------------------------

    def _check_same_shape(self, other: "Tensor3") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes differ: {self.shape} vs {other.shape}")

    def __add__(self, other: "Tensor3") -> "Tensor3":
        self._check_same_shape(other)
        return Tensor3._from_pmn(self._data + other._data)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        self._check_same_shape(other)
        return Tensor3._from_pmn(self._data - other._data)

    def __neg__(self) -> "Tensor3":
        return Tensor3._from_pmn(-self._data)

    def __mul__(self, c) -> "Tensor3":
        return Tensor3._from_pmn(self._data * float(c))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Tensor3":
        return Tensor3._from_pmn(self._data / float(c))


class Tube:
    """A 1 x 1 x p tensor stored as a flat vector; the ring element."""

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=np.float64).reshape(-1)
        if arr.size < 1:
            raise DimensionMismatch("a tube needs at least one entry")
        self._values = _as_readonly(arr)

    @property
    def p(self) -> int:
        return self._values.size

    @property
    def values(self) -> np.ndarray:
        return self._values

    @classmethod
    def from_tensor(cls, t: Tensor3) -> "Tube":
        if (t.m, t.n) != (1, 1):
            raise DimensionMismatch(f"not a 1 x 1 x p tensor: {t.shape}")
        return cls(t.slices()[:, 0, 0])

    def to_tensor(self) -> Tensor3:
        return Tensor3._from_pmn(self._values.reshape(self.p, 1, 1))

    def __repr__(self) -> str:
        body = " | ".join(f"{v:g}" for v in self._values)
        return f"Tube[{body}]"


def frobenius_norm(t: Tensor3) -> float:
    """Slice-wise Frobenius norm: sqrt of the sum over k of ||A_{:,:,k}||_F^2.

    Accumulates in increasing slice order so the result is deterministic.
    """
    total = 0.0
    for k in range(t.p):
        s = t.slices()[k]
        total += float(np.dot(s.ravel(), s.ravel()))
    return float(np.sqrt(total))


def approx_eq(a: Tensor3, b: Tensor3, tol: float = 1e-12) -> bool:
    """True iff ||a - b||_F <= tol * max(1, ||a||_F)."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return frobenius_norm(a - b) <= tol * max(1.0, frobenius_norm(a))
