"""Means of pseudo-positive-definite tensors under an invertible map.

Pseudo-positive-definite (PPD) means every transformed frontal slice is
symmetric positive-definite. With an invertible map the transform is a
bijection, so k-th roots, the weighted geometric mean and the weighted
Wasserstein mean all reduce to independent slice problems in the hat domain;
each function here transforms once, works slice-wise, and maps back once.

Surjective and injective maps are rejected: square roots are not unique for
the former and PPD tensors or inverses may not exist for the latter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matkernels
from .errors import MapNotInvertible, NotPPD
from .linmap import MapKind, mode3_product
from .product import MprodContext, m_inverse, mprod
from .tensor import Tensor3, frobenius_norm

__all__ = [
    "PpdPair",
    "ppd_root",
    "geometric_mean",
    "wasserstein_mean",
    "riccati_residual",
    "solve_riccati",
]


def _require_invertible(ctx: MprodContext) -> None:
    if ctx.map.kind is not MapKind.INVERTIBLE:
        raise MapNotInvertible(
            f"tensor means require an invertible map, got {ctx.map.kind.value}"
        )


def _hat_spd_slices(
    a: Tensor3, ctx: MprodContext, pd_tol: float = matkernels.PD_TOL
) -> np.ndarray:
    """Hat slices of ``a``, validated symmetric positive-definite."""
    if a.m != a.n:
        raise NotPPD(f"slices must be square, got {a.m} x {a.n}")
    if a.p != ctx.map.p:
        raise NotPPD(f"tensor depth {a.p} != map input dim {ctx.map.p}")
    hat = mode3_product(a, ctx.map.matrix).slices()
    for k in range(hat.shape[0]):
        s = hat[k]
        scale = max(1.0, float(np.linalg.norm(s)))
        if np.linalg.norm(s - s.T) > ctx.tol * scale:
            raise NotPPD(f"hat-slice {k + 1} is not symmetric within tolerance")
        lam = np.linalg.eigvalsh(0.5 * (s + s.T))
        if lam[-1] <= 0.0 or lam[0] <= pd_tol * lam[-1]:
            raise NotPPD(f"hat-slice {k + 1} is not positive-definite")
    return hat


@dataclass(frozen=True)
class PpdPair:
    """A validated pair of PPD tensors sharing one invertible-map context."""

    a: Tensor3
    b: Tensor3
    ctx: MprodContext

    def __post_init__(self):
        _require_invertible(self.ctx)
        _hat_spd_slices(self.a, self.ctx)
        _hat_spd_slices(self.b, self.ctx)


def _from_hat_slices(slices, ctx: MprodContext) -> Tensor3:
    hat = Tensor3._from_pmn(np.stack(slices))
    return mode3_product(hat, ctx.map.pinv)


def ppd_root(a: Tensor3, k: int, ctx: MprodContext) -> Tensor3:
    """The unique PPD k-th root: slice-wise SPD roots in the hat domain."""
    k = int(k)
    if k < 1:
        raise ValueError(f"root order must be >= 1, got {k}")
    _require_invertible(ctx)
    hat = _hat_spd_slices(a, ctx)
    return _from_hat_slices([matkernels.spd_power(s, 1.0 / k) for s in hat], ctx)


def geometric_mean(a: Tensor3, b: Tensor3, ctx: MprodContext, t: float = 0.5) -> Tensor3:
    """Weighted geometric mean a^(1/2) *_M (a^(-1/2) *_M b *_M a^(-1/2))^t *_M a^(1/2).

    Computed slice-wise in the hat domain, which is exactly equivalent and
    applies the map only twice. ``t = 1/2`` gives the geometric mean, the
    geodesic midpoint; the result is again PPD.
    """
    _require_invertible(ctx)
    a_hat = _hat_spd_slices(a, ctx)
    b_hat = _hat_spd_slices(b, ctx)
    out = [matkernels.matrix_geomean_t(sa, sb, t) for sa, sb in zip(a_hat, b_hat)]
    return _from_hat_slices(out, ctx)


def _cross_sqrt(sa: np.ndarray, sb: np.ndarray) -> np.ndarray:
    # principal square root of the (non-symmetric) product sa @ sb, through
    # the SPD similarity  (A B)^(1/2) = A^(1/2) (A^(1/2) B A^(1/2))^(1/2) A^(-1/2)
    a_half = matkernels.spd_power(sa, 0.5)
    a_ihalf = matkernels.spd_power(sa, -0.5)
    inner = a_half @ sb @ a_half
    return a_half @ matkernels.spd_power(0.5 * (inner + inner.T), 0.5) @ a_ihalf


def wasserstein_mean(
    a: Tensor3, b: Tensor3, ctx: MprodContext, t: float = 0.5
) -> Tensor3:
    """Weighted Wasserstein mean (1-t)^2 a + t^2 b + t(1-t)((ab)^(1/2) + (ba)^(1/2)).

    The midpoint t = 1/2 is (a + b + (a *_M b)^(1/2) + (b *_M a)^(1/2)) / 4.
    The two cross square roots are transposes of each other, so only one is
    computed per slice. Endpoints are exact: t = 0 gives a, t = 1 gives b.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    _require_invertible(ctx)
    a_hat = _hat_spd_slices(a, ctx)
    b_hat = _hat_spd_slices(b, ctx)
    out = []
    for sa, sb in zip(a_hat, b_hat):
        cross = _cross_sqrt(sa, sb)
        out.append((1 - t) ** 2 * sa + t**2 * sb + t * (1 - t) * (cross + cross.T))
    return _from_hat_slices(out, ctx)


def riccati_residual(
    x: Tensor3, a: Tensor3, b: Tensor3, ctx: MprodContext
) -> float:
    """Relative residual ||x *_M a^(-1) *_M x - b||_F / ||b||_F."""
    a_inv = m_inverse(a, ctx)
    lhs = mprod(mprod(x, a_inv, ctx), x, ctx)
    return frobenius_norm(lhs - b) / frobenius_norm(b)


def solve_riccati(a: Tensor3, b: Tensor3, ctx: MprodContext) -> Tensor3:
    """The unique PPD solution of x *_M a^(-1) *_M x = b: the geometric mean."""
    return geometric_mean(a, b, ctx, 0.5)
