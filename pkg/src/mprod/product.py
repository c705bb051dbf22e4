"""The *_M algebra: products, identities, transposes, inverses, and checks.

All operations funnel through the same three-step recipe: push operands into
the transformed ("hat") domain with the map M, work slice-wise there, and
pull the result back with the pseudoinverse M+. For invertible and surjective
maps this yields a ring structure; for injective maps associativity fails,
identities may not exist, and several operations carry consistency checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matkernels
from .errors import (
    DimensionMismatch,
    MapKindUnsupported,
    NoIdentityTensor,
    NotMInvertible,
    Singular,
    SingularSlice,
)
from .linmap import FullRankMap, MapKind, mode3_product
from .tensor import Tensor3, Tube, approx_eq, frobenius_norm

__all__ = [
    "MprodContext",
    "facewise",
    "mprod",
    "identity_tensor",
    "m_transpose",
    "is_m_hermitian",
    "m_inverse",
    "inner_product",
    "is_ppd",
    "pd_falsify",
    "is_f_diagonal",
    "associativity_defect",
    "eval_tensor_poly",
]

ALGOS = ("naive", "strassen")


@dataclass(frozen=True)
class MprodContext:
    """Bundles the map, the multiplication backend and a default tolerance."""

    map: FullRankMap
    algo: str = "naive"
    tol: float = 1e-10

    def __post_init__(self):
        if self.algo not in ALGOS:
            raise ValueError(f"algo must be one of {ALGOS}, got {self.algo!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


def facewise(a: Tensor3, b: Tensor3, algo: str = "naive") -> Tensor3:
    """Slice-by-slice matrix product of two stacks of equal depth."""
    if a.p != b.p:
        raise DimensionMismatch(f"depths differ: {a.p} vs {b.p}")
    if a.n != b.m:
        raise DimensionMismatch(f"slice shapes {a.m}x{a.n} and {b.m}x{b.n} disagree")
    if algo == "strassen":
        out = np.stack(
            [matkernels.strassen_mul(a.slices()[k], b.slices()[k]) for k in range(a.p)]
        )
    elif algo == "naive":
        out = a.slices() @ b.slices()
    else:
        raise ValueError(f"algo must be one of {ALGOS}, got {algo!r}")
    return Tensor3._from_pmn(out)


def _check_depth(t: Tensor3, ctx: MprodContext) -> None:
    if t.p != ctx.map.p:
        raise DimensionMismatch(f"tensor depth {t.p} != map input dim {ctx.map.p}")


def mprod(a: Tensor3, b: Tensor3, ctx: MprodContext) -> Tensor3:
    """Tensor-tensor multiplication ((a x3 M) facewise (b x3 M)) x3 M+."""
    _check_depth(a, ctx)
    _check_depth(b, ctx)
    a_hat = mode3_product(a, ctx.map.matrix)
    b_hat = mode3_product(b, ctx.map.matrix)
    return mode3_product(facewise(a_hat, b_hat, ctx.algo), ctx.map.pinv)


def _identity_fiber(ctx: MprodContext) -> np.ndarray:
    """Fiber e with M e = all-ones, or raise NoIdentityTensor."""
    m = ctx.map
    ones = np.ones(m.q)
    fiber = m.pinv @ ones
    if m.kind is MapKind.INJECTIVE:
        # least-squares fiber must actually reach the all-ones vector
        residual = float(np.linalg.norm(m.matrix @ fiber - ones))
        if residual > ctx.tol * np.sqrt(m.q):
            raise NoIdentityTensor(
                f"all-ones fiber misses the map image (residual {residual:.3e})"
            )
    return fiber


def identity_tensor(n: int, ctx: MprodContext) -> Tensor3:
    """The tensor whose transformed frontal slices are all I_n.

    For surjective maps several such tensors exist; the minimal-norm (M+)
    representative is returned. For injective maps the defining system may
    be infeasible, in which case :class:`NoIdentityTensor` is raised.
    """
    n = int(n)
    if n < 1:
        raise DimensionMismatch(f"n must be >= 1, got {n}")
    fiber = _identity_fiber(ctx)
    data = np.zeros((ctx.map.p, n, n))
    rng_idx = np.arange(n)
    data[:, rng_idx, rng_idx] = fiber[:, None]
    return Tensor3._from_pmn(data)


def m_transpose(a: Tensor3, ctx: MprodContext) -> Tensor3:
    """The tensor whose hat-slices are the transposes of a's hat-slices.

    Defined for any m x n x p operand (the inner product needs lateral
    slices); transposition permutes fibers within the image of the map, so
    the pull-back satisfies the defining slice property exactly for every
    map kind. It is an involution for invertible and injective maps; for
    surjective maps the result is the minimal-norm representative, so a
    double transpose projects onto the pull-back module.
    """
    _check_depth(a, ctx)
    a_hat = mode3_product(a, ctx.map.matrix)
    flipped = np.ascontiguousarray(np.transpose(a_hat.slices(), (0, 2, 1)))
    return mode3_product(Tensor3._from_pmn(flipped), ctx.map.pinv)


def is_m_hermitian(a: Tensor3, ctx: MprodContext, tol: float | None = None) -> bool:
    """True iff every hat-slice is symmetric, i.e. m_transpose(a) == a."""
    if a.m != a.n:
        return False
    return approx_eq(m_transpose(a, ctx), a, ctx.tol if tol is None else tol)


def m_inverse(a: Tensor3, ctx: MprodContext) -> Tensor3:
    """Invert every hat-slice and map back with M+.

    Raises :class:`SingularSlice` when a hat-slice is not invertible. For
    injective maps the candidate is re-transformed and compared against the
    slice inverses; a mismatch means the inverse does not exist in the
    domain and raises :class:`NotMInvertible`. For surjective maps the
    returned tensor is the minimal-norm representative among the several
    inverses.
    """
    if a.m != a.n:
        raise DimensionMismatch(f"slices must be square, got {a.m} x {a.n}")
    _check_depth(a, ctx)
    a_hat = mode3_product(a, ctx.map.matrix)
    inv_slices = []
    for k in range(a_hat.p):
        try:
            inv_slices.append(matkernels.inverse(a_hat.slices()[k]))
        except Singular as exc:
            raise SingularSlice(f"hat-slice {k + 1} is singular: {exc}") from exc
    x_hat = Tensor3._from_pmn(np.stack(inv_slices))
    x = mode3_product(x_hat, ctx.map.pinv)
    if ctx.map.kind is MapKind.INJECTIVE:
        if not approx_eq(mode3_product(x, ctx.map.matrix), x_hat, ctx.tol):
            raise NotMInvertible(
                "slice inverses are not reachable through the injective map"
            )
    return x


def inner_product(x: Tensor3, y: Tensor3, ctx: MprodContext) -> Tube:
    """Tube-valued inner product <x, y> = y^H *_M x of lateral slices."""
    if x.n != 1 or y.n != 1 or x.m != y.m:
        raise DimensionMismatch(
            f"operands must be m x 1 x p lateral slices, got {x.shape} and {y.shape}"
        )
    out = mprod(m_transpose(y, ctx), x, ctx)
    return Tube.from_tensor(out)


def is_ppd(a: Tensor3, ctx: MprodContext, pd_tol: float = matkernels.PD_TOL) -> bool:
    """True iff every hat-slice is symmetric positive-definite."""
    if a.m != a.n:
        return False
    _check_depth(a, ctx)
    a_hat = mode3_product(a, ctx.map.matrix)
    for k in range(a_hat.p):
        s = a_hat.slices()[k]
        scale = max(1.0, float(np.linalg.norm(s)))
        if np.linalg.norm(s - s.T) > ctx.tol * scale:
            return False
        lam = np.linalg.eigvalsh(0.5 * (s + s.T))
        if lam[-1] <= 0.0 or lam[0] <= pd_tol * lam[-1]:
            return False
    return True


def pd_falsify(
    a: Tensor3, ctx: MprodContext, trials: int = 1000, seed: int = 0
) -> Tensor3 | None:
    """Search for a witness against *_M-positive-definiteness of ``a``.

    Samples unit-norm lateral slices x with standard normal entries and
    returns the first one whose quadratic-form tube <x, a *_M x> violates
    the tube order (an entry below -tol, or all entries within tol of
    zero). Returns None when no violation turns up in ``trials`` samples;
    this falsifies but never proves positive-definiteness.
    """
    if a.m != a.n:
        raise DimensionMismatch(f"slices must be square, got {a.m} x {a.n}")
    _check_depth(a, ctx)
    rng = np.random.default_rng(seed)
    for _ in range(int(trials)):
        sample = rng.standard_normal((a.n, 1, a.p))
        norm = np.linalg.norm(sample)
        if norm == 0.0:
            continue
        x = Tensor3(sample / norm)
        tube = inner_product(x, mprod(a, x, ctx), ctx).values
        if (tube < -ctx.tol).any() or (np.abs(tube) <= ctx.tol).all():
            return x
    return None


def is_f_diagonal(s: Tensor3, tol: float = 0.0) -> bool:
    """True iff entries off the diagonal mode-3 fibers are at most tol."""
    data = s.slices()
    mask = ~np.eye(s.m, s.n, dtype=bool)
    return bool(np.all(np.abs(data[:, mask]) <= tol))


def associativity_defect(
    a: Tensor3, b: Tensor3, c: Tensor3, ctx: MprodContext
) -> float:
    """|| (a *_M b) *_M c  -  a *_M (b *_M c) ||_F."""
    left = mprod(mprod(a, b, ctx), c, ctx)
    right = mprod(a, mprod(b, c, ctx), ctx)
    return frobenius_norm(left - right)


def eval_tensor_poly(coeffs, x: Tensor3, ctx: MprodContext) -> Tensor3:
    """Evaluate sum_i coeffs[i] * x^i under *_M by Horner's scheme.

    ``coeffs[i]`` multiplies the i-th power; ``x^0`` is the identity tensor.
    Trailing zero coefficients are ignored, so a degree-d polynomial costs
    exactly d - 1 tensor multiplications. Injective maps are rejected
    because without associativity the powers are ill-defined. For surjective
    maps the identity is the minimal-norm representative, which acts as a
    unit only on the pull-back module; there Horner agrees with direct
    powers for module elements (and always for invertible maps).
    """
    if ctx.map.kind is MapKind.INJECTIVE:
        raise MapKindUnsupported("tensor polynomials need an associative product")
    if x.m != x.n:
        raise DimensionMismatch(f"slices must be square, got {x.m} x {x.n}")
    _check_depth(x, ctx)
    c = [float(v) for v in coeffs]
    if not c:
        raise ValueError("need at least one coefficient")
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    ident = identity_tensor(x.n, ctx)
    d = len(c) - 1
    if d == 0:
        return c[0] * ident
    acc = c[d] * x + c[d - 1] * ident
    for i in range(d - 2, -1, -1):
        acc = mprod(acc, x, ctx)
        if c[i] != 0.0:
            acc = acc + c[i] * ident
    return acc
