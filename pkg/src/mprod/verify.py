"""Fixed-fixture verification suite behind the ``verify`` CLI command.

Every check replays a worked numeric example of the product algebra on
hard-coded fixtures: the 4 x 3 injective map that breaks associativity, the
two-row sign map whose product is identically zero, the identity and inverse
obstructions, the skew maps behind the indefinite quadratic-form tubes, the
mean counterexamples for the resultant and hyperdeterminant, and the Riccati
link. Each check reports the achieved error against its required tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import means, polydet
from .errors import NoIdentityTensor, NotMInvertible
from .linmap import classify, mode3_product
from .product import (
    MprodContext,
    identity_tensor,
    inner_product,
    is_ppd,
    m_inverse,
    mprod,
    pd_falsify,
)
from .tensor import Tensor3, Tube, frobenius_norm

__all__ = ["CheckResult", "run_checks", "format_report"]

DEFAULT_TOL = 1e-9

# 4 x 3 injective map of the associativity counterexample, with its exact
# rational pseudoinverse and the three tubes it is probed with.
ASSOC_M = np.array([[1.0, 1, 1], [1, -2, 1], [1, 1, 0], [0, 1, 2]])
ASSOC_PINV = (
    np.array([[29.0, 23, 43, -26], [13, -29, 16, 8], [4, 13, -17, 39]]) / 95.0
)
ASSOC_U = (1.0, 1.0, 1.0)
ASSOC_V = (1.0, 2.0, 3.0)
ASSOC_W = (-1.0, 1.0, 5.0)
ASSOC_LEFT = np.array([-437016.0, 307308.0, 1033434.0]) / 9025.0
ASSOC_RIGHT = np.array([-386472.0, 312276.0, 1008918.0]) / 9025.0

ZERO_MAP = np.array([[1.0], [-1.0]])
NO_IDENTITY_M = np.array([[1.0, 1], [0, 0], [1, 0]])
NONINVERTIBLE_M = np.array([[1.0, 0], [0, 1], [1, 1]])
IDENTITY_OK_M = np.array([[1.0, 0], [0, 1], [1, 0]])
SKEW_M = np.array([[0.0, 1], [-1, 1]])
ROTATION_M = np.array([[0.0, 1], [-1, 0]])
SQRT_NONUNIQUE_M = np.array([[1.0, 0, 1], [0, 1, 0]])

# the 2 x 2 x 2 pair whose geometric mean breaks the determinantal identity
MEAN_A = [np.array([[2.0, 1], [1, 2]]), np.array([[4.0, 1], [1, 4]])]
MEAN_B = [np.array([[2.0, -1], [-1, 2]]), np.array([[2.0, -1], [-1, 2]])]
RES_MEAN_EXPECTED = 3.3287
DET_MEAN_EXPECTED = 0.8753


@dataclass(frozen=True)
class CheckResult:
    name: str
    achieved: float
    required: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: achieved {self.achieved:.3e}, required <= {self.required:.3e}"


def _residual_check(name, achieved, required) -> CheckResult:
    achieved = float(achieved)
    return CheckResult(name, achieved, required, achieved <= required)


def _event_check(name, happened: bool) -> CheckResult:
    # achieved encodes the outcome: 0 when the expected event occurred
    return CheckResult(name, 0.0 if happened else 1.0, 0.0, happened)


def _tube(values) -> Tensor3:
    return Tube(np.asarray(values, dtype=float)).to_tensor()


def _rel_err(got: np.ndarray, want: np.ndarray) -> float:
    return float(np.linalg.norm(got - want) / np.linalg.norm(want))


def _random_invertible_ctx(p: int, rng) -> MprodContext:
    q, _ = np.linalg.qr(rng.standard_normal((p, p)))
    scale = 0.5 + rng.random(p)
    return MprodContext(classify(q * scale))


def _random_ppd(n: int, p: int, ctx: MprodContext, rng) -> Tensor3:
    slices = []
    for _ in range(p):
        g = rng.standard_normal((n, n))
        slices.append(g @ g.T + n * np.eye(n))
    hat = Tensor3._from_pmn(np.stack(slices))
    return mode3_product(hat, ctx.map.pinv)


def _mean_fixture_ctx():
    ctx = MprodContext(classify(np.eye(2)))
    a = Tensor3.from_slices(MEAN_A)
    b = Tensor3.from_slices(MEAN_B)
    return ctx, a, b


def run_checks(tolerance: float | None = None) -> list[CheckResult]:
    """Run the whole fixture suite; ``tolerance`` overrides the 1e-9 default
    used by the residual-style checks (value-match checks keep their own)."""
    tol = DEFAULT_TOL if tolerance is None else float(tolerance)
    results: list[CheckResult] = []

    # pseudoinverse of the 4 x 3 fixture has a known exact closed form
    fr = classify(ASSOC_M)
    results.append(
        _residual_check(
            "pseudoinverse of the 4x3 fixture",
            np.max(np.abs(fr.pinv - ASSOC_PINV)),
            1e-12,
        )
    )

    # both association orders of the tube triple
    ctx = MprodContext(fr)
    u, v, w = _tube(ASSOC_U), _tube(ASSOC_V), _tube(ASSOC_W)
    left = mprod(mprod(u, v, ctx), w, ctx).slices().ravel()
    right = mprod(u, mprod(v, w, ctx), ctx).slices().ravel()
    results.append(
        _residual_check("left-association tube", _rel_err(left, ASSOC_LEFT), tol)
    )
    results.append(
        _residual_check("right-association tube", _rel_err(right, ASSOC_RIGHT), tol)
    )

    # the sign map annihilates every product
    zero_ctx = MprodContext(classify(ZERO_MAP))
    rng = np.random.default_rng(20240)
    worst = 0.0
    for _ in range(100):
        a = Tensor3(rng.standard_normal((2, 2, 1)))
        b = Tensor3(rng.standard_normal((2, 2, 1)))
        ratio = frobenius_norm(mprod(a, b, zero_ctx)) / (
            frobenius_norm(a) * frobenius_norm(b)
        )
        worst = max(worst, ratio)
    results.append(_residual_check("sign map annihilates products", worst, 1e-12))

    # identity obstruction: the all-ones fiber misses this map's image
    try:
        identity_tensor(2, MprodContext(classify(NO_IDENTITY_M)))
        raised = False
    except NoIdentityTensor:
        raised = True
    results.append(_event_check("identity tensor obstruction", raised))

    # inverse obstruction: PPD tensor whose slice inverses leave the image
    noninv_ctx = MprodContext(classify(NONINVERTIBLE_M))
    stack_ii = Tensor3.from_slices([np.eye(2), np.eye(2)])
    results.append(
        _event_check(
            "pseudo-positive-definite fixture detected",
            is_ppd(stack_ii, noninv_ctx),
        )
    )
    try:
        m_inverse(stack_ii, noninv_ctx)
        raised = False
    except NotMInvertible:
        raised = True
    results.append(_event_check("inverse obstruction", raised))

    # an injective map that does admit an identity acts as one
    ok_ctx = MprodContext(classify(IDENTITY_OK_M))
    ident = identity_tensor(2, ok_ctx)
    probe = Tensor3(np.random.default_rng(7).standard_normal((2, 2, 2)))
    results.append(
        _residual_check(
            "injective identity acts as identity",
            frobenius_norm(mprod(ident, probe, ok_ctx) - probe),
            tol,
        )
    )

    # mode-3 embedding by the sign map stacks [A | -A]
    a_single = Tensor3(np.arange(1.0, 5.0).reshape(2, 2, 1))
    emb = mode3_product(a_single, ZERO_MAP)
    expected = Tensor3.from_slices(
        [a_single.frontal_slice(1), -a_single.frontal_slice(1)]
    )
    results.append(
        _residual_check(
            "sign map embeds as [A | -A]", frobenius_norm(emb - expected), 1e-14
        )
    )
    results.append(
        _event_check(
            "negated slice blocks pseudo-positive-definiteness",
            not is_ppd(
                Tensor3.from_slices([2 * np.eye(2), np.eye(2)]),
                MprodContext(classify(SKEW_M)),
            ),
        )
    )

    # quadratic-form tubes of the skew fixtures are [-1 | 0]
    skew_ctx = MprodContext(classify(SKEW_M))
    b_stack = Tensor3.from_slices([np.zeros((2, 2)), np.eye(2)])
    x = Tensor3(np.array([[[1.0, 0.0]], [[0.0, 0.0]]]))
    tube = inner_product(x, mprod(b_stack, x, skew_ctx), skew_ctx).values
    results.append(
        _residual_check(
            "indefinite tube under the skew map",
            float(np.linalg.norm(tube - np.array([-1.0, 0.0]))),
            tol,
        )
    )
    rot_ctx = MprodContext(classify(ROTATION_M))
    c_stack = Tensor3.from_slices([-np.eye(2), np.eye(2)])
    tube = inner_product(x, mprod(c_stack, x, rot_ctx), rot_ctx).values
    results.append(
        _residual_check(
            "indefinite tube under the rotation map",
            float(np.linalg.norm(tube - np.array([-1.0, 0.0]))),
            tol,
        )
    )
    witness = pd_falsify(b_stack, skew_ctx, trials=200, seed=11)
    results.append(_event_check("falsifier finds an indefinite witness", witness is not None))

    # surjective square roots are not unique
    surj_ctx = MprodContext(classify(SQRT_NONUNIQUE_M))
    a_surj = Tensor3.from_slices([2 * np.eye(2), 4 * np.eye(2), 2 * np.eye(2)])
    root1 = Tensor3.from_slices([np.eye(2), 2 * np.eye(2), np.eye(2)])
    root2 = Tensor3.from_slices([3 * np.eye(2), 2 * np.eye(2), -np.eye(2)])
    err = max(
        frobenius_norm(mprod(root1, root1, surj_ctx) - a_surj),
        frobenius_norm(mprod(root2, root2, surj_ctx) - a_surj),
    )
    results.append(_residual_check("two distinct surjective square roots", err, tol))

    # Riccati equation: the geometric mean solves it
    rng = np.random.default_rng(33)
    ric_ctx = _random_invertible_ctx(4, rng)
    a_ppd = _random_ppd(3, 4, ric_ctx, rng)
    b_ppd = _random_ppd(3, 4, ric_ctx, rng)
    gm = means.geometric_mean(a_ppd, b_ppd, ric_ctx)
    results.append(
        _residual_check(
            "Riccati residual of the geometric mean",
            means.riccati_residual(gm, a_ppd, b_ppd, ric_ctx),
            tol,
        )
    )

    # scalar consistency of both means
    ident = identity_tensor(3, ric_ctx)
    ga, gb = 2.0, 3.0
    gm_scalar = means.geometric_mean(ga * ident, gb * ident, ric_ctx)
    results.append(
        _residual_check(
            "geometric mean scalar consistency",
            frobenius_norm(gm_scalar - np.sqrt(ga * gb) * ident),
            1e-10 * frobenius_norm(ident),
        )
    )
    wm_scalar = means.wasserstein_mean(ga * ident, gb * ident, ric_ctx)
    wm_value = ((np.sqrt(ga) + np.sqrt(gb)) / 2.0) ** 2
    results.append(
        _residual_check(
            "Wasserstein mean scalar consistency",
            frobenius_norm(wm_scalar - wm_value * ident),
            1e-10 * frobenius_norm(ident),
        )
    )

    # resultant and hyperdeterminant counterexamples
    mean_ctx, mean_a, mean_b = _mean_fixture_ctx()
    gmean = means.geometric_mean(mean_a, mean_b, mean_ctx)
    results.append(
        _residual_check(
            "resultant of the geometric mean",
            abs(polydet.resultant_2x2x2(gmean) - RES_MEAN_EXPECTED),
            5e-3,
        )
    )
    results.append(
        _residual_check(
            "resultant of the degenerate operand",
            abs(polydet.resultant_2x2x2(mean_b)),
            tol,
        )
    )
    results.append(
        _residual_check(
            "hyperdeterminant of the geometric mean",
            abs(polydet.hyperdet_2x2x2(gmean) - DET_MEAN_EXPECTED),
            5e-3,
        )
    )
    det_prod = abs(polydet.hyperdet_2x2x2(mean_a) * polydet.hyperdet_2x2x2(mean_b))
    results.append(
        _residual_check("hyperdeterminant product vanishes", np.sqrt(det_prod), tol)
    )

    return results


def format_report(results) -> str:
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(
        f"{len(results) - failed}/{len(results)} checks passed"
        + ("" if failed == 0 else f", {failed} FAILED")
    )
    return "\n".join(lines)
