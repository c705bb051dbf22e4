"""Determinant analogues for 2 x 2 x 2 tensors.

Two generalizations of the matrix determinant: a resultant built from the
binary quadratics read off the lateral slices, and a second-order
hyperdeterminant given by an explicit degree-4 polynomial in the entries.
Both vanish exactly when the associated polynomial system has a nontrivial
common zero; neither satisfies the determinantal identity of the matrix
geometric mean, which is what the bundled counterexample fixtures probe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WrongShape
from .tensor import Tensor3

__all__ = ["Quadratic", "quadratic_resultant", "resultant_2x2x2", "hyperdet_2x2x2"]


@dataclass(frozen=True)
class Quadratic:
    """Coefficients of the binary quadratic a1*x^2 + a2*x*y + a3*y^2."""

    a1: float
    a2: float
    a3: float


def quadratic_resultant(f1: Quadratic, f2: Quadratic) -> float:
    """Resultant of two binary quadratics; zero iff they share a root."""
    a1, a2, a3 = f1.a1, f1.a2, f1.a3
    b1, b2, b3 = f2.a1, f2.a2, f2.a3
    return (
        a3**2 * b1**2
        - a2 * a3 * b1 * b2
        + a1 * a3 * b2**2
        + a2**2 * b1 * b3
        - 2 * a1 * a3 * b1 * b3
        - a1 * a2 * b2 * b3
        + a1**2 * b3**2
    )


def _check_222(t: Tensor3) -> None:
    if t.shape != (2, 2, 2):
        raise WrongShape(f"expected a 2 x 2 x 2 tensor, got {t.shape}")


def lateral_quadratic(t: Tensor3, j: int) -> Quadratic:
    """Binary quadratic of lateral slice j (1-based) of a 2 x 2 x 2 tensor.

    With L[i][k] = a_{ijk}, the quadratic is
    L11 x^2 + (L12 + L21) xy + L22 y^2; the cross term is symmetrized
    because the slice-to-quadratic correspondence only fixes the quadratic
    form, not the off-diagonal split.
    """
    _check_222(t)
    return Quadratic(
        t.entry(1, j, 1),
        t.entry(1, j, 2) + t.entry(2, j, 1),
        t.entry(2, j, 2),
    )


def resultant_2x2x2(t: Tensor3) -> float:
    """Resultant of the two lateral-slice quadratics of a 2 x 2 x 2 tensor."""
    _check_222(t)
    return quadratic_resultant(lateral_quadratic(t, 1), lateral_quadratic(t, 2))


def hyperdet_2x2x2(t: Tensor3) -> float:
    """Second hyperdeterminant of a 2 x 2 x 2 tensor.

    Index convention: a[i][j][k] (0-based) is entry (i+1, j+1) of frontal
    slice k+1.
    """
    _check_222(t)
    a = [[[t.entry(i + 1, j + 1, k + 1) for k in range(2)] for j in range(2)] for i in range(2)]
    return (
        a[0][0][0] ** 2 * a[1][1][1] ** 2
        + a[0][0][1] ** 2 * a[1][1][0] ** 2
        + a[0][1][0] ** 2 * a[1][0][1] ** 2
        + a[1][0][0] ** 2 * a[0][1][1] ** 2
        - 2
        * (
            a[0][0][0] * a[0][0][1] * a[1][1][0] * a[1][1][1]
            + a[0][0][0] * a[0][1][0] * a[1][0][1] * a[1][1][1]
            + a[0][0][0] * a[0][1][1] * a[1][0][1] * a[1][1][0]
            + a[0][0][1] * a[0][1][0] * a[1][0][1] * a[1][1][0]
            + a[0][0][1] * a[0][1][1] * a[1][0][0] * a[1][1][1]
            + a[0][1][0] * a[0][1][1] * a[1][0][0] * a[1][0][1]
        )
        + 4
        * (
            a[0][0][0] * a[0][1][1] * a[1][0][1] * a[1][1][0]
            + a[0][0][1] * a[0][1][0] * a[1][0][0] * a[1][1][1]
        )
    )
