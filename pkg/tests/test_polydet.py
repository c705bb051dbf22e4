import numpy as np
import pytest

from mprod import (
    MprodContext,
    Quadratic,
    Tensor3,
    classify,
    geometric_mean,
    hyperdet_2x2x2,
    quadratic_resultant,
    resultant_2x2x2,
)
from mprod.errors import WrongShape

# the 2 x 2 x 2 pair whose geometric mean violates both identities
A_SLICES = [np.array([[2.0, 1], [1, 2]]), np.array([[4.0, 1], [1, 4]])]
B_SLICES = [np.array([[2.0, -1], [-1, 2]]), np.array([[2.0, -1], [-1, 2]])]


def mean_fixture():
    ctx = MprodContext(classify(np.eye(2)))
    a = Tensor3.from_slices(A_SLICES)
    b = Tensor3.from_slices(B_SLICES)
    return geometric_mean(a, b, ctx), a, b


class TestQuadraticResultant:
    def test_disjoint_monomials(self):
        assert quadratic_resultant(Quadratic(1, 0, 0), Quadratic(0, 0, 1)) == 1.0

    def test_equal_polynomials_share_roots(self):
        f = Quadratic(2.0, -3.0, 1.0)
        assert quadratic_resultant(f, f) == 0.0

    def test_term_by_term_example(self):
        # x^2 + y^2 and x^2 - y^2
        got = quadratic_resultant(Quadratic(1, 0, 1), Quadratic(1, 0, -1))
        assert got == 4.0

    def test_random_shared_linear_factor(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            alpha, beta, g1, d1, g2, d2 = rng.standard_normal(6)
            # (alpha x + beta y)(g x + d y) expanded
            f1 = Quadratic(alpha * g1, alpha * d1 + beta * g1, beta * d1)
            f2 = Quadratic(alpha * g2, alpha * d2 + beta * g2, beta * d2)
            scale = max(1.0, abs(alpha) + abs(beta)) ** 4
            assert abs(quadratic_resultant(f1, f2)) <= 1e-9 * scale


class TestResultant222:
    def test_degenerate_operand(self):
        b = Tensor3.from_slices(B_SLICES)
        assert abs(resultant_2x2x2(b)) <= 1e-9

    def test_frozen_operand_value(self):
        a = Tensor3.from_slices(A_SLICES)
        assert resultant_2x2x2(a) == pytest.approx(32.0, abs=1e-10)

    def test_geometric_mean_counterexample(self):
        gm, a, b = mean_fixture()
        assert resultant_2x2x2(gm) == pytest.approx(3.3287, abs=5e-3)
        product = resultant_2x2x2(a) * resultant_2x2x2(b)
        assert abs(np.sqrt(abs(product))) <= 1e-9
        # identity failure is large, not a rounding artifact
        assert abs(resultant_2x2x2(gm) - np.sqrt(abs(product))) > 1.0

    def test_zero_tensor(self):
        assert resultant_2x2x2(Tensor3.zeros(2, 2, 2)) == 0.0

    def test_wrong_shape(self):
        with pytest.raises(WrongShape):
            resultant_2x2x2(Tensor3.zeros(2, 2, 3))


class TestHyperdet222:
    def test_single_surviving_term(self):
        data = np.zeros((2, 2, 2))
        data[0, 0, 0] = 1.0  # a_000
        data[1, 1, 1] = 1.0  # a_111
        assert hyperdet_2x2x2(Tensor3(data)) == 1.0

    def test_identity_stack_vanishes(self):
        t = Tensor3.from_slices([np.eye(2), np.eye(2)])
        assert hyperdet_2x2x2(t) == 0.0

    def test_frozen_operand_values(self):
        assert hyperdet_2x2x2(Tensor3.from_slices(A_SLICES)) == pytest.approx(8.0)
        assert hyperdet_2x2x2(Tensor3.from_slices(B_SLICES)) == pytest.approx(0.0)

    def test_geometric_mean_counterexample(self):
        gm, a, b = mean_fixture()
        assert hyperdet_2x2x2(gm) == pytest.approx(0.8753, abs=5e-3)
        product = hyperdet_2x2x2(a) * hyperdet_2x2x2(b)
        assert np.sqrt(abs(product)) <= 1e-9
        assert abs(hyperdet_2x2x2(gm) - np.sqrt(abs(product))) > 0.5

    def test_closed_form_of_mean_fixture(self):
        # independent closed form: both slice pairs commute, so the slice
        # means diagonalize in the shared eigenbasis
        gm, _, _ = mean_fixture()
        q = np.array([[1.0, 1], [1, -1]]) / np.sqrt(2)
        want1 = np.sqrt(3) * np.eye(2)
        want2 = (q * np.array([np.sqrt(5.0), 3.0])) @ q.T
        np.testing.assert_allclose(gm.frontal_slice(1), want1, atol=1e-12)
        np.testing.assert_allclose(gm.frontal_slice(2), want2, atol=1e-12)

    def test_wrong_shape(self):
        with pytest.raises(WrongShape):
            hyperdet_2x2x2(Tensor3.zeros(1, 2, 2))
