import numpy as np
import pytest

from mprod import Tensor3, Tube, approx_eq, frobenius_norm
from mprod.errors import DimensionMismatch, IndexOutOfRange


def stack_i_2i():
    return Tensor3.from_slices([np.eye(2), 2 * np.eye(2)])


def test_shape_and_entry_indexing():
    t = Tensor3(np.arange(24.0).reshape(2, 3, 4))
    assert t.shape == (2, 3, 4)
    # flat buffer is frontal-slice-major, row-major within a slice
    flat = t.slices().ravel()
    m, n = t.m, t.n
    for k in range(1, t.p + 1):
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                offset = (k - 1) * m * n + (i - 1) * n + (j - 1)
                assert t.entry(i, j, k) == flat[offset]


def test_entry_bounds():
    t = stack_i_2i()
    with pytest.raises(IndexOutOfRange):
        t.entry(0, 1, 1)
    with pytest.raises(IndexOutOfRange):
        t.entry(1, 3, 1)
    with pytest.raises(IndexOutOfRange):
        t.entry(1, 1, 3)


def test_dimensions_must_be_positive():
    with pytest.raises(DimensionMismatch):
        Tensor3(np.zeros((2, 0, 3)))
    with pytest.raises(DimensionMismatch):
        Tensor3.zeros(0, 1, 1)


def test_frontal_slice_reads_and_copies():
    t = stack_i_2i()
    np.testing.assert_array_equal(t.frontal_slice(2), 2 * np.eye(2))
    s = t.frontal_slice(1)
    s[0, 0] = 99.0
    assert t.entry(1, 1, 1) == 1.0
    with pytest.raises(IndexOutOfRange):
        t.frontal_slice(3)


def test_slicing_is_a_partition():
    rng = np.random.default_rng(0)
    t = Tensor3(rng.standard_normal((3, 4, 5)))
    rebuilt = Tensor3.from_slices([t.frontal_slice(k) for k in range(1, t.p + 1)])
    np.testing.assert_array_equal(rebuilt.slices(), t.slices())


def test_tube_fixture_first_slice():
    u = Tube([1.0, 1.0, 1.0]).to_tensor()
    np.testing.assert_array_equal(u.frontal_slice(1), [[1.0]])


def test_mode3_fibers():
    t = stack_i_2i()
    np.testing.assert_array_equal(t.mode3_fiber(1, 1).values, [1.0, 2.0])
    np.testing.assert_array_equal(t.mode3_fiber(1, 2).values, [0.0, 0.0])
    with pytest.raises(IndexOutOfRange):
        t.mode3_fiber(3, 1)


def test_fibers_reassemble_tensor():
    rng = np.random.default_rng(1)
    t = Tensor3(rng.standard_normal((3, 2, 4)))
    data = np.zeros((3, 2, 4))
    for i in range(1, 4):
        for j in range(1, 3):
            data[i - 1, j - 1, :] = t.mode3_fiber(i, j).values
    np.testing.assert_array_equal(Tensor3(data).slices(), t.slices())


def test_mode3_unfolding_rows():
    u = Tube([2.0, -1.0, 3.0]).to_tensor()
    np.testing.assert_array_equal(u.mode3_unfolding(), [[2.0], [-1.0], [3.0]])
    t = stack_i_2i()
    np.testing.assert_array_equal(
        t.mode3_unfolding(), [[1.0, 0, 0, 1], [2.0, 0, 0, 2]]
    )


def test_unfold_refold_round_trip():
    rng = np.random.default_rng(2)
    t = Tensor3(rng.standard_normal((4, 3, 6)))
    back = Tensor3.refold(t.mode3_unfolding(), t.m, t.n)
    np.testing.assert_array_equal(back.slices(), t.slices())
    with pytest.raises(DimensionMismatch):
        Tensor3.refold(t.mode3_unfolding(), 5, 5)


def test_frobenius_norm_examples():
    assert frobenius_norm(Tensor3.zeros(2, 3, 4)) == 0.0
    single = Tensor3.zeros(2, 2, 2).slices().copy()
    single[1, 0, 1] = 3.0
    assert frobenius_norm(Tensor3._from_pmn(single)) == 3.0
    assert frobenius_norm(Tensor3(np.ones((2, 2, 2)))) == pytest.approx(np.sqrt(8.0))


def test_frobenius_norm_matches_flat_loop_oracle():
    rng = np.random.default_rng(3)
    t = Tensor3(rng.standard_normal((5, 4, 7)))
    total = 0.0
    for v in t.slices().ravel():
        total += v * v
    assert frobenius_norm(t) == pytest.approx(np.sqrt(total), rel=1e-14)


def test_approx_eq():
    rng = np.random.default_rng(4)
    a = Tensor3(rng.standard_normal((3, 3, 3)))
    assert approx_eq(a, a, 1e-12)
    tol = 1e-8
    bump = np.zeros((3, 3, 3))
    bump[0, 0, 0] = 10 * tol * frobenius_norm(a)
    assert not approx_eq(a, a + Tensor3(bump), tol)
    z = Tensor3.zeros(2, 2, 2)
    assert approx_eq(z, z, 1e-300)
    with pytest.raises(DimensionMismatch):
        approx_eq(a, Tensor3.zeros(3, 3, 4), 1e-12)


def test_immutability():
    t = stack_i_2i()
    with pytest.raises(ValueError):
        t.slices()[0, 0, 0] = 5.0


def test_arithmetic():
    rng = np.random.default_rng(5)
    a = Tensor3(rng.standard_normal((2, 3, 2)))
    b = Tensor3(rng.standard_normal((2, 3, 2)))
    np.testing.assert_allclose((a + b).slices(), a.slices() + b.slices())
    np.testing.assert_allclose((a - b).slices(), a.slices() - b.slices())
    np.testing.assert_allclose((2.5 * a).slices(), 2.5 * a.slices())
    np.testing.assert_allclose((a / 2).slices(), a.slices() / 2)
    np.testing.assert_allclose((-a).slices(), -a.slices())
    with pytest.raises(DimensionMismatch):
        a + Tensor3.zeros(2, 3, 3)


def test_tube_tensor_round_trip():
    tube = Tube([1.5, -2.0, 0.25])
    assert tube.p == 3
    back = Tube.from_tensor(tube.to_tensor())
    np.testing.assert_array_equal(back.values, tube.values)
    with pytest.raises(DimensionMismatch):
        Tube.from_tensor(Tensor3.zeros(2, 1, 3))
