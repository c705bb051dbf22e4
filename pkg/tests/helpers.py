"""Shared fixture builders for the test suite."""

import numpy as np

from mprod import MprodContext, Tensor3, classify, mode3_product


def random_invertible_ctx(p, rng, algo="naive"):
    """Well-conditioned random invertible map: orthogonal times mild scaling."""
    q, _ = np.linalg.qr(rng.standard_normal((p, p)))
    return MprodContext(classify(q * (0.5 + rng.random(p))), algo=algo)


def random_ppd(n, p, ctx, rng):
    """Random pseudo-positive-definite tensor, built from SPD hat slices."""
    slices = []
    for _ in range(p):
        g = rng.standard_normal((n, n))
        slices.append(g @ g.T + n * np.eye(n))
    return mode3_product(Tensor3.from_slices(slices), ctx.map.pinv)


def random_m_invertible(n, p, ctx, rng):
    """Random tensor whose hat slices are all well-conditioned (invertible)."""
    slices = []
    for _ in range(p):
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        slices.append(q * (0.5 + rng.random(n)))
    hat = Tensor3._from_pmn(np.stack(slices))
    return mode3_product(hat, ctx.map.pinv)


def triple_loop_matmul(a, b):
    """Independent cubic multiplication oracle."""
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n))
    for i in range(m):
        for j in range(n):
            acc = 0.0
            for l in range(k):
                acc += a[i, l] * b[l, j]
            out[i, j] = acc
    return out
