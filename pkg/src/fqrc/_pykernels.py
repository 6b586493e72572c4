"""Pure numpy implementations of the hot kernels.

Must agree bit-for-bit with ``_ckernels.pyx``: same comparison boundaries,
same operation order in the membership ramps and the per-class products.
"""

import numpy as np


def bin_counts(values, edges):
    """Count ``values`` into bins ``[e_i, e_{i+1})``; the last bin is closed."""
    values = np.asarray(values, dtype=np.float64)
    edges = np.asarray(edges, dtype=np.float64)
    nbins = edges.shape[0] - 1
    idx = np.searchsorted(edges, values, side="right") - 1
    np.clip(idx, 0, nbins - 1, out=idx)
    return np.bincount(idx, minlength=nbins).astype(np.int64)


def memberships(X, lower, a, b, upper, alpha, beta):
    """Membership grid of shape (N, J, K) for samples ``X`` of shape (N, J)."""
    X = np.asarray(X, dtype=np.float64)[:, :, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        left = (X - lower) / alpha
        right = (upper - X) / beta
    mu = np.where(X < lower, 0.0,
         np.where(X < a, left,
         np.where(X <= b, 1.0,
         np.where(X <= upper, right, 0.0))))
    return mu


def class_products(X, lower, a, b, upper, alpha, beta):
    """Per-class product of feature memberships, shape (N, K)."""
    mu = memberships(X, lower, a, b, upper, alpha, beta)
    P = np.ones((mu.shape[0], mu.shape[2]), dtype=np.float64)
    for j in range(mu.shape[1]):
        P *= mu[:, j, :]
    return P
