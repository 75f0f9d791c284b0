"""Pure-numpy versions of the compiled kernels."""

from functools import reduce

import numpy as np


def sweep(psi, factors):
    """Update every factor in place to the normalized partial contraction.

    Returns the squared overlap after the last site update.
    """
    n = factors.shape[0]
    if psi.shape[0] != 1 << n:
        raise ValueError("psi length does not match number of factors")
    tensor = psi.reshape((2,) * n)
    norm = 0.0
    for k in range(n):
        others = [factors[j].conj() for j in range(n) if j != k]
        rest = reduce(np.kron, others) if others else np.ones(1, dtype=complex)
        t = np.moveaxis(tensor, k, 0).reshape(2, -1) @ rest
        norm = float(np.linalg.norm(t))
        if norm > 0.0:
            factors[k] = t / norm
    return norm * norm


def lower_hull(xs, ys):
    """Indices of the lower convex hull of points sorted by strictly increasing x."""
    stack = []
    for i in range(len(xs)):
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross <= 0.0:
                stack.pop()
            else:
                break
        stack.append(i)
    return stack
