"""Independent reference computations shared by several test modules."""

import numpy as np
from scipy.optimize import minimize


def three_qubit_grid_oracle(psi):
    """Grid over the first qubit's Bloch sphere; the other two by SVD."""
    T = psi.amplitudes.reshape(2, 4)

    def overlap2(angles):
        th, ph = angles
        a = np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)])
        M = (a.conj() @ T).reshape(2, 2)
        return np.linalg.svd(M, compute_uv=False)[0] ** 2

    grid = [(th, ph) for th in np.linspace(0, np.pi, 61) for ph in np.linspace(0, 2 * np.pi, 121)]
    vals = [overlap2(g) for g in grid]
    start = grid[int(np.argmax(vals))]
    res = minimize(lambda z: -overlap2(z), start, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14})
    return 1 - max(max(vals), -res.fun)
