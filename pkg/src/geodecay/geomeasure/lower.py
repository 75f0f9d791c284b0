"""Lower bounds on the convex-roof geometric measure from expectation values."""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar

from .. import _kernels
from ..errors import DomainError
from ..states import Observable, PureState, _n_from_dim, product_vector
from .pure import DEFAULT_OPTIONS, basis_factors, random_factors

log = logging.getLogger(__name__)

_BASIS_START_LIMIT = 64
_BASIS_TILT = 0.25
_F_ULPS = 1e-15


def _fidelity_objective(r, F, E0):
    return 1.0 + r * F - 0.5 * (1.0 + r + math.sqrt((1.0 + r) ** 2 - 4.0 * r * E0))


def lower_bound_fidelity(F, E0):
    """Best bound ``sup_r>=0 {1 + r F - (1 + r + sqrt((1+r)^2 - 4 r E0)) / 2}``.

    ``F`` is the fidelity with a reference pure state whose geometric measure
    is ``E0``. The objective is concave in ``r``; its stationary point is
    available in closed form, with a bracketed root search as fallback.
    """
    if not (0.0 <= F <= 1.0 and 0.0 <= E0 <= 1.0):
        raise DomainError(f"F={F} and E0={E0} must lie in [0, 1]")
    if F >= 1.0 - _F_ULPS:
        # sup approached as r -> infinity; the bound has a square-root
        # singularity here, so F off by rounding alone would cost ~1e-8
        return float(E0)
    u = 2.0 * F - 1.0
    K = 4.0 * E0 * (1.0 - E0)
    try:
        y = u * math.sqrt(K) / math.sqrt(1.0 - u * u)
        r = max(0.0, y - 1.0 + 2.0 * E0)
        value = _fidelity_objective(r, F, E0)
        if not math.isfinite(value):
            raise ValueError("non-finite objective")
    except (ValueError, ZeroDivisionError, OverflowError):
        log.info("closed-form stationarity failed for F=%r, E0=%r; using root search", F, E0)
        value = _lower_bound_fidelity_search(F, E0)
    return max(0.0, value)


def _lower_bound_fidelity_search(F, E0):
    def slope(r):
        d = math.sqrt((1.0 + r) ** 2 - 4.0 * r * E0)
        return F - 0.5 * (1.0 + (1.0 + r - 2.0 * E0) / d) if d > 0 else F - 0.5

    if slope(0.0) <= 0.0:
        return _fidelity_objective(0.0, F, E0)
    hi = 1.0
    while slope(hi) > 0.0 and hi < 1e12:
        hi *= 2.0
    r = brentq(slope, 0.0, hi, xtol=1e-14) if slope(hi) <= 0.0 else hi
    return _fidelity_objective(r, F, E0)


def _matrix(W):
    m = W.matrix if isinstance(W, Observable) else np.asarray(W, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or np.max(np.abs(m - m.conj().T)) > 1e-12:
        raise DomainError("Legendre value needs a Hermitian matrix")
    return m


def _subspace_basis(P, dim):
    if P is None:
        return None
    m = _matrix(P)
    if m.shape[0] != dim:
        raise DomainError("subspace projector has the wrong dimension")
    if np.allclose(m, np.diag(np.diag(m))):
        idx = np.flatnonzero(np.real(np.diag(m)) > 0.5)
        return np.eye(dim, dtype=complex)[:, idx]
    w, v = np.linalg.eigh(m)
    return v[:, w > 0.5]


def legendre_value(W, opts=None, subspace=None):
    """``max_psi [<psi|W|psi> - E_G(psi)]``, optionally with ``psi`` in a subspace.

    Uses ``E_G(psi) = 1 - max_phi |<phi|psi>|^2`` to run a joint ascent over
    the pair ``(psi, phi)``: for fixed product ``phi`` the best ``psi`` is the
    top eigenvector of ``W + |phi><phi|`` (compressed to the subspace), and for
    fixed ``psi`` one alternating sweep improves ``phi``. Starts are the
    (slightly tilted) computational basis product states plus ``opts.restarts``
    random product states.
    """
    opts = opts or DEFAULT_OPTIONS
    m = _matrix(W)
    dim = m.shape[0]
    n = _n_from_dim(dim)
    Q = _subspace_basis(subspace, dim)
    if Q is not None and Q.shape[1] == 0:
        raise DomainError("subspace is empty")
    Wr = m if Q is None else Q.conj().T @ m @ Q

    if dim <= _BASIS_START_LIMIT:
        basis = range(dim)
    else:
        basis = np.argsort(-np.abs(np.diag(m)), kind="stable")[:_BASIS_START_LIMIT]
    starts = [basis_factors(int(i), n, _BASIS_TILT) for i in basis]
    starts += [random_factors(rng, n) for rng in opts.start_rngs()]

    best = -math.inf
    for factors in starts:
        best = max(best, _joint_ascent(Wr, Q, factors, opts.max_sweeps, opts.tol))
    return best - 1.0


def _joint_ascent(Wr, Q, factors, max_iter, tol):
    prev = -math.inf
    for _ in range(max_iter):
        phi = product_vector(factors)
        phr = phi if Q is None else Q.conj().T @ phi
        w, v = np.linalg.eigh(Wr + np.outer(phr, phr.conj()))
        lam = w[-1]
        if lam - prev < tol * max(1.0, abs(lam)):
            return max(lam, prev)
        prev = lam
        psi = v[:, -1] if Q is None else Q @ v[:, -1]
        _kernels.sweep(np.ascontiguousarray(psi), factors)
    return prev


_ALPHA_GRID = (0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 16.0, 32.0, 64.0)
_BETA_GRID = (-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0)


def lower_bound_two_observables(f, p, psi0, P, opts=None, *, restrict=None, fix_beta=None,
                                alpha_grid=_ALPHA_GRID, beta_grid=_BETA_GRID):
    """``sup_{a,b} [a f + b p - Ehat(a |psi0><psi0| + b P)]``.

    ``f`` is the fidelity of ``psi0`` and ``p`` the expectation of ``P`` in the
    mixed state. When ``p == 1`` the state lives in the range of ``P``, so
    every decomposition does too and the Legendre value may be computed inside
    that range (``restrict`` defaults to this test). There the ``b`` terms
    cancel exactly and only ``a`` is searched. The objective is concave; the
    search is a coarse grid followed by local refinement.
    """
    opts = opts or DEFAULT_OPTIONS
    if not isinstance(psi0, PureState):
        raise DomainError("psi0 must be a PureState")
    Pm = _matrix(P)
    if Pm.shape[0] != psi0.dim:
        raise DomainError("P and psi0 dimensions differ")
    if not (0.0 <= f <= 1.0 + 1e-12 and -1e-12 <= p <= 1.0 + 1e-12):
        raise DomainError("expectation values must lie in [0, 1]")
    if restrict is None:
        restrict = abs(p - 1.0) <= 1e-12
    Pi = np.outer(psi0.amplitudes, psi0.amplitudes.conj())
    subspace = Pm if restrict else None
    if restrict and fix_beta is None:
        fix_beta = 0.0

    def objective(a, b):
        return a * f + b * p - legendre_value(a * Pi + b * Pm, opts, subspace)

    if fix_beta is not None:
        b = float(fix_beta)
        vals = [objective(a, b) for a in alpha_grid]
        i = int(np.argmax(vals))
        lo = alpha_grid[max(i - 1, 0)]
        hi = alpha_grid[min(i + 1, len(alpha_grid) - 1)]
        best = vals[i]
        if hi > lo:
            res = minimize_scalar(lambda a: -objective(a, b), bounds=(lo, hi),
                                  method="bounded", options={"xatol": 1e-7})
            best = max(best, -res.fun)
        return max(0.0, best)

    grid = [(a, b) for a in alpha_grid for b in beta_grid]
    vals = [objective(a, b) for a, b in grid]
    i = int(np.argmax(vals))
    res = minimize(lambda z: -objective(z[0], z[1]), np.array(grid[i]), method="Nelder-Mead",
                   options={"xatol": 1e-7, "fatol": 1e-10, "maxiter": 400})
    return max(0.0, vals[i], -res.fun)
