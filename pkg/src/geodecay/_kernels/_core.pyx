# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: single-site alternating sweep and lower hull."""

from libc.math cimport sqrt


def sweep(const double complex[::1] psi, double complex[:, ::1] factors):
    """Update every factor in place to the normalized partial contraction.

    Returns the squared overlap after the last site update.
    """
    cdef Py_ssize_t n = factors.shape[0]
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t k, j, i, shift
    cdef double re, im, fr, fi, tmp, norm = 0.0
    cdef double t0r, t0i, t1r, t1i
    cdef double complex a

    if dim != (<Py_ssize_t>1 << n):
        raise ValueError("psi length does not match number of factors")

    for k in range(n):
        t0r = t0i = t1r = t1i = 0.0
        for i in range(dim):
            a = psi[i]
            re = a.real
            im = a.imag
            if re == 0.0 and im == 0.0:
                continue
            for j in range(n):
                if j == k:
                    continue
                shift = n - 1 - j
                a = factors[j, (i >> shift) & 1]
                # multiply by conj(factor)
                fr = a.real
                fi = -a.imag
                tmp = re * fr - im * fi
                im = re * fi + im * fr
                re = tmp
            if (i >> (n - 1 - k)) & 1:
                t1r += re
                t1i += im
            else:
                t0r += re
                t0i += im
        norm = sqrt(t0r * t0r + t0i * t0i + t1r * t1r + t1i * t1i)
        if norm > 0.0:
            factors[k, 0] = (t0r + 1j * t0i) / norm
            factors[k, 1] = (t1r + 1j * t1i) / norm
    return norm * norm


def lower_hull(const double[::1] xs, const double[::1] ys):
    """Indices of the lower convex hull of points sorted by strictly increasing x."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, top = 0
    cdef double cross
    stack = [0] * n
    cdef Py_ssize_t a, b
    for i in range(n):
        while top >= 2:
            a = stack[top - 2]
            b = stack[top - 1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross <= 0.0:
                top -= 1
            else:
                break
        stack[top] = i
        top += 1
    return stack[:top]
