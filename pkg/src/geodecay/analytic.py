"""Closed-form decay curves of the geometric measure under global dephasing.

All curves are functions of the dephasing parameter ``x = exp(-gamma t)``.
The expressions are rearranged so that no difference of nearly equal terms is
formed; e.g. ``(1 - sqrt(1 - x^2)) / 2`` is evaluated as
``x^2 / (2 (1 + sqrt((1 - x)(1 + x))))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


class CurveFamily(str, enum.Enum):
    GHZ_N = "GHZ_N"
    CL4 = "CL4"
    W4 = "W4"
    D4 = "D4"
    CL_N = "CL_N"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).replace("_", "").replace("-", "").lower()
        aliases = {"ghz": cls.GHZ_N, "ghzn": cls.GHZ_N, "cl4": cls.CL4, "cluster4": cls.CL4,
                   "w4": cls.W4, "w": cls.W4, "d4": cls.D4, "dicke": cls.D4, "dicke4": cls.D4,
                   "cln": cls.CL_N, "cluster": cls.CL_N, "clustern": cls.CL_N}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown curve family {value!r}") from None


W4_BRANCH = Fraction(2183, 2667)
D4_BRANCH = Fraction(5, 7)
W4_SLOPE = Fraction(37 * 81, 2816)
D4_SLOPE = Fraction(15, 16)

PURE_MEASURE = {
    CurveFamily.GHZ_N: Fraction(1, 2),
    CurveFamily.CL4: Fraction(3, 4),
    CurveFamily.W4: Fraction(37, 64),
    CurveFamily.D4: Fraction(5, 8),
}


def branch_point(family):
    """Hull breakpoint as an exact fraction, or ``None`` for single-branch curves."""
    family = CurveFamily.parse(family)
    return {CurveFamily.W4: W4_BRANCH, CurveFamily.D4: D4_BRANCH}.get(family)


def check_size(family, n_qubits):
    family = CurveFamily.parse(family)
    if not isinstance(n_qubits, int) or isinstance(n_qubits, bool):
        raise DomainError(f"n_qubits must be an int, got {n_qubits!r}")
    if family is CurveFamily.GHZ_N:
        if n_qubits < 2:
            raise DomainError("GHZ curves need at least 2 qubits")
    elif family is CurveFamily.CL_N:
        if n_qubits < 2 or n_qubits % 2:
            raise DomainError("cluster curves need an even number of qubits")
    elif n_qubits != 4:
        raise DomainError(f"{family.value} is a four-qubit curve")
    return family


def pure_measure(family, n_qubits):
    """Geometric measure of the undephased state (value of the curve at ``x = 1``)."""
    family = check_size(family, n_qubits)
    if family is CurveFamily.CL_N:
        return 1.0 - 2.0 ** (-(n_qubits // 2))
    return float(PURE_MEASURE[family])


def _check_x(x):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"dephasing parameter {x} outside [0, 1]")


def _sqrt_mix(x, m):
    # sqrt((1 - x)(1 + m x)) without forming 1 + (m-1) x - m x^2
    return math.sqrt((1.0 - x) * (1.0 + m * x))


def _ghz(x):
    return x * x / 2 / (1.0 + _sqrt_mix(x, 1))


def _cl4(x):
    return 1.5 * x * x / (1.0 + x + _sqrt_mix(x, 3))


def _d4_low(x):
    return 2.5 * x * x / (1.0 + 2.0 * x + _sqrt_mix(x, 5))


def _cl_n(x, n_qubits):
    n = n_qubits // 2
    e = 2.0 ** (-n)
    a = (1.0 - e) * (1.0 - 2.0 * e)
    if e == 0.0:
        # 2^-n underflowed; the curve is x to double precision
        return x
    num = 2.0 * (1.0 - e) * ((2.0 * e - 1.0) + (1.0 - e) * x)
    if n <= 50:
        den = 1.0 + math.sqrt((1.0 - x) * (1.0 + (2.0 ** n - 1.0) * x))
        return a * x + x * num / den
    # 2^n - 1 no longer fits the mantissa; scale through sqrt(e)
    re = math.sqrt(e)
    den = re + math.sqrt((1.0 - x) * (e + (1.0 - e) * x))
    return a * x + x * re * num / den


def eg_exact(family, n_qubits, x):
    """Geometric measure of the dephased state as a function of ``x``."""
    family = check_size(family, n_qubits)
    _check_x(x)
    x = float(x)
    if family is CurveFamily.GHZ_N:
        return _ghz(x)
    if family is CurveFamily.CL4:
        return _cl4(x)
    if family is CurveFamily.W4:
        if x >= W4_BRANCH:
            return 37.0 * (81.0 * x - 37.0) / 2816.0
        return _cl4(x)
    if family is CurveFamily.D4:
        if x >= D4_BRANCH:
            return 5.0 * (3.0 * x - 1.0) / 16.0
        return _d4_low(x)
    return _cl_n(x, n_qubits)


def _d_ghz(x):
    return x / (2.0 * _sqrt_mix(x, 1))


def _d_cl4(x):
    return 0.375 * (1.0 - (1.0 - 3.0 * x) / _sqrt_mix(x, 3))


def _d_d4_low(x):
    return (5.0 / 18.0) * (2.0 - (2.0 - 5.0 * x) / _sqrt_mix(x, 5))


def _d_cl_n(x, n_qubits):
    n = n_qubits // 2
    e = 2.0 ** (-n)
    if e == 0.0:
        return 1.0
    a = (1.0 - e) * (1.0 - 2.0 * e)
    root = math.sqrt((1.0 - x) * (e + (1.0 - e) * x))
    return a - (1.0 - e) * (1.0 - 2.0 * e - 2.0 * (1.0 - e) * x) * math.sqrt(e) / root


def eg_derivative(family, n_qubits, x, side="left"):
    """``d E / d x``; at a hull breakpoint ``side`` picks the one-sided branch.

    ``side="left"`` means the branch below the breakpoint (larger times).
    Diverges as ``x -> 1`` for every curve except the linear hull pieces.
    """
    family = check_size(family, n_qubits)
    _check_x(x)
    if x >= 1.0 and family in (CurveFamily.GHZ_N, CurveFamily.CL4, CurveFamily.CL_N):
        return math.inf
    if family is CurveFamily.GHZ_N:
        return _d_ghz(x)
    if family is CurveFamily.CL4:
        return _d_cl4(x)
    if family is CurveFamily.W4:
        if x > W4_BRANCH or (x == W4_BRANCH and side == "right"):
            return float(W4_SLOPE)
        return _d_cl4(x)
    if family is CurveFamily.D4:
        if x > D4_BRANCH or (x == D4_BRANCH and side == "right"):
            return float(D4_SLOPE)
        return _d_d4_low(x)
    return _d_cl_n(x, n_qubits)


@dataclass(frozen=True)
class DecayCurve:
    """Piecewise closed-form curve ``x -> E_G``."""

    family: CurveFamily
    n_qubits: int
    branch_point: Fraction | None = None

    def __call__(self, x):
        return eg_exact(self.family, self.n_qubits, x)

    def derivative(self, x, side="left"):
        return eg_derivative(self.family, self.n_qubits, x, side)

    @property
    def pure_value(self):
        return pure_measure(self.family, self.n_qubits)


def decay_curve(family, n_qubits=4):
    family = check_size(family, n_qubits)
    return DecayCurve(family, n_qubits, branch_point(family))
