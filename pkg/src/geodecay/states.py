"""Multiqubit states, density matrices and projectors.

Basis index ``i`` encodes qubit values most-significant-qubit first, so qubit 1
is the leftmost label of a ket string: ``|0011>`` has index 3.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from math import comb

import numpy as np

from .errors import DomainError

MAX_MATRIX_QUBITS = 14

_NORM_TOL = 1e-12
_HERM_TOL = 1e-12
_PSD_TOL = 1e-10
# PSD check needs a full eigendecomposition; skip it for large registers.
_PSD_CHECK_MAX_DIM = 1 << 10


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def _n_from_dim(dim):
    n = int(dim).bit_length() - 1
    if n < 1 or (1 << n) != dim:
        raise DomainError(f"dimension {dim} is not a power of two >= 2")
    return n


class StateFamily(str, enum.Enum):
    GHZ = "GHZ"
    CLUSTER_LINEAR = "ClusterLinear"
    W4 = "W4"
    DICKE4 = "Dicke4"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).replace("_", "").replace("-", "").lower()
        for member in cls:
            if member.value.lower() == key or member.name.replace("_", "").lower() == key:
                return member
        raise DomainError(f"unknown state family {value!r}")


@dataclass(frozen=True, eq=False)
class PureState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes).ravel()
        if self.n_qubits < 1 or amps.shape[0] != 1 << self.n_qubits:
            raise DomainError(
                f"{amps.shape[0]} amplitudes do not describe {self.n_qubits} qubits"
            )
        if abs(np.vdot(amps, amps).real - 1.0) > _NORM_TOL:
            raise DomainError("state is not normalized")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize=False):
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise DomainError("zero vector cannot be normalized")
            amps = amps / norm
        return cls(_n_from_dim(amps.shape[0]), amps)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def density(self):
        return DensityMatrix.from_pure(self)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        dim = 1 << self.n_qubits
        if m.shape != (dim, dim):
            raise DomainError(f"matrix shape {m.shape} does not describe {self.n_qubits} qubits")
        if np.max(np.abs(m - m.conj().T)) > _HERM_TOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > _NORM_TOL:
            raise DomainError("density matrix does not have unit trace")
        if dim <= _PSD_CHECK_MAX_DIM and np.linalg.eigvalsh(m)[0] < -_PSD_TOL:
            raise DomainError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, matrix):
        m = np.asarray(matrix, dtype=complex)
        return cls(_n_from_dim(m.shape[0]), m)

    @classmethod
    def from_pure(cls, state):
        a = state.amplitudes
        return cls(state.n_qubits, np.outer(a, a.conj()))

    @property
    def dim(self):
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class ProductState:
    factors: tuple

    def __post_init__(self):
        fs = []
        for f in self.factors:
            f = _frozen(f).ravel()
            if f.shape != (2,):
                raise DomainError("each factor must be a single-qubit 2-vector")
            if abs(np.vdot(f, f).real - 1.0) > _NORM_TOL:
                raise DomainError("product-state factor is not normalized")
            fs.append(f)
        if not fs:
            raise DomainError("a product state needs at least one factor")
        object.__setattr__(self, "factors", tuple(fs))

    @property
    def n_qubits(self):
        return len(self.factors)

    def as_array(self):
        """Factors stacked into a writable ``(n_qubits, 2)`` array."""
        return np.array(self.factors, dtype=complex)


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("observable must be a square matrix")
        _n_from_dim(m.shape[0])
        if np.max(np.abs(m - m.conj().T)) > _HERM_TOL:
            raise DomainError("observable is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def n_qubits(self):
        return _n_from_dim(self.matrix.shape[0])

    def expectation(self, rho):
        _check_dims(self.matrix.shape[0], rho.dim)
        return float(np.real(np.trace(rho.matrix @ self.matrix)))


def _check_dims(a, b):
    if a != b:
        raise DomainError(f"dimension mismatch: {a} vs {b}")


def hamming_weights(n_qubits):
    idx = np.arange(1 << n_qubits)
    return np.array([bin(i).count("1") for i in idx])


def basis_index(bits):
    """Index of a ket label such as ``"0011"``."""
    return int(bits, 2)


def _ghz(n):
    a = np.zeros(1 << n)
    a[0] = a[-1] = 1 / np.sqrt(2)
    return a


def _cluster_iterative(n_qubits):
    # Bell pairs appended one at a time; sigma_x hits the first qubit of the new
    # pair on the branch where the previous pair came from |11>, i.e. its
    # second qubit is 1. Built unnormalized so 2^(-n/2) comes out exact.
    bell = np.array([1.0, 0.0, 0.0, 1.0])
    flipped = np.array([0.0, 1.0, 1.0, 0.0])
    amps = bell.copy()
    for _ in range(n_qubits // 2 - 1):
        last_bit = (np.arange(amps.shape[0]) & 1).astype(bool)
        amps = np.where(last_bit[:, None], amps[:, None] * flipped, amps[:, None] * bell).ravel()
    return amps / np.sqrt(np.count_nonzero(amps))


def _cluster_signed():
    a = np.zeros(16)
    for bits, sign in (("0000", 1), ("0011", 1), ("1100", 1), ("1111", -1)):
        a[basis_index(bits)] = sign / 2
    return a


def _dicke(n, k):
    w = hamming_weights(n)
    a = (w == k).astype(float)
    return a / np.sqrt(comb(n, k))


def make_state(family, n_qubits, *, iterative_cluster=None):
    """Build one of the named multiqubit states.

    For ``ClusterLinear`` with four qubits the default is the form with the
    minus sign on ``|1111>``; pass ``iterative_cluster=True`` to get the
    pair-by-pair construction ``|0000>+|0011>+|1110>+|1101>`` instead. Other
    even sizes always use the pair-by-pair construction.
    """
    family = StateFamily.parse(family)
    if not isinstance(n_qubits, (int, np.integer)) or n_qubits < 1:
        raise DomainError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    n_qubits = int(n_qubits)
    if family is StateFamily.GHZ:
        if n_qubits < 2:
            raise DomainError("GHZ needs at least 2 qubits")
        amps = _ghz(n_qubits)
    elif family is StateFamily.CLUSTER_LINEAR:
        if n_qubits < 2 or n_qubits % 2:
            raise DomainError("linear cluster states need an even number of qubits")
        if n_qubits == 4 and not iterative_cluster:
            amps = _cluster_signed()
        else:
            amps = _cluster_iterative(n_qubits)
    elif family is StateFamily.W4:
        if n_qubits != 4:
            raise DomainError("W4 is defined for 4 qubits only")
        amps = _dicke(4, 1)
    else:
        if n_qubits != 4:
            raise DomainError("Dicke4 is defined for 4 qubits only")
        amps = _dicke(4, 2)
    if n_qubits > MAX_MATRIX_QUBITS:
        raise DomainError(f"at most {MAX_MATRIX_QUBITS} qubits are supported for dense states")
    return PureState(n_qubits, amps)


def excitation_projector(n_qubits, k):
    """Diagonal projector onto basis states with exactly ``k`` ones."""
    if n_qubits < 1 or n_qubits > MAX_MATRIX_QUBITS:
        raise DomainError(f"n_qubits must be in [1, {MAX_MATRIX_QUBITS}]")
    if not 0 <= k <= n_qubits:
        raise DomainError(f"excitation number {k} outside [0, {n_qubits}]")
    return Observable(np.diag((hamming_weights(n_qubits) == k).astype(float)))


def fidelity(rho, psi):
    """``<psi|rho|psi>`` as a float."""
    _check_dims(rho.dim, psi.dim)
    a = psi.amplitudes
    value = np.vdot(a, rho.matrix @ a)
    return float(min(1.0, max(0.0, value.real)))


def product_vector(factors):
    return reduce(np.kron, [np.asarray(f, dtype=complex) for f in factors])


def assemble_product(factors):
    """Kronecker product of single-qubit factors as a :class:`PureState`."""
    if isinstance(factors, ProductState):
        factors = factors.factors
    prod = ProductState(tuple(factors))
    return PureState(prod.n_qubits, product_vector(prod.factors))


def overlap(psi, phi):
    """``<phi|psi>``."""
    _check_dims(psi.dim, phi.dim)
    return complex(np.vdot(phi.amplitudes, psi.amplitudes))
