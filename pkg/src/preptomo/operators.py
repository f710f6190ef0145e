"""Small dense complex matrix algebra for one and two qubits.

Matrices are plain ``numpy`` arrays. Bipartite operators use the
system-major ordering ``system (x) environment``, i.e. the row index of
``A (x) B`` is ``a * dim_B + b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NotHermitianError, NotPhysicalError

HERMITIAN_TOL = 1e-10
STATE_HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def pauli(j: int) -> np.ndarray:
    """Return the Pauli matrix ``sigma_j``; ``j = 0`` is the identity."""
    if not isinstance(j, (int, np.integer)) or not 0 <= j <= 3:
        raise IndexError(f"Pauli index must be 0..3, got {j!r}")
    return _PAULI[j].copy()


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, ``a`` on the slow (system) index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _square(m, name="matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def partial_trace_env(m: np.ndarray, dim_env: int = 2) -> np.ndarray:
    """Trace out the environment factor: ``(Tr_E M)_rs = sum_e M[(r,e),(s,e)]``."""
    m = _square(m)
    n = m.shape[0]
    if n % dim_env or n == dim_env:
        raise DimensionError(f"cannot trace a {dim_env}-dim environment out of dim {n}")
    d = n // dim_env
    return np.trace(m.reshape(d, dim_env, d, dim_env), axis1=1, axis2=3)


def partial_trace_sys(m: np.ndarray, dim_sys: int = 2) -> np.ndarray:
    """Trace out the system factor, leaving the environment marginal."""
    m = _square(m)
    n = m.shape[0]
    if n % dim_sys or n == dim_sys:
        raise DimensionError(f"cannot trace a {dim_sys}-dim system out of dim {n}")
    e = n // dim_sys
    return np.trace(m.reshape(dim_sys, e, dim_sys, e), axis1=0, axis2=2)


def hermiticity_error(m: np.ndarray) -> float:
    m = _square(m)
    return float(np.max(np.abs(m - dagger(m)), initial=0.0))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(m) <= tol


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix.

    Raises NotHermitianError if ``m`` deviates from its adjoint by more
    than ``tol`` in any entry.
    """
    err = hermiticity_error(m)
    if err > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M^dag| = {err:.3g})")
    m = np.asarray(m, dtype=complex)
    return np.linalg.eigvalsh(0.5 * (m + dagger(m)))


def allclose(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Entrywise absolute comparison."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and bool(np.max(np.abs(a - b), initial=0.0) <= tol)


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def _frozen(m: np.ndarray, dim: int) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    if arr.shape != (dim, dim):
        raise DimensionError(f"expected a {dim}x{dim} matrix, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_density(m: np.ndarray) -> None:
    herr = hermiticity_error(m)
    if herr > STATE_HERMITIAN_TOL:
        raise NotPhysicalError(f"density matrix not Hermitian (error {herr:.3g})")
    tr = np.trace(m)
    if abs(tr - 1) > TRACE_TOL:
        raise NotPhysicalError(f"density matrix trace is {tr:.12g}, expected 1")
    low = hermitian_eigenvalues(m)[0]
    if low < -PSD_TOL:
        raise NotPhysicalError(f"density matrix has negative eigenvalue {low:.6g}")


@dataclass(frozen=True, eq=False)
class _DensityMatrix:
    matrix: np.ndarray

    DIM = 0

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix, self.DIM))
        _check_density(self.matrix)

    @classmethod
    def unchecked(cls, matrix: np.ndarray):
        """Wrap a matrix without the physicality checks (shape is still enforced)."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "matrix", _frozen(matrix, cls.DIM))
        return obj

    @property
    def dim(self) -> int:
        return self.DIM

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def is_physical(self, tol: float = PSD_TOL) -> bool:
        try:
            _check_density(self.matrix)
        except (NotPhysicalError, NotHermitianError):
            return False
        return self.min_eigenvalue() >= -tol

    def close_to(self, other, tol: float) -> bool:
        other = other.matrix if isinstance(other, _DensityMatrix) else other
        return allclose(self.matrix, other, tol)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"{type(self).__name__}({np.array2string(self.matrix, precision=6)})"


class QubitState(_DensityMatrix):
    """Single-qubit density matrix.

    ``QubitState(m)`` validates Hermiticity, unit trace and positivity;
    ``QubitState.unchecked(m)`` is used for predicted states that may be
    unphysical.
    """

    DIM = 2

    @property
    def bloch(self) -> np.ndarray:
        return state_to_bloch(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self, tol: float = PSD_TOL) -> bool:
        return abs(self.purity() - 1.0) <= tol


class BipartiteState(_DensityMatrix):
    """System (x) environment density matrix for two qubits."""

    DIM = 4

    def system(self) -> QubitState:
        return QubitState(partial_trace_env(self.matrix))

    def environment(self) -> QubitState:
        return QubitState(partial_trace_sys(self.matrix))


def bloch_to_state(v: Sequence[float], checked: bool = True) -> QubitState:
    """``rho = (I + v . sigma) / 2``.

    With ``checked=False`` a vector longer than one is accepted and the
    resulting (unphysical) operator is returned unchecked.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DimensionError(f"Bloch vector must have 3 components, got shape {v.shape}")
    m = 0.5 * (_PAULI[0] + v[0] * _PAULI[1] + v[1] * _PAULI[2] + v[2] * _PAULI[3])
    return QubitState(m) if checked else QubitState.unchecked(m)


def state_to_bloch(rho) -> np.ndarray:
    m = np.asarray(rho.matrix if isinstance(rho, _DensityMatrix) else rho, dtype=complex)
    return np.array([np.real(np.trace(m @ _PAULI[j])) for j in (1, 2, 3)])


def ket_to_state(psi: Sequence[complex]) -> QubitState:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return QubitState(np.outer(psi, psi.conj()))


def conjugate(m: np.ndarray, u: np.ndarray) -> np.ndarray:
    """``u m u^dag``."""
    return u @ m @ dagger(u)


def local(u: np.ndarray, dim_env: int = 2) -> np.ndarray:
    """Lift a system operator to ``u (x) I_E``."""
    return tensor(u, np.eye(dim_env))
