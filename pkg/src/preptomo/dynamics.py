"""Isotropic exchange coupling between the qubit and a one-qubit environment."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError
from .operators import (
    BipartiteState,
    QubitState,
    conjugate,
    dagger,
    max_abs_diff,
    partial_trace_env,
    pauli,
    tensor,
)

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

_ROUTE_TOL = 1e-9


def hamiltonian(omega: float) -> np.ndarray:
    """``omega * sum_j sigma_j (x) sigma_j``."""
    return omega * sum(tensor(pauli(j), pauli(j)) for j in (1, 2, 3))


def product_formula_unitary(omega: float, t: float) -> np.ndarray:
    """``prod_j (cos(wt) I - i sin(wt) sigma_j (x) sigma_j)``; the factors commute."""
    wt = omega * t
    u = np.eye(4, dtype=complex)
    for j in (1, 2, 3):
        u = u @ (np.cos(wt) * np.eye(4) - 1j * np.sin(wt) * tensor(pauli(j), pauli(j)))
    return u


def spectral_unitary(omega: float, t: float) -> np.ndarray:
    """``exp(-iHt)`` from the eigendecomposition of the Hamiltonian."""
    evals, vecs = np.linalg.eigh(hamiltonian(omega))
    return vecs @ np.diag(np.exp(-1j * evals * t)) @ dagger(vecs)


@dataclass(frozen=True)
class Evolution:
    """Joint unitary at time ``t``; it only depends on the product ``omega * t``."""

    omega: float
    t: float
    unitary: np.ndarray = field(repr=False, compare=False)

    @property
    def two_omega_t(self) -> float:
        return 2.0 * self.omega * self.t

    def evolve(self, prepared) -> np.ndarray:
        m = prepared.matrix if isinstance(prepared, BipartiteState) else np.asarray(prepared)
        return conjugate(m, self.unitary)


def unitary(omega: float, t: float) -> Evolution:
    """Build the evolution, cross-checking the product formula against exp(-iHt)."""
    u = product_formula_unitary(omega, t)
    diff = max_abs_diff(u, spectral_unitary(omega, t))
    if diff > _ROUTE_TOL:
        raise ConsistencyError(f"product formula and spectral exponential differ by {diff:.3g}")
    u = np.array(u)
    u.setflags(write=False)
    return Evolution(float(omega), float(t), u)


def at_phase(two_omega_t: float, omega: float = 1.0) -> Evolution:
    return unitary(omega, two_omega_t / (2.0 * omega))


def process_output(prepared: BipartiteState, ev: Evolution) -> QubitState:
    """Observed system state ``Tr_E[U R U^dag]`` for the prepared joint state ``R``."""
    return QubitState(partial_trace_env(ev.evolve(prepared)))
