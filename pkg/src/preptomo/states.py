"""Tomographic input sets and their dual sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DimensionError, LinearDependenceError
from .operators import QubitState, bloch_to_state

GRAM_COND_LIMIT = 1e12
BIORTHO_TOL = 1e-10
REAL_TOL = 1e-10

PROJECTOR_LABELS = ("(1,-)", "(1,+)", "(2,+)", "(3,+)")
MULTI_PIN_LABELS = ("I", "(1,+)", "(2,+)", "(3,+)")

# Bloch direction of each named input
DIRECTIONS = {
    "(1,-)": (-1.0, 0.0, 0.0),
    "(1,+)": (1.0, 0.0, 0.0),
    "(2,-)": (0.0, -1.0, 0.0),
    "(2,+)": (0.0, 1.0, 0.0),
    "(3,-)": (0.0, 0.0, -1.0),
    "(3,+)": (0.0, 0.0, 1.0),
    "I": (0.0, 0.0, 0.0),
}


def _inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt product ``Tr(a^dag b)``."""
    return complex(np.vdot(a, b))


def gram_matrix(ops: Sequence[np.ndarray]) -> np.ndarray:
    return np.array([[_inner(a, b) for b in ops] for a in ops])


def dual_basis(ops: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Operators ``D_m`` with ``Tr(D_m^dag O_n) = delta_mn``.

    Built from the inverse Gram matrix, ``D_m = sum_n (G^-1)_nm O_n``.
    """
    ops = [np.asarray(o, dtype=complex) for o in ops]
    d2 = ops[0].shape[0] ** 2
    if len(ops) != d2:
        raise DimensionError(f"need exactly {d2} operators to form a basis, got {len(ops)}")
    g = gram_matrix(ops)
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond > GRAM_COND_LIMIT:
        raise LinearDependenceError(f"operators are linearly dependent (Gram condition {cond:.3g})")
    gi = np.linalg.inv(g)
    return [sum(gi[n, m] * ops[n] for n in range(len(ops))) for m in range(len(ops))]


@dataclass(frozen=True)
class InputSet:
    labels: tuple[str, ...]
    states: tuple[QubitState, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.labels) != len(self.states):
            raise DimensionError("labels and states differ in length")
        if len(self.states) != 4:
            raise DimensionError(f"qubit tomography needs 4 input states, got {len(self.states)}")
        if len(set(self.labels)) != len(self.labels):
            raise ConfigError(f"duplicate labels in {self.labels}")
        g = gram_matrix([s.matrix for s in self.states])
        cond = np.linalg.cond(g)
        if not np.isfinite(cond) or cond > GRAM_COND_LIMIT:
            raise LinearDependenceError(f"input states are linearly dependent (Gram condition {cond:.3g})")

    def __len__(self):
        return len(self.states)

    def __getitem__(self, label: str) -> QubitState:
        return self.states[self.index(label)]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown input label {label!r}; have {self.labels}") from None

    @property
    def matrices(self) -> list[np.ndarray]:
        return [s.matrix for s in self.states]


@dataclass(frozen=True)
class DualSet:
    """Duals aligned with ``inputs``; Hermitian but neither positive nor unit trace."""

    inputs: InputSet
    duals: tuple[np.ndarray, ...]

    def __post_init__(self):
        duals = []
        for d in self.duals:
            d = np.array(d, dtype=complex)
            d.setflags(write=False)
            duals.append(d)
        object.__setattr__(self, "duals", tuple(duals))
        if len(duals) != len(self.inputs):
            raise DimensionError("duals and inputs differ in length")
        err = biorthogonality_error(self.inputs, self.duals)
        if err > BIORTHO_TOL:
            raise LinearDependenceError(f"duals are not biorthogonal to the inputs (error {err:.3g})")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.inputs.labels

    def __len__(self):
        return len(self.duals)

    def __getitem__(self, label: str) -> np.ndarray:
        return self.duals[self.inputs.index(label)]


def biorthogonality_error(inputs: InputSet, duals: Sequence[np.ndarray]) -> float:
    m = np.array([[_inner(d, p) for p in inputs.matrices] for d in duals])
    return float(np.max(np.abs(m - np.eye(len(duals)))))


def standard_inputs(kind: str, p: float = 1.0) -> InputSet:
    """Named qubit input families.

    ``projector_set``
        the pure states along -x, +x, +y, +z.
    ``p_scaled``
        the same directions with Bloch length ``p``.
    ``multi_pin_set``
        the maximally mixed state together with +x, +y, +z.
    """
    if kind == "projector_set":
        labels, scale = PROJECTOR_LABELS, 1.0
    elif kind == "p_scaled":
        if not 0 < p <= 1:
            raise ConfigError(f"polarization p must lie in (0, 1], got {p}")
        labels, scale = PROJECTOR_LABELS, float(p)
    elif kind == "multi_pin_set":
        labels, scale = MULTI_PIN_LABELS, 1.0
    else:
        raise ConfigError(f"unknown input family {kind!r}")
    states = [bloch_to_state(scale * np.array(DIRECTIONS[lab])) for lab in labels]
    return InputSet(labels, states)


def compute_duals(inputs: InputSet) -> DualSet:
    return DualSet(inputs, tuple(dual_basis(inputs.matrices)))


def expand_in_inputs(rho, inputs: InputSet, duals: DualSet) -> np.ndarray:
    """Real coefficients ``x_m = Tr(D_m^dag rho)`` so that ``rho = sum_m x_m P_m``.

    Coefficients can be negative: the expansion need not be convex.
    """
    if len(duals) != len(inputs):
        raise DimensionError("duals and inputs differ in length")
    if duals.inputs is not inputs and duals.inputs.labels != inputs.labels:
        raise DimensionError("duals were computed for a different input set")
    m = rho.matrix if isinstance(rho, QubitState) else np.asarray(rho, dtype=complex)
    x = np.array([_inner(d, m) for d in duals.duals])
    if np.max(np.abs(x.imag)) > REAL_TOL:
        raise ValueError(f"expansion coefficients have imaginary parts up to {np.max(np.abs(x.imag)):.3g}")
    return x.real


def reassemble(coeffs: Sequence[float], inputs: InputSet) -> np.ndarray:
    return sum(c * s.matrix for c, s in zip(coeffs, inputs.states))
