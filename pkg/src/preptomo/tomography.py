"""Linear-inversion process maps and their diagnostics."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, LinearDependenceError
from .operators import QubitState, hermitian_eigenvalues, max_abs_diff
from .states import BIORTHO_TOL, DualSet, InputSet, biorthogonality_error

CP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ProcessMap:
    """B-form of a qubit map: ``b_form[(r, r'), (s, s')]`` with row-major ``r*d + r'``.

    Acting on a state: ``Q_rs = sum_{r's'} b_form[(r,r'),(s,s')] rho_{r's'}``.
    """

    b_form: np.ndarray
    dim: int = 2

    def __post_init__(self):
        b = np.array(self.b_form, dtype=complex)
        if b.shape != (self.dim ** 2, self.dim ** 2):
            raise DimensionError(f"B-form must be {self.dim**2}x{self.dim**2}, got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "b_form", b)

    @property
    def tensor4(self) -> np.ndarray:
        """View indexed as ``[r, r', s, s']``."""
        d = self.dim
        return self.b_form.reshape(d, d, d, d)

    def __call__(self, rho) -> QubitState:
        return apply_map(self, rho)


@dataclass(frozen=True)
class TomographySet:
    """Nominal inputs, their duals, what was actually prepared, and the outputs."""

    inputs: InputSet
    duals: DualSet
    outputs: tuple[QubitState, ...]
    prepared: tuple = field(default=(), repr=False)


def reconstruct_map(inputs: InputSet, duals: DualSet, outputs: Sequence[QubitState]) -> ProcessMap:
    """``Lambda[(r,r'),(s,s')] = sum_m Q^m_rs conj(D^m_r's')``."""
    if not (len(inputs) == len(duals) == len(outputs)):
        raise DimensionError(
            f"misaligned tomography data: {len(inputs)} inputs, {len(duals)} duals, {len(outputs)} outputs"
        )
    err = biorthogonality_error(inputs, duals.duals)
    if err > BIORTHO_TOL:
        raise LinearDependenceError(f"duals are not biorthogonal to the inputs (error {err:.3g})")
    q = np.array([o.matrix if isinstance(o, QubitState) else o for o in outputs], dtype=complex)
    dual = np.array(duals.duals)
    d = q.shape[1]
    lam = np.einsum("mrs,mab->rasb", q, dual.conj())
    return ProcessMap(lam.reshape(d * d, d * d), dim=d)


def apply_map(process_map: ProcessMap, rho) -> QubitState:
    """Predicted output; may be unphysical, which is reported rather than repaired."""
    m = rho.matrix if isinstance(rho, QubitState) else np.asarray(rho, dtype=complex)
    if m.shape != (process_map.dim, process_map.dim):
        raise DimensionError(f"state of shape {m.shape} does not fit a dim-{process_map.dim} map")
    return QubitState.unchecked(np.einsum("rasb,ab->rs", process_map.tensor4, m))


def cp_spectrum(process_map: ProcessMap) -> np.ndarray:
    return hermitian_eigenvalues(process_map.b_form)


def tp_check(process_map: ProcessMap) -> float:
    """``max_{r',s'} |sum_r Lambda[(r,r'),(r,s')] - delta_{r's'}|``."""
    partial = np.einsum("rarb->ab", process_map.tensor4)
    return float(np.max(np.abs(partial - np.eye(process_map.dim))))


@dataclass(frozen=True)
class LinearityEntry:
    label: str
    residual: float
    predicted_min_eigenvalue: float


@dataclass(frozen=True)
class DiagnosticsReport:
    cp_min_eigenvalue: float
    is_cp: bool
    tp_residual: float
    linearity_residuals: tuple[LinearityEntry, ...] = ()
    cp_tol: float = CP_TOL

    def as_dict(self) -> dict:
        return {
            "cp_min_eigenvalue": self.cp_min_eigenvalue,
            "is_cp": self.is_cp,
            "tp_residual": self.tp_residual,
            "cp_tol": self.cp_tol,
            "linearity_residuals": [
                {"label": e.label, "residual": e.residual,
                 "predicted_min_eigenvalue": e.predicted_min_eigenvalue}
                for e in self.linearity_residuals
            ],
        }


def linearity_probe(
    process_map: ProcessMap,
    simulate: Callable[[QubitState], QubitState],
    probes: Sequence[QubitState],
    labels: Sequence[str] | None = None,
) -> list[LinearityEntry]:
    """Compare the map's prediction with the simulated experiment for each probe.

    ``simulate`` prepares a probe the way the scenario would and returns the
    observed output; it raises NotPreparableError for probes the procedure
    cannot make.
    """
    if labels is None:
        labels = [f"probe{i}" for i in range(len(probes))]
    entries = []
    for label, probe in zip(labels, probes):
        predicted = apply_map(process_map, probe)
        observed = simulate(probe)
        entries.append(LinearityEntry(
            label,
            max_abs_diff(predicted.matrix, observed.matrix),
            predicted.min_eigenvalue(),
        ))
    return entries


def diagnose(
    process_map: ProcessMap,
    simulate: Callable[[QubitState], QubitState] | None = None,
    probes: Sequence[QubitState] = (),
    labels: Sequence[str] | None = None,
    cp_tol: float = CP_TOL,
) -> DiagnosticsReport:
    low = float(cp_spectrum(process_map)[0])
    entries = linearity_probe(process_map, simulate, probes, labels) if probes else []
    return DiagnosticsReport(low, low >= -cp_tol, tp_check(process_map), tuple(entries), cp_tol)
