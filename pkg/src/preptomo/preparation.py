"""Preparation procedures acting on the joint system-environment state.

Each procedure turns the unknown pre-experiment state ``rho_SE`` into the
joint state that is actually fed into the process for a given input
label. Pin-based procedures first decorrelate (``Phi (x) Tr_S rho_SE``)
and then rotate the system; ``NoPin`` rotates ``rho_SE`` directly.

Arbitrary probe states are prepared as a probabilistic mixture of the
procedure's rotations onto the probe's eigenvectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .dynamics import unitary
from .errors import ConfigError, NotPhysicalError, NotPreparableError
from .operators import (
    PSD_TOL,
    BipartiteState,
    QubitState,
    bloch_to_state,
    conjugate,
    local,
    partial_trace_sys,
    pauli,
    tensor,
)
from .states import DIRECTIONS, MULTI_PIN_LABELS, PROJECTOR_LABELS

_ALIGNED_TOL = 1e-12
_PURE_TOL = 1e-10

GROUND = bloch_to_state((0.0, 0.0, 1.0))
EXCITED = bloch_to_state((0.0, 0.0, -1.0))


def _require_pure(state: QubitState, what: str) -> None:
    if not state.is_pure(_PURE_TOL):
        raise NotPhysicalError(f"{what} must be a pure state (purity {state.purity():.12g})")


def _unit_bloch(state: QubitState) -> np.ndarray:
    v = state.bloch
    return v / np.linalg.norm(v)


def _su2(axis: np.ndarray, angle: float) -> np.ndarray:
    """``exp(-i angle/2 axis.sigma)``: a right-handed Bloch rotation by ``angle``."""
    n_sigma = sum(a * pauli(j) for j, a in zip((1, 2, 3), axis))
    return np.cos(angle / 2) * pauli(0) - 1j * np.sin(angle / 2) * n_sigma


def rotation_for_target(phi: QubitState, target: QubitState) -> np.ndarray:
    """Unitary ``V`` with ``V phi V^dag = target`` for pure ``phi`` and ``target``.

    ``V`` is the rotation about ``n x m`` (Bloch vectors of ``phi`` and
    ``target``) by the angle between them; equal states give exactly the
    identity. For antipodal states the axis is the part of x perpendicular
    to ``n`` (y when ``n`` lies along x).
    """
    _require_pure(phi, "pinned state")
    _require_pure(target, "target state")
    n = _unit_bloch(phi)
    m = _unit_bloch(target)
    cross = np.cross(n, m)
    dot = float(np.clip(np.dot(n, m), -1.0, 1.0))
    norm = float(np.linalg.norm(cross))
    if norm < _ALIGNED_TOL:
        if dot > 0:
            return pauli(0)
        axis = np.array([1.0, 0.0, 0.0]) - n[0] * n
        if np.linalg.norm(axis) < 1e-6:
            axis = np.array([0.0, 1.0, 0.0]) - n[1] * n
        return _su2(axis / np.linalg.norm(axis), np.pi)
    return _su2(cross / norm, float(np.arctan2(norm, dot)))


def erroneous_rotation(epsilon: float) -> np.ndarray:
    """Faulty unitary sending |1> to ``(sqrt(1-e)|1> - sqrt(1+e)|0>) / sqrt(2)``."""
    if not 0 <= epsilon < 1:
        raise ConfigError(f"control error must satisfy 0 <= epsilon < 1, got {epsilon}")
    a = np.sqrt(1 - epsilon)
    b = np.sqrt(1 + epsilon)
    # columns are the images of |0> and |1>
    return np.array([[a, -b], [b, a]], dtype=complex) / np.sqrt(2)


def apply_pin(rho_se: BipartiteState, phi: QubitState) -> BipartiteState:
    """Pin the system to ``phi``, keeping the environment marginal."""
    _require_pure(phi, "pinned state")
    return BipartiteState(tensor(phi.matrix, partial_trace_sys(rho_se.matrix)))


def rotate_system(rho_se, v: np.ndarray) -> np.ndarray:
    m = rho_se.matrix if isinstance(rho_se, BipartiteState) else np.asarray(rho_se)
    return conjugate(m, local(v))


def _pure_decomposition(probe: QubitState) -> list[tuple[float, QubitState]]:
    """Eigen-decomposition of a qubit state as weighted pure states."""
    r = probe.bloch
    length = float(np.linalg.norm(r))
    if length < _ALIGNED_TOL:
        return [(0.5, GROUND), (0.5, EXCITED)]
    u = r / length
    return [
        ((1 + length) / 2, bloch_to_state(u)),
        ((1 - length) / 2, bloch_to_state(-u)),
    ]


def _as_state(x) -> QubitState:
    return x if isinstance(x, QubitState) else QubitState(x)


def _default_targets(labels) -> dict[str, QubitState]:
    return {lab: bloch_to_state(DIRECTIONS[lab]) for lab in labels}


def initial_state(a=(0.0, 0.0, 0.0), c23: float = 0.0) -> BipartiteState:
    """Pre-preparation state ``(I(x)I + a_j sigma_j(x)I + c23 sigma_2(x)sigma_3) / 4``."""
    a = np.asarray(a, dtype=float)
    m = tensor(pauli(0), pauli(0)) + sum(a[j - 1] * tensor(pauli(j), pauli(0)) for j in (1, 2, 3))
    m = m + c23 * tensor(pauli(2), pauli(3))
    return BipartiteState(m / 4)


class PreparationProcedure:
    """Common interface: ``prepare_input`` for a label, ``prepare_probe`` for any state."""

    labels: tuple[str, ...] = ()

    def _check_label(self, label: str) -> None:
        if label not in self.labels:
            raise KeyError(f"unknown input label {label!r}; have {self.labels}")

    def prepare_input(self, rho_se: BipartiteState, label: str) -> BipartiteState:
        raise NotImplementedError

    def prepare_probe(self, rho_se: BipartiteState, probe: QubitState) -> BipartiteState:
        raise NotImplementedError

    def prepare_all(self, rho_se: BipartiteState) -> dict[str, BipartiteState]:
        return {lab: self.prepare_input(rho_se, lab) for lab in self.labels}


@dataclass(frozen=True)
class IdealPin(PreparationProcedure):
    """Pin to ``phi`` then rotate it onto each pure target."""

    phi: QubitState = GROUND
    targets: Mapping[str, QubitState] = field(default_factory=lambda: _default_targets(PROJECTOR_LABELS))

    def __post_init__(self):
        _require_pure(self.phi, "pinned state")
        for lab, tgt in self.targets.items():
            _require_pure(tgt, f"target {lab}")

    @property
    def labels(self):
        return tuple(self.targets)

    def rotation(self, label: str) -> np.ndarray:
        self._check_label(label)
        return rotation_for_target(self.phi, self.targets[label])

    def _pinned(self, rho_se):
        return apply_pin(rho_se, self.phi)

    def prepare_input(self, rho_se, label):
        return BipartiteState(rotate_system(self._pinned(rho_se), self.rotation(label)))

    def prepare_probe(self, rho_se, probe):
        probe = _as_state(probe)
        pinned = self._pinned(rho_se)
        m = sum(w * rotate_system(pinned, rotation_for_target(self.phi, s))
                for w, s in _pure_decomposition(probe))
        return BipartiteState(m)


@dataclass(frozen=True)
class PinWithControlError(IdealPin):
    """Ideal pin whose rotation for one input is faulty.

    The faulty rotation takes ``phi`` to |1>, applies
    :func:`erroneous_rotation` (which aims at the -x state) and then the
    exact rotation from -x to the intended target.
    """

    epsilon: float = 0.1
    faulty_label: str = "(1,-)"

    def __post_init__(self):
        super().__post_init__()
        erroneous_rotation(self.epsilon)
        self._check_label(self.faulty_label)

    def rotation(self, label):
        if label != self.faulty_label:
            return super().rotation(label)
        to_one = rotation_for_target(self.phi, EXCITED)
        to_target = rotation_for_target(bloch_to_state(DIRECTIONS["(1,-)"]), self.targets[label])
        return to_target @ erroneous_rotation(self.epsilon) @ to_one


@dataclass(frozen=True)
class MixedPin(PreparationProcedure):
    """Pin to a partially polarized state ``(I + p n.sigma)/2`` then rotate.

    Only states with Bloch length at most ``p`` can be prepared.
    """

    p: float = 0.9
    phi: QubitState = GROUND
    targets: Mapping[str, QubitState] = field(default_factory=lambda: _default_targets(PROJECTOR_LABELS))

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ConfigError(f"polarization p must lie in (0, 1], got {self.p}")
        _require_pure(self.phi, "pin direction")

    @property
    def labels(self):
        return tuple(self.targets)

    def _pinned(self, rho_se) -> np.ndarray:
        sys = bloch_to_state(self.p * self.phi.bloch)
        return tensor(sys.matrix, partial_trace_sys(rho_se.matrix))

    def _system_part(self, rho_se, probe) -> np.ndarray:
        probe = _as_state(probe)
        length = float(np.linalg.norm(probe.bloch))
        if length > self.p + PSD_TOL:
            raise NotPreparableError(
                f"probe Bloch length {length:.6g} exceeds the pin polarization {self.p}"
            )
        # mixture of the two rotations onto +-r/|r| with weights giving Bloch r
        pinned = self._pinned(rho_se)
        if length < _ALIGNED_TOL:
            dirs = [(0.5, GROUND), (0.5, EXCITED)]
        else:
            u = probe.bloch / length
            f = length / self.p
            dirs = [((1 + f) / 2, bloch_to_state(u)), ((1 - f) / 2, bloch_to_state(-u))]
        return sum(w * rotate_system(pinned, rotation_for_target(self.phi, s)) for w, s in dirs)

    def prepare_input(self, rho_se, label):
        self._check_label(label)
        return BipartiteState(rotate_system(self._pinned(rho_se),
                                            rotation_for_target(self.phi, self.targets[label])))

    def prepare_probe(self, rho_se, probe):
        return BipartiteState(self._system_part(rho_se, probe))


def default_correlation(c23: float) -> np.ndarray:
    return c23 / 4 * tensor(pauli(2), pauli(3))


@dataclass(frozen=True)
class CorrelatedFamily(MixedPin):
    """Mixed pin plus a fixed correlation operator ``chi`` shared by every input."""

    c23: float = 0.5
    chi: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        super().__post_init__()
        if self.chi is None:
            object.__setattr__(self, "chi", default_correlation(self.c23))
        chi = np.array(self.chi, dtype=complex)
        if chi.shape != (4, 4):
            raise ConfigError(f"correlation operator must be 4x4, got {chi.shape}")
        chi.setflags(write=False)
        object.__setattr__(self, "chi", chi)

    def _with_chi(self, m: np.ndarray, what: str) -> BipartiteState:
        try:
            return BipartiteState(m + self.chi)
        except NotPhysicalError as exc:
            raise NotPhysicalError(f"correlated {what} is not a physical state: {exc}") from None

    def prepare_input(self, rho_se, label):
        return self._with_chi(super().prepare_input(rho_se, label).matrix, f"input {label}")

    def prepare_probe(self, rho_se, probe):
        return self._with_chi(self._system_part(rho_se, probe), "probe")


@dataclass(frozen=True)
class MultiPin(IdealPin):
    """Two inconsistent pins.

    The projector inputs come from the primary pin. The maximally mixed
    input is made by letting a state decohere through a full swap with
    the environment (``t = pi / (4 omega)``). With ``swap_source="pinned"``
    the swapped state is the pinned ``P(3,+) (x) rho_E``; with
    ``"initial"`` it is the raw pre-preparation state.
    """

    targets: Mapping[str, QubitState] = field(
        default_factory=lambda: _default_targets([lab for lab in MULTI_PIN_LABELS if lab != "I"])
    )
    mixed_label: str = "I"
    swap_source: str = "pinned"
    omega: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.swap_source not in ("pinned", "initial"):
            raise ConfigError(f"swap_source must be 'pinned' or 'initial', got {self.swap_source!r}")
        if self.omega == 0:
            raise ConfigError("a full swap needs a non-zero coupling omega")

    @property
    def labels(self):
        return (self.mixed_label,) + tuple(self.targets)

    def decohered(self, rho_se: BipartiteState) -> BipartiteState:
        if self.swap_source == "pinned":
            src = rotate_system(self._pinned(rho_se), rotation_for_target(self.phi, GROUND))
        else:
            src = rho_se.matrix
        swap = unitary(self.omega, np.pi / (4 * self.omega))
        return BipartiteState(swap.evolve(src))

    def prepare_input(self, rho_se, label):
        if label == self.mixed_label:
            return self.decohered(rho_se)
        return super().prepare_input(rho_se, label)


@dataclass(frozen=True)
class NoPin(PreparationProcedure):
    """Rotations meant for a pinned ``phi`` applied straight to ``rho_SE``."""

    phi: QubitState = GROUND
    targets: Mapping[str, QubitState] = field(default_factory=lambda: _default_targets(PROJECTOR_LABELS))

    @property
    def labels(self):
        return tuple(self.targets)

    def prepare_input(self, rho_se, label):
        self._check_label(label)
        return BipartiteState(rotate_system(rho_se, rotation_for_target(self.phi, self.targets[label])))

    def prepare_probe(self, rho_se, probe):
        probe = _as_state(probe)
        m = sum(w * rotate_system(rho_se, rotation_for_target(self.phi, s))
                for w, s in _pure_decomposition(probe))
        return BipartiteState(m)


def prepare_input(proc: PreparationProcedure, rho_se: BipartiteState, label: str) -> BipartiteState:
    return proc.prepare_input(rho_se, label)
