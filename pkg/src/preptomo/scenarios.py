"""Preset tomography experiments and their closed-form maps.

All presets share the pre-preparation state
``(I(x)I + a.sigma(x)I + c23 sigma_2(x)sigma_3) / 4`` and the exchange
evolution. Time grids are expressed in the phase ``2 omega t``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .dynamics import Evolution, process_output, unitary
from .errors import ConfigError, NotPhysicalError
from .operators import BipartiteState, QubitState, bloch_to_state
from .preparation import (
    CorrelatedFamily,
    IdealPin,
    MixedPin,
    MultiPin,
    NoPin,
    PinWithControlError,
    PreparationProcedure,
    initial_state,
)
from .states import DualSet, InputSet, compute_duals, standard_inputs
from .tomography import (
    CP_TOL,
    ProcessMap,
    TomographySet,
    cp_spectrum,
    reconstruct_map,
    tp_check,
)

SCENARIOS = (
    "ideal",
    "control_error",
    "mixed_uncorrelated",
    "mixed_correlated",
    "multi_pin",
    "no_pin",
)

DEFAULT_P = 0.9


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str = "ideal"
    omega: float = 1.0
    epsilon: float = 0.1
    # None: 0.9, or 1 - |c23| for mixed_correlated when that is smaller
    p: float | None = None
    c23: float = 0.5
    a: tuple[float, float, float] = (0.0, 0.0, 0.0)
    t_start: float = 0.0
    t_end: float = float(np.pi)
    steps: int = 200
    swap_source: str = "pinned"

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        if len(self.a) != 3:
            raise ConfigError(f"a must have three components, got {self.a}")
        if not np.isfinite(self.omega) or self.omega == 0:
            raise ConfigError(f"omega must be finite and non-zero, got {self.omega}")
        if not 0 <= self.epsilon < 1:
            raise ConfigError(f"epsilon must satisfy 0 <= epsilon < 1, got {self.epsilon}")
        if self.p is not None and not 0 < self.p <= 1:
            raise ConfigError(f"p must lie in (0, 1], got {self.p}")
        if np.linalg.norm(self.a) > 1 + 1e-10:
            raise ConfigError(f"|a| must be at most 1, got {np.linalg.norm(self.a):.6g}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ConfigError(f"steps must be a positive integer, got {self.steps}")
        if self.swap_source not in ("pinned", "initial"):
            raise ConfigError(f"swap_source must be 'pinned' or 'initial', got {self.swap_source!r}")

    @property
    def resolved_p(self) -> float:
        if self.p is not None:
            return self.p
        if self.scenario == "mixed_correlated":
            return min(DEFAULT_P, 1 - abs(self.c23))
        return DEFAULT_P

    def grid(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, int(self.steps))

    def time_at(self, two_omega_t: float) -> float:
        return two_omega_t / (2 * self.omega)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["a"] = list(self.a)
        d["p"] = self.resolved_p
        return d


def _procedure_and_inputs(cfg: ScenarioConfig) -> tuple[PreparationProcedure, InputSet]:
    p = cfg.resolved_p
    if cfg.scenario == "ideal":
        return IdealPin(), standard_inputs("projector_set")
    if cfg.scenario == "control_error":
        # duals of the intended pure states: the error goes unnoticed
        return PinWithControlError(epsilon=cfg.epsilon), standard_inputs("projector_set")
    if cfg.scenario == "mixed_uncorrelated":
        return MixedPin(p=p), standard_inputs("p_scaled", p)
    if cfg.scenario == "mixed_correlated":
        return CorrelatedFamily(p=p, c23=cfg.c23), standard_inputs("p_scaled", p)
    if cfg.scenario == "multi_pin":
        return MultiPin(omega=cfg.omega, swap_source=cfg.swap_source), standard_inputs("multi_pin_set")
    return NoPin(), standard_inputs("projector_set")


@dataclass(frozen=True, eq=False)
class Scenario:
    """A fully built preset: procedure, nominal inputs, duals and prepared states.

    Preparation does not depend on time, so prepared states are computed
    once; only the evolution changes along a sweep.
    """

    config: ScenarioConfig
    procedure: PreparationProcedure
    inputs: InputSet
    duals: DualSet
    rho_se: BipartiteState
    prepared: tuple[BipartiteState, ...] = field(repr=False)

    def evolution(self, t: float) -> Evolution:
        return unitary(self.config.omega, t)

    def tomography(self, t: float) -> TomographySet:
        ev = self.evolution(t)
        outputs = tuple(process_output(r, ev) for r in self.prepared)
        return TomographySet(self.inputs, self.duals, outputs, self.prepared)

    def process_map(self, t: float) -> ProcessMap:
        data = self.tomography(t)
        return reconstruct_map(data.inputs, data.duals, data.outputs)

    def simulator(self, t: float) -> Callable[[QubitState], QubitState]:
        ev = self.evolution(t)

        def simulate(probe: QubitState) -> QubitState:
            return process_output(self.procedure.prepare_probe(self.rho_se, probe), ev)

        return simulate

    @property
    def max_probe_radius(self) -> float:
        """Largest Bloch length the procedure can prepare."""
        if isinstance(self.procedure, MixedPin):
            return self.procedure.p
        return 1.0


def build_scenario(cfg: ScenarioConfig) -> Scenario:
    try:
        rho_se = initial_state(cfg.a, cfg.c23)
    except NotPhysicalError as exc:
        raise ConfigError(f"a={cfg.a}, c23={cfg.c23} do not give a physical initial state: {exc}") from None
    try:
        proc, inputs = _procedure_and_inputs(cfg)
        prepared = tuple(proc.prepare_input(rho_se, lab) for lab in inputs.labels)
    except (NotPhysicalError, ConfigError) as exc:
        raise ConfigError(f"invalid {cfg.scenario} configuration: {exc}") from None
    return Scenario(cfg, proc, inputs, compute_duals(inputs), rho_se, prepared)


def run_scenario(cfg: ScenarioConfig, t: float) -> tuple[TomographySet, ProcessMap]:
    scenario = build_scenario(cfg)
    data = scenario.tomography(t)
    return data, reconstruct_map(data.inputs, data.duals, data.outputs)


def lambda_s(c: float) -> np.ndarray:
    c2 = c * c
    return 0.5 * np.array([
        [1 + c2, 0, 0, 2 * c2],
        [0, 1 - c2, 0, 0],
        [0, 0, 1 - c2, 0],
        [2 * c2, 0, 0, 1 + c2],
    ], dtype=complex)


def lambda_mx2(c: float, s: float, c23: float) -> np.ndarray:
    k = -c23 * c * s
    c2 = c * c
    return 0.5 * np.array([
        [1 + c2, 0, k, 2 * c2],
        [0, 1 - c2, 0, k],
        [k, 0, 1 - c2, 0],
        [2 * c2, k, 0, 1 + c2],
    ], dtype=complex)


def lambda_ms(c: float, s: float) -> np.ndarray:
    c2, s2 = c * c, s * s
    return 0.5 * np.array([
        [1 + c2, -(1 + 1j) * s2, 0, 2 * c2],
        [-(1 - 1j) * s2, 1 - c2 + 2 * s2, 0, 0],
        [0, 0, 1 - c2, (1 + 1j) * s2],
        [2 * c2, 0, (1 - 1j) * s2, 1 + c2 - 2 * s2],
    ], dtype=complex)


def oracle_map(cfg: ScenarioConfig, t: float) -> ProcessMap | None:
    """Closed-form map for presets that have one, else None."""
    phase = 2 * cfg.omega * t
    c, s = np.cos(phase), np.sin(phase)
    if cfg.scenario in ("ideal", "mixed_uncorrelated"):
        return ProcessMap(lambda_s(c))
    if cfg.scenario == "mixed_correlated":
        return ProcessMap(lambda_mx2(c, s, cfg.c23))
    if cfg.scenario == "multi_pin" and cfg.swap_source == "pinned":
        return ProcessMap(lambda_ms(c, s))
    return None


@dataclass(frozen=True)
class SweepRow:
    two_omega_t: float
    eigenvalues: tuple[float, float, float, float]
    min_eig: float
    is_cp: bool
    tp_residual: float


@dataclass(frozen=True)
class SweepResult:
    config: ScenarioConfig
    rows: tuple[SweepRow, ...]


def evaluate(scenario: Scenario, two_omega_t: float, cp_tol: float = CP_TOL) -> SweepRow:
    lam = scenario.process_map(scenario.config.time_at(two_omega_t))
    eigs = tuple(float(x) for x in cp_spectrum(lam))
    return SweepRow(float(two_omega_t), eigs, eigs[0], eigs[0] >= -cp_tol, tp_check(lam))


def sweep(cfg: ScenarioConfig) -> SweepResult:
    scenario = build_scenario(cfg)
    return SweepResult(cfg, tuple(evaluate(scenario, x) for x in cfg.grid()))


def random_probes(n: int, seed: int | None, radius: float = 1.0) -> list[QubitState]:
    """States drawn uniformly from the Bloch ball of the given radius."""
    rng = np.random.default_rng(seed)
    probes = []
    for _ in range(n):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        probes.append(bloch_to_state(radius * rng.uniform() ** (1 / 3) * v))
    return probes
