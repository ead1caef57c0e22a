"""The three-spin self-contained refrigerator.

Three spins with gaps E1, E2, E3 and E2 = E1 + E3 make the joint levels
|010> and |101> degenerate, so the exchange coupling

    H_exc = g (|010><101| + |101><010|)

moves population between them without any work input.  When the baths are
arranged so that P_101 > P_010 in the initial product of thermal states,
the exchange drains excited-state population from spin 1 and cools it.
All quantities are in delta units with k_B = 1; the three spins are closed
during an exchange (baths detached).

Sign convention: dQ_i > 0 means spin i absorbs energy, so successful
cooling of spin 1 shows up as dQ1 < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DensityMatrix,
    Operator,
    PauliString,
    herm_exp,
    evolve,
    kron,
    partial_trace,
)
from .thermo import (
    SpinSpec,
    effective_temperature,
    internal_energy,
    spin_hamiltonian,
    thermal_state,
)

SELF_CONTAINED_TOL = 1e-12

# basis indices of the exchanged levels (qubit 0 most significant)
IDX_010 = 0b010
IDX_101 = 0b101


@dataclass(frozen=True)
class FridgeConfig:
    """Gaps, bath temperatures, coupling, and evolution angle theta = g*t.

    Defaults reproduce the reference operating point E = (1, 3, 2) delta,
    T = (2, 2, 10) delta/k_B, theta = pi/2 (a complete exchange).
    """

    E1: float = 1.0
    E2: float = 3.0
    E3: float = 2.0
    T1: float = 2.0
    T2: float = 2.0
    T3: float = 10.0
    g: float = 1.0
    theta: float = math.pi / 2

    def __post_init__(self) -> None:
        for name in ("E1", "E2", "E3", "T1", "T2", "T3", "g"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if abs(self.E2 - (self.E1 + self.E3)) > SELF_CONTAINED_TOL:
            raise ValueError(
                "E2 must equal E1 + E3 (self-contained condition): "
                f"E2={self.E2}, E1+E3={self.E1 + self.E3}"
            )
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta}")


@dataclass(frozen=True)
class ExchangeReport:
    """Populations, per-spin heats, and temperatures for one exchange."""

    P010_before: float
    P101_before: float
    P010_after: float
    P101_after: float
    dQ1: float
    dQ2: float
    dQ3: float
    T1_after: float
    T2_after: float
    T3_after: float


def exchange_generator(g: float = 1.0) -> Operator:
    """The bare two-entry exchange coupling g(|010><101| + |101><010|)."""
    mat = np.zeros((8, 8), dtype=complex)
    mat[IDX_010, IDX_101] = g
    mat[IDX_101, IDX_010] = g
    return Operator(mat)


def build_h_exc(cfg: FridgeConfig) -> Operator:
    """Exchange Hamiltonian of the configured refrigerator."""
    return exchange_generator(cfg.g)


def exchange_pauli_terms(g: float = 1.0) -> tuple[PauliString, ...]:
    """The exchange coupling as four mutually commuting three-body Paulis.

    The sign of the YXY term is fixed by requiring the sum to reproduce
    the two-entry matrix of exchange_generator entrywise (checked in the
    test suite); with standard Pauli conventions that term carries -g/4.
    """
    quarter = g / 4.0
    return (
        PauliString("XXX", quarter),
        PauliString("XYY", quarter),
        PauliString("YXY", -quarter),
        PauliString("YYX", quarter),
    )


def system_hamiltonian(cfg: FridgeConfig) -> Operator:
    """Sum of the single-spin Hamiltonians E_i |1><1|_i on the 8-dim space."""
    diag = np.zeros(8)
    for idx in range(8):
        bits = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1)
        diag[idx] = bits[0] * cfg.E1 + bits[1] * cfg.E2 + bits[2] * cfg.E3
    return Operator(np.diag(diag).astype(complex))


def initial_state(cfg: FridgeConfig) -> DensityMatrix:
    """Product of the three thermal states (diagonal)."""
    tau1 = thermal_state(SpinSpec(cfg.E1, cfg.T1))
    tau2 = thermal_state(SpinSpec(cfg.E2, cfg.T2))
    tau3 = thermal_state(SpinSpec(cfg.E3, cfg.T3))
    return DensityMatrix(kron(kron(tau1.op, tau2.op), tau3.op))


def exchange(cfg: FridgeConfig) -> ExchangeReport:
    """Evolve the initial product state under H_exc for angle theta.

    Per-spin heats are dQ_i = tr[H_i (rho'_i - rho_i)] on the reduced
    states; temperatures are read off the reduced populations afterwards.
    """
    rho0 = initial_state(cfg)
    u = herm_exp(build_h_exc(cfg), cfg.theta / cfg.g)
    rho1 = evolve(rho0, u)

    gaps = (cfg.E1, cfg.E2, cfg.E3)
    heats = []
    temps = []
    for qubit, gap in enumerate(gaps):
        h_i = spin_hamiltonian(gap)
        red_before = partial_trace(rho0, (qubit,))
        red_after = partial_trace(rho1, (qubit,))
        heats.append(internal_energy(red_after, h_i) - internal_energy(red_before, h_i))
        temps.append(effective_temperature(red_after, gap))

    pops0 = rho0.populations
    pops1 = rho1.populations
    return ExchangeReport(
        P010_before=float(pops0[IDX_010]),
        P101_before=float(pops0[IDX_101]),
        P010_after=float(pops1[IDX_010]),
        P101_after=float(pops1[IDX_101]),
        dQ1=heats[0],
        dQ2=heats[1],
        dQ3=heats[2],
        T1_after=temps[0],
        T2_after=temps[1],
        T3_after=temps[2],
    )


def working_condition(cfg: FridgeConfig) -> bool:
    """True iff E1/T1 + E3/T3 < E2/T2 strictly (equivalent to P101 > P010)."""
    return cfg.E1 / cfg.T1 + cfg.E3 / cfg.T3 < cfg.E2 / cfg.T2


def bound_temperature(E1: float, E2: float, E3: float, T2: float, T3: float) -> float:
    """Fixed-point temperature E1 / (E2/T2 - E3/T3) of the cooling cycle.

    This is where the working condition turns into an equality with the
    bath temperatures held fixed; spin 1 cools iff T1 exceeds it.
    """
    if abs(E2 - (E1 + E3)) > SELF_CONTAINED_TOL:
        raise ValueError("gaps must satisfy E2 = E1 + E3")
    if not (T2 > 0.0 and T3 > 0.0):
        raise ValueError("bath temperatures must be positive")
    denom = E2 / T2 - E3 / T3
    if denom <= 0.0:
        raise ValueError(
            f"no cooling regime: E2/T2 = {E2 / T2} does not exceed E3/T3 = {E3 / T3}"
        )
    return E1 / denom


def phase_boundary_value(T2: float, T3: float) -> float:
    """6*T3 - 4*T2 - T2*T3; positive iff cooling works at the default point.

    The constants correspond to gaps (1, 3, 2) delta with the target spin
    held at T1 = 2 delta/k_B; the expression is the working condition
    cleared of denominators for that setting.
    """
    if not (T2 > 0.0 and T3 > 0.0):
        raise ValueError("temperatures must be positive")
    return 6.0 * T3 - 4.0 * T2 - T2 * T3


def cop(cfg: FridgeConfig) -> float:
    """Coefficient of performance |dQ1/dQ3| = E1/E3, temperature independent."""
    return cfg.E1 / cfg.E3


def carnot_limit(T1: float, T2: float, T3: float) -> float:
    """Carnot ceiling (T3 - T2) T1 / (T3 (T2 - T1)) for the engine+fridge pair.

    Requires T1 <= T2 < T3; T1 = T2 returns +inf (zero-gap refrigerator).
    """
    if not (0.0 < T1 <= T2 < T3):
        raise ValueError(f"temperatures must satisfy 0 < T1 <= T2 < T3, got {(T1, T2, T3)}")
    if T1 == T2:
        return math.inf
    return (T3 - T2) * T1 / (T3 * (T2 - T1))


_SWAP_2 = Operator(
    np.array(
        [
            [1, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )
)


def two_spin_swap(E1: float, E2: float, T0: float) -> tuple[float, float]:
    """SWAP-based cooling of two thermal spins at a common temperature T0.

    Returns (T_after, work): the effective temperature of spin 1 after the
    SWAP (analytically T0*E1/E2) and the work the SWAP costs, which is
    strictly positive for E1 < E2 - the non-self-contained contrast case.
    """
    if not (0.0 < E1 < E2):
        raise ValueError(f"gaps must satisfy 0 < E1 < E2, got {(E1, E2)}")
    if not T0 > 0.0:
        raise ValueError("temperature must be positive")
    rho = DensityMatrix(
        kron(thermal_state(SpinSpec(E1, T0)).op, thermal_state(SpinSpec(E2, T0)).op)
    )
    h_sys = Operator(np.diag([0.0, E2, E1, E1 + E2]).astype(complex))
    rho_after = evolve(rho, _SWAP_2)
    t_after = effective_temperature(partial_trace(rho_after, (0,)), E1)
    work = internal_energy(rho_after, h_sys) - internal_energy(rho, h_sys)
    return t_after, work
