"""Spin thermodynamics: thermal states, temperature, entropy, work ledger.

Heat and work follow the split dW = tr(rho dH), dQ = tr(H drho).  A single
control pulse is booked in four phases: switching the control field on does
work dW1 on the unchanged state, the evolution under the (constant) total
Hamiltonian moves only heat dQ1, and switching the field off does work dW2.
Under unitary dynamics with a constant total Hamiltonian dQ1 vanishes, so
the net work of a pulse equals the change in system internal energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, Operator, evolve, herm_exp


@dataclass(frozen=True)
class SpinSpec:
    """A two-level spin: excited-state gap E > 0 at temperature T > 0.

    Units: E in delta, T in delta/k_B with k_B = 1.  Negative or infinite
    temperatures are never valid inputs; they only appear as outputs of
    effective_temperature.
    """

    E: float
    T: float

    def __post_init__(self) -> None:
        if not (self.E > 0.0 and math.isfinite(self.E)):
            raise ValueError(f"energy gap must be positive and finite, got {self.E}")
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise ValueError(f"temperature must be positive and finite, got {self.T}")


@dataclass(frozen=True)
class WorkLedgerEntry:
    """Four-phase work/heat record for one pulse, in units of delta."""

    step_index: int
    dW1: float
    dQ1: float
    dW2: float
    net_work: float
    cumulative_work: float

    def __post_init__(self) -> None:
        if abs(self.net_work - (self.dW1 + self.dQ1 + self.dW2)) > 1e-12:
            raise ValueError("net_work must equal dW1 + dQ1 + dW2")


def spin_hamiltonian(E: float) -> Operator:
    """Single-spin Hamiltonian E|1><1| (ground state at zero energy)."""
    return Operator(np.diag([0.0, float(E)]))


def thermal_state(spec: SpinSpec) -> DensityMatrix:
    """Gibbs state diag(1, e^(-E/T)) / Z with Z = 1 + e^(-E/T)."""
    boltzmann = math.exp(-spec.E / spec.T)
    z = 1.0 + boltzmann
    return DensityMatrix(np.diag([1.0 / z, boltzmann / z]))


def excited_population(spec: SpinSpec) -> float:
    """Excited-state population e^(-E/T) / (1 + e^(-E/T))."""
    boltzmann = math.exp(-spec.E / spec.T)
    return boltzmann / (1.0 + boltzmann)


def effective_temperature(rho1: DensityMatrix, E: float) -> float:
    """Temperature assigned to a single spin from its populations only.

    Returns E / ln(P_g / P_e).  Edge cases are encoded in the float result
    rather than exceptions: equal populations give +inf, an inverted spin
    (P_e > P_g) gives a negative value, P_e = 0 gives 0.0 and P_g = 0
    gives -0.0 (the zero-temperature markers from either side).
    """
    if rho1.dim != 2:
        raise ValueError("effective temperature is defined for a single spin")
    if not E > 0.0:
        raise ValueError("energy gap must be positive")
    pops = rho1.populations
    p_ground, p_excited = float(pops[0]), float(pops[1])
    if p_excited <= 0.0:
        return 0.0
    if p_ground <= 0.0:
        return -0.0
    if p_ground == p_excited:
        return math.inf
    return E / math.log(p_ground / p_excited)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum(lam ln lam) over eigenvalues, in nats, with 0 ln 0 = 0."""
    w = np.clip(rho.eigenvalues(), 0.0, 1.0)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log(w)))


def internal_energy(rho: DensityMatrix, h_sys: Operator) -> float:
    """tr(rho H)."""
    if rho.dim != h_sys.dim:
        raise ValueError(f"dimension mismatch: state {rho.dim}, Hamiltonian {h_sys.dim}")
    return float(np.real(np.einsum("ij,ji->", rho.matrix, h_sys.matrix)))


def ledger_step(
    rho_before: DensityMatrix,
    generator: Operator,
    duration: float,
    h_sys: Operator,
    *,
    step_index: int = 0,
    cumulative_before: float = 0.0,
) -> tuple[DensityMatrix, WorkLedgerEntry]:
    """Apply one pulse exp(-i*generator) and book its work and heat.

    The pulse runs for ``duration`` under the constant total Hamiltonian
    generator/duration, i.e. the control term is
    H_c = generator/duration - h_sys.  Phases: dW1 = tr(rho H_c) when the
    field switches on, dQ1 = tr[(rho' - rho)(h_sys + H_c)] during the
    evolution (zero up to rounding, since the total Hamiltonian commutes
    with the evolution), and dW2 = -tr(rho' H_c) when the field switches
    off.  The net work therefore equals the internal-energy change
    tr[h_sys (rho' - rho)].
    """
    if not generator.is_hermitian():
        raise ValueError("pulse generator must be Hermitian")
    if not duration > 0.0:
        raise ValueError("pulse duration must be positive")
    if generator.dim != rho_before.dim or h_sys.dim != rho_before.dim:
        raise ValueError("generator, state, and system Hamiltonian dimensions must agree")
    h_total = (1.0 / duration) * generator
    h_control = h_total - h_sys
    rho_after = evolve(rho_before, herm_exp(generator, 1.0))
    dw1 = internal_energy(rho_before, h_control)
    dq1 = internal_energy(rho_after, h_total) - internal_energy(rho_before, h_total)
    dw2 = -internal_energy(rho_after, h_control)
    net = dw1 + dq1 + dw2
    entry = WorkLedgerEntry(
        step_index=step_index,
        dW1=dw1,
        dQ1=dq1,
        dW2=dw2,
        net_work=net,
        cumulative_work=cumulative_before + net,
    )
    return rho_after, entry
