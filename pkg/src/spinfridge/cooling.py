"""Heat-bath algorithmic cooling: the basic compression subroutine.

A pool of classical bits at bias eps (P(0) = (1 + eps)/2) is purified by
pairing bits, applying a CNOT, keeping the control bit of every pair whose
target came out 0, and discarding the rest.  The retained bits have bias
2*eps/(1 + eps^2); iterating the map drives the bias toward 1.  Thermal
contact is modeled as i.i.d. resampling at the bath bias (perfect bath).

The bias of a spin with gap E at temperature T is tanh(E/(2T)), which
bridges these bit-pool statements to the refrigerator's thermal states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PRNG_ID = "numpy-pcg64"  # np.random.default_rng; seeded runs are bit-reproducible


@dataclass(frozen=True)
class BiasState:
    """A pool of n_bits i.i.d. bits at a common bias.

    Analytic pipelines only produce eps in [0, 1); empirical estimates from
    finite samples may come out slightly negative, so the full open
    interval (-1, 1) is accepted.
    """

    epsilon: float
    n_bits: int

    def __post_init__(self) -> None:
        if not (-1.0 < self.epsilon < 1.0):
            raise ValueError(f"bias must lie in (-1, 1), got {self.epsilon}")
        if self.n_bits < 0:
            raise ValueError(f"bit count must be nonnegative, got {self.n_bits}")


@dataclass(frozen=True)
class BcsRound:
    """Per-round statistics of a stochastic compression run."""

    round_index: int
    analytic_bias: float
    empirical_bias: float
    retained_bits: int


@dataclass(frozen=True)
class BcsResult:
    rounds: tuple[BcsRound, ...]
    final: BiasState
    seed: int
    prng: str = PRNG_ID


def _check_bias(epsilon: float) -> None:
    if not (0.0 <= epsilon < 1.0):
        raise ValueError(f"bias must lie in [0, 1), got {epsilon}")


def bcs_bias(epsilon: float) -> float:
    """One compression round: eps -> 2*eps/(1 + eps^2)."""
    _check_bias(epsilon)
    return 2.0 * epsilon / (1.0 + epsilon * epsilon)


def bcs_outcome_probs(epsilon: float) -> tuple[float, float, float, float]:
    """Probabilities of the four (control, target) pair outcomes after CNOT.

    Order: (0,0)->(0,0), (0,1)->(0,1), (1,0)->(1,1), (1,1)->(1,0).
    They sum to one identically.
    """
    _check_bias(epsilon)
    p00 = (1.0 + epsilon) ** 2 / 4.0
    p_mixed = (1.0 - epsilon * epsilon) / 4.0
    p11 = (1.0 - epsilon) ** 2 / 4.0
    return (p00, p_mixed, p_mixed, p11)


def expected_purified(l: int, m: int, epsilon0: float) -> float:
    """Expected purified-bit yield l*m*(1 + eps0^2)/4 after l compression cycles."""
    if l < 1:
        raise ValueError(f"cycle count must be at least 1, got {l}")
    if m < 2 or m % 2:
        raise ValueError(f"segment size must be even and at least 2, got {m}")
    _check_bias(epsilon0)
    return l * m * (1.0 + epsilon0 * epsilon0) / 4.0


def rounds_to_bias(epsilon0: float, epsilon_target: float) -> int:
    """Smallest j with the j-th bias iterate reaching epsilon_target.

    Returns 0 when the target is already met.  A zero starting bias is a
    fixed point, so any positive target is unreachable from it.
    """
    _check_bias(epsilon0)
    if not (0.0 < epsilon_target < 1.0):
        raise ValueError(f"target bias must lie in (0, 1), got {epsilon_target}")
    if epsilon_target <= epsilon0:
        return 0
    if epsilon0 == 0.0:
        raise ValueError("target unreachable: bias 0 is a fixed point of the recursion")
    rounds = 0
    eps = epsilon0
    while eps < epsilon_target:
        eps = 2.0 * eps / (1.0 + eps * eps)  # strictly increasing on (0, 1)
        rounds += 1
    return rounds


def bias_from_temperature(E: float, T: float) -> float:
    """Bias of a thermal spin: tanh(E / (2T)) with k_B = 1."""
    if not (E > 0.0 and T > 0.0):
        raise ValueError("gap and temperature must be positive")
    return math.tanh(E / (2.0 * T))


def _empirical_bias(bits: np.ndarray) -> float:
    if bits.size == 0:
        return 0.0
    return float(1.0 - 2.0 * bits.mean())


def simulate_bcs(n_bits: int, epsilon: float, rounds: int, seed: int) -> BcsResult:
    """Stochastic compression of a freshly sampled pool, seeded and exact.

    Round 0 records the sampled pool; each further round pairs adjacent
    bits (dropping a trailing unpaired bit), keeps the control bit of every
    agreeing pair, and discards the rest.  Deterministic for a given seed.
    """
    if n_bits < 2 or n_bits % 2:
        raise ValueError(f"bit count must be even and at least 2, got {n_bits}")
    _check_bias(epsilon)
    if rounds < 0:
        raise ValueError(f"round count must be nonnegative, got {rounds}")
    rng = np.random.default_rng(seed)
    bits = (rng.random(n_bits) >= (1.0 + epsilon) / 2.0).astype(np.uint8)
    analytic = epsilon
    history = [BcsRound(0, analytic, _empirical_bias(bits), int(bits.size))]
    for round_index in range(1, rounds + 1):
        if bits.size % 2:
            bits = bits[:-1]
        if bits.size == 0:
            break  # pool exhausted; remaining rounds are vacuous
        control = bits[0::2]
        target = bits[1::2]
        bits = control[control == target]  # CNOT target reads 0 iff the pair agrees
        analytic = bcs_bias(analytic)
        history.append(BcsRound(round_index, analytic, _empirical_bias(bits), int(bits.size)))
    final = BiasState(epsilon=_empirical_bias(bits), n_bits=int(bits.size))
    return BcsResult(rounds=tuple(history), final=final, seed=seed)
