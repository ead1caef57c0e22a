"""Forty-step pulse decomposition of the exchange evolution."""

import itertools
import math

import numpy as np
import pytest

import oracles
from spinfridge import (
    DensityMatrix,
    FridgeConfig,
    GateStep,
    Operator,
    PauliString,
    compile_exchange,
    evolve,
    herm_exp,
    initial_state,
    internal_energy,
    pauli_to_operator,
    permute_blocks,
    run_with_ledger,
    sequence_unitary,
    system_hamiltonian,
    verify,
)

THETAS = (0.0, math.pi / 8.0, math.pi / 4.0, math.pi / 2.0)


def test_sequence_shape():
    seq = compile_exchange(math.pi / 2.0)
    assert len(seq.steps) == 40
    assert seq.term_boundaries == (10, 20, 30, 40)
    blocks = seq.blocks()
    assert len(blocks) == 4
    assert all(len(block) == 10 for block in blocks)


def test_every_step_is_a_valid_one_or_two_qubit_pulse():
    seq = compile_exchange(1.1)
    for step in seq.steps:
        assert step.generator.is_hermitian()
        assert step.unitary().is_unitary()
        # every Pauli component of the generator touches at most two qubits
        for letters in itertools.product("IXYZ", repeat=3):
            string = "".join(letters)
            basis_op = pauli_to_operator(PauliString(string)).matrix
            coeff = np.trace(basis_op.conj().T @ step.generator.matrix) / 8.0
            weight = sum(1 for c in string if c != "I")
            if abs(coeff) > 1e-12:
                assert weight <= 2, f"{step.label} has weight-{weight} term {string}"


def test_zero_angle_compiles_to_identity_up_to_phase():
    seq = compile_exchange(0.0)
    u = sequence_unitary(seq).matrix
    assert abs(np.trace(u)) / 8.0 == pytest.approx(1.0, abs=1e-12)
    assert verify(seq) == pytest.approx(1.0, abs=1e-12)


def test_full_angle_swaps_the_two_levels_only():
    u = sequence_unitary(compile_exchange(math.pi / 2.0)).matrix
    direct = oracles.expm_unitary(oracles.exchange_matrix(), math.pi / 2.0)
    for basis in range(8):
        vec = np.zeros(8)
        vec[basis] = 1.0
        out = u @ vec
        target = {0b010: 0b101, 0b101: 0b010}.get(basis, basis)
        assert abs(out[target]) == pytest.approx(1.0, abs=1e-10)
        assert abs(np.vdot(direct @ vec, out)) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("theta", THETAS)
def test_verify_against_direct_exponential(theta):
    assert verify(compile_exchange(theta)) >= 1.0 - 1e-10


def test_verify_against_scipy_oracle():
    theta = 0.9321
    u_seq = sequence_unitary(compile_exchange(theta)).matrix
    u_direct = oracles.expm_unitary(oracles.exchange_matrix(), theta)
    fidelity = abs(np.trace(u_seq.conj().T @ u_direct)) / 8.0
    assert fidelity >= 1.0 - 1e-12


def test_single_sign_flip_is_detected():
    seq = compile_exchange(math.pi / 2.0)
    steps = list(seq.steps)
    victim = steps[3]  # ZZ(pi/2)@12 inside the first block
    steps[3] = GateStep(label=victim.label, generator=-victim.generator)
    mutated = type(seq)(steps=tuple(steps), theta=seq.theta, term_boundaries=seq.term_boundaries)
    assert verify(mutated) < 1.0 - 1e-6


def test_block_permutations_commute():
    seq = compile_exchange(math.pi / 2.0)
    cfg = FridgeConfig()
    rho0 = initial_state(cfg)
    reference = evolve(rho0, sequence_unitary(seq))
    for order in ((3, 2, 1, 0), (1, 0, 3, 2), (2, 3, 0, 1)):
        permuted = permute_blocks(seq, order)
        assert verify(permuted) >= 1.0 - 1e-10
        state = evolve(rho0, sequence_unitary(permuted))
        assert np.max(np.abs(state.matrix - reference.matrix)) <= 1e-10


def test_permute_blocks_validates_order():
    seq = compile_exchange(0.5)
    with pytest.raises(ValueError):
        permute_blocks(seq, (0, 1, 2, 2))


def test_ledger_on_maximally_mixed_state_is_flat():
    seq = compile_exchange(math.pi / 2.0)
    cfg = FridgeConfig()
    rho0 = DensityMatrix(np.eye(8) / 8.0)
    _, entries = run_with_ledger(seq, rho0, system_hamiltonian(cfg))
    for entry in entries:
        assert entry.net_work == pytest.approx(0.0, abs=1e-12)


def test_ledger_run_books_zero_total_work():
    cfg = FridgeConfig()
    seq = compile_exchange(math.pi / 2.0, cfg.g)
    rho0 = initial_state(cfg)
    h_sys = system_hamiltonian(cfg)
    final, entries = run_with_ledger(seq, rho0, h_sys)

    assert len(entries) == 40
    assert [e.step_index for e in entries] == list(range(1, 41))
    assert abs(entries[-1].cumulative_work) <= 1e-9
    assert max(abs(e.cumulative_work) for e in entries[:-1]) > 1e-3
    for entry in entries:
        assert entry.dQ1 == pytest.approx(0.0, abs=1e-10)

    # ledger consistency: per-step net work equals the internal-energy delta
    rho = rho0
    for entry, step in zip(entries, seq.steps):
        before = internal_energy(rho, h_sys)
        rho = evolve(rho, step.unitary())
        assert entry.net_work == pytest.approx(
            internal_energy(rho, h_sys) - before, abs=1e-10
        )

    # the folded state equals the direct exponential evolution
    direct = evolve(rho0, herm_exp(Operator(oracles.exchange_matrix()), math.pi / 2.0))
    assert np.max(np.abs(final.matrix - direct.matrix)) <= 1e-10
    assert internal_energy(final, h_sys) == pytest.approx(
        internal_energy(rho0, h_sys), abs=1e-10
    )


def test_gate_step_validation():
    with pytest.raises(ValueError):
        GateStep(label="bad", generator=Operator(np.array([[0, 1], [0, 0]])))
    with pytest.raises(ValueError):
        GateStep(label="bad", generator=Operator(np.eye(2)), duration=0.0)
