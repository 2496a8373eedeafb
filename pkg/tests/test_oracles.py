"""Oracle kernels vs independently built permutation/diagonal matrices."""

import numpy as np
import pytest

import refsim
from bvlab.bitstring import BitString, all_bitstrings
from bvlab.errors import CapacityError, DimensionMismatchError
from bvlab.oracles import (
    DENSE_QUBIT_CAP,
    OracleKind,
    apply_oracle,
    apply_phase_oracle,
    apply_single_xor_oracle,
    apply_standard_bv,
    apply_toffoli_oracle,
    apply_two_register_oracle,
    oracle_dense_matrix,
)
from bvlab.statevector import StateVector, basis_state
from bvlab.truthtable import BooleanFunction, bv_function

APPLIERS = {
    OracleKind.STANDARD_BV: apply_standard_bv,
    OracleKind.TOFFOLI: apply_toffoli_oracle,
    OracleKind.PHASE: apply_phase_oracle,
    OracleKind.TWO_REGISTER: apply_two_register_oracle,
    OracleKind.SINGLE_XOR: apply_single_xor_oracle,
}


def all_functions(n):
    entries = 1 << n
    for t in range(1 << entries):
        yield BooleanFunction([(t >> v) & 1 for v in range(entries)])


def random_state(m, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return StateVector(m, amps / np.linalg.norm(amps))


def test_qubit_counts():
    assert OracleKind.STANDARD_BV.qubit_count(3) == 4
    assert OracleKind.TOFFOLI.qubit_count(3) == 5
    assert OracleKind.PHASE.qubit_count(3) == 4
    assert OracleKind.TWO_REGISTER.qubit_count(3) == 7
    assert OracleKind.SINGLE_XOR.qubit_count(3) == 5


@pytest.mark.parametrize("kind", list(OracleKind))
def test_dense_matrix_matches_reference_exhaustively(kind):
    for n in (1, 2):
        for f in all_functions(n):
            ours = oracle_dense_matrix(kind, f)
            ref = refsim.ORACLE_MATRIX[kind.value](f.table)
            assert np.max(np.abs(ours - ref)) <= 1e-12, (kind, f)


@pytest.mark.parametrize("kind", list(OracleKind))
def test_dense_matrix_matches_reference_sampled_n3(kind):
    rng = np.random.default_rng(17)
    for _ in range(8):
        f = BooleanFunction(rng.integers(0, 2, size=8, dtype=np.uint8))
        ours = oracle_dense_matrix(kind, f)
        ref = refsim.ORACLE_MATRIX[kind.value](f.table)
        assert np.max(np.abs(ours - ref)) <= 1e-12


@pytest.mark.parametrize("kind", list(OracleKind))
def test_applier_agrees_with_dense_multiply(kind):
    for n in (1, 2, 3):
        f = bv_function(BitString.from_int(n, (1 << n) - 1))
        m = kind.qubit_count(n)
        st = random_state(m, seed=41 * n)
        expected = refsim.ORACLE_MATRIX[kind.value](f.table) @ st.amps
        APPLIERS[kind](st, f)
        assert np.max(np.abs(st.amps - expected)) <= 1e-12


@pytest.mark.parametrize("kind", list(OracleKind))
def test_apply_oracle_dispatch(kind):
    f = bv_function(BitString.parse("10"))
    m = kind.qubit_count(2)
    a = random_state(m, seed=3)
    b = a.copy()
    apply_oracle(kind, a, f)
    APPLIERS[kind](b, f)
    assert np.max(np.abs(a.amps - b.amps)) == 0.0


@pytest.mark.parametrize("kind", list(OracleKind))
def test_oracles_are_involutions(kind):
    for f in all_functions(2):
        st = random_state(kind.qubit_count(2), seed=11)
        before = st.amps.copy()
        APPLIERS[kind](st, f)
        APPLIERS[kind](st, f)
        assert np.max(np.abs(st.amps - before)) <= 1e-12


def test_phase_oracle_accepts_wider_registers():
    # On extra qubits the phase oracle acts as identity on the tail.
    f = bv_function(BitString.parse("11"))
    st = random_state(4, seed=23)  # arity 2 + flag + one extra
    wide = np.kron(refsim.phase_oracle_matrix(f.table), refsim.I2)
    expected = wide @ st.amps
    apply_phase_oracle(st, f)
    assert np.max(np.abs(st.amps - expected)) <= 1e-12


def test_layout_validation():
    f = bv_function(BitString.parse("10"))
    wrong = basis_state(6, BitString.parse("000000"))
    for kind, applier in APPLIERS.items():
        if kind is OracleKind.PHASE:
            continue  # checked below: wider is allowed, narrower is not
        with pytest.raises(DimensionMismatchError):
            applier(wrong, f)
    with pytest.raises(DimensionMismatchError):
        apply_phase_oracle(basis_state(2, BitString.parse("00")), f)


def test_dense_matrix_capacity():
    f = BooleanFunction(np.zeros(1 << 6, dtype=np.uint8))  # arity 6
    # Two-register layout needs 13 qubits, one past the dense cap.
    assert OracleKind.TWO_REGISTER.qubit_count(6) == DENSE_QUBIT_CAP + 1
    with pytest.raises(CapacityError):
        oracle_dense_matrix(OracleKind.TWO_REGISTER, f)
    assert oracle_dense_matrix(OracleKind.STANDARD_BV, f).shape == (128, 128)


def test_flip_oracle_on_half_superposition_collects_parity_signs():
    # With the target in the minus state the flip oracle writes
    # (-1)**f(x) onto each branch: the kickback that powers every pipeline.
    gamma = BitString.parse("101")
    f = bv_function(gamma)
    minus = StateVector(1, np.array([1.0, -1.0]) / np.sqrt(2.0))
    for x in all_bitstrings(3):
        st = StateVector(4, np.kron(basis_state(3, x).amps, minus.amps))
        expected = (-1.0) ** f.evaluate(x) * st.amps
        apply_standard_bv(st, f)
        assert np.max(np.abs(st.amps - expected)) <= 1e-12
