"""Reversible function oracles applied as index-arithmetic amplitude moves.

Every oracle here is classical on basis labels: it permutes amplitudes (or
flips their signs) according to a truth-table read, so application costs
O(2**m) instead of the O(4**m) of a matrix product.  The dense-matrix path
exists only for verification of unitarity, self-adjointness, and
permutation structure on small registers.

Register layouts (qubit 0 topmost / most significant):

    standard-bv   n data qubits + 1 target:      (x, y)    -> (x, y^f(x))
    toffoli       n data + control + target:     (x, b, g) -> (x, b, g^(f(x)&b))
    phase         n data + 1 flag:               (x, g)    -> -1 on f(x)=1, g=0
    two-register  n + n data + 1 target:         (x, y, g) -> (x, y, g^f(x)^f(y))
    single-xor    n data + control + target:     (x, b, g) -> (x, b, g^f(x)^b)
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import CapacityError, DimensionMismatchError
from .statevector import StateVector
from .truthtable import BooleanFunction

__all__ = [
    "OracleKind",
    "DENSE_QUBIT_CAP",
    "apply_standard_bv",
    "apply_toffoli_oracle",
    "apply_phase_oracle",
    "apply_two_register_oracle",
    "apply_single_xor_oracle",
    "apply_oracle",
    "oracle_dense_matrix",
]

# 2**12 x 2**12 complex doubles is 256 MB; past that dense checks stop paying.
DENSE_QUBIT_CAP = 12


class OracleKind(Enum):
    """Tags the five oracle constructions and their register layouts."""

    STANDARD_BV = "standard-bv"
    TOFFOLI = "toffoli"
    PHASE = "phase"
    TWO_REGISTER = "two-register"
    SINGLE_XOR = "single-xor"

    def qubit_count(self, n: int) -> int:
        """Total register width for a function of arity n."""
        return {
            OracleKind.STANDARD_BV: n + 1,
            OracleKind.TOFFOLI: n + 2,
            OracleKind.PHASE: n + 1,
            OracleKind.TWO_REGISTER: 2 * n + 1,
            OracleKind.SINGLE_XOR: n + 2,
        }[self]


def _standard_bv_kernel(amps: np.ndarray, n: int, table: np.ndarray) -> None:
    # Swap the target pair wherever f(x) = 1.
    pairs = amps.reshape(-1, 2)
    sel = np.flatnonzero(table)
    pairs[sel] = pairs[sel][:, ::-1]


def _toffoli_kernel(amps: np.ndarray, n: int, table: np.ndarray) -> None:
    # Target flips only on the control=1 half of the f(x)=1 slices.
    blocks = amps.reshape(-1, 2, 2)
    sel = np.flatnonzero(table)
    blocks[sel, 1] = blocks[sel, 1][:, ::-1]


def _phase_kernel(amps: np.ndarray, n: int, table: np.ndarray) -> None:
    # Diagonal: negate amplitudes with f(x) = 1 and flag qubit 0.
    blocks = amps.reshape(1 << n, 2, -1)
    sel = np.flatnonzero(table)
    blocks[sel, 0, :] *= -1.0


def _two_register_kernel(amps: np.ndarray, n: int, table: np.ndarray) -> None:
    # Target flips where the two table reads disagree.
    blocks = amps.reshape(1 << n, 1 << n, 2)
    differs = (table[:, None] ^ table[None, :]).astype(bool)
    blocks[differs] = blocks[differs][:, ::-1]


def _single_xor_kernel(amps: np.ndarray, n: int, table: np.ndarray) -> None:
    # Target flips where f(x) and the control bit disagree.
    blocks = amps.reshape(-1, 2, 2)
    ones = np.flatnonzero(table)
    zeros = np.flatnonzero(table == 0)
    blocks[ones, 0] = blocks[ones, 0][:, ::-1]
    blocks[zeros, 1] = blocks[zeros, 1][:, ::-1]


def _require_layout(state: StateVector, f: BooleanFunction, expected: int) -> None:
    if state.qubits != expected:
        raise DimensionMismatchError(
            f"oracle for arity {f.arity} needs {expected} qubits, "
            f"state has {state.qubits}"
        )


def apply_standard_bv(state: StateVector, f: BooleanFunction) -> StateVector:
    """XOR f(x) into the last qubit: (x, y) -> (x, y ^ f(x)).  In place."""
    _require_layout(state, f, f.arity + 1)
    _standard_bv_kernel(state.amps, f.arity, f.table)
    return state


def apply_toffoli_oracle(state: StateVector, f: BooleanFunction) -> StateVector:
    """Function-controlled Toffoli: (x, b, g) -> (x, b, g ^ (f(x) & b)).

    The top n qubits hold x, qubit n the control, qubit n+1 the target.
    In place.
    """
    _require_layout(state, f, f.arity + 2)
    _toffoli_kernel(state.amps, f.arity, f.table)
    return state


def apply_phase_oracle(state: StateVector, f: BooleanFunction) -> StateVector:
    """Sign flip on components with f(x) = 1 and qubit n equal to 0.  In place.

    Acts on qubits 0..n; any further qubits are untouched, so applying it to
    a wider register is the oracle tensored with the identity.
    """
    if state.qubits < f.arity + 1:
        raise DimensionMismatchError(
            f"phase oracle for arity {f.arity} needs at least {f.arity + 1} "
            f"qubits, state has {state.qubits}"
        )
    _phase_kernel(state.amps, f.arity, f.table)
    return state


def apply_two_register_oracle(state: StateVector, f: BooleanFunction) -> StateVector:
    """Two evaluations, one target: (x, y, g) -> (x, y, g ^ f(x) ^ f(y)).

    Qubits 0..n-1 hold x, n..2n-1 hold y, qubit 2n the target.  In place.
    """
    _require_layout(state, f, 2 * f.arity + 1)
    _two_register_kernel(state.amps, f.arity, f.table)
    return state


def apply_single_xor_oracle(state: StateVector, f: BooleanFunction) -> StateVector:
    """XOR of value and control into the target: (x, b, g) -> (x, b, g ^ f(x) ^ b).

    Same layout as the Toffoli-style oracle.  In place.
    """
    _require_layout(state, f, f.arity + 2)
    _single_xor_kernel(state.amps, f.arity, f.table)
    return state


_APPLIERS = {
    OracleKind.STANDARD_BV: apply_standard_bv,
    OracleKind.TOFFOLI: apply_toffoli_oracle,
    OracleKind.PHASE: apply_phase_oracle,
    OracleKind.TWO_REGISTER: apply_two_register_oracle,
    OracleKind.SINGLE_XOR: apply_single_xor_oracle,
}

_KERNELS = {
    OracleKind.STANDARD_BV: _standard_bv_kernel,
    OracleKind.TOFFOLI: _toffoli_kernel,
    OracleKind.PHASE: _phase_kernel,
    OracleKind.TWO_REGISTER: _two_register_kernel,
    OracleKind.SINGLE_XOR: _single_xor_kernel,
}


def apply_oracle(kind: OracleKind, state: StateVector, f: BooleanFunction) -> StateVector:
    """Dispatch to the applier for the given kind."""
    return _APPLIERS[kind](state, f)


def oracle_dense_matrix(kind: OracleKind, f: BooleanFunction) -> np.ndarray:
    """Exact matrix of the oracle, column v = oracle applied to basis ket v.

    Only for verification; capped at DENSE_QUBIT_CAP total qubits.
    """
    m = kind.qubit_count(f.arity)
    if m > DENSE_QUBIT_CAP:
        raise CapacityError(
            f"dense extraction needs {m} qubits, cap is {DENSE_QUBIT_CAP}"
        )
    dim = 1 << m
    rows = np.eye(dim, dtype=np.complex128)
    kernel = _KERNELS[kind]
    for v in range(dim):
        # Row v starts as basis ket v; the kernels run on any contiguous
        # length-2**m array, so fill rows in place and transpose once.
        kernel(rows[v], f.arity, f.table)
    return rows.T.copy()
