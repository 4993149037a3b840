"""Three-qubit operator primitives: Pauli matrices, tensor products, state validation.

Basis convention: computational basis |abc> ordered with party A as the most
significant bit, so index = 4a + 2b + c. Every function here is pure and every
returned array is read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_ATOL = 1e-9
TRACE_ATOL = 1e-9
EIGENVALUE_FLOOR = -1e-9
UNIT_ATOL = 1e-12
IMAG_RESIDUE_ATOL = 1e-9

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
for _m in _PAULI:
    _m.setflags(write=False)


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    if out is arr:
        out = arr.copy()
    out.setflags(write=False)
    return out


def pauli(k: int) -> np.ndarray:
    """Return the 2x2 Pauli matrix sigma_k, k in {1, 2, 3}."""
    if k not in (1, 2, 3):
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {k!r}")
    return _PAULI[k - 1]


def unit_vector(v) -> np.ndarray:
    """Validate a real 3-vector of unit Euclidean norm; returns a read-only copy."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > UNIT_ATOL:
        raise ValueError(f"vector norm {norm!r} is not 1 within {UNIT_ATOL}")
    return _readonly(arr)


def observable(g) -> np.ndarray:
    """Spin observable g . sigma for a unit direction g: Hermitian, eigenvalues +-1."""
    g = unit_vector(g)
    return _readonly(g[0] * _PAULI[0] + g[1] * _PAULI[1] + g[2] * _PAULI[2])


def kron3(a, b, c) -> np.ndarray:
    """Kronecker product A (x) B (x) C of 2x2 factors, party A slowest-varying."""
    mats = []
    for m in (a, b, c):
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"kron3 expects 2x2 factors, got shape {m.shape}")
        mats.append(m)
    return _readonly(np.kron(np.kron(mats[0], mats[1]), mats[2]))


def expectation(rho, op) -> float:
    """Real expectation value tr(op rho) for a Hermitian operator op.

    Raises if op deviates from Hermitian by more than 1e-9 or if the trace
    carries an imaginary residue of 1e-9 or more.
    """
    rho = np.asarray(rho, dtype=complex)
    op = np.asarray(op, dtype=complex)
    if op.shape != rho.shape or op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"operator shape {op.shape} does not match state shape {rho.shape}")
    dev = float(np.max(np.abs(op - op.conj().T)))
    if dev > HERMITICITY_ATOL:
        raise ValueError(f"operator deviates from Hermitian by {dev:.3e}")
    value = complex(np.einsum("ij,ji->", op, rho))
    if abs(value.imag) >= IMAG_RESIDUE_ATOL:
        raise ValueError(f"expectation value has imaginary residue {value.imag:.3e}")
    return float(value.real)


@dataclass(frozen=True)
class InvariantViolation:
    """One violated density-matrix invariant together with its measured residual."""

    kind: str
    residual: float


class StateValidationError(ValueError):
    """Raised when a matrix fails the density-matrix invariants.

    Carries every violated invariant, not just the first, so callers can report
    all residuals at once.
    """

    def __init__(self, violations):
        self.violations: tuple[InvariantViolation, ...] = tuple(violations)
        detail = "; ".join(f"{v.kind} (residual {v.residual:.6e})" for v in self.violations)
        super().__init__(f"invalid density matrix: {detail}")


NOT_FINITE = "not_finite"
NOT_HERMITIAN = "not_hermitian"
TRACE_NOT_ONE = "trace_not_one"
NOT_POSITIVE_SEMIDEFINITE = "not_positive_semidefinite"


def validate_density(raw) -> np.ndarray:
    """Validate an 8x8 three-qubit density matrix; returns a read-only complex copy.

    Checks Hermiticity (atol 1e-9), unit trace (atol 1e-9) and positive
    semidefiniteness (eigenvalue floor -1e-9). Raises StateValidationError
    listing every violated invariant with its residual. The PSD check runs on
    the Hermitized matrix (rho + rho^dagger)/2 so it stays independent of the
    Hermiticity check.
    """
    rho = np.asarray(raw, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError(f"expected an 8x8 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise StateValidationError([InvariantViolation(NOT_FINITE, float("inf"))])
    violations = []
    herm_dev = float(np.max(np.abs(rho - rho.conj().T)))
    if herm_dev > HERMITICITY_ATOL:
        violations.append(InvariantViolation(NOT_HERMITIAN, herm_dev))
    trace_dev = float(abs(complex(np.trace(rho)) - 1.0))
    if trace_dev > TRACE_ATOL:
        violations.append(InvariantViolation(TRACE_NOT_ONE, trace_dev))
    lowest = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)[0])
    if lowest < EIGENVALUE_FLOOR:
        violations.append(InvariantViolation(NOT_POSITIVE_SEMIDEFINITE, -lowest))
    if violations:
        raise StateValidationError(violations)
    return _readonly(rho)


def pure_state(amplitudes) -> np.ndarray:
    """Validate an 8-component normalized state vector; returns a read-only copy."""
    psi = np.asarray(amplitudes, dtype=complex)
    if psi.shape != (8,):
        raise ValueError(f"expected 8 amplitudes, got shape {psi.shape}")
    if not np.all(np.isfinite(psi)):
        raise ValueError("amplitudes must be finite")
    norm_sq = float(np.sum(np.abs(psi) ** 2))
    if abs(norm_sq - 1.0) > UNIT_ATOL:
        raise ValueError(f"squared norm {norm_sq!r} is not 1 within {UNIT_ATOL}")
    return _readonly(psi)


def pure_to_density(psi) -> np.ndarray:
    """Rank-1 projector |psi><psi| of a normalized 8-component state vector."""
    psi = pure_state(psi)
    return _readonly(np.outer(psi, psi.conj()))
