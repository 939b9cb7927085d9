"""Two-qubit Bell-diagonal states and density-matrix primitives.

A Bell-diagonal state is fixed by three real correlation coefficients
(c1, c2, c3):

    rho = (1/4) (I + c1 X(x)X + c2 Y(x)Y + c3 Z(x)Z)

Its eigenvectors are the four Bell states regardless of the coefficients,
so the spectrum has a closed form.  Basis ordering throughout the package
is |00>, |01>, |10>, |11>; qubit A is the left tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

__all__ = [
    "PauliAxis",
    "PAULI",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "BellDiagonalState",
    "UnphysicalStateError",
    "NotBellDiagonalError",
    "to_density_matrix",
    "bell_spectrum",
    "von_neumann_entropy",
    "extract_coefficients",
    "reduced_state",
    "check_density_matrix",
    "sample_bell_diagonal",
]

# construction gate for coefficient triples
EPS_POSITIVITY = 1e-12
# looser gate for matrices coming out of channel arithmetic
EPS_MATRIX_POSITIVITY = 1e-10
EPS_HERMITIAN = 1e-12
EPS_TRACE = 1e-12
# eigenvalues below this are treated as exact zeros in entropies
EPS_ZERO = 1e-12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class PauliAxis(IntEnum):
    """Pauli axis index; doubles as the coefficient subscript."""

    X = 1
    Y = 2
    Z = 3


PAULI: dict[PauliAxis, np.ndarray] = {
    PauliAxis.X: SIGMA_X,
    PauliAxis.Y: SIGMA_Y,
    PauliAxis.Z: SIGMA_Z,
}


class UnphysicalStateError(ValueError):
    """Raised when coefficients or a matrix fail the positivity gate."""


class NotBellDiagonalError(ValueError):
    """Raised when a density matrix has Bloch or cross terms above tolerance."""


@dataclass(frozen=True)
class BellDiagonalState:
    """Correlation coefficients (c1, c2, c3) of a Bell-diagonal state.

    Construction validates physicality: every Bell eigenvalue must be
    >= -1e-12.  All-zero coefficients give the maximally mixed state.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise UnphysicalStateError(f"{name} = {v} is not finite")
            if abs(v) > 1.0 + EPS_POSITIVITY:
                raise UnphysicalStateError(f"|{name}| = {abs(v)} exceeds 1")
        lam = bell_spectrum(self)
        if np.min(lam) < -EPS_POSITIVITY:
            raise UnphysicalStateError(
                f"coefficients ({self.c1}, {self.c2}, {self.c3}) give a Bell "
                f"eigenvalue {np.min(lam):.3e} < -{EPS_POSITIVITY}"
            )

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def coefficient(self, axis: PauliAxis | int) -> float:
        return self.coefficients[int(axis) - 1]

    @property
    def chi(self) -> float:
        """Largest coefficient magnitude."""
        return max(abs(self.c1), abs(self.c2), abs(self.c3))

    @property
    def chi_axis(self) -> PauliAxis:
        """Axis carrying chi; ties break to the lowest index."""
        mags = [abs(self.c1), abs(self.c2), abs(self.c3)]
        return PauliAxis(1 + int(np.argmax(mags)))


def to_density_matrix(state: BellDiagonalState) -> np.ndarray:
    """4x4 density matrix (1/4)(I + sum_i c_i sigma_i (x) sigma_i)."""
    rho = np.eye(4, dtype=complex)
    for axis in PauliAxis:
        s = PAULI[axis]
        rho += state.coefficient(axis) * np.kron(s, s)
    return rho / 4.0


def bell_spectrum(state: BellDiagonalState) -> np.ndarray:
    """Eigenvalues in fixed Bell order (psi+, psi-, phi+, phi-).

    psi+/- = (|00> +/- |11>)/sqrt(2) and phi+/- = (|01> +/- |10>)/sqrt(2):

        lambda_psi+- = (1 +/- c1 -/+ c2 + c3) / 4
        lambda_phi+- = (1 +/- c1 +/- c2 - c3) / 4
    """
    c1, c2, c3 = state.c1, state.c2, state.c3
    return np.array(
        [
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
            (1.0 - c1 - c2 - c3) / 4.0,
        ]
    )


def _entropy_of_probabilities(lam: np.ndarray) -> float:
    lam = np.asarray(lam, dtype=float)
    if np.min(lam) < -EPS_MATRIX_POSITIVITY:
        raise UnphysicalStateError(f"eigenvalue {np.min(lam):.3e} < -{EPS_MATRIX_POSITIVITY}")
    lam = np.clip(lam, 0.0, None)
    keep = lam > EPS_ZERO
    if not np.any(keep):
        return 0.0
    return float(-np.sum(lam[keep] * np.log2(lam[keep])))


def von_neumann_entropy(rho_or_spectrum: np.ndarray | BellDiagonalState) -> float:
    """Entropy -tr(rho log2 rho) in bits.

    Accepts a BellDiagonalState, a Hermitian density matrix, or a bare
    eigenvalue/probability vector.  Eigenvalues in [-1e-10, 0) are clamped
    to zero; anything below that raises UnphysicalStateError.  Terms with
    eigenvalue below 1e-12 contribute exactly zero.
    """
    if isinstance(rho_or_spectrum, BellDiagonalState):
        return _entropy_of_probabilities(bell_spectrum(rho_or_spectrum))
    arr = np.asarray(rho_or_spectrum)
    if arr.ndim == 1:
        return _entropy_of_probabilities(arr)
    return _entropy_of_probabilities(np.linalg.eigvalsh(arr))


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate a 4x4 density matrix; returns it unchanged.

    Hermiticity and unit trace are required at 1e-12, eigenvalues at
    >= -1e-10 (channel outputs accumulate a little more rounding than
    direct constructions).
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise UnphysicalStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > EPS_HERMITIAN:
        raise UnphysicalStateError("matrix is not Hermitian within 1e-12")
    if abs(np.trace(rho).real - 1.0) > EPS_TRACE or abs(np.trace(rho).imag) > EPS_TRACE:
        raise UnphysicalStateError(f"trace {np.trace(rho)} differs from 1 beyond 1e-12")
    lam = np.linalg.eigvalsh(rho)
    if np.min(lam) < -EPS_MATRIX_POSITIVITY:
        raise UnphysicalStateError(f"eigenvalue {np.min(lam):.3e} < -1e-10")
    return rho


def extract_coefficients(rho: np.ndarray) -> BellDiagonalState:
    """Read (c1, c2, c3) back off a Bell-diagonal density matrix.

    c_i = tr(rho sigma_i (x) sigma_i).  Raises NotBellDiagonalError if any
    single-qubit Bloch component or cross term tr(rho sigma_i (x) sigma_j),
    i != j, exceeds 1e-10; the flip channels used here never produce those
    terms from a Bell-diagonal input.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise UnphysicalStateError(f"expected a 4x4 matrix, got shape {rho.shape}")

    def _overlap(op_a: np.ndarray, op_b: np.ndarray) -> float:
        val = np.trace(rho @ np.kron(op_a, op_b))
        return float(val.real)

    tol = 1e-10
    for axis in PauliAxis:
        s = PAULI[axis]
        if abs(_overlap(s, IDENTITY_2)) > tol or abs(_overlap(IDENTITY_2, s)) > tol:
            raise NotBellDiagonalError(f"nonzero single-qubit Bloch component on axis {int(axis)}")
    for a in PauliAxis:
        for b in PauliAxis:
            if a != b and abs(_overlap(PAULI[a], PAULI[b])) > tol:
                raise NotBellDiagonalError(f"nonzero cross term ({int(a)}, {int(b)})")

    return BellDiagonalState(
        _overlap(SIGMA_X, SIGMA_X),
        _overlap(SIGMA_Y, SIGMA_Y),
        _overlap(SIGMA_Z, SIGMA_Z),
    )


def reduced_state(rho: np.ndarray, side: str) -> np.ndarray:
    """Partial trace; side 'A' keeps the left qubit, 'B' the right."""
    rho = np.asarray(rho).reshape(2, 2, 2, 2)
    if side == "A":
        return np.einsum("abcb->ac", rho)
    if side == "B":
        return np.einsum("abac->bc", rho)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def sample_bell_diagonal(count: int, rng: np.random.Generator) -> list[BellDiagonalState]:
    """Draw valid states by rejection from the coefficient cube [-1, 1]^3.

    Acceptance requires every Bell eigenvalue >= 0 exactly; roughly one
    third of the cube survives.
    """
    out: list[BellDiagonalState] = []
    while len(out) < count:
        c1, c2, c3 = rng.uniform(-1.0, 1.0, size=3)
        lam = (
            (1.0 + c1 - c2 + c3),
            (1.0 - c1 + c2 + c3),
            (1.0 + c1 + c2 - c3),
            (1.0 - c1 - c2 - c3),
        )
        if min(lam) >= 0.0:
            out.append(BellDiagonalState(c1, c2, c3))
    return out
