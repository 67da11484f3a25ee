"""Dense pure states and density matrices over N qubits."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from phasecode.bitstring import BitString

# Tolerances shared across the package.
ATOL = 1e-12
HERMITIAN_ATOL = 1e-12
PSD_SLACK = 1e-10
NORM_ATOL = 1e-9

MAX_STATE_WIDTH = 20
MAX_DENSITY_WIDTH = 12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QState:
    """Pure state amplitudes ``c_b`` on the computational basis.

    Unnormalised vectors are allowed; trajectory branches carry their weight
    as squared norm.
    """

    amplitudes: np.ndarray
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_STATE_WIDTH:
            raise ValueError(f"state width must be in [1, {MAX_STATE_WIDTH}]")
        amps = _frozen(self.amplitudes)
        if amps.shape != (1 << self.width,):
            raise ValueError(f"expected {1 << self.width} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> QState:
        amps = np.asarray(amplitudes, dtype=np.complex128)
        width = int(amps.size).bit_length() - 1
        if amps.ndim != 1 or (1 << width) != amps.size:
            raise ValueError("amplitude vector length must be a power of two")
        return cls(amps, width)

    @classmethod
    def basis(cls, index: int | BitString, width: int | None = None) -> QState:
        if isinstance(index, BitString):
            index, width = index.value, index.width
        if width is None:
            raise ValueError("width required for integer basis index")
        amps = np.zeros(1 << width, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, width)

    @property
    def dim(self) -> int:
        return 1 << self.width

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def is_normalized(self, atol: float = ATOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= atol

    def normalized(self) -> QState:
        nrm = np.sqrt(self.norm_squared())
        if nrm == 0:
            raise ValueError("cannot normalise the zero vector")
        return QState(self.amplitudes / nrm, self.width)

    def inner(self, other: QState) -> complex:
        """``<self|other>``."""
        _check_width(self.width, other.width)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def allclose(self, other: QState, atol: float = ATOL) -> bool:
        return self.width == other.width and np.allclose(
            self.amplitudes, other.amplitudes, rtol=0, atol=atol
        )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_DENSITY_WIDTH:
            raise ValueError(f"density matrix width must be in [1, {MAX_DENSITY_WIDTH}]")
        m = _frozen(self.entries)
        d = 1 << self.width
        if m.shape != (d, d):
            raise ValueError(f"expected {d}x{d} matrix, got shape {m.shape}")
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_matrix(cls, m) -> DensityMatrix:
        m = np.asarray(m, dtype=np.complex128)
        width = m.shape[0].bit_length() - 1
        return cls(m, width)

    @property
    def dim(self) -> int:
        return 1 << self.width

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.entries).real.copy()

    def renormalized(self) -> DensityMatrix:
        tr = self.trace()
        if tr <= 0:
            raise ValueError("cannot renormalise a density matrix with zero trace")
        return DensityMatrix(self.entries / tr, self.width)

    def is_hermitian(self, atol: float = HERMITIAN_ATOL) -> bool:
        return np.allclose(self.entries, self.entries.conj().T, rtol=0, atol=atol)

    def is_psd(self, slack: float = PSD_SLACK) -> bool:
        herm = (self.entries + self.entries.conj().T) / 2
        return bool(np.linalg.eigvalsh(herm).min() >= -slack)

    def is_physical(self) -> bool:
        tr = self.trace()
        return self.is_hermitian() and self.is_psd() and 0 < tr <= 1 + ATOL

    def allclose(self, other: DensityMatrix, atol: float = ATOL) -> bool:
        return self.width == other.width and np.allclose(
            self.entries, other.entries, rtol=0, atol=atol
        )


def _check_width(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"width mismatch: {a} != {b}")


def pure_to_density(psi: QState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()), psi.width)


def overlap_probability(alpha: QState, rho: DensityMatrix) -> float:
    """``<alpha|rho|alpha>`` as a real number."""
    _check_width(alpha.width, rho.width)
    a = alpha.amplitudes
    val = np.vdot(a, rho.entries @ a)
    return float(val.real)


def projector(basis_states: Iterable[BitString | int], width: int) -> np.ndarray:
    """Diagonal 0/1 vector for ``sum_b |b><b|`` over ``basis_states``."""
    keep = np.zeros(1 << width, dtype=bool)
    seen = False
    for b in basis_states:
        seen = True
        if isinstance(b, BitString):
            _check_width(b.width, width)
            b = b.value
        if not 0 <= b < (1 << width):
            raise ValueError(f"basis index {b} out of range for width {width}")
        keep[b] = True
    if not seen:
        raise ValueError("projection needs at least one basis state")
    return keep


def project_keep(rho: DensityMatrix, basis_states: Iterable[BitString | int]) -> DensityMatrix:
    """``P rho P`` with ``P`` the projector onto the given basis states.

    The result is not renormalised; its trace is the probability of the
    measurement outcome.
    """
    keep = projector(basis_states, rho.width)
    out = np.where(keep[:, None] & keep[None, :], rho.entries, 0)
    return DensityMatrix(out, rho.width)


def qubit_fidelity(rho: DensityMatrix, psi0: QState) -> float:
    if rho.width != 1 or psi0.width != 1:
        raise ValueError("qubit_fidelity expects single-qubit inputs")
    return overlap_probability(psi0, rho)


def random_state(width: int, rng: np.random.Generator) -> QState:
    """Haar-random normalised state."""
    v = rng.normal(size=1 << width) + 1j * rng.normal(size=1 << width)
    return QState(v / np.linalg.norm(v), width)


def qubit_state(c0: complex, c1: complex) -> QState:
    return QState(np.array([c0, c1], dtype=np.complex128), 1)
