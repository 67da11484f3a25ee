"""Logical qubit representations and their encoders.

Layout convention: the data qubit enters as bit 0, so the unencoded inputs
are ``|e0> = |0...00>`` (label 0) and ``|e1> = |0...01>`` (label 1). The
encoder ``U`` maps them to ``|0_L>`` and ``|1_L>``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from phasecode.qstate import ATOL, NORM_ATOL, QState

MAX_SYMMETRIC_N = 12
E0, E1 = 0, 1


@dataclass(frozen=True, eq=False)
class Code:
    name: str
    width: int
    zero_logical: QState
    one_logical: QState
    encoder: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        for s in (self.zero_logical, self.one_logical):
            if s.width != self.width:
                raise ValueError("logical state width does not match code width")
        enc = np.array(self.encoder, dtype=np.complex128)
        enc.setflags(write=False)
        object.__setattr__(self, "encoder", enc)

    @property
    def logical_matrix(self) -> np.ndarray:
        """``2**N x 2`` isometry with columns ``|0_L>``, ``|1_L>``."""
        return np.stack([self.zero_logical.amplitudes, self.one_logical.amplitudes], axis=1)

    def support(self) -> np.ndarray:
        """Basis labels on which either code word is nonzero."""
        v = self.logical_matrix
        return np.flatnonzero(np.abs(v).max(axis=1) > 0)

    def check(self, atol: float = ATOL) -> None:
        """Raise if the code words or encoder break their invariants."""
        v = self.logical_matrix
        if not np.allclose(v.conj().T @ v, np.eye(2), rtol=0, atol=atol):
            raise ValueError(f"{self.name}: code words are not orthonormal")
        u = self.encoder
        if not np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0, atol=atol):
            raise ValueError(f"{self.name}: encoder is not unitary")
        if not np.allclose(u[:, [E0, E1]], v, rtol=0, atol=atol):
            raise ValueError(f"{self.name}: encoder does not map e0, e1 to the code words")


def complete_encoder(
    zero: np.ndarray, one: np.ndarray, order: Sequence[int] | None = None
) -> np.ndarray:
    """Unitary whose columns ``e0``, ``e1`` are the code words.

    The remaining columns come from Gram-Schmidt over computational basis
    vectors, taken in ``order`` (default increasing label). Vectors already
    in the span are dropped; exactly ``2**N - 2`` survive and fill the free
    columns in order.
    """
    dim = zero.size
    order = range(dim) if order is None else order
    basis = np.zeros((dim, dim), dtype=np.complex128)
    basis[:, 0] = zero
    basis[:, 1] = one
    m = 2
    for j in order:
        if m == dim:
            break
        q = basis[:, :m]
        if not q[j].any():
            # e_j is already orthogonal to everything kept so far.
            basis[j, m] = 1.0
            m += 1
            continue
        # e_j minus its projection; <q_i|e_j> is just conj(q[j, i]).
        v = -q @ q[j].conj()
        v[j] += 1.0
        v -= q @ (q.conj().T @ v)
        nrm = np.linalg.norm(v)
        if nrm < 1e-8:
            continue
        basis[:, m] = v / nrm
        m += 1
    if m != dim:
        raise ValueError("basis order does not span the full space")
    u = np.empty_like(basis)
    u[:, E0] = basis[:, 0]
    u[:, E1] = basis[:, 1]
    u[:, 2:] = basis[:, 2:]
    return u


def _make_code(name: str, width: int, zero: np.ndarray, one: np.ndarray) -> Code:
    return Code(name, width, QState(zero, width), QState(one, width), complete_encoder(zero, one))


def symmetric_codewords(n: int) -> tuple[list[int], list[int], float]:
    """Support labels of ``|0_L>``, ``|1_L>`` and their common amplitude.

    ``|0_L>`` is the uniform superposition of one-hot strings in the low
    ``n/2`` bits, ``|1_L>`` the same in the high ``n/2`` bits. Works for any
    even ``n``; labels are plain ints.
    """
    if n < 2 or n % 2:
        raise ValueError(f"symmetric code needs an even N >= 2, got {n}")
    half = n // 2
    low = [1 << i for i in range(half)]
    high = [1 << (i + half) for i in range(half)]
    return low, high, float(np.sqrt(2.0 / n))


@lru_cache(maxsize=None)
def symmetric_code(n: int) -> Code:
    if not isinstance(n, (int, np.integer)) or n % 2 or not 2 <= n <= MAX_SYMMETRIC_N:
        raise ValueError(f"symmetric code needs an even N in [2, {MAX_SYMMETRIC_N}], got {n}")
    n = int(n)
    low, high, amp = symmetric_codewords(n)
    zero = np.zeros(1 << n, dtype=np.complex128)
    one = np.zeros(1 << n, dtype=np.complex128)
    zero[low] = amp
    one[high] = amp
    return _make_code(f"symmetric{n}", n, zero, one)


@lru_cache(maxsize=None)
def two_qubit_code() -> Code:
    s = 1 / np.sqrt(2)
    zero = np.array([s, 0, 0, s], dtype=np.complex128)  # (|00> + |11>)/sqrt2
    one = np.array([0, s, s, 0], dtype=np.complex128)  # (|01> + |10>)/sqrt2
    return _make_code("two_qubit", 2, zero, one)


@lru_cache(maxsize=None)
def standard_code() -> Code:
    return Code("standard", 1, QState.basis(0, 1), QState.basis(1, 1), np.eye(2))


def _check_coefficients(c0: complex, c1: complex) -> None:
    if abs(abs(c0) ** 2 + abs(c1) ** 2 - 1) > NORM_ATOL:
        raise ValueError(f"|c0|^2 + |c1|^2 must be 1, got {abs(c0) ** 2 + abs(c1) ** 2}")


def encode(code: Code, c0: complex, c1: complex) -> QState:
    _check_coefficients(c0, c1)
    amps = c0 * code.zero_logical.amplitudes + c1 * code.one_logical.amplitudes
    return QState(amps, code.width)


def unencoded(code: Code, c0: complex, c1: complex) -> QState:
    """``c0|e0> + c1|e1>``: the data qubit next to ground-state ancillas."""
    _check_coefficients(c0, c1)
    amps = np.zeros(1 << code.width, dtype=np.complex128)
    amps[E0], amps[E1] = c0, c1
    return QState(amps, code.width)


def representation_manifold_projector(code: Code) -> np.ndarray:
    v = code.logical_matrix
    return v @ v.conj().T


# Plain-text export: one "label real imag" line per nonzero amplitude.


def format_state(psi: QState, header: str = "") -> str:
    lines = [f"# {header}".rstrip()] if header else []
    lines.append(f"# width {psi.width}")
    for i in np.flatnonzero(psi.amplitudes):
        a = psi.amplitudes[i]
        lines.append(f"{i} {i:0{psi.width}b} {a.real:.17g} {a.imag:.17g}")
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> QState:
    width = None
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "width":
                width = int(parts[1])
            continue
        idx, _label, re, im = line.split()
        entries.append((int(idx), complex(float(re), float(im))))
    if width is None:
        raise ValueError("state text is missing its '# width N' line")
    amps = np.zeros(1 << width, dtype=np.complex128)
    for i, a in entries:
        amps[i] = a
    return QState(amps, width)
