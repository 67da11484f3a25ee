"""Independent per-qubit noise channels acting on density matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from phasecode.bitstring import distance_table, popcount_array
from phasecode.qstate import DensityMatrix


@lru_cache(maxsize=16)
def distance_matrix(width: int) -> np.ndarray:
    d = distance_table(width)
    d.setflags(write=False)
    return d


@dataclass(frozen=True)
class PhaseDampingChannel:
    """Dephasing of strength ``lam`` on every qubit.

    ``lam`` is a cumulative exponent: coherence between basis states that
    differ in ``h`` bits is multiplied by ``exp(-lam * h)``. Splitting a
    channel in time means splitting ``lam``. ``width=None`` adapts to the
    input.
    """

    lam: float
    width: int | None = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.lam) or self.lam < 0:
            raise ValueError(f"damping must be finite and >= 0, got {self.lam}")

    @property
    def kind(self) -> str:
        return "phase"

    @property
    def strength(self) -> float:
        return self.lam


@dataclass(frozen=True)
class AmplitudeDampingChannel:
    """Each excited qubit relaxes ``|1> -> |0>`` with probability ``gamma``."""

    gamma: float
    width: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.gamma <= 1:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")

    @property
    def kind(self) -> str:
        return "amplitude"

    @property
    def strength(self) -> float:
        return self.gamma


Channel = PhaseDampingChannel | AmplitudeDampingChannel


def _check(ch_width: int | None, rho: DensityMatrix) -> None:
    if ch_width is not None and ch_width != rho.width:
        raise ValueError(f"channel width {ch_width} != state width {rho.width}")


def phase_damping_factors(lam: float, width: int) -> np.ndarray:
    return np.exp(-lam * distance_matrix(width))


def apply_phase_damping(ch: PhaseDampingChannel, rho: DensityMatrix) -> DensityMatrix:
    _check(ch.width, rho)
    if ch.lam == 0:
        return rho
    return DensityMatrix(rho.entries * phase_damping_factors(ch.lam, rho.width), rho.width)


def apply_amplitude_damping(ch: AmplitudeDampingChannel, rho: DensityMatrix) -> DensityMatrix:
    _check(ch.width, rho)
    if ch.gamma == 0:
        return rho
    g = ch.gamma
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1 - g)]])
    k1 = np.array([[0.0, np.sqrt(g)], [0.0, 0.0]])
    n = rho.width
    # Act on one qubit axis at a time. Axis 0 of the reshaped tensor is the
    # most significant bit, so qubit q lives on axis n - 1 - q.
    t = rho.entries.reshape((2,) * (2 * n))
    for q in range(n):
        ax_row = n - 1 - q
        ax_col = 2 * n - 1 - q
        acc = 0
        for k in (k0, k1):
            s = np.moveaxis(np.tensordot(k, t, axes=([1], [ax_row])), 0, ax_row)
            s = np.moveaxis(np.tensordot(k.conj(), s, axes=([1], [ax_col])), 0, ax_col)
            acc = acc + s
        t = acc
    d = 1 << n
    return DensityMatrix(t.reshape(d, d), n)


def apply_channel(ch: Channel, rho: DensityMatrix) -> DensityMatrix:
    if isinstance(ch, PhaseDampingChannel):
        return apply_phase_damping(ch, rho)
    if isinstance(ch, AmplitudeDampingChannel):
        return apply_amplitude_damping(ch, rho)
    raise TypeError(f"unknown channel {ch!r}")


def phase_damp_supported(entries: np.ndarray, support: np.ndarray, lam: float) -> np.ndarray:
    """Phase-damp a density matrix stored only on the basis labels ``support``.

    Dephasing never moves weight between basis states, so a matrix supported
    on a label subset stays there. Labels are Python ints and may exceed 64
    bits' worth of qubits only through ``object`` arrays, which are handled
    by falling back to ``int.bit_count``.
    """
    labels = list(int(s) for s in support)
    if max(labels, default=0) < (1 << 63):
        arr = np.array(labels, dtype=np.uint64)
        dist = popcount_array(arr[:, None] ^ arr[None, :])
    else:
        dist = np.array([[(a ^ b).bit_count() for b in labels] for a in labels])
    return entries * np.exp(-lam * dist)
