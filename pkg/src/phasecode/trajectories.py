"""Quantum-trajectory unravelling of phase damping.

A phase-damped pure state is an explicit mixture of ``2**N`` unnormalised
branches ``|phi_n>``. Branch 0 is the no-jump evolution. Branch ``n >= 1``
is the jump pattern in which exactly the qubits set in ``n`` jumped. The
Gram sum of the branches equals the damped density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from phasecode.bitstring import popcount_array
from phasecode.qstate import NORM_ATOL, DensityMatrix, QState


@dataclass(frozen=True)
class Branch:
    """Sparse branch: amplitudes on the listed basis labels only."""

    n: int
    indices: np.ndarray
    amplitudes: np.ndarray

    @property
    def weight(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class TrajectoryEnsemble:
    source: QState
    lam: float
    branches: tuple[Branch, ...] = field(repr=False)

    @property
    def width(self) -> int:
        return self.source.width

    def __len__(self) -> int:
        return len(self.branches)

    def dense(self, n: int) -> QState:
        br = self.branches[n]
        amps = np.zeros(1 << self.width, dtype=np.complex128)
        amps[br.indices] = br.amplitudes
        return QState(amps, self.width)

    def gram_sum(self) -> DensityMatrix:
        """``sum_n |phi_n><phi_n|`` as a dense density matrix."""
        d = 1 << self.width
        out = np.zeros((d, d), dtype=np.complex128)
        for br in self.branches:
            if br.indices.size:
                out[np.ix_(br.indices, br.indices)] += np.outer(br.amplitudes, br.amplitudes.conj())
        return DensityMatrix(out, self.width)

    def overlap_probability(self, alpha: QState) -> float:
        """``|<alpha|psi_pd>|^2`` summed branch by branch (direct-sum semantics)."""
        if alpha.width != self.width:
            raise ValueError("width mismatch")
        a = alpha.amplitudes
        total = 0.0
        for br in self.branches:
            total += abs(np.vdot(a[br.indices], br.amplitudes)) ** 2
        return total


def decompose(psi: QState, lam: float) -> TrajectoryEnsemble:
    if lam < 0:
        raise ValueError("damping must be >= 0")
    if abs(psi.norm_squared() - 1.0) > NORM_ATOL:
        raise ValueError("decompose expects a normalised state")
    n_qubits = psi.width
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    weights = popcount_array(idx)
    c = psi.amplitudes
    decay = np.exp(-lam)
    jump = np.sqrt(-np.expm1(-2 * lam))

    branches = [Branch(0, idx, c * decay**weights)]
    for n in range(1, 1 << n_qubits):
        sel = idx[(idx & n) == n]
        hn = int(n).bit_count()
        # h(n, b) = h(b) - h(n) on the selected labels, since n is a subset of b.
        amp = c[sel] * decay ** (weights[sel] - hn) * jump**hn
        branches.append(Branch(n, sel, amp))
    return TrajectoryEnsemble(psi, float(lam), tuple(branches))


def branch_weights(ens: TrajectoryEnsemble) -> np.ndarray:
    """``p_n = <phi_n|phi_n>``; sums to one for a normalised source."""
    return np.array([br.weight for br in ens.branches])


def _generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def sample_indices(ens: TrajectoryEnsemble, size: int, rng) -> np.ndarray:
    """Draw ``size`` branch labels by inverse-CDF sampling over ``p_n``.

    ``rng`` is a seed or a ``numpy.random.Generator``; one uniform variate
    is consumed per draw.
    """
    w = branch_weights(ens)
    assert w.sum() > 0, "branch weights vanish"
    cdf = np.cumsum(w)
    cdf /= cdf[-1]
    u = _generator(rng).random(size)
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(w) - 1)


def sample_branch(ens: TrajectoryEnsemble, rng) -> tuple[int, QState]:
    n = int(sample_indices(ens, 1, rng)[0])
    return n, ens.dense(n).normalized()
